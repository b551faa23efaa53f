#include "chebmax/cli.hpp"

int main(int argc, char** argv) { return chebmax::cli::run(argc, argv); }

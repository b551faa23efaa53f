#pragma once

#include "chebmax/classify.hpp"
#include "chebmax/cmgal.hpp"
#include "chebmax/curve.hpp"
#include "chebmax/errors.hpp"
#include "chebmax/field.hpp"
#include "chebmax/intpoly.hpp"
#include "chebmax/numtheory.hpp"
#include "chebmax/serialize.hpp"
#include "chebmax/slopes.hpp"
#include "chebmax/zeta.hpp"

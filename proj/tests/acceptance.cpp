// Acceptance gate. Runs each criterion at its stated tolerance and runtime
// limit, printing one PASS/FAIL line per criterion. With a numeric argument
// only that criterion runs; the exit status is nonzero if any run fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "chebmax/chebmax.hpp"
#include "oracles.hpp"

using namespace chebmax;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream notes;

    // Records a failed check; keeps the first few messages.
    void check(bool cond, const std::string& what) {
        if (cond) return;
        if (ok || failures < 6) notes << (failures ? "; " : "") << what;
        ok = false;
        ++failures;
    }
    int failures = 0;
};

struct Criterion {
    int id;
    std::string title;
    double limit_s;
    std::function<void(Outcome&)> body;
};

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

std::string show(const SlopeMultiset& s) { return s.to_string(); }

SlopeMultiset sm(std::initializer_list<std::pair<Rational, std::int64_t>> xs) {
    SlopeMultiset s;
    for (const auto& [r, l] : xs) s.add(r, l);
    return s;
}

// ---------------------------------------------------------------- 1

void chebyshev_suite(Outcome& r) {
    const ZPoly x{0, 1};
    std::vector<ZPoly> phi(31);
    for (unsigned d = 1; d <= 30; ++d) phi[d] = chebyshev(d);
    const auto primes = oracle::odd_primes(3, 31);

    for (unsigned d = 1; d + 2 <= 30; ++d) {
        const ZPoly rec = x * phi[d + 1] - phi[d];
        r.check(phi[d + 2] == rec, "recursion fails at d=" + std::to_string(d + 2));
        for (u64 p : primes)
            r.check(reduce_mod(phi[d + 2], p) == reduce_mod(x * phi[d + 1], p) - reduce_mod(phi[d], p),
                    "recursion mod " + std::to_string(p) + " at d=" + std::to_string(d + 2));
    }
    for (unsigned d = 1; d <= 30; ++d) {
        for (unsigned e = 1; d * e <= 30; ++e) {
            const ZPoly comp = phi[d].compose(phi[e]);
            r.check(comp == phi[d * e], "composition " + std::to_string(d) + "o" + std::to_string(e));
            for (u64 p : primes)
                r.check(reduce_mod(comp, p) == reduce_mod(phi[d * e], p), "composition mod " + std::to_string(p));
        }
        const ZPoly reflected = phi[d].compose(ZPoly{0, -1});
        const ZPoly expect = d % 2 == 0 ? phi[d] : ZPoly{} - phi[d];
        r.check(reflected == expect, "parity at d=" + std::to_string(d));
        for (std::size_t i = 0; i < phi[d].coeffs().size(); ++i)
            if (phi[d].coeffs()[i] != 0) r.check(i % 2 == d % 2, "mixed-parity term at d=" + std::to_string(d));
        r.check(phi[d].coeff(0) == eval_at_zero(d), "phi_d(0) at d=" + std::to_string(d));
        r.check(phi[d].coeff(1) == derivative_at_zero(d), "phi_d'(0) at d=" + std::to_string(d));
        r.check(phi[d].leading() == 1 && phi[d].degree() == static_cast<int>(d), "monic of degree d");
        for (u64 p : primes) {
            const FpPoly f = reduce_mod(phi[d], p);
            const i64 v0 = ((eval_at_zero(d) % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
            const i64 v1 = ((derivative_at_zero(d) % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
            r.check(f.coeff(0) == static_cast<u64>(v0) && f.coeff(1) == static_cast<u64>(v1),
                    "values at 0 mod " + std::to_string(p) + " at d=" + std::to_string(d));
        }
    }

    // phi_d(t + 1/t) = t^d + t^{-d} for 200 random nonzero t in each F_{p^2}
    std::mt19937_64 rng(1729);
    for (u64 p : primes) {
        const FieldCtx ctx = make_field(p, 2);
        std::vector<FieldElement> ts;
        while (ts.size() < 200) {
            FieldElement t = oracle::random_element(ctx, rng);
            if (!t.is_zero()) ts.push_back(std::move(t));
        }
        for (unsigned d = 1; d <= 30; ++d) {
            const FpPoly f = reduce_mod(phi[d], p);
            for (const FieldElement& t : ts) {
                const FieldElement s = t + t.inverse();
                FieldElement lhs = FieldElement::zero(ctx);
                for (std::size_t k = f.coeffs().size(); k-- > 0;)
                    lhs = lhs * s + FieldElement::from_int(ctx, static_cast<i64>(f.coeffs()[k]));
                const FieldElement td = t.pow(d);
                r.check(lhs == td + td.inverse(), "defining identity p=" + std::to_string(p) + " d=" + std::to_string(d));
            }
        }
    }
}

// ---------------------------------------------------------------- 2

void slope_examples(Outcome& r) {
    const SlopeMultiset quarter = sm({{Rational(1, 4), 8}, {Rational(3, 4), 8}});
    for (u64 c : {25ULL, 45ULL, 49ULL, 53ULL}) {
        const u64 p = oracle::least_prime_in_class(c, 68);
        const SlopeMultiset s = slopes_multiset(17, static_cast<i64>(p));
        r.check(s == quarter, "slopes(17, " + std::to_string(p) + ") [class " + std::to_string(c) + " mod 68] = " + show(s) +
                                  ", expected " + show(quarter));
    }
    // p = 8 mod 37, 1 mod 4: D_p generated by (1, +-8)
    const u64 p37 = oracle::least_prime_in_class(crt(std::vector<i64>{8, 1}, std::vector<u64>{37, 4}), 148);
    const auto s37 = slopes_set(37, static_cast<i64>(p37));
    r.check(s37.count(Rational(1, 3)) == 1, "slopes(37, " + std::to_string(p37) + ") lacks 1/3");
    // ell = 41: D_p generated by (1, +-3) of order 4 and by (1, +-2) of order 10
    const u64 p41a = oracle::least_prime_in_class(crt(std::vector<i64>{3, 1}, std::vector<u64>{41, 4}), 164);
    const u64 p41b = oracle::least_prime_in_class(crt(std::vector<i64>{2, 1}, std::vector<u64>{41, 4}), 164);
    const auto sa = slopes_set(41, static_cast<i64>(p41a));
    r.check(sa.count(Rational(1, 4)) && sa.count(Rational(3, 4)),
            "slopes(41, " + std::to_string(p41a) + ") = " + show(slopes_multiset(41, static_cast<i64>(p41a))) + " lacks 1/4 or 3/4");
    const auto sb = slopes_set(41, static_cast<i64>(p41b));
    r.check(sb == std::set<Rational>{Rational(3, 20), Rational(17, 20)},
            "slopes(41, " + std::to_string(p41b) + ") = " + show(slopes_multiset(41, static_cast<i64>(p41b))) +
                ", expected {3/20, 17/20}");
}

// ---------------------------------------------------------------- 3

void prime_sweep(Outcome& r) {
    const SurveyReport rep = survey(101, SurveyMode::PrimeSweep, 2, workers());
    r.check(!rep.primes.empty(), "empty sweep");
    for (const auto& row : rep.primes) r.check(row.agree(), "ell=" + std::to_string(row.ell) + " disagrees");
    // independent recheck over every class with the plain slope routine
    for (u64 ell : oracle::odd_primes(5, 101)) {
        if (ell % 4 != 1) continue;
        for (u64 c = 1; c < 4 * ell; c += 4) {
            if (c % ell == 0) continue;
            const bool half = slopes_set(ell, static_cast<i64>(c)) == std::set<Rational>{Rational(1, 2)};
            bool primitive = true;
            for (u64 k = 1, x = c % ell; k < ell - 1; ++k, x = x * (c % ell) % ell) primitive = primitive && x != 1;
            r.check(half == primitive, "ell=" + std::to_string(ell) + " class " + std::to_string(c));
        }
    }
}

// ---------------------------------------------------------------- 4

void h5_end_to_end(Outcome& r) {
    const u64 n1 = count_points({5, 13, 1}), n2 = count_points({5, 13, 2});
    r.check(n1 == 14, "N1 = " + std::to_string(n1));
    r.check(n2 == 170, "N2 = " + std::to_string(n2));
    const std::vector<u64> counts{n1, n2};
    const LPoly P = lpoly_from_counts(std::span<const u64>(counts), BigInt(13), 2);
    r.check(P.coeffs() == std::vector<BigInt>{1, 0, 0, 0, 169}, "L-polynomial " + factored_display(P));
    const BigInt predicted = counts_from_lpoly(P, 4);
    const u64 direct = count_points({5, 13, 4});
    const BigInt bound = BigInt(28561) + 1 + 4 * 169;
    r.check(predicted == 29238 && BigInt(direct) == predicted && bound == 29238, "count over F_{13^4}");
    r.check(is_maximal_by_count({5, 13, 4}) && is_maximal_from_lpoly(P, 4), "maximal over F_{13^4}");
}

// ---------------------------------------------------------------- 5

void h25_partial(Outcome& r) {
    std::vector<BigInt> c(25, 0);
    c[0] = 1;
    c[4] = 169;
    c[20] = big_pow(13, 10);
    c[24] = big_pow(13, 12);
    const LPoly claimed(BigInt(13), 12, c);
    CountOptions o;
    o.threads = workers();
    for (unsigned m = 1; m <= 6; ++m) {
        const BigInt predicted = counts_from_lpoly(claimed, m);
        const u64 direct = count_points({25, 13, m}, o);
        r.check(BigInt(direct) == predicted, "m=" + std::to_string(m) + ": counted " + std::to_string(direct) +
                                                 ", predicted " + predicted.str());
    }
    const SlopeMultiset s = slopes2_multiset(25, 13);
    r.check(s == sm({{Rational(1, 2), 20}}), "slopes2(25, 13) = " + show(s));
}

// ---------------------------------------------------------------- 6

void classify_vs_count(Outcome& r) {
    CountOptions o;
    o.threads = workers();
    int compared = 0;
    for (u64 d = 3; d <= 15; d += 2) {
        for (u64 p : oracle::odd_primes(3, 23)) {
            if (d % p == 0) continue;
            const Verdict v = classify(d, p);
            for (unsigned n = 2; big_pow(p, n) <= 1'000'000; n += 2) {
                const bool observed = is_maximal_by_count({d, p, n}, o);
                const auto predicted = v.maximal_over(n);
                const std::string at = "d=" + std::to_string(d) + " p=" + std::to_string(p) + " n=" + std::to_string(n);
                r.check(predicted.has_value(), at + ": no prediction (" + to_string(v.status) + ")");
                if (predicted) r.check(*predicted == observed, at + ": rule " + v.rule + " disagrees with count");
                ++compared;
            }
        }
    }
    const Verdict v15 = classify(15, 59);
    r.check(v15.maximal_over(2) == std::optional<bool>(true), "classify(15, 59) not maximal over F_{59^2}");
    r.check(is_maximal_by_count({15, 59, 2}, o), "H_15 not maximal over F_{59^2} by count");
    r.check(compared > 0, "nothing compared");
}

// ---------------------------------------------------------------- 7

void cm_vs_newton(Outcome& r) {
    CountOptions o;
    o.threads = workers();
    for (u64 ell : oracle::odd_primes(3, 13)) {
        for (u64 p : oracle::odd_primes(3, 13)) {
            if (p == ell || big_pow(p, static_cast<unsigned>(genus(ell))) > 1'000'000) continue;
            const LPoly P = lpoly_of_curve(ell, p, o);
            const SlopeMultiset newton = newton_slopes(P), cm = slopes_multiset(ell, static_cast<i64>(p));
            r.check(newton == cm, "ell=" + std::to_string(ell) + " p=" + std::to_string(p) + ": Newton " + show(newton) +
                                      " vs CM " + show(cm));
        }
    }
}

// ---------------------------------------------------------------- 8

void descent(Outcome& r) {
    u64 p13 = 41;
    if (!is_primitive_root(41, 13)) {
        for (p13 = 5; !(oracle::is_prime(p13) && p13 % 4 == 1 && is_primitive_root(static_cast<i64>(p13), 13)); ++p13) {
        }
    }
    for (auto [ell, p] : std::vector<std::pair<u64, u64>>{{5, 13}, {5, 17}, {13, p13}}) {
        const std::string at = "(" + std::to_string(ell) + "," + std::to_string(p) + ")";
        const DescentCertificate c = descent_certificate(ell, p);
        r.check(c.legendre_value == -1, at + " legendre");
        r.check(c.psi_irreducible, at + " psi reducible");
        if (ell <= 7)
            r.check(oracle::irreducible_by_search(reduce_mod(odd_part(static_cast<unsigned>(ell)), p)) == c.psi_irreducible,
                    at + " irreducibility disagrees with factor search");
        r.check(c.conclusion, at + " no conclusion");
        if (lpoly_visits(ell, p) > BigInt(Budget::kDefaultVisits)) continue;
        const LPoly P = lpoly_of_curve(ell, p);
        r.check(jacobian_order_mod4(P) == 2, at + " P(1) mod 4");
        r.check(c.conclusion && P == c.certified_lpoly(), at + " L-polynomial " + factored_display(P));
    }
}

// ---------------------------------------------------------------- 9

void pair_sweep(Outcome& r) {
    const SurveyReport rep = survey(101, SurveyMode::PairSweep, 2, workers());
    std::size_t expected = 0;
    const auto primes = oracle::odd_primes(5, 101);
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] % 4 == 1 && primes[j] % 4 == 1 && valuation(primes[i] - 1, 2) == valuation(primes[j] - 1, 2))
                ++expected;
    r.check(rep.pairs.size() == expected,
            std::to_string(rep.pairs.size()) + " pairs checked, expected " + std::to_string(expected));
    for (const auto& row : rep.pairs)
        r.check(row.classes.empty(), "(" + std::to_string(row.ell1) + "," + std::to_string(row.ell2) + ") has classes");
}

// ---------------------------------------------------------------- 10

void determinism(Outcome& r) {
    std::vector<u64> counts;
    for (unsigned w : {1u, 2u, 8u}) {
        CountOptions o;
        o.threads = w;
        counts.push_back(count_points({7, 13, 3}, o));
    }
    r.check(counts[0] == counts[1] && counts[1] == counts[2], "counts differ across worker counts");
    r.check(counts[0] == oracle::count_by_squaring(7, 13, 3), "count disagrees with the squaring oracle");
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "Chebyshev identities, d <= 30, p <= 31", 10, chebyshev_suite},
        {2, "slope examples for ell = 17, 37, 41", 1, slope_examples},
        {3, "prime sweep ell <= 101", 60, prime_sweep},
        {4, "H_5 over F_13 end to end", 10, h5_end_to_end},
        {5, "H_25 over F_13, counts m <= 6 and slopes2", 300, h25_partial},
        {6, "classification vs brute force", 300, classify_vs_count},
        {7, "CM slopes vs Newton polygon", 300, cm_vs_newton},
        {8, "descent certificates", 60, descent},
        {9, "pair sweep ell1, ell2 <= 101", 600, pair_sweep},
        {10, "determinism across worker counts", 60, determinism},
    };
    return all;
}

bool run_one(const Criterion& c) {
    Outcome r;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.body(r);
    } catch (const std::exception& e) {
        r.check(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.check(s <= c.limit_s, "runtime " + std::to_string(s) + " s over limit " + std::to_string(c.limit_s) + " s");
    std::ostringstream line;
    line.precision(3);
    line << (r.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << std::fixed << s << " s)";
    if (!r.ok) line << " -- " << r.notes.str();
    std::cout << line.str() << std::endl;
    return r.ok;
}

}  // namespace

int main(int argc, char** argv) {
    bool ok = true;
    if (argc > 1) {
        const int id = std::atoi(argv[1]);
        for (const Criterion& c : criteria())
            if (c.id == id) return run_one(c) ? 0 : 1;
        std::cerr << "unknown criterion " << argv[1] << "\n";
        return 2;
    }
    for (const Criterion& c : criteria()) ok = run_one(c) && ok;
    return ok ? 0 : 1;
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "renewt/errors.hpp"
#include "renewt/newton_map.hpp"
#include "renewt/polyroot.hpp"
#include "test_support.hpp"

using namespace renewt;
using namespace renewt::testing;

namespace {

FactoredPolynomial two_roots(int k, int m) {
    return {Complex(1.0), {{Complex(1.0), k}, {Complex(-1.0), m}}};
}

FactoredPolynomial composite(int m, int n) {
    std::vector<RootFactor> fs{{Complex(0.0), m}};
    for (int j = 0; j < n; ++j) fs.push_back({std::polar(1.0, 2.0 * M_PI * j / n), 1});
    return {Complex(1.0), fs};
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (Complex x : a) {
        size_t best = 0;
        double bd = 1e300;
        for (size_t j = 0; j < b.size(); ++j) {
            double d = std::abs(x - b[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

} // namespace

TEST_SUITE_BEGIN("newton_map");

TEST_CASE("reduced rational form of the representative families") {
    SUBCASE("(z-1)^k (z+1)^m") {
        int k = 2, m = 3;
        Complex h(1.3, -0.4);
        RelaxedNewtonMap N = build_map(two_roots(k, m), h);
        Polynomial num({h, Complex(static_cast<double>(k - m)), Complex(k + m) - h});
        Polynomial den({Complex(static_cast<double>(k - m)), Complex(static_cast<double>(k + m))});
        CHECK(max_coeff_diff(N.num(), num) < 1e-13);
        CHECK(max_coeff_diff(N.den(), den) < 1e-13);
    }
    SUBCASE("z^n - 1") {
        int n = 4;
        Complex h(0.8, 0.3);
        RelaxedNewtonMap N = build_map(unity_roots_poly(n), h);
        std::vector<Complex> nc(static_cast<size_t>(n + 1), Complex(0.0));
        nc[0] = h;
        nc[static_cast<size_t>(n)] = Complex(static_cast<double>(n)) - h;
        std::vector<Complex> dc(static_cast<size_t>(n), Complex(0.0));
        dc[static_cast<size_t>(n - 1)] = static_cast<double>(n);
        CHECK(max_coeff_diff(N.num(), Polynomial(nc)) < 1e-13);
        CHECK(max_coeff_diff(N.den(), Polynomial(dc)) < 1e-13);
    }
    SUBCASE("z^m (z^n - 1)") {
        int m = 2, n = 3;
        Complex h(1.1, 0.2);
        RelaxedNewtonMap N = build_map(composite(m, n), h);
        std::vector<Complex> nc(static_cast<size_t>(n + 2), Complex(0.0));
        nc[1] = -(Complex(static_cast<double>(m)) - h);
        nc[static_cast<size_t>(n + 1)] = Complex(static_cast<double>(m + n)) - h;
        std::vector<Complex> dc(static_cast<size_t>(n + 1), Complex(0.0));
        dc[0] = -static_cast<double>(m);
        dc[static_cast<size_t>(n)] = static_cast<double>(m + n);
        CHECK(max_coeff_diff(N.num(), Polynomial(nc)) < 1e-12);
        CHECK(max_coeff_diff(N.den(), Polynomial(dc)) < 1e-12);
    }
    SUBCASE("degenerate inputs rejected") {
        CHECK_THROWS_AS(build_map(FactoredPolynomial(1.0, {{Complex(0.0), 3}}), Complex(1.0)),
                        DegenerateInput);
        CHECK_THROWS_AS(build_map(two_roots(1, 1), Complex(0.0)), InvalidParameter);
    }
    SUBCASE("admissibility flag") {
        CHECK(build_map(two_roots(1, 1), Complex(0.5)).h_admissible());
        CHECK_FALSE(build_map(two_roots(1, 1), Complex(2.5)).h_admissible());
        CHECK(build_map(two_roots(2, 2), Complex(2.5)).h_admissible());
    }
}

TEST_CASE("reduced form agrees with z - h p/p' at random samples") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        FactoredPolynomial p = random_factored(rng);
        Complex h = random_admissible_h(rng, p);
        RelaxedNewtonMap N = build_map(p, h);
        Polynomial dense = expand(p);
        Polynomial ddense = derivative(dense);
        int checked = 0;
        while (checked < 100) {
            Complex z = rand_complex(rng, 3.0);
            Complex dp = ddense(z);
            if (std::abs(dp) < 0.1) continue;
            Complex direct = z - h * dense(z) / dp;
            Complex reduced = N(z);
            if (!is_finite(reduced)) continue;
            CHECK(std::abs(direct - reduced) <= 1e-10 * std::max(1.0, std::abs(direct)));
            ++checked;
        }
    }
}

TEST_CASE("extended evaluation") {
    RelaxedNewtonMap N = build_map(two_roots(1, 1), Complex(1.0));
    CHECK(std::abs(N(Complex(2.0)) - Complex(1.25)) < 1e-15);       // classical Newton step
    CHECK(std::abs(N(Complex(1.0)) - Complex(1.0)) == 0.0);         // root is fixed
    CHECK_FALSE(is_finite(N(Complex(0.0))));                        // pole -> infinity
    CHECK_FALSE(is_finite(N(complex_infinity())));                  // infinity fixed

    int k = 1, m = 2;
    RelaxedNewtonMap N2 = build_map(two_roots(k, m), Complex(1.5));
    Complex pole(static_cast<double>(m - k) / (m + k));
    CHECK_FALSE(is_finite(N2(pole)));

    // huge |z| stays finite and contracts toward the infinity multiplier rate
    Complex big(1e200, 3e199);
    Complex img = N2(big);
    CHECK(is_finite(img));
    CHECK(std::abs(img / big - (Complex(3.0) - Complex(1.5)) / 3.0) < 1e-6);
}

TEST_CASE("map derivative") {
    SUBCASE("values at roots") {
        Complex h(0.7, 0.2);
        RelaxedNewtonMap N = build_map(two_roots(1, 3), h);
        CHECK(std::abs(N.derivative(Complex(1.0)) - (Complex(1.0) - h)) < 1e-14);
        CHECK(std::abs(N.derivative(Complex(-1.0)) - (Complex(1.0) - h / 3.0)) < 1e-14);
    }
    SUBCASE("indifferent classical case") {
        RelaxedNewtonMap N = build_map(two_roots(1, 1), Complex(2.0));
        CHECK(std::abs(N.derivative(Complex(1.0)) - Complex(-1.0)) < 1e-14);
    }
    SUBCASE("agrees with central differences") {
        std::mt19937_64 rng(103);
        FactoredPolynomial p = random_factored(rng);
        Complex h = random_admissible_h(rng, p);
        RelaxedNewtonMap N = build_map(p, h);
        int checked = 0;
        while (checked < 25) {
            Complex z = rand_complex(rng, 2.0);
            if (std::abs(N.den()(z)) < 0.2) continue;
            double step = 1e-6;
            Complex numeric = (N(z + Complex(step)) - N(z - Complex(step))) / (2.0 * step);
            Complex exact = N.derivative(z);
            CHECK(std::abs(numeric - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
            ++checked;
        }
    }
    SUBCASE("pole input rejected") {
        RelaxedNewtonMap N = build_map(two_roots(1, 1), Complex(1.0));
        CHECK_THROWS_AS(N.derivative(Complex(0.0)), PoleInput);
    }
}

TEST_CASE("fixed points") {
    SUBCASE("classical Newton on z^2-1") {
        auto fps = fixed_points(build_map(two_roots(1, 1), Complex(1.0)));
        REQUIRE(fps.size() == 3);
        CHECK(fps[0].classification == PointClass::Superattracting);
        CHECK(fps[1].classification == PointClass::Superattracting);
        CHECK(fps[2].at_infinity);
        CHECK(std::abs(fps[2].multiplier - Complex(2.0)) < 1e-14);
        CHECK(fps[2].classification == PointClass::Repelling);
    }
    SUBCASE("(z-1)(z+1)^2 at h=1") {
        auto fps = fixed_points(build_map(two_roots(1, 2), Complex(1.0)));
        CHECK(std::abs(fps[0].multiplier) < 1e-14);
        CHECK(std::abs(fps[1].multiplier - Complex(0.5)) < 1e-14);
        CHECK(std::abs(fps[2].multiplier - Complex(1.5)) < 1e-14);
    }
    SUBCASE("z^3-1 at the figure parameter") {
        Complex h(0.5, M_PI / 4.0);
        auto fps = fixed_points(build_map(unity_roots_poly(3), h));
        for (size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(fps[i].multiplier - (Complex(1.0) - h)) < 1e-14);
            CHECK(std::abs(std::abs(fps[i].multiplier) - 0.93105) < 1e-4);
            CHECK(fps[i].classification == PointClass::Attracting);
        }
    }
}

TEST_CASE("multiplier law against numeric derivatives") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        FactoredPolynomial p = random_factored(rng);
        Complex h = random_admissible_h(rng, p);
        RelaxedNewtonMap N = build_map(p, h);
        for (const RootFactor& f : p.factors()) {
            Complex want = Complex(1.0) - h / static_cast<double>(f.multiplicity);
            CHECK(std::abs(N.derivative(f.root) - want) < 1e-10);
        }
        // multiplier at infinity: derivative of w -> 1/N(1/w) at 0
        double step = 1e-5;
        auto S = [&](Complex w) { return Complex(1.0) / N(Complex(1.0) / w); };
        Complex numeric = (S(Complex(step)) - S(Complex(-step))) / (2.0 * step);
        Complex want = N.infinity_multiplier();
        CHECK(std::abs(numeric - want) < 1e-8 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("residue index sum") {
    SUBCASE("telescopes to one") {
        std::mt19937_64 rng(109);
        for (int trial = 0; trial < 100; ++trial) {
            FactoredPolynomial p = random_factored(rng);
            Complex h = random_admissible_h(rng, p);
            CHECK(std::abs(residue_index_sum(build_map(p, h)) - Complex(1.0)) < 1e-9);
        }
    }
    SUBCASE("hand values for (z-1)(z+1)^2 at h=1.5") {
        auto fps = fixed_points(build_map(two_roots(1, 2), Complex(1.5)));
        CHECK(std::abs(fps[0].residue_index - Complex(1.0 / 1.5)) < 1e-14);
        CHECK(std::abs(fps[1].residue_index - Complex(2.0 / 1.5)) < 1e-14);
        CHECK(std::abs(fps[2].residue_index - Complex(-1.0)) < 1e-14);
    }
    SUBCASE("z^5-1 at h=0.5: five indices of 2 and -9 at infinity") {
        auto fps = fixed_points(build_map(unity_roots_poly(5), Complex(0.5)));
        for (size_t i = 0; i < 5; ++i) CHECK(std::abs(fps[i].residue_index - Complex(2.0)) < 1e-12);
        CHECK(std::abs(fps[5].residue_index - Complex(-9.0)) < 1e-12);
    }
}

TEST_CASE("exactly one repelling fixed point for admissible h") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        FactoredPolynomial p = random_factored(rng);
        Complex h = random_admissible_h(rng, p);
        auto fps = fixed_points(build_map(p, h));
        int repelling = 0;
        for (const auto& fp : fps)
            if (fp.classification == PointClass::Repelling) ++repelling;
        CHECK(repelling == 1);
        CHECK(fps.back().classification == PointClass::Repelling);
    }
}

TEST_CASE("critical points") {
    SUBCASE("classical Newton on z^n-1: roots are superattracting critical points") {
        int n = 4;
        auto crit = critical_points(build_map(unity_roots_poly(n), Complex(1.0)));
        REQUIRE(static_cast<int>(crit.size()) == 2 * n - 2);
        std::vector<Complex> want(static_cast<size_t>(n - 2), Complex(0.0));
        for (int j = 0; j < n; ++j) want.push_back(std::polar(1.0, 2.0 * M_PI * j / n));
        CHECK(multiset_distance(crit, want) < 1e-10);
    }
    SUBCASE("z(z^2-1) matches the quartic specialization") {
        Complex h(0.9, 0.35);
        auto crit = critical_points(build_map(composite(1, 2), h));
        REQUIRE(crit.size() == 4);
        Polynomial quartic({Complex(1.0) - h, Complex(0.0), Complex(-6.0), Complex(0.0),
                            3.0 * (Complex(3.0) - h)});
        for (Complex z : crit) CHECK(std::abs(quartic(z)) < 1e-10);
    }
    SUBCASE("general cubic satisfies the critical quartic") {
        Complex h(0.5), a(1.0, 0.7);
        Polynomial p({a, Complex(-3.0), Complex(0.0), Complex(1.0)});
        auto crit = critical_points(build_map(factor(p), h));
        REQUIRE(crit.size() == 4);
        Polynomial quartic({3.0 * (Complex(1.0) - h), 2.0 * a * h, Complex(-6.0), Complex(0.0),
                            Complex(3.0) - h});
        for (Complex z : crit) CHECK(std::abs(quartic(z)) < 1e-8);
    }
    SUBCASE("count is 2 deg(N) - 2 and N' vanishes there") {
        std::mt19937_64 rng(127);
        for (int trial = 0; trial < 25; ++trial) {
            FactoredPolynomial p = random_factored(rng);
            Complex h = random_admissible_h(rng, p);
            RelaxedNewtonMap N = build_map(p, h);
            auto crit = critical_points(N);
            CHECK(static_cast<int>(crit.size()) == 2 * N.reduced_degree() - 2);
            for (Complex z : crit) {
                if (std::abs(N.den()(z)) < 1e-8) continue;
                CHECK(std::abs(N.derivative(z)) < 1e-6);
            }
        }
    }
    SUBCASE("closed forms match the general solver on the three classes") {
        Complex h(1.2, 0.4);
        auto check_pair = [&](const FactoredPolynomial& p) {
            RelaxedNewtonMap N = build_map(p, h);
            auto crit = critical_points(N);
            auto general = all_roots(critical_polynomial(N));
            CHECK(multiset_distance(crit, general) < 1e-8);
        };
        for (auto [k, m] : {std::pair{1, 2}, {2, 3}, {3, 3}}) check_pair(two_roots(k, m));
        for (int n : {3, 4, 5}) check_pair(unity_roots_poly(n));
        for (auto [m, n] : {std::pair{1, 2}, {2, 3}, {1, 4}}) check_pair(composite(m, n));
    }
}

TEST_CASE("scaling property") {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 20; ++trial) {
        FactoredPolynomial p = random_factored(rng);
        Complex h = random_admissible_h(rng, p);
        Complex A = rand_complex(rng);
        if (std::abs(A) < 0.3) A += 1.0;
        Complex B = rand_complex(rng);
        AffineMap T(A, B);
        // g = lambda (p o T): roots T^{-1}(r_i), same multiplicities
        std::vector<RootFactor> gf;
        for (const RootFactor& f : p.factors())
            gf.push_back({T.inverse()(f.root), f.multiplicity});
        RelaxedNewtonMap Np = build_map(p, h);
        RelaxedNewtonMap Ng = build_map(FactoredPolynomial(Complex(1.0), gf), h);
        int checked = 0;
        while (checked < 100) {
            Complex z = rand_complex(rng, 2.0);
            if (std::abs(Ng.den()(z)) < 0.1) continue;
            Complex lhs = T(Ng(z));
            Complex rhs = Np(T(z));
            if (!is_finite(lhs) || !is_finite(rhs) || std::abs(rhs) > 1e3) continue;
            CHECK(std::abs(lhs - rhs) < 1e-9);
            ++checked;
        }
    }
}

TEST_CASE("equal power identity") {
    CHECK(equal_power_check(two_roots(1, 1), Complex(0.7), 2) < 1e-12);
    CHECK(equal_power_check(two_roots(1, 2), Complex(0.5), 3) < 1e-12);
    CHECK(equal_power_check(two_roots(2, 3), Complex(1.1, 0.3), 1) == 0.0);
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 20; ++trial) {
        FactoredPolynomial p = random_factored(rng);
        Complex h = random_admissible_h(rng, p);
        std::uniform_int_distribution<int> nd(1, 3);
        CHECK(equal_power_check(p, h, nd(rng)) < 1e-12);
    }
}

TEST_CASE("quadratic characterization") {
    SUBCASE("equal multipliers") {
        auto qc = characterize_quadratic(EqualAttractingMultipliers{Complex(0.0)});
        CHECK(qc.h == Complex(1.0));
        CHECK(qc.k == 1);
        CHECK(qc.m == 1);
        auto qc2 = characterize_quadratic(EqualAttractingMultipliers{Complex(0.3, 0.2)});
        CHECK(std::abs(qc2.h - Complex(0.7, -0.2)) < 1e-15);
    }
    SUBCASE("superattracting plus rational") {
        auto qc = characterize_quadratic(SuperattractingWithMultiplier{Complex(0.5)});
        CHECK(qc.h == Complex(1.0));
        CHECK(qc.k == 1);
        CHECK(qc.m == 2);
        // realized map indeed has multipliers {0, 1/2}
        auto fps = fixed_points(build_map(two_roots(qc.k, qc.m), qc.h));
        CHECK(std::abs(fps[0].multiplier) < 1e-14);
        CHECK(std::abs(fps[1].multiplier - Complex(0.5)) < 1e-14);
    }
    SUBCASE("index ratio") {
        auto qc = characterize_quadratic(IndexRatio{0.5});
        CHECK(qc.scale_free);
        CHECK(qc.k == 1);
        CHECK(qc.m == 2);
        CHECK(qc.h == Complex(1.0));
        auto fps = fixed_points(build_map(two_roots(qc.k, qc.m), qc.h));
        CHECK(std::abs(fps[0].residue_index / fps[1].residue_index - Complex(0.5)) < 1e-12);
    }
    SUBCASE("unrealizable patterns") {
        CHECK_THROWS_AS(characterize_quadratic(EqualAttractingMultipliers{Complex(1.2)}),
                        NotRealizable);
        CHECK_THROWS_AS(characterize_quadratic(SuperattractingWithMultiplier{Complex(0.5, 0.4)}),
                        NotRealizable);
        CHECK_THROWS_AS(characterize_quadratic(SuperattractingWithMultiplier{Complex(0.123456789)}),
                        NotRealizable);
        CHECK_THROWS_AS(characterize_quadratic(IndexRatio{-2.0}), NotRealizable);
    }
}

TEST_CASE("general reconstruction") {
    SUBCASE("repelling at infinity") {
        Complex h(0.7);
        std::vector<FixedPointDatum> fps{{Complex(1.0), Complex(1.0) - h},
                                         {Complex(-1.0), Complex(1.0) - h}};
        auto rec = reconstruct_general(fps, ExtendedPoint::infinity(), h);
        CHECK(rec.phi.b() == Complex(0.0));
        CHECK(rec.phi.c() == Complex(0.0));
        REQUIRE(rec.p.distinct_count() == 2);
        CHECK(rec.p.factors()[0].multiplicity == 1);
        CHECK(rec.p.factors()[1].multiplicity == 1);
    }
    SUBCASE("finite repelling point moved to infinity") {
        Complex h(0.7);
        std::vector<FixedPointDatum> fps{{Complex(1.0), Complex(1.0) - h},
                                         {Complex(-1.0), Complex(1.0) - h}};
        auto rec = reconstruct_general(fps, ExtendedPoint::finite(Complex(0.0)), h);
        CHECK_FALSE(is_finite(rec.phi(Complex(0.0))));
        std::vector<Complex> roots = rec.p.distinct_roots();
        CHECK(multiset_distance(roots, {Complex(1.0), Complex(-1.0)}) < 1e-12);
    }
    SUBCASE("multiplicity two detected") {
        Complex h(0.8);
        std::vector<FixedPointDatum> fps{{Complex(2.0), Complex(1.0) - h},
                                         {Complex(-1.0), Complex(1.0) - h / 2.0}};
        auto rec = reconstruct_general(fps, ExtendedPoint::infinity(), h);
        CHECK(rec.p.factors()[0].multiplicity == 1);
        CHECK(rec.p.factors()[1].multiplicity == 2);
    }
    SUBCASE("non-integer multiplicity rejected") {
        Complex h(0.8);
        std::vector<FixedPointDatum> fps{{Complex(2.0), Complex(1.0) - h},
                                         {Complex(-1.0), Complex(0.4, 0.1)}};
        CHECK_THROWS_AS(reconstruct_general(fps, ExtendedPoint::infinity(), h),
                        NonIntegerMultiplicity);
    }
}

TEST_SUITE_END();

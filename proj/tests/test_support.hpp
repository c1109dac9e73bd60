#ifndef RENEWT_TEST_SUPPORT_HPP
#define RENEWT_TEST_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "renewt/poly.hpp"

namespace renewt::testing {

inline Complex rand_complex(std::mt19937_64& rng, double box = 2.0) {
    std::uniform_real_distribution<double> u(-box, box);
    double re = u(rng), im = u(rng);
    return {re, im};
}

// Random factored polynomial: distinct roots separated by >= min_sep,
// multiplicities summing to at most max_degree.
inline FactoredPolynomial random_factored(std::mt19937_64& rng, int max_degree = 6,
                                          double min_sep = 0.25) {
    std::uniform_int_distribution<int> count_d(2, std::min(4, max_degree));
    int count = count_d(rng);
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < count) {
        Complex cand = rand_complex(rng);
        bool ok = true;
        for (Complex r : roots)
            if (std::abs(r - cand) < min_sep) ok = false;
        if (ok) roots.push_back(cand);
    }
    int budget = max_degree - count;
    std::vector<RootFactor> factors;
    for (int i = 0; i < count; ++i) {
        std::uniform_int_distribution<int> extra(0, budget);
        int e = extra(rng);
        budget -= e;
        factors.push_back({roots[static_cast<size_t>(i)], 1 + e});
    }
    return {Complex(1.0), factors};
}

// Random h in the admissibility disk D_m(m) of the polynomial.
inline Complex random_admissible_h(std::mt19937_64& rng, const FactoredPolynomial& p) {
    double m = static_cast<double>(p.min_multiplicity());
    std::uniform_real_distribution<double> rad(0.05, 0.95), ang(0.0, 2.0 * M_PI);
    double r = rad(rng), a = ang(rng);
    return Complex(m) + m * r * Complex(std::cos(a), std::sin(a));
}

inline FactoredPolynomial unity_roots_poly(int n) {
    std::vector<RootFactor> fs;
    for (int j = 0; j < n; ++j) fs.push_back({std::polar(1.0, 2.0 * M_PI * j / n), 1});
    return {Complex(1.0), fs};
}

} // namespace renewt::testing

#endif

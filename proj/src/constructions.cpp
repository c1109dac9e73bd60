#include "renewt/constructions.hpp"

#include <cmath>

#include "renewt/errors.hpp"
#include "renewt/polyroot.hpp"

namespace renewt {

FactoredPolynomial two_root_rep(int k, int m) {
    if (k < 1 || m < 1) throw InvalidParameter("two_root_rep: k, m must be >= 1");
    return {Complex(1.0), {{Complex(1.0), k}, {Complex(-1.0), m}}};
}

FactoredPolynomial unicritical_rep(int n) {
    if (n < 2) throw InvalidParameter("unicritical_rep: n must be >= 2");
    std::vector<RootFactor> fs;
    fs.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) fs.push_back({std::polar(1.0, 2.0 * M_PI * j / n), 1});
    return {Complex(1.0), std::move(fs)};
}

FactoredPolynomial composite_rep(int m, int n) {
    if (m < 1) throw InvalidParameter("composite_rep: m must be >= 1");
    if (n < 2) throw InvalidParameter("composite_rep: n must be >= 2");
    std::vector<RootFactor> fs{{Complex(0.0), m}};
    for (int j = 0; j < n; ++j) fs.push_back({std::polar(1.0, 2.0 * M_PI * j / n), 1});
    return {Complex(1.0), std::move(fs)};
}

RelaxedNewtonMap cubic_map(Complex h, Complex a) {
    Polynomial p({a, Complex(-3.0), Complex(0.0), Complex(1.0)});
    return build_map(factor(p), h);
}

namespace {

Complex critical_quartic(Complex h, Complex a, Complex xi) {
    Complex x2 = xi * xi;
    return (Complex(3.0) - h) * x2 * x2 - 6.0 * x2 + 2.0 * a * h * xi +
           3.0 * (Complex(1.0) - h);
}

} // namespace

NonconvergentCubic nonconvergent_cubic(Complex h, int sign) {
    if (sign != 1 && sign != -1)
        throw InvalidParameter("nonconvergent_cubic: sign must be +1 or -1");
    if (!(std::abs(h - Complex(1.0)) < 1.0))
        throw InvalidParameter("nonconvergent_cubic: h must satisfy |h - 1| < 1");
    if (h == Complex(0.0)) throw InvalidParameter("nonconvergent_cubic: h must be nonzero");
    Complex disc = h * h - 8.0 * h + 13.0;
    if (std::abs(disc) < 1e-12)
        throw InvalidParameter("nonconvergent_cubic: h^2 - 8h + 13 vanishes");

    Complex sq = std::sqrt(disc);  // principal branch
    Complex xi = static_cast<double>(sign) * (h - Complex(1.0)) / sq;
    Complex num = 2.0 * (((h - 12.0) * h + 57.0) * h * h - 127.0 * h + 108.0);
    Complex a_closed = num / (h * disc * sq);
    Complex a;
    if (std::abs(xi) >= 1e-7) {
        a = ((h - 3.0) * xi * xi * xi * xi + 6.0 * xi * xi + 3.0 * (h - Complex(1.0))) /
            (2.0 * h * xi);
        // Cross-check against the stacked closed form (sign-free).
        double err = std::min(std::abs(a - a_closed), std::abs(a + a_closed));
        if (!(err <= 1e-10 * std::max(1.0, std::abs(a))))
            throw VerificationFailure("nonconvergent_cubic: closed form for a disagrees with "
                                      "the critical-equation value");
    } else {
        // h = 1 collapses xi to 0 and the critical-equation quotient to 0/0;
        // the closed form stays finite and continues the sign branch.
        a = static_cast<double>(sign) * a_closed;
    }
    if (!is_finite(a))
        throw VerificationFailure("nonconvergent_cubic: a is not finite");

    if (std::abs(a - Complex(2.0)) < 1e-6 || std::abs(a + Complex(2.0)) < 1e-6)
        throw VerificationFailure("nonconvergent_cubic: a = +-2, cubic degenerates");

    RelaxedNewtonMap N = cubic_map(h, a);
    if (N.reduced_degree() != 3)
        throw VerificationFailure("nonconvergent_cubic: cubic does not have three distinct roots");

    if (std::abs(critical_quartic(h, a, xi)) > 1e-10)
        throw VerificationFailure("nonconvergent_cubic: xi misses the critical equation");

    Complex partner = N(xi);
    if (!is_finite(partner) || std::abs(partner - xi) < 1e-6)
        throw VerificationFailure("nonconvergent_cubic: cycle degenerates to a fixed point");
    if (std::abs(N(partner) - xi) > 1e-10)
        throw VerificationFailure("nonconvergent_cubic: xi is not 2-periodic");
    if (std::abs(N.derivative(xi) * N.derivative(partner)) > 1e-8)
        throw VerificationFailure("nonconvergent_cubic: cycle is not superattracting");

    return {h, sign, a, xi, partner};
}

CycleResiduals verify_superattracting_2cycle(const NonconvergentCubic& c) {
    RelaxedNewtonMap N = cubic_map(c.h, c.a);
    Complex partner = N(c.xi);
    CycleResiduals r;
    r.residual_crit = std::abs(critical_quartic(c.h, c.a, c.xi));
    if (!is_finite(partner)) {
        r.residual_fix = std::numeric_limits<double>::infinity();
        r.multiplier_mag = std::numeric_limits<double>::infinity();
        return r;
    }
    r.residual_fix = std::abs(N(partner) - c.xi);
    r.multiplier_mag = std::abs(N.derivative(c.xi) * N.derivative(partner));
    return r;
}

} // namespace renewt

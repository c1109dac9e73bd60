#ifndef RENEWT_CONSTRUCTIONS_HPP
#define RENEWT_CONSTRUCTIONS_HPP

#include "renewt/newton_map.hpp"

namespace renewt {

/// (z-1)^k (z+1)^m, the two-root representative.
FactoredPolynomial two_root_rep(int k, int m);

/// z^n - 1 as its n simple roots of unity, the unicritical representative.
FactoredPolynomial unicritical_rep(int n);

/// z^m (z^n - 1): the origin with multiplicity m plus the n-th roots of unity.
FactoredPolynomial composite_rep(int m, int n);

/// A cubic z^3 - 3z + a whose relaxed Newton map has a 2-periodic
/// superattracting cycle through the critical point xi. Valid for |h-1| < 1.
/// xi = sign * (h-1)/sqrt(h^2-8h+13) with the principal square root; the
/// two sign branches are conjugate under z -> -z.
struct NonconvergentCubic {
    Complex h;
    int sign;         // +1 or -1
    Complex a;
    Complex xi;       // critical 2-periodic point
    Complex partner;  // N_{h,p}(xi), the other cycle point
};

struct CycleResiduals {
    double residual_fix;    // |N^2(xi) - xi|
    double residual_crit;   // |(3-h) xi^4 - 6 xi^2 + 2 a h xi + 3(1-h)|
    double multiplier_mag;  // |N'(xi) N'(partner)|
};

/// Construct and fully verify the cubic. Every invariant (critical equation,
/// 2-periodicity, superattraction, a != +-2, closed-form cross-check of a)
/// is recomputed before returning; a construction that misses tolerance is
/// rejected with VerificationFailure, never returned silently.
NonconvergentCubic nonconvergent_cubic(Complex h, int sign);

/// Recompute the three residuals from scratch from (h, a, xi) alone.
CycleResiduals verify_superattracting_2cycle(const NonconvergentCubic& c);

/// The map N_{h, z^3-3z+a} for a construction (roots recovered by polyroot).
RelaxedNewtonMap cubic_map(Complex h, Complex a);

} // namespace renewt

#endif

#ifndef RENEWT_POLYROOT_HPP
#define RENEWT_POLYROOT_HPP

#include <vector>

#include "renewt/poly.hpp"

namespace renewt {

struct RootCluster {
    Complex center;    // arithmetic mean of members
    int multiplicity;  // member count
    double residual;   // max |p| over members; 0 when no polynomial was supplied
};

/// All complex roots of p, with repetition, sorted by (re, im).
///
/// Degrees 1 and 2 use closed forms; otherwise Aberth-Ehrlich simultaneous
/// iteration from a Cauchy-bound circle rotated by a fixed irrational angle.
/// Every returned z satisfies |p(z)| <= tol * sum_k |a_k||z|^k. Multiple
/// roots come back as near-coincident simple approximations; use
/// cluster_roots to resolve multiplicities.
///
/// Throws NoConvergence if the residual target is unmet after `max_sweeps`.
std::vector<Complex> all_roots(const Polynomial& p, double tol = 1e-12, int max_sweeps = 200);

/// Single-linkage clustering of root approximations at the given radius.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& approx, double radius);
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& approx, double radius,
                                       const Polynomial& p);

/// Solve + cluster: ground-truth factored form of a dense polynomial.
/// The default radius accommodates the ~eps^{1/m} spread of an m-fold root
/// at unit scale for m <= 4.
FactoredPolynomial factor(const Polynomial& p, double cluster_radius = 1e-4, double tol = 1e-12);

} // namespace renewt

#endif

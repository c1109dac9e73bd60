#ifndef RENEWT_NEWTON_MAP_HPP
#define RENEWT_NEWTON_MAP_HPP

#include <variant>
#include <vector>

#include "renewt/poly.hpp"

namespace renewt {

enum class PointClass { Superattracting, Attracting, Repelling, Indifferent };

const char* to_string(PointClass c);

// |multiplier| within this of 0 counts as superattracting, within this of 1
// as indifferent.
inline constexpr double kClassifyTol = 1e-12;

PointClass classify_multiplier(Complex lambda);

struct FixedPointRecord {
    bool at_infinity;
    Complex location;       // undefined when at_infinity
    int multiplicity;       // root multiplicity; 0 at infinity
    Complex multiplier;
    PointClass classification;
    Complex residue_index;  // 1/(1 - multiplier)
};

/// The rational map N_{h,p}(z) = z - h p(z)/p'(z), held in reduced form:
/// num(z) = z*s(z) - h*q(z), den(z) = s(z), where q is the monic product of
/// the distinct roots of p and s = sum_i m_i prod_{j!=i}(z - r_j). Common
/// (z-r)^{m-1} factors of p and p' are cancelled analytically from the
/// factored form, never by numeric GCD.
class RelaxedNewtonMap {
public:
    RelaxedNewtonMap(FactoredPolynomial p, Complex h);

    const FactoredPolynomial& polynomial() const { return p_; }
    Complex h() const { return h_; }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int reduced_degree() const { return p_.distinct_count(); }
    int polynomial_degree() const { return degree_; }

    // True when h lies in D_m(m) = {|z - m| < m}, m the least multiplicity.
    // Outside that disk the map is still well defined; callers surface this
    // as a warning, not an error.
    bool h_admissible() const { return h_admissible_; }

    // Extended evaluation: total on the Riemann sphere. Poles and the point
    // at infinity map to complex_infinity().
    Complex operator()(Complex z) const;

    // N'(z); throws PoleInput at exact poles.
    Complex derivative(Complex z) const;

    Complex infinity_multiplier() const;  // d/(d - h)

private:
    FactoredPolynomial p_;
    Complex h_;
    Polynomial num_, den_;
    Polynomial num_deriv_, den_deriv_;
    int degree_;
    bool h_admissible_;
};

/// Requires p to have at least two distinct roots and h != 0; otherwise the
/// map degenerates to an affine map (DegenerateInput).
RelaxedNewtonMap build_map(const FactoredPolynomial& p, Complex h);

/// One record per distinct root (multiplier 1 - h/m) plus one for infinity
/// (multiplier d/(d-h)), in the order of p's factors, infinity last.
std::vector<FixedPointRecord> fixed_points(const RelaxedNewtonMap& N);

/// Sum of 1/(1-lambda) over all fixed points; analytically 1.
/// Throws ParabolicFixedPoint if some multiplier equals 1 within tolerance.
Complex residue_index_sum(const RelaxedNewtonMap& N);

/// The polynomial s^2 + h (q s' - q' s) whose roots are the critical points
/// of N; this is (1-h)(p')^2 + h p p'' restricted to the reduced map.
/// Coefficients below the rounding floor are shaved to exact zeros so that
/// structural factors (e.g. z^{n-2} for z^n - 1) survive construction.
Polynomial critical_polynomial(const RelaxedNewtonMap& N);

/// The 2*deg(N) - 2 critical points, with multiplicity, sorted by (re, im).
/// Recognized representative classes (two distinct roots; z^n - 1;
/// z^m (z^n - 1)) use their closed forms; anything else solves
/// critical_polynomial via polyroot.
std::vector<Complex> critical_points(const RelaxedNewtonMap& N);

/// Builds N_{h,p} and N_{nh,p^n}, cross-normalizes leading coefficients,
/// and returns the max coefficient difference (identically 0 for n = 1).
double equal_power_check(const FactoredPolynomial& p, Complex h, int n);

/// z -> (a z + b)/(c z + d), ad - bc != 0, extended to the sphere.
class MobiusMap {
public:
    MobiusMap(Complex a, Complex b, Complex c, Complex d);
    static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex operator()(Complex z) const;
    MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }
    MobiusMap compose(const MobiusMap& o) const;

private:
    Complex a_, b_, c_, d_;
};

struct ExtendedPoint {
    bool at_infinity;
    Complex value;  // undefined when at_infinity

    static ExtendedPoint infinity() { return {true, Complex(0.0)}; }
    static ExtendedPoint finite(Complex z) { return {false, z}; }
};

struct FixedPointDatum {
    Complex location;
    Complex multiplier;
};

struct Reconstruction {
    MobiusMap phi;          // sends the repelling point to infinity
    FactoredPolynomial p;   // roots phi(alpha_i) with multiplicities m_i
};

// Tolerance for reading h/(1 - mu) as a positive integer multiplicity.
inline constexpr double kIntegerMultiplicityTol = 1e-6;

/// General characterization: recover (phi, p) with R = phi^{-1} o N_{h,p} o phi
/// from fixed-point data. Each attracting multiplier mu_i must satisfy
/// h/(1 - mu_i) ~ positive integer (NonIntegerMultiplicity otherwise); the
/// result is verified by rebuilding the map and comparing multipliers.
Reconstruction reconstruct_general(const std::vector<FixedPointDatum>& attracting,
                                   const ExtendedPoint& repelling, Complex h);

// Quadratic characterization inputs: the three recognized data patterns.
struct EqualAttractingMultipliers {
    Complex lambda;
};
struct SuperattractingWithMultiplier {
    Complex other;  // multiplier n/m of the second attracting fixed point
};
struct IndexRatio {
    double ratio;  // iota(first)/iota(second) = k/m
};
using QuadraticData =
    std::variant<EqualAttractingMultipliers, SuperattractingWithMultiplier, IndexRatio>;

struct QuadraticCharacterization {
    Complex h;
    int k;  // p = (z-1)^k (z+1)^m
    int m;
    bool scale_free;  // case (iii): h determined only up to a nonzero scale
    int case_id;      // 1, 2 or 3
};

/// Realize quadratic fixed-point data as a relaxed Newton map.
/// Throws NotRealizable if the pattern fits none of the three cases.
QuadraticCharacterization characterize_quadratic(const QuadraticData& data);

} // namespace renewt

#endif

#ifndef RENEWT_POLY_HPP
#define RENEWT_POLY_HPP

#include <cmath>
#include <complex>
#include <vector>

namespace renewt {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Marker value for the point at infinity on the Riemann sphere.
inline Complex complex_infinity() {
    double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
}

/// Dense complex polynomial, coefficients in ascending degree order.
/// Always trimmed: the stored leading coefficient is nonzero unless the
/// polynomial is identically zero (then a single zero coefficient is kept).
class Polynomial {
public:
    Polynomial() : coeffs_{Complex(0.0)} {}
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    // Monic product of (z - r) over the given roots.
    static Polynomial from_roots(const std::vector<Complex>& roots);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const;
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int k) const;
    Complex leading() const { return coeffs_.back(); }

    // Horner evaluation.
    Complex operator()(Complex z) const;

private:
    std::vector<Complex> coeffs_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Complex s, const Polynomial& p);

Polynomial derivative(const Polynomial& p);
Polynomial power(const Polynomial& p, int n);

// Largest |coefficient| of either argument; the scale used for relative
// coefficient comparisons.
double coeff_scale(const Polynomial& a, const Polynomial& b);
double max_coeff_diff(const Polynomial& a, const Polynomial& b);
bool approx_equal(const Polynomial& a, const Polynomial& b, double rel_tol = 1e-12);

// Zero out coefficients below rel_floor * max|coeff|: strips rounding dust so
// structural zeros (exact poles at the origin, exact monomial factors)
// survive coefficient construction.
Polynomial shave_dust(const Polynomial& p, double rel_floor = 1.42e-14);

/// z -> a*z + b with a != 0.
class AffineMap {
public:
    AffineMap(Complex a, Complex b);
    static AffineMap identity() { return {Complex(1.0), Complex(0.0)}; }

    Complex scale() const { return a_; }
    Complex offset() const { return b_; }
    Complex operator()(Complex z) const { return a_ * z + b_; }
    AffineMap inverse() const { return {Complex(1.0) / a_, -b_ / a_}; }
    // (this o other)(z) = this(other(z))
    AffineMap compose(const AffineMap& other) const {
        return {a_ * other.a_, a_ * other.b_ + b_};
    }

private:
    Complex a_, b_;
};

struct RootFactor {
    Complex root;
    int multiplicity;
};

/// Polynomial as leading * prod (z - root_i)^{m_i} with pairwise distinct roots.
class FactoredPolynomial {
public:
    FactoredPolynomial(Complex leading, std::vector<RootFactor> factors);

    Complex leading() const { return leading_; }
    const std::vector<RootFactor>& factors() const { return factors_; }
    int distinct_count() const { return static_cast<int>(factors_.size()); }
    int degree() const;
    int min_multiplicity() const;
    std::vector<Complex> distinct_roots() const;

private:
    Complex leading_;
    std::vector<RootFactor> factors_;
};

// Minimal separation treated as "distinct" for factored roots, scaled by
// max(1, |root|).
inline constexpr double kRootMergeRadius = 1e-9;

Polynomial expand(const FactoredPolynomial& f);

// g = lambda * (p o T).
Polynomial affine_conjugate(const Polynomial& p, const AffineMap& T, Complex lambda);

struct CubicReduction {
    Complex a;      // conjugated form is z^3 - 3z + a
    AffineMap map;  // T with affine_conjugate(p, T, lambda) = z^3 - 3z + a
    Complex lambda;
};

// Reduce a non-unicritical cubic to the representative z^3 - 3z + a.
// Throws UnicriticalInput when a1^2 == 3*a2 after monic normalization.
CubicReduction reduce_cubic(const Polynomial& p);

struct Normalized {
    Polynomial poly;  // monic, coefficient of z^{deg-1} exactly zero
    AffineMap map;    // poly = (1/lead) * (p o map)
};

Normalized normalize(const Polynomial& p);

} // namespace renewt

#endif

#include "renewt/poly.hpp"

#include <algorithm>

#include "renewt/errors.hpp"

namespace renewt {

namespace {

void trim(std::vector<Complex>& c) {
    while (c.size() > 1 && c.back() == Complex(0.0)) c.pop_back();
    if (c.empty()) c.push_back(Complex(0.0));
}

} // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim(coeffs_);
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1.0)};
    for (Complex r : roots) {
        c.push_back(Complex(0.0));
        for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
}

bool Polynomial::is_zero() const {
    return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0);
}

Complex Polynomial::coeff(int k) const {
    if (k < 0 || k > degree()) return Complex(0.0);
    return coeffs_[static_cast<size_t>(k)];
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc = coeffs_.back();
    for (size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs().size(), b.coeffs().size()), Complex(0.0));
    for (size_t k = 0; k < c.size(); ++k)
        c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (Complex(-1.0) * b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Complex> c(a.coeffs().size() + b.coeffs().size() - 1, Complex(0.0));
    for (size_t i = 0; i < a.coeffs().size(); ++i)
        for (size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& p) {
    std::vector<Complex> c = p.coeffs();
    for (Complex& x : c) x *= s;
    return Polynomial(std::move(c));
}

Polynomial derivative(const Polynomial& p) {
    if (p.degree() == 0) return Polynomial();
    std::vector<Complex> c(static_cast<size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k)
        c[static_cast<size_t>(k - 1)] = static_cast<double>(k) * p.coeff(k);
    return Polynomial(std::move(c));
}

Polynomial power(const Polynomial& p, int n) {
    if (n < 1) throw InvalidParameter("power: exponent must be a positive integer");
    Polynomial acc = p;
    for (int i = 1; i < n; ++i) acc = acc * p;
    return acc;
}

double coeff_scale(const Polynomial& a, const Polynomial& b) {
    double s = 0.0;
    for (Complex c : a.coeffs()) s = std::max(s, std::abs(c));
    for (Complex c : b.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
    double d = 0.0;
    int deg = std::max(a.degree(), b.degree());
    for (int k = 0; k <= deg; ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
    return d;
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double rel_tol) {
    double s = coeff_scale(a, b);
    return max_coeff_diff(a, b) <= rel_tol * std::max(1.0, s);
}

Polynomial shave_dust(const Polynomial& p, double rel_floor) {
    double cmax = 0.0;
    for (Complex c : p.coeffs()) cmax = std::max(cmax, std::abs(c));
    std::vector<Complex> out = p.coeffs();
    for (Complex& c : out)
        if (std::abs(c) <= rel_floor * cmax) c = Complex(0.0);
    return Polynomial(std::move(out));
}

AffineMap::AffineMap(Complex a, Complex b) : a_(a), b_(b) {
    if (a == Complex(0.0) || !is_finite(a) || !is_finite(b))
        throw InvalidParameter("AffineMap: scale must be finite and nonzero");
}

FactoredPolynomial::FactoredPolynomial(Complex leading, std::vector<RootFactor> factors)
    : leading_(leading), factors_(std::move(factors)) {
    if (leading_ == Complex(0.0) || !is_finite(leading_))
        throw InvalidParameter("FactoredPolynomial: leading coefficient must be finite, nonzero");
    for (const RootFactor& f : factors_) {
        if (f.multiplicity < 1)
            throw InvalidParameter("FactoredPolynomial: multiplicities must be positive");
        if (!is_finite(f.root)) throw InvalidParameter("FactoredPolynomial: roots must be finite");
    }
    for (size_t i = 0; i < factors_.size(); ++i)
        for (size_t j = i + 1; j < factors_.size(); ++j) {
            double sep = std::abs(factors_[i].root - factors_[j].root);
            double scale = std::max({1.0, std::abs(factors_[i].root), std::abs(factors_[j].root)});
            if (sep <= kRootMergeRadius * scale)
                throw InvalidParameter("FactoredPolynomial: roots must be pairwise distinct");
        }
}

int FactoredPolynomial::degree() const {
    int d = 0;
    for (const RootFactor& f : factors_) d += f.multiplicity;
    return d;
}

int FactoredPolynomial::min_multiplicity() const {
    int m = 0;
    for (const RootFactor& f : factors_)
        m = (m == 0) ? f.multiplicity : std::min(m, f.multiplicity);
    return m;
}

std::vector<Complex> FactoredPolynomial::distinct_roots() const {
    std::vector<Complex> out;
    out.reserve(factors_.size());
    for (const RootFactor& f : factors_) out.push_back(f.root);
    return out;
}

Polynomial expand(const FactoredPolynomial& f) {
    std::vector<Complex> roots;
    for (const RootFactor& rf : f.factors())
        for (int i = 0; i < rf.multiplicity; ++i) roots.push_back(rf.root);
    return f.leading() * Polynomial::from_roots(roots);
}

Polynomial affine_conjugate(const Polynomial& p, const AffineMap& T, Complex lambda) {
    if (lambda == Complex(0.0)) throw InvalidParameter("affine_conjugate: lambda must be nonzero");
    // Horner in polynomial space: acc = acc*(a z + b) + c_k.
    Polynomial linear({T.offset(), T.scale()});
    Polynomial acc = Polynomial::constant(p.leading());
    for (int k = p.degree() - 1; k >= 0; --k)
        acc = acc * linear + Polynomial::constant(p.coeff(k));
    return lambda * acc;
}

CubicReduction reduce_cubic(const Polynomial& p) {
    if (p.degree() != 3) throw InvalidParameter("reduce_cubic: polynomial must have degree 3");
    Complex lead = p.leading();
    Complex a1 = p.coeff(2) / lead;
    Complex a2 = p.coeff(1) / lead;
    Complex disc = a1 * a1 - 3.0 * a2;
    double scale = std::max({1.0, std::abs(a1) * std::abs(a1), std::abs(a2)});
    if (std::abs(disc) <= 1e-12 * scale)
        throw UnicriticalInput("reduce_cubic: a1^2 == 3*a2, cubic is unicritical");
    Complex xi = -a1 / 3.0;
    Complex A = std::sqrt(disc / 9.0);  // principal branch
    Complex lambda = Complex(1.0) / (lead * A * A * A);
    AffineMap T(A, xi);
    Complex a = p(xi) * lambda;
    return {a, T, lambda};
}

Normalized normalize(const Polynomial& p) {
    if (p.degree() < 2) throw InvalidParameter("normalize: degree must be at least 2");
    int d = p.degree();
    Complex t = -p.coeff(d - 1) / (static_cast<double>(d) * p.leading());
    AffineMap T(Complex(1.0), t);
    Polynomial q = affine_conjugate(p, T, Complex(1.0) / p.leading());
    std::vector<Complex> c = q.coeffs();
    c[static_cast<size_t>(d - 1)] = Complex(0.0);  // zero by construction; make it exact
    c[static_cast<size_t>(d)] = Complex(1.0);
    return {Polynomial(std::move(c)), T};
}

} // namespace renewt

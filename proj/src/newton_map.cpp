#include "renewt/newton_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "renewt/errors.hpp"
#include "renewt/polyroot.hpp"

namespace renewt {

namespace {

void sort_by_re_im(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

// s(z) = sum_i m_i prod_{j != i} (z - r_j); equals p'/(lead * common factors).
Polynomial logarithmic_numerator(const FactoredPolynomial& p) {
    Polynomial s;
    const auto& fs = p.factors();
    for (size_t i = 0; i < fs.size(); ++i) {
        std::vector<Complex> others;
        for (size_t j = 0; j < fs.size(); ++j)
            if (j != i) others.push_back(fs[j].root);
        s = s + Complex(static_cast<double>(fs[i].multiplicity)) * Polynomial::from_roots(others);
    }
    return s;
}

// All n-th roots of w.
std::vector<Complex> nth_roots(Complex w, int n) {
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(n));
    if (w == Complex(0.0)) {
        out.assign(static_cast<size_t>(n), Complex(0.0));
        return out;
    }
    double rho = std::pow(std::abs(w), 1.0 / n);
    double phi = std::arg(w) / n;
    for (int j = 0; j < n; ++j) {
        double a = phi + 2.0 * M_PI * j / n;
        out.emplace_back(rho * std::cos(a), rho * std::sin(a));
    }
    return out;
}

bool roots_of_unity(const std::vector<RootFactor>& fs, int n, double tol = 1e-9) {
    if (static_cast<int>(fs.size()) != n) return false;
    for (const RootFactor& f : fs) {
        if (f.multiplicity != 1) return false;
        Complex zn(1.0);
        for (int i = 0; i < n; ++i) zn *= f.root;
        if (std::abs(zn - Complex(1.0)) > tol) return false;
        if (std::abs(std::abs(f.root) - 1.0) > tol) return false;
    }
    return true;
}

std::pair<Complex, Complex> quadratic_closed_form(Complex a, Complex b, Complex c) {
    if (c == Complex(0.0)) return {Complex(0.0), -b / a};
    Complex sq = std::sqrt(b * b - 4.0 * a * c);
    if ((std::conj(b) * sq).real() < 0.0) sq = -sq;
    Complex q = -0.5 * (b + sq);
    if (q == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
    return {q / a, c / q};
}

std::optional<std::pair<int, int>> detect_rational(double x, int max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    for (int den = 1; den <= max_den; ++den) {
        double num = std::round(x * den);
        if (std::abs(x - num / den) <= tol) {
            int n = static_cast<int>(num);
            int g = std::gcd(std::abs(n), den);
            if (g == 0) return std::nullopt;
            return std::make_pair(n / g, den / g);
        }
    }
    return std::nullopt;
}

} // namespace

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Superattracting: return "superattracting";
        case PointClass::Attracting: return "attracting";
        case PointClass::Repelling: return "repelling";
        case PointClass::Indifferent: return "indifferent";
    }
    return "?";
}

PointClass classify_multiplier(Complex lambda) {
    double a = std::abs(lambda);
    if (a <= kClassifyTol) return PointClass::Superattracting;
    if (std::abs(a - 1.0) <= kClassifyTol) return PointClass::Indifferent;
    return a < 1.0 ? PointClass::Attracting : PointClass::Repelling;
}

RelaxedNewtonMap::RelaxedNewtonMap(FactoredPolynomial p, Complex h)
    : p_(std::move(p)), h_(h) {
    if (h_ == Complex(0.0) || !is_finite(h_))
        throw InvalidParameter("build_map: h must be finite and nonzero");
    if (p_.distinct_count() < 2)
        throw DegenerateInput("build_map: p must have at least two distinct roots "
                              "(otherwise N_{h,p} is affine)");
    degree_ = p_.degree();
    Polynomial q = Polynomial::from_roots(p_.distinct_roots());
    Polynomial s = logarithmic_numerator(p_);
    // num = z*s - h*q
    std::vector<Complex> zs(s.coeffs().size() + 1, Complex(0.0));
    for (size_t k = 0; k < s.coeffs().size(); ++k) zs[k + 1] = s.coeffs()[k];
    // Shaving keeps structural zeros exact: z^n - 1 built from polar() roots
    // must still have den = n z^{n-1} with an exact pole at the origin.
    num_ = shave_dust(Polynomial(std::move(zs)) - h_ * q);
    den_ = shave_dust(std::move(s));
    num_deriv_ = renewt::derivative(num_);
    den_deriv_ = renewt::derivative(den_);
    double m = static_cast<double>(p_.min_multiplicity());
    h_admissible_ = std::abs(h_ - m) < m;
}

Complex RelaxedNewtonMap::operator()(Complex z) const {
    if (!is_finite(z)) return complex_infinity();
    if (std::abs(z) > 1e100) {
        // Evaluate in the w = 1/z chart to dodge overflow: with e the degree
        // gap, N(z) = z^e * A(w)/B(w), A and B the reversed coefficients.
        Complex w = Complex(1.0) / z;
        Complex a(0.0), b(0.0);
        for (int k = 0; k <= num_.degree(); ++k) a = a * w + num_.coeff(k);
        for (int k = 0; k <= den_.degree(); ++k) b = b * w + den_.coeff(k);
        int e = num_.degree() - den_.degree();
        Complex zpow(1.0);
        for (int i = 0; i < std::abs(e); ++i) zpow *= (e > 0 ? z : w);
        if (b == Complex(0.0)) return complex_infinity();
        Complex out = zpow * a / b;
        return is_finite(out) ? out : complex_infinity();
    }
    Complex nv = num_(z);
    Complex dv = den_(z);
    if (dv == Complex(0.0)) return complex_infinity();
    Complex out = nv / dv;
    return is_finite(out) ? out : complex_infinity();
}

Complex RelaxedNewtonMap::derivative(Complex z) const {
    if (!is_finite(z)) throw PoleInput("map_derivative: z must be finite");
    Complex dv = den_(z);
    if (dv == Complex(0.0)) throw PoleInput("map_derivative: z is a pole of the map");
    Complex nv = num_(z);
    return (num_deriv_(z) * dv - nv * den_deriv_(z)) / (dv * dv);
}

Complex RelaxedNewtonMap::infinity_multiplier() const {
    Complex d(static_cast<double>(degree_));
    if (d == h_) return complex_infinity();
    return d / (d - h_);
}

RelaxedNewtonMap build_map(const FactoredPolynomial& p, Complex h) {
    return RelaxedNewtonMap(p, h);
}

std::vector<FixedPointRecord> fixed_points(const RelaxedNewtonMap& N) {
    std::vector<FixedPointRecord> out;
    Complex h = N.h();
    for (const RootFactor& f : N.polynomial().factors()) {
        Complex lambda = Complex(1.0) - h / static_cast<double>(f.multiplicity);
        out.push_back({false, f.root, f.multiplicity, lambda, classify_multiplier(lambda),
                       Complex(1.0) / (Complex(1.0) - lambda)});
    }
    Complex lam_inf = N.infinity_multiplier();
    Complex idx_inf = is_finite(lam_inf) ? Complex(1.0) / (Complex(1.0) - lam_inf)
                                         : Complex(0.0);
    out.push_back({true, Complex(0.0), 0, lam_inf,
                   is_finite(lam_inf) ? classify_multiplier(lam_inf) : PointClass::Repelling,
                   idx_inf});
    return out;
}

Complex residue_index_sum(const RelaxedNewtonMap& N) {
    Complex sum(0.0);
    for (const FixedPointRecord& r : fixed_points(N)) {
        if (std::abs(Complex(1.0) - r.multiplier) <= 1e-12)
            throw ParabolicFixedPoint("residue_index_sum: a fixed point has multiplier 1");
        sum += r.residue_index;
    }
    return sum;
}

Polynomial critical_polynomial(const RelaxedNewtonMap& N) {
    const FactoredPolynomial& p = N.polynomial();
    Polynomial q = Polynomial::from_roots(p.distinct_roots());
    Polynomial s = logarithmic_numerator(p);
    return shave_dust(s * s + N.h() * (q * derivative(s) - derivative(q) * s));
}

std::vector<Complex> critical_points(const RelaxedNewtonMap& N) {
    const FactoredPolynomial& p = N.polynomial();
    Complex h = N.h();
    int k = p.distinct_count();
    std::vector<Complex> out;

    Polynomial q = Polynomial::from_roots(p.distinct_roots());
    Polynomial s = logarithmic_numerator(p);

    if (k == 2) {
        // Degree-2 map: the critical equation is a plain quadratic.
        Polynomial c = s * s + h * (q * derivative(s) - derivative(q) * s);
        auto [r1, r2] = quadratic_closed_form(c.coeff(2), c.coeff(1), c.coeff(0));
        out = {r1, r2};
    } else {
        const auto& fs = p.factors();
        int zero_idx = -1;
        for (size_t i = 0; i < fs.size(); ++i)
            if (std::abs(fs[i].root) < 1e-9) zero_idx = static_cast<int>(i);

        bool handled = false;
        if (zero_idx < 0 && roots_of_unity(fs, k)) {
            // p ~ z^n - 1: origin with multiplicity n-2 plus z^n = h(n-1)/(n-h).
            int n = k;
            Complex denom = Complex(static_cast<double>(n)) - h;
            if (denom != Complex(0.0)) {
                out.assign(static_cast<size_t>(n - 2), Complex(0.0));
                for (Complex z : nth_roots(h * static_cast<double>(n - 1) / denom, n))
                    out.push_back(z);
                handled = true;
            }
        } else if (zero_idx >= 0) {
            std::vector<RootFactor> rest;
            for (size_t i = 0; i < fs.size(); ++i)
                if (static_cast<int>(i) != zero_idx) rest.push_back(fs[i]);
            int n = static_cast<int>(rest.size());
            if (n >= 2 && roots_of_unity(rest, n)) {
                // p ~ z^m (z^n - 1): A t^2 - B t + C = 0 with t = z^n.
                double m = static_cast<double>(fs[static_cast<size_t>(zero_idx)].multiplicity);
                double nn = static_cast<double>(n);
                Complex A = (m + nn) * (Complex(m + nn) - h);
                Complex B = 2.0 * (Complex(m * m + m * nn) - m * h) + (nn * nn) * h - nn * h;
                Complex C = m * (Complex(m) - h);
                if (std::abs(A) > 1e-12 * (1.0 + std::abs(h))) {
                    auto [t1, t2] = quadratic_closed_form(A, -B, C);
                    for (Complex t : {t1, t2})
                        for (Complex z : nth_roots(t, n)) out.push_back(z);
                    handled = true;
                }
            }
        }

        if (!handled) {
            // NoConvergence is a SolverFailure; propagate as-is.
            out = all_roots(critical_polynomial(N));
        }
    }

    sort_by_re_im(out);
    return out;
}

double equal_power_check(const FactoredPolynomial& p, Complex h, int n) {
    if (n < 1) throw InvalidParameter("equal_power_check: n must be a positive integer");
    RelaxedNewtonMap base = build_map(p, h);
    std::vector<RootFactor> powered;
    for (const RootFactor& f : p.factors()) powered.push_back({f.root, f.multiplicity * n});
    RelaxedNewtonMap comp = build_map(FactoredPolynomial(p.leading(), powered),
                                      static_cast<double>(n) * h);
    Polynomial n1 = (Complex(1.0) / base.den().leading()) * base.num();
    Polynomial d1 = (Complex(1.0) / base.den().leading()) * base.den();
    Polynomial n2 = (Complex(1.0) / comp.den().leading()) * comp.num();
    Polynomial d2 = (Complex(1.0) / comp.den().leading()) * comp.den();
    return std::max(max_coeff_diff(n1, n2), max_coeff_diff(d1, d2));
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (a * d - b * c == Complex(0.0))
        throw InvalidParameter("MobiusMap: determinant must be nonzero");
}

Complex MobiusMap::operator()(Complex z) const {
    if (!is_finite(z)) {
        if (c_ == Complex(0.0)) return complex_infinity();
        return a_ / c_;
    }
    Complex denom = c_ * z + d_;
    if (denom == Complex(0.0)) return complex_infinity();
    Complex out = (a_ * z + b_) / denom;
    return is_finite(out) ? out : complex_infinity();
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
            c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

Reconstruction reconstruct_general(const std::vector<FixedPointDatum>& attracting,
                                   const ExtendedPoint& repelling, Complex h) {
    if (h == Complex(0.0)) throw InvalidParameter("reconstruct_general: h must be nonzero");
    if (attracting.size() < 2)
        throw InvalidParameter("reconstruct_general: need at least two attracting fixed points");

    std::vector<int> mult;
    for (const FixedPointDatum& fp : attracting) {
        Complex w = h / (Complex(1.0) - fp.multiplier);
        double m = std::round(w.real());
        if (std::abs(w.imag()) > kIntegerMultiplicityTol ||
            std::abs(w.real() - m) > kIntegerMultiplicityTol || m < 1.0) {
            std::ostringstream os;
            os << "reconstruct_general: h/(1-mu) = (" << w.real() << "," << w.imag()
               << ") is not a positive integer";
            throw NonIntegerMultiplicity(os.str());
        }
        mult.push_back(static_cast<int>(m));
    }

    MobiusMap phi = repelling.at_infinity
                        ? MobiusMap::identity()
                        : MobiusMap(Complex(0.0), Complex(1.0), Complex(1.0), -repelling.value);

    std::vector<RootFactor> factors;
    for (size_t i = 0; i < attracting.size(); ++i) {
        Complex r = phi(attracting[i].location);
        if (!is_finite(r))
            throw InvalidParameter("reconstruct_general: attracting point coincides with the "
                                   "repelling point");
        factors.push_back({r, mult[i]});
    }
    FactoredPolynomial p(Complex(1.0), std::move(factors));

    // Rebuild and compare multipliers (Mobius conjugation preserves them).
    std::vector<FixedPointRecord> fps = fixed_points(build_map(p, h));
    for (size_t i = 0; i < attracting.size(); ++i)
        if (std::abs(fps[i].multiplier - attracting[i].multiplier) > 1e-8)
            throw VerificationFailure("reconstruct_general: rebuilt multipliers do not match");

    return {phi, p};
}

QuadraticCharacterization characterize_quadratic(const QuadraticData& data) {
    if (const auto* eq = std::get_if<EqualAttractingMultipliers>(&data)) {
        if (std::abs(eq->lambda) >= 1.0)
            throw NotRealizable("characterize_quadratic: multiplier is not attracting");
        return {Complex(1.0) - eq->lambda, 1, 1, false, 1};
    }
    if (const auto* su = std::get_if<SuperattractingWithMultiplier>(&data)) {
        Complex mu = su->other;
        if (std::abs(mu.imag()) > kIntegerMultiplicityTol || mu.real() <= 0.0 ||
            mu.real() >= 1.0)
            throw NotRealizable("characterize_quadratic: second multiplier must be a ratio "
                                "n/m in (0,1)");
        auto frac = detect_rational(mu.real(), 64, kIntegerMultiplicityTol);
        if (!frac)
            throw NotRealizable("characterize_quadratic: multiplier is not n/m with m <= 64");
        auto [n, m] = *frac;
        return {Complex(static_cast<double>(m - n)), m - n, m, false, 2};
    }
    const auto& ir = std::get<IndexRatio>(data);
    if (!(ir.ratio > 0.0))
        throw NotRealizable("characterize_quadratic: index ratio must be positive");
    auto frac = detect_rational(ir.ratio, 64, kIntegerMultiplicityTol);
    if (!frac || frac->first < 1)
        throw NotRealizable("characterize_quadratic: index ratio is not k/m with m <= 64");
    auto [k, m] = *frac;
    // h = 1/c with the free scale c fixed to 1; flagged scale_free.
    return {Complex(1.0), k, m, true, 3};
}

} // namespace renewt

#include "renewt/polyroot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "renewt/errors.hpp"

namespace renewt {

namespace {

// Fixed rotation of the starting circle; breaks symmetry deadlocks
// (e.g. z^n - c started exactly on the roots of unity) deterministically.
constexpr double kStartAngle = 0.437829482;

void sort_by_re_im(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

// |b + sqrt(disc)| maximized to avoid cancellation.
std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c) {
    if (c == Complex(0.0)) return {Complex(0.0), -b / a};
    Complex sq = std::sqrt(b * b - 4.0 * a * c);
    if ((std::conj(b) * sq).real() < 0.0) sq = -sq;
    Complex q = -0.5 * (b + sq);
    if (q == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
    return {q / a, c / q};
}

// p(z) and p'(z) in one Horner pass.
inline void eval_both(const std::vector<Complex>& c, Complex z, Complex& p, Complex& dp) {
    size_t n = c.size();
    p = c[n - 1];
    dp = Complex(0.0);
    for (size_t k = n - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
}

inline double poly_scale_at(const std::vector<Complex>& c, double az) {
    double s = std::abs(c.back());
    for (size_t k = c.size() - 1; k-- > 0;) s = s * az + std::abs(c[k]);
    return s;
}

// Transitive closure of the "within radius" relation (single linkage).
std::vector<std::vector<size_t>> linkage_groups(const std::vector<Complex>& pts, double radius) {
    size_t n = pts.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(pts[i] - pts[j]) <= radius) parent[find(i)] = find(j);

    std::vector<int> slot(n, -1);
    std::vector<std::vector<size_t>> groups;
    for (size_t i = 0; i < n; ++i) {
        size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<size_t>(slot[r])].push_back(i);
    }
    return groups;
}

std::vector<RootCluster> clusters_from_groups(const std::vector<Complex>& pts,
                                              const std::vector<std::vector<size_t>>& groups,
                                              const Polynomial* p) {
    std::vector<RootCluster> out;
    out.reserve(groups.size());
    for (const std::vector<size_t>& g : groups) {
        Complex mean(0.0);
        double residual = 0.0;
        for (size_t i : g) {
            mean += pts[i];
            if (p) residual = std::max(residual, std::abs((*p)(pts[i])));
        }
        mean /= static_cast<double>(g.size());
        out.push_back({mean, static_cast<int>(g.size()), residual});
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

} // namespace

std::vector<Complex> all_roots(const Polynomial& p, double tol, int max_sweeps) {
    if (p.degree() < 1 || p.is_zero())
        throw InvalidParameter("all_roots: polynomial must have degree >= 1");
    if (tol <= 0.0) throw InvalidParameter("all_roots: tolerance must be positive");

    // Exact zeros at the origin first.
    std::vector<Complex> c = p.coeffs();
    std::vector<Complex> roots;
    while (c.size() > 1 && c.front() == Complex(0.0)) {
        roots.push_back(Complex(0.0));
        c.erase(c.begin());
    }
    size_t d = c.size() - 1;

    if (d == 1) {
        roots.push_back(-c[0] / c[1]);
    } else if (d == 2) {
        auto [r1, r2] = quadratic_roots(c[2], c[1], c[0]);
        roots.push_back(r1);
        roots.push_back(r2);
    } else if (d >= 3) {
        // Scale coefficients to unit max magnitude (overflow headroom).
        double cmax = 0.0;
        for (Complex x : c) cmax = std::max(cmax, std::abs(x));
        for (Complex& x : c) x /= cmax;

        double cauchy = 0.0;
        for (size_t k = 0; k < d; ++k) cauchy = std::max(cauchy, std::abs(c[k] / c[d]));
        double radius = 1.0 + cauchy;

        std::vector<Complex> z(d);
        for (size_t j = 0; j < d; ++j) {
            double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(d) + kStartAngle;
            z[j] = radius * Complex(std::cos(ang), std::sin(ang));
        }

        // Iterate down to the evaluation noise floor, not just to `tol`:
        // around an m-fold root a residual stop at tol would freeze points at
        // distance ~tol^{1/m}, far too wide for clustering. Keep the best
        // iterate seen per point so a late noise-driven step cannot spoil it.
        // Acceptance at the end: |p(z)| <= tol * max|coeff| (global polynomial
        // scale; coefficients are normalized so that is just tol), with the
        // Horner noise floor eps * sum|c_k||z|^k as the escape hatch for
        // legitimately huge roots.
        double eps_floor = 4.0 * std::numeric_limits<double>::epsilon();
        std::vector<Complex> best = z;
        std::vector<double> best_abs(d, std::numeric_limits<double>::infinity());
        std::vector<double> best_ratio(d, std::numeric_limits<double>::infinity());
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double max_step = 0.0;
            bool all_done = true;
            for (size_t j = 0; j < d; ++j) {
                Complex pv, dv;
                eval_both(c, z[j], pv, dv);
                double local = poly_scale_at(c, std::abs(z[j]));
                double ratio = std::abs(pv) / local;
                if (ratio < best_ratio[j]) {
                    best_ratio[j] = ratio;
                    best_abs[j] = std::abs(pv);
                    best[j] = z[j];
                }
                if (ratio <= eps_floor) continue;  // at the noise floor; frozen
                all_done = false;
                Complex newton = (dv == Complex(0.0))
                                     ? Complex(1e-8 * (1.0 + std::abs(z[j])), 0.0)
                                     : pv / dv;
                Complex repulsion(0.0);
                for (size_t i = 0; i < d; ++i) {
                    if (i == j) continue;
                    Complex diff = z[j] - z[i];
                    if (diff == Complex(0.0)) {
                        // Coincident iterates: nudge and retry next sweep.
                        diff = Complex(1e-10 * (1.0 + std::abs(z[j])), 0.0);
                    }
                    repulsion += Complex(1.0) / diff;
                }
                Complex denom = Complex(1.0) - newton * repulsion;
                Complex step = (denom == Complex(0.0) || !is_finite(denom)) ? newton
                                                                            : newton / denom;
                if (!is_finite(step)) step = newton;
                z[j] -= step;
                max_step = std::max(max_step, std::abs(step));
            }
            if (all_done) break;
            if (max_step < 1e-16 * (1.0 + radius) && sweep > 8) break;  // stagnation floor
        }

        for (size_t j = 0; j < d; ++j) {
            if (best_abs[j] > tol && best_ratio[j] > eps_floor)
                throw NoConvergence("all_roots: residual target unmet after iteration budget");
            roots.push_back(best[j]);
        }
    }

    sort_by_re_im(roots);
    return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& approx, double radius) {
    if (radius <= 0.0) throw InvalidParameter("cluster_roots: radius must be positive");
    return clusters_from_groups(approx, linkage_groups(approx, radius), nullptr);
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& approx, double radius,
                                       const Polynomial& p) {
    if (radius <= 0.0) throw InvalidParameter("cluster_roots: radius must be positive");
    return clusters_from_groups(approx, linkage_groups(approx, radius), &p);
}

FactoredPolynomial factor(const Polynomial& p, double cluster_radius, double tol) {
    std::vector<Complex> roots = all_roots(p, tol);
    std::vector<RootCluster> clusters = cluster_roots(roots, cluster_radius, p);
    std::vector<RootFactor> factors;
    factors.reserve(clusters.size());
    for (const RootCluster& cl : clusters) factors.push_back({cl.center, cl.multiplicity});
    return {p.leading(), std::move(factors)};
}

} // namespace renewt

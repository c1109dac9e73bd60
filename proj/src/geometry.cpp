#include "renewt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "renewt/errors.hpp"
#include "renewt/polyroot.hpp"

namespace renewt {

namespace {

// Median over s of dist(rot*s, pts). The max-flavored Hausdorff distance is
// dominated by holes in thin-measure regions of the Julia set and cannot
// separate true from false rotation orders at desk-scale sample sizes; the
// median separates them by two to three orders of magnitude.
double median_rotation_distance(const std::vector<Complex>& pts, Complex rot) {
    std::vector<double> dists;
    dists.reserve(pts.size());
    for (Complex s : pts) {
        Complex x = rot * s;
        double dmin = std::numeric_limits<double>::infinity();
        for (Complex y : pts) dmin = std::min(dmin, std::abs(x - y));
        dists.push_back(dmin);
    }
    size_t mid = dists.size() / 2;
    std::nth_element(dists.begin(), dists.begin() + static_cast<long>(mid), dists.end());
    return dists[mid];
}

double median_nn_spacing(const std::vector<Complex>& pts) {
    std::vector<double> nn;
    nn.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            dmin = std::min(dmin, std::abs(pts[i] - pts[j]));
        }
        nn.push_back(dmin);
    }
    size_t mid = nn.size() / 2;
    std::nth_element(nn.begin(), nn.begin() + static_cast<long>(mid), nn.end());
    return nn[mid];
}

} // namespace

std::vector<Complex> poles(const RelaxedNewtonMap& N) {
    return all_roots(N.den());
}

JuliaSample sample_julia(const RelaxedNewtonMap& N, int count, int depth,
                         std::uint64_t rng_seed) {
    if (count < 1 || depth < 1)
        throw InvalidParameter("sample_julia: count and depth must be >= 1");

    std::vector<Complex> ps = poles(N);
    Complex seed = ps.front();

    std::mt19937_64 rng(rng_seed);
    JuliaSample out;
    out.seed = seed;
    out.depth = 0;
    out.points.reserve(static_cast<size_t>(count));
    out.parents.reserve(static_cast<size_t>(count));

    // Pooled inverse iteration: expand every preimage of the current level,
    // subsample back to `count` when the pool outgrows it. A single random
    // backward chain mixes far too slowly to cover the Julia set evenly.
    std::vector<Complex> pool{seed};
    std::vector<Complex> parents{complex_infinity()};
    for (int level = 1; level <= depth; ++level) {
        std::vector<Complex> next;
        std::vector<Complex> next_parent;
        for (Complex w : pool) {
            // Preimages of w: roots of num(z) - w * den(z).
            std::vector<Complex> c(N.num().coeffs());
            for (int k = 0; k <= N.den().degree(); ++k)
                c[static_cast<size_t>(k)] -= w * N.den().coeff(k);
            for (Complex z : all_roots(Polynomial(std::move(c)))) {
                next.push_back(z);
                next_parent.push_back(w);
            }
        }
        if (static_cast<int>(next.size()) > count) {
            for (size_t i = next.size(); i > 1; --i) {
                size_t j = rng() % i;
                std::swap(next[i - 1], next[j]);
                std::swap(next_parent[i - 1], next_parent[j]);
            }
            next.resize(static_cast<size_t>(count));
            next_parent.resize(static_cast<size_t>(count));
        }
        pool = std::move(next);
        parents = std::move(next_parent);
        out.depth = level;
        if (level > kJuliaBurnIn) {
            for (size_t i = 0; i < pool.size(); ++i) {
                if (static_cast<int>(out.points.size()) >= count) break;
                out.points.push_back(pool[i]);
                out.parents.push_back(parents[i]);
            }
            if (static_cast<int>(out.points.size()) >= count) break;
        }
    }
    return out;
}

LineVerdict line_predicate(const FactoredPolynomial& p, Complex h) {
    LineVerdict v{false, Complex(0.0), Complex(0.0)};
    if (p.distinct_count() != 2) return v;
    const RootFactor& f0 = p.factors()[0];
    const RootFactor& f1 = p.factors()[1];
    if (f0.multiplicity != f1.multiplicity) return v;
    if (std::abs(h.imag()) > 1e-12) return v;
    v.is_line = true;
    v.point = 0.5 * (f0.root + f1.root);
    Complex diff = f0.root - f1.root;
    v.direction = Complex(0.0, 1.0) * diff / std::abs(diff);
    return v;
}

LineFit numeric_line_check(const JuliaSample& samples, double tol) {
    const std::vector<Complex>& pts = samples.points;
    if (pts.size() < 2)
        throw InvalidParameter("numeric_line_check: need at least two sample points");
    Complex mean(0.0);
    for (Complex z : pts) mean += z;
    mean /= static_cast<double>(pts.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (Complex z : pts) {
        double x = z.real() - mean.real(), y = z.imag() - mean.imag();
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    Complex dir(std::cos(theta), std::sin(theta));
    double worst = 0.0;
    for (Complex z : pts)
        worst = std::max(worst, std::abs(std::imag((z - mean) * std::conj(dir))));
    return {worst, mean, dir, worst <= tol};
}

SymmetryEstimate symmetry_order(const JuliaSample& samples, int max_order, double tau) {
    const std::vector<Complex>& pts = samples.points;
    if (pts.empty()) throw InvalidParameter("symmetry_order: samples must be non-empty");
    if (max_order < 1) throw InvalidParameter("symmetry_order: max_order must be >= 1");

    if (tau <= 0.0) tau = std::max(3.0 * median_nn_spacing(pts), 1e-12);

    SymmetryEstimate est;
    est.tau = tau;
    est.order = 1;
    for (int n = 1; n <= max_order; ++n) {
        Complex rot = std::polar(1.0, 2.0 * M_PI / n);
        double defect = std::max(median_rotation_distance(pts, rot),
                                 median_rotation_distance(pts, std::conj(rot)));
        bool ok = defect < tau;
        est.defects.push_back({n, defect, ok});
        if (ok) est.order = n;
    }
    return est;
}

std::optional<std::vector<Complex>> basin_unbounded_probe(const RelaxedNewtonMap& N, Complex root,
                                                          double R, double delta, int budget) {
    if (delta <= 0.0 || budget < 1)
        throw InvalidParameter("basin_unbounded_probe: delta and budget must be positive");

    int idx = -1;
    double max_root = 0.0;
    const auto& fs = N.polynomial().factors();
    for (size_t i = 0; i < fs.size(); ++i) {
        max_root = std::max(max_root, std::abs(fs[i].root));
        if (std::abs(root - fs[i].root) <= 1e-9 * std::max(1.0, std::abs(fs[i].root)))
            idx = static_cast<int>(i);
    }
    if (idx < 0)
        throw InvalidParameter("basin_unbounded_probe: not a fixed root of the polynomial");
    Complex lambda = Complex(1.0) - N.h() / static_cast<double>(fs[static_cast<size_t>(idx)]
                                                                    .multiplicity);
    if (!(std::abs(lambda) < 1.0))
        throw InvalidParameter("basin_unbounded_probe: root is not an attracting fixed point");
    if (!(R > 10.0 * max_root))
        throw InvalidParameter("basin_unbounded_probe: R must exceed 10x the largest root");

    const int directions = 64;
    for (int j = 0; j < directions; ++j) {
        Complex dir = std::polar(1.0, 2.0 * M_PI * j / directions);
        std::vector<Complex> polyline{root};
        bool ok = true;
        for (double t = delta;; t += delta) {
            Complex v = root + t * dir;
            OrbitOutcome o = iterate_orbit(N, v, budget);
            if (o.kind != OrbitOutcome::Kind::ConvergedToRoot || o.root_index != idx) {
                ok = false;
                break;
            }
            polyline.push_back(v);
            if (std::abs(v) >= R) break;
        }
        if (ok) return polyline;
    }
    return std::nullopt;
}

} // namespace renewt

#include "renewt/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace renewt {

namespace {

CycleInfo::Class classify_cycle_multiplier(Complex mult) {
    double a = std::abs(mult);
    if (a >= 1.0 - kParabolicBandLo && a <= 1.0 + kParabolicBandHi)
        return CycleInfo::Class::ParabolicSuspect;
    if (a <= 1e-8) return CycleInfo::Class::Superattracting;
    if (std::abs(a - 1.0) <= kClassifyTol) return CycleInfo::Class::Indifferent;
    return CycleInfo::Class::Attracting;
}

// N^q(z) and the derivative product along the orbit; false on a pole hit.
bool orbit_power(const RelaxedNewtonMap& N, Complex z, int q, Complex& out, Complex& deriv) {
    Complex w = z;
    deriv = Complex(1.0);
    for (int s = 0; s < q; ++s) {
        if (!is_finite(w) || N.den()(w) == Complex(0.0)) return false;
        deriv *= N.derivative(w);
        w = N(w);
        if (!is_finite(w)) return false;
    }
    out = w;
    return true;
}

// Damped Newton on G(z) = N^q(z) - z from the candidate point.
std::optional<CycleInfo> refine_cycle(const RelaxedNewtonMap& N, Complex z0, int q) {
    Complex z = z0;
    Complex fz;
    {
        Complex w, deriv;
        if (!orbit_power(N, z, q, w, deriv)) return std::nullopt;
        fz = w - z;
    }
    for (int iter = 0; iter < 40; ++iter) {
        double scale = std::max(1.0, std::abs(z));
        if (std::abs(fz) <= 1e-13 * scale) break;
        Complex w, deriv;
        if (!orbit_power(N, z, q, w, deriv)) return std::nullopt;
        fz = w - z;
        if (std::abs(fz) <= 1e-13 * scale) break;
        Complex gprime = deriv - Complex(1.0);
        if (std::abs(gprime) < 1e-12) return std::nullopt;  // parabolic wall
        Complex step = fz / gprime;
        double alpha = 1.0;
        Complex znew, fnew;
        bool improved = false;
        for (int damp = 0; damp < 8; ++damp) {
            znew = z - alpha * step;
            Complex w2, d2;
            if (orbit_power(N, znew, q, w2, d2)) {
                fnew = w2 - znew;
                if (std::abs(fnew) < std::abs(fz)) {
                    improved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!improved) return std::nullopt;
        z = znew;
        fz = fnew;
    }
    if (std::abs(fz) > 1e-13 * std::max(1.0, std::abs(z))) return std::nullopt;

    // Reduce to the minimal period.
    int period = q;
    for (int cand = 1; cand < q; ++cand) {
        if (q % cand != 0) continue;
        Complex w, deriv;
        if (orbit_power(N, z, cand, w, deriv) &&
            std::abs(w - z) <= 1e-10 * std::max(1.0, std::abs(z))) {
            period = cand;
            break;
        }
    }

    std::vector<Complex> points;
    points.reserve(static_cast<size_t>(period));
    Complex w = z;
    Complex mult(1.0);
    for (int s = 0; s < period; ++s) {
        if (!is_finite(w) || N.den()(w) == Complex(0.0)) return std::nullopt;
        points.push_back(w);
        mult *= N.derivative(w);
        w = N(w);
        if (!is_finite(w)) return std::nullopt;
    }
    for (Complex pt : points) {
        Complex img, deriv;
        if (!orbit_power(N, pt, period, img, deriv)) return std::nullopt;
        if (std::abs(img - pt) > 1e-10 * std::max(1.0, std::abs(pt))) return std::nullopt;
    }
    if (std::abs(mult) > 1.0 + kParabolicBandHi) return std::nullopt;  // repelling data rejected

    return CycleInfo{period, std::move(points), mult, classify_cycle_multiplier(mult)};
}

// Index of the root that captures z, or -1.
int capture_index(const std::vector<RootFactor>& roots, Complex z, double eps) {
    for (size_t i = 0; i < roots.size(); ++i) {
        double scale = std::max(1.0, std::abs(roots[i].root));
        if (std::abs(z - roots[i].root) <= eps * scale) return static_cast<int>(i);
    }
    return -1;
}

// Five further steps with non-increasing distance to the root.
bool confirm_contraction(const RelaxedNewtonMap& N, Complex z, Complex root, double eps) {
    double scale = std::max(1.0, std::abs(root));
    double dist = std::abs(z - root);
    Complex w = z;
    for (int t = 0; t < 5; ++t) {
        w = N(w);
        if (!is_finite(w)) return false;
        double next = std::abs(w - root);
        if (next > dist + 1e-14 * scale) return false;
        dist = next;
    }
    return dist <= eps * scale;
}

} // namespace

const char* to_string(CycleInfo::Class c) {
    switch (c) {
        case CycleInfo::Class::Superattracting: return "superattracting";
        case CycleInfo::Class::Attracting: return "attracting";
        case CycleInfo::Class::ParabolicSuspect: return "parabolic-suspect";
        case CycleInfo::Class::Indifferent: return "indifferent";
    }
    return "?";
}

const char* to_string(OrbitOutcome::Kind k) {
    switch (k) {
        case OrbitOutcome::Kind::ConvergedToRoot: return "ConvergedToRoot";
        case OrbitOutcome::Kind::AttractedToCycle: return "AttractedToCycle";
        case OrbitOutcome::Kind::DivergedToInfinity: return "DivergedToInfinity";
        case OrbitOutcome::Kind::Undecided: return "Undecided";
    }
    return "?";
}

const char* to_string(ConvergenceVerdict::Status s) {
    switch (s) {
        case ConvergenceVerdict::Status::ConvergentEvidence: return "ConvergentEvidence";
        case ConvergenceVerdict::Status::NonConvergent: return "NonConvergent";
        case ConvergenceVerdict::Status::Undecided: return "Undecided";
    }
    return "?";
}

OrbitOutcome iterate_orbit(const RelaxedNewtonMap& N, Complex z0, int budget, double eps) {
    if (budget < 1) budget = 1;
    const auto& roots = N.polynomial().factors();

    if (!is_finite(z0)) return {OrbitOutcome::Kind::DivergedToInfinity, 0, -1, std::nullopt, true};
    if (int idx = capture_index(roots, z0, eps);
        idx >= 0 && confirm_contraction(N, z0, roots[static_cast<size_t>(idx)].root, eps))
        return {OrbitOutcome::Kind::ConvergedToRoot, 0, idx, std::nullopt, false};

    double max_root = 0.0;
    for (const RootFactor& f : roots) max_root = std::max(max_root, std::abs(f.root));
    double diverge_radius = 1e6 * (1.0 + max_root);

    int transient = budget / 2;
    Complex z = z0;
    double prev_abs = std::abs(z0);
    int growth_run = 0;
    Complex anchor(0.0);
    int anchor_iter = -1;
    int last_attempt = -2 * kMaxDetectPeriod;

    for (int n = 1; n <= budget; ++n) {
        Complex zn = N(z);
        if (!is_finite(zn))
            return {OrbitOutcome::Kind::DivergedToInfinity, n, -1, std::nullopt, true};

        if (int idx = capture_index(roots, zn, eps); idx >= 0) {
            if (confirm_contraction(N, zn, roots[static_cast<size_t>(idx)].root, eps))
                return {OrbitOutcome::Kind::ConvergedToRoot, n, idx, std::nullopt, false};
        }

        double abs_zn = std::abs(zn);
        if (abs_zn > diverge_radius && abs_zn > prev_abs) {
            if (++growth_run >= 10)
                return {OrbitOutcome::Kind::DivergedToInfinity, n, -1, std::nullopt, false};
        } else {
            growth_run = 0;
        }
        prev_abs = abs_zn;

        if (n >= transient) {
            if (anchor_iter < 0 || n - anchor_iter >= kMaxDetectPeriod) {
                anchor = zn;
                anchor_iter = n;
            } else if (std::abs(zn - anchor) <= 1e-6 * std::max(1.0, abs_zn) &&
                       n - last_attempt >= kMaxDetectPeriod) {
                last_attempt = n;
                int q = n - anchor_iter;
                if (auto cycle = refine_cycle(N, zn, q)) {
                    if (cycle->period == 1) {
                        // A refined fixed point of N is a root of p; report it so.
                        int idx = capture_index(roots, cycle->points[0], 1e-6);
                        if (idx >= 0)
                            return {OrbitOutcome::Kind::ConvergedToRoot, n, idx, std::nullopt,
                                    false};
                    }
                    return {OrbitOutcome::Kind::AttractedToCycle, n, -1, std::move(cycle), false};
                }
            }
        }
        z = zn;
    }
    return {OrbitOutcome::Kind::Undecided, budget, -1, std::nullopt, false};
}

std::optional<CycleInfo> detect_cycle(const std::vector<Complex>& tail,
                                      const RelaxedNewtonMap& N) {
    if (tail.size() < 2) return std::nullopt;
    size_t last = tail.size() - 1;
    int max_q = std::min<int>(kMaxDetectPeriod, static_cast<int>(tail.size()) - 1);
    for (int q = 1; q <= max_q; ++q) {
        Complex ref = tail[last - static_cast<size_t>(q)];
        if (std::abs(tail[last] - ref) <= 1e-6 * std::max(1.0, std::abs(tail[last]))) {
            if (auto cycle = refine_cycle(N, tail[last], q)) return cycle;
        }
    }
    return std::nullopt;
}

ConvergenceVerdict classify_convergence(const RelaxedNewtonMap& N, int budget) {
    std::vector<Complex> crit = critical_points(N);
    // Orbits of coincident critical points are identical; run each once.
    std::vector<Complex> seeds;
    for (Complex c : crit) {
        bool dup = false;
        for (Complex s : seeds)
            if (std::abs(c - s) <= 1e-9 * std::max(1.0, std::abs(c))) dup = true;
        if (!dup) seeds.push_back(c);
    }

    Complex lam_inf = N.infinity_multiplier();
    bool infinity_repelling = !is_finite(lam_inf) || std::abs(lam_inf) > 1.0;

    ConvergenceVerdict verdict;
    verdict.seeds = seeds;
    bool all_accounted = true;
    for (Complex seed : seeds) {
        OrbitOutcome outcome = iterate_orbit(N, seed, budget);
        switch (outcome.kind) {
            case OrbitOutcome::Kind::ConvergedToRoot:
                break;
            case OrbitOutcome::Kind::DivergedToInfinity:
                // Landing exactly on a repelling infinity is a Julia-set
                // event, not a convergence failure.
                if (!(outcome.pole_hit && infinity_repelling)) all_accounted = false;
                break;
            case OrbitOutcome::Kind::AttractedToCycle: {
                const CycleInfo& cy = *outcome.cycle;
                bool disjoint = true;
                for (Complex pt : cy.points)
                    for (const RootFactor& f : N.polynomial().factors())
                        if (std::abs(pt - f.root) <= 1e-6 * std::max(1.0, std::abs(f.root)))
                            disjoint = false;
                bool attracting = cy.classification == CycleInfo::Class::Superattracting ||
                                  cy.classification == CycleInfo::Class::Attracting;
                if (disjoint && attracting && !verdict.cycle) verdict.cycle = cy;
                if (!(disjoint && attracting)) all_accounted = false;
                break;
            }
            case OrbitOutcome::Kind::Undecided:
                all_accounted = false;
                break;
        }
        verdict.orbits.push_back(std::move(outcome));
    }

    if (verdict.cycle)
        verdict.status = ConvergenceVerdict::Status::NonConvergent;
    else if (all_accounted)
        verdict.status = ConvergenceVerdict::Status::ConvergentEvidence;
    else
        verdict.status = ConvergenceVerdict::Status::Undecided;
    return verdict;
}

} // namespace renewt

#ifndef RENEWT_DYNAMICS_HPP
#define RENEWT_DYNAMICS_HPP

#include <optional>
#include <vector>

#include "renewt/newton_map.hpp"

namespace renewt {

// Root capture radius, scaled by max(1, |root|).
inline constexpr double kRootCaptureEps = 1e-8;
// Largest cycle period the detector will report.
inline constexpr int kMaxDetectPeriod = 64;
// |multiplier| in [1 - kParabolicBandLo, 1 + kParabolicBandHi] is treated as
// parabolic-suspect: numerically indistinguishable from a parabolic cycle.
inline constexpr double kParabolicBandLo = 1e-4;
inline constexpr double kParabolicBandHi = 1e-6;

struct CycleInfo {
    enum class Class { Superattracting, Attracting, ParabolicSuspect, Indifferent };
    int period;
    std::vector<Complex> points;  // points.size() == period
    Complex multiplier;           // product of N' along the cycle
    Class classification;
};

const char* to_string(CycleInfo::Class c);

struct OrbitOutcome {
    enum class Kind { ConvergedToRoot, AttractedToCycle, DivergedToInfinity, Undecided };
    Kind kind;
    int iterations;
    int root_index = -1;             // ConvergedToRoot
    std::optional<CycleInfo> cycle;  // AttractedToCycle
    // DivergedToInfinity: the orbit landed exactly on infinity (pole image or
    // numeric overflow), as opposed to sustained growth.
    bool pole_hit = false;
};

const char* to_string(OrbitOutcome::Kind k);

struct ConvergenceVerdict {
    enum class Status { ConvergentEvidence, NonConvergent, Undecided };
    Status status;
    std::optional<CycleInfo> cycle;  // NonConvergent witness
    std::vector<Complex> seeds;      // the critical points that were iterated
    std::vector<OrbitOutcome> orbits;
};

const char* to_string(ConvergenceVerdict::Status s);

/// Iterate z0 until it is captured by a root (confirmed by five further
/// contracting steps), lands on infinity, persistently grows past the
/// divergence radius for ten steps, is absorbed by a detected attracting
/// cycle, or the budget runs out. Total: never throws.
OrbitOutcome iterate_orbit(const RelaxedNewtonMap& N, Complex z0, int budget,
                           double eps = kRootCaptureEps);

/// Brent-style period search over a post-transient orbit segment, refined by
/// damped Newton on z -> N^q(z) - z. Returns nothing when refinement fails
/// or the refined cycle is repelling.
std::optional<CycleInfo> detect_cycle(const std::vector<Complex>& tail,
                                      const RelaxedNewtonMap& N);

/// Run every critical orbit and aggregate:
///   NonConvergent      -- some orbit reached an attracting cycle disjoint
///                         from the root set;
///   ConvergentEvidence -- every orbit converged to a root or landed exactly
///                         on the repelling fixed point at infinity;
///   Undecided          -- anything else (budget exhaustion, parabolic
///                         suspects, growth past the divergence radius).
/// Evidence-grade, not proof.
ConvergenceVerdict classify_convergence(const RelaxedNewtonMap& N, int budget);

} // namespace renewt

#endif

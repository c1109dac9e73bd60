#ifndef RENEWT_GEOMETRY_HPP
#define RENEWT_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "renewt/dynamics.hpp"
#include "renewt/newton_map.hpp"

namespace renewt {

/// Poles of N: roots of the reduced denominator, with multiplicity.
/// All lie in the Julia set (they are preimages of infinity).
std::vector<Complex> poles(const RelaxedNewtonMap& N);

struct JuliaSample {
    std::vector<Complex> points;
    // parents[i] is the point whose preimage points[i] is; lets tests check
    // |N(points[i]) - parents[i]| directly.
    std::vector<Complex> parents;
    Complex seed;  // the pole the backward orbit started from
    int depth;     // backward steps actually taken
};

// Backward levels discarded before points are recorded.
inline constexpr int kJuliaBurnIn = 20;

/// Inverse-iteration sampling of the Julia set. Starts at a pole and pulls a
/// pool of points backward (preimages solved with polyroot), expanding every
/// branch per level and subsampling the pool back to `count`; a burn-in
/// prefix of kJuliaBurnIn levels is discarded, then points are recorded until
/// `count` are collected or `depth` levels are exhausted. Deterministic for a
/// fixed rng_seed.
JuliaSample sample_julia(const RelaxedNewtonMap& N, int count, int depth, std::uint64_t rng_seed);

struct LineVerdict {
    bool is_line;
    Complex point;      // a point on the line (midpoint of the two roots)
    Complex direction;  // unit direction (perpendicular bisector)
};

/// Theorem-C criterion: the Julia set is a line iff p has exactly two
/// distinct roots of equal multiplicity and h is real.
LineVerdict line_predicate(const FactoredPolynomial& p, Complex h);

struct LineFit {
    double max_deviation;  // max perpendicular distance to the fitted line
    Complex point;         // centroid
    Complex direction;     // principal axis, unit
    bool within_tol;
};

/// Principal-axis fit of the samples; numeric witness for the line criterion.
LineFit numeric_line_check(const JuliaSample& samples, double tol);

struct SymmetryEstimate {
    struct Defect {
        int order;
        // Symmetric rotation distance: the larger, over both rotation
        // directions, of the median distance from a rotated sample point to
        // the sample set. (A max-flavored Hausdorff defect is dominated by
        // holes where the balanced measure is thin and separates nothing.)
        double defect;
        bool verified;
    };
    int order;  // largest rotation order with defect < tau
    double tau;
    std::vector<Defect> defects;
};

/// Test rotational symmetry about the origin for each order up to max_order.
/// tau <= 0 selects the adaptive threshold (3x the median nearest-neighbour
/// spacing of the sample set). A true symmetry order lands near 1x that
/// spacing; a false one lands two to three decades above it.
SymmetryEstimate symmetry_order(const JuliaSample& samples, int max_order, double tau = 0.0);

/// Heuristic witness that the immediate basin of `root` reaches radius R:
/// a ray of step delta from the root, every vertex of which converges back
/// to that root. Directions are searched on a fixed grid in angle order.
std::optional<std::vector<Complex>> basin_unbounded_probe(const RelaxedNewtonMap& N, Complex root,
                                                          double R, double delta, int budget);

} // namespace renewt

#endif

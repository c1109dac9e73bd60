#ifndef RENEWT_RENDER_HPP
#define RENEWT_RENDER_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "renewt/dynamics.hpp"

namespace renewt {

struct Viewport {
    Complex center;
    double width;  // plane units; height follows from the pixel aspect
    int px_width;
    int px_height;

    double plane_height() const {
        return width * static_cast<double>(px_height) / static_cast<double>(px_width);
    }
    Complex pixel_center(int col, int row) const;
};

// Label for pixels whose orbit resolved to no known attractor.
inline constexpr std::int32_t kSentinelLabel = -1;

/// Per-pixel attractor labels and iteration counts over a viewport.
/// Labels: root indices first, then indices into `cycles`, then the sentinel.
struct BasinImage {
    int px_width = 0;
    int px_height = 0;
    int budget = 0;
    std::vector<std::int32_t> labels;  // row-major, top row first
    std::vector<std::int32_t> iters;
    std::vector<Complex> roots;        // legend: root attractors, in p's order
    std::vector<CycleInfo> cycles;     // legend: extraneous cycle attractors

    int legend_size() const { return static_cast<int>(roots.size() + cycles.size()); }
    std::int32_t label_at(int col, int row) const {
        return labels[static_cast<size_t>(row) * static_cast<size_t>(px_width) +
                      static_cast<size_t>(col)];
    }
};

/// Iterate every pixel center; label by root index, by matched cycle (any
/// orbit cycle point within eps of any of the given cycle's points), or
/// sentinel. Deterministic for fixed inputs; parallelized over row tiles
/// (RENEWT_THREADS caps the worker count).
BasinImage render_basins(const RelaxedNewtonMap& N, const std::vector<CycleInfo>& extra_cycles,
                         const Viewport& vp, int budget, double eps = kRootCaptureEps);

using Rgb = std::array<std::uint8_t, 3>;

enum class Shading { Flat, ByIterations };

/// Binary PPM ("P6", 8-bit), row-major top to bottom. The palette needs
/// legend_size() + 1 entries; the last one renders the sentinel.
/// ByIterations scales channels by a brightness factor in [0.35, 1.0].
std::vector<std::uint8_t> encode_ppm(const BasinImage& img, const std::vector<Rgb>& palette,
                                     Shading shading);

/// Distinct hues per root, red reserved for extraneous cycles, black for the
/// sentinel (last entry).
std::vector<Rgb> default_palette(int n_roots, int n_cycles);

} // namespace renewt

#endif

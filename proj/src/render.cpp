#include "renewt/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "renewt/errors.hpp"

namespace renewt {

namespace {

int worker_count(int rows) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("RENEWT_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(1, std::min(n, rows));
}

std::int32_t label_for(const OrbitOutcome& o, const std::vector<CycleInfo>& cycles,
                       int root_count, double eps) {
    if (o.kind == OrbitOutcome::Kind::ConvergedToRoot) return o.root_index;
    if (o.kind == OrbitOutcome::Kind::AttractedToCycle) {
        for (size_t ci = 0; ci < cycles.size(); ++ci)
            for (Complex a : o.cycle->points)
                for (Complex b : cycles[ci].points)
                    if (std::abs(a - b) <= eps * std::max(1.0, std::abs(b)))
                        return root_count + static_cast<std::int32_t>(ci);
    }
    return kSentinelLabel;
}

} // namespace

Complex Viewport::pixel_center(int col, int row) const {
    double re = center.real() +
                ((static_cast<double>(col) + 0.5) / static_cast<double>(px_width) - 0.5) * width;
    double im = center.imag() +
                (0.5 - (static_cast<double>(row) + 0.5) / static_cast<double>(px_height)) *
                    plane_height();
    return {re, im};
}

BasinImage render_basins(const RelaxedNewtonMap& N, const std::vector<CycleInfo>& extra_cycles,
                         const Viewport& vp, int budget, double eps) {
    if (vp.px_width < 1 || vp.px_height < 1 || vp.px_width > 16384 || vp.px_height > 16384)
        throw InvalidParameter("render_basins: pixel dimensions must be in [1, 16384]");
    if (!(vp.width > 0.0)) throw InvalidParameter("render_basins: viewport width must be positive");
    if (budget < 1) throw InvalidParameter("render_basins: budget must be >= 1");

    BasinImage img;
    img.px_width = vp.px_width;
    img.px_height = vp.px_height;
    img.budget = budget;
    size_t total = static_cast<size_t>(vp.px_width) * static_cast<size_t>(vp.px_height);
    img.labels.assign(total, kSentinelLabel);
    img.iters.assign(total, 0);
    for (const RootFactor& f : N.polynomial().factors()) img.roots.push_back(f.root);
    img.cycles = extra_cycles;

    int root_count = static_cast<int>(img.roots.size());
    auto run_rows = [&](int row_begin, int row_end) {
        for (int row = row_begin; row < row_end; ++row) {
            size_t base = static_cast<size_t>(row) * static_cast<size_t>(vp.px_width);
            for (int col = 0; col < vp.px_width; ++col) {
                OrbitOutcome o = iterate_orbit(N, vp.pixel_center(col, row), budget, eps);
                img.labels[base + static_cast<size_t>(col)] =
                    label_for(o, extra_cycles, root_count, eps);
                img.iters[base + static_cast<size_t>(col)] = o.iterations;
            }
        }
    };

    int workers = worker_count(vp.px_height);
    if (workers == 1) {
        run_rows(0, vp.px_height);
    } else {
        std::vector<std::thread> pool;
        int chunk = (vp.px_height + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int begin = w * chunk;
            int end = std::min(vp.px_height, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_rows, begin, end);
        }
        for (std::thread& t : pool) t.join();
    }
    return img;
}

std::vector<std::uint8_t> encode_ppm(const BasinImage& img, const std::vector<Rgb>& palette,
                                     Shading shading) {
    if (static_cast<int>(palette.size()) < img.legend_size() + 1)
        throw PaletteTooSmall("encode_ppm: palette must cover every legend entry plus the "
                              "sentinel");
    char header[64];
    int len = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", img.px_width,
                            img.px_height);
    std::vector<std::uint8_t> out(header, header + len);
    out.reserve(out.size() +
                3 * static_cast<size_t>(img.px_width) * static_cast<size_t>(img.px_height));
    double budget = std::max(1, img.budget);
    for (size_t i = 0; i < img.labels.size(); ++i) {
        std::int32_t label = img.labels[i];
        const Rgb& base = label == kSentinelLabel ? palette.back()
                                                  : palette[static_cast<size_t>(label)];
        double factor = 1.0;
        if (shading == Shading::ByIterations) {
            factor = 1.0 - 0.65 * (static_cast<double>(img.iters[i]) / budget);
            factor = std::clamp(factor, 0.35, 1.0);
        }
        for (int ch = 0; ch < 3; ++ch)
            out.push_back(static_cast<std::uint8_t>(
                std::lround(static_cast<double>(base[static_cast<size_t>(ch)]) * factor)));
    }
    return out;
}

std::vector<Rgb> default_palette(int n_roots, int n_cycles) {
    // Red stays reserved for extraneous cycles, black for the sentinel.
    static constexpr Rgb kRootHues[] = {
        {66, 133, 244},   // blue
        {52, 168, 83},    // green
        {251, 188, 5},    // yellow
        {0, 188, 212},    // cyan
        {171, 71, 188},   // purple
        {255, 138, 101},  // salmon
        {0, 150, 136},    // teal
        {205, 220, 57},   // lime
    };
    std::vector<Rgb> out;
    for (int i = 0; i < n_roots; ++i) {
        Rgb c = kRootHues[static_cast<size_t>(i) % std::size(kRootHues)];
        int wrap = i / static_cast<int>(std::size(kRootHues));
        for (auto& ch : c)
            ch = static_cast<std::uint8_t>(std::max(0, static_cast<int>(ch) - 60 * wrap));
        out.push_back(c);
    }
    for (int i = 0; i < n_cycles; ++i) {
        int fade = std::min(180, 70 * i);
        out.push_back({static_cast<std::uint8_t>(220 - fade / 4),
                       static_cast<std::uint8_t>(30 + fade),
                       static_cast<std::uint8_t>(30 + fade)});
    }
    out.push_back({0, 0, 0});
    return out;
}

} // namespace renewt

#include <doctest.h>

#include <cmath>
#include <random>

#include "renewt/constructions.hpp"
#include "renewt/errors.hpp"
#include "renewt/render.hpp"
#include "test_support.hpp"

using namespace renewt;
using namespace renewt::testing;

TEST_SUITE_BEGIN("render");

TEST_CASE("viewport pixel mapping") {
    Viewport vp{Complex(0.0), 4.0, 4, 4};
    CHECK(std::abs(vp.pixel_center(0, 0) - Complex(-1.5, 1.5)) < 1e-15);
    CHECK(std::abs(vp.pixel_center(3, 3) - Complex(1.5, -1.5)) < 1e-15);
    CHECK(vp.plane_height() == 4.0);

    Viewport wide{Complex(1.0, -1.0), 8.0, 8, 4};
    CHECK(wide.plane_height() == 4.0);
    CHECK(std::abs(wide.pixel_center(4, 2) - Complex(1.5, -1.5)) < 1e-15);
}

TEST_CASE("classical Newton on z^2-1 splits at the imaginary axis") {
    RelaxedNewtonMap N = build_map(two_root_rep(1, 1), Complex(1.0));
    Viewport vp{Complex(0.0), 4.0, 64, 64};
    BasinImage img = render_basins(N, {}, vp, 200);
    int sentinel = 0;
    for (int row = 0; row < 64; ++row)
        for (int col = 0; col < 64; ++col) {
            std::int32_t label = img.label_at(col, row);
            if (label == kSentinelLabel) {
                ++sentinel;
                continue;
            }
            Complex z = vp.pixel_center(col, row);
            CHECK(label == (z.real() > 0.0 ? 0 : 1));
        }
    CHECK(sentinel < 8);
}

TEST_CASE("labels agree with re-run orbits") {
    RelaxedNewtonMap N = build_map(two_root_rep(1, 2), Complex(1.5));
    Viewport vp{Complex(0.0), 5.0, 96, 96};
    int budget = 400;
    BasinImage img = render_basins(N, {}, vp, budget);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> cols(0, 95), rows(0, 95);
    for (int t = 0; t < 1000; ++t) {
        int col = cols(rng), row = rows(rng);
        OrbitOutcome o = iterate_orbit(N, vp.pixel_center(col, row), budget);
        std::int32_t want = o.kind == OrbitOutcome::Kind::ConvergedToRoot ? o.root_index
                                                                          : kSentinelLabel;
        CHECK(img.label_at(col, row) == want);
    }
}

TEST_CASE("rotating the z^3-1 grid permutes root labels") {
    Complex h(0.5, M_PI / 4.0);
    RelaxedNewtonMap N = build_map(unicritical_rep(3), h);
    int px = 120;
    Viewport vp{Complex(0.0), 4.0, px, px};
    BasinImage img = render_basins(N, {}, vp, 600);

    // root permutation under rotation by 2pi/3
    Complex rot = std::polar(1.0, 2.0 * M_PI / 3.0);
    std::array<int, 3> perm{};
    for (int i = 0; i < 3; ++i) {
        Complex target = rot * img.roots[static_cast<size_t>(i)];
        int best = -1;
        for (int j = 0; j < 3; ++j)
            if (std::abs(target - img.roots[static_cast<size_t>(j)]) < 1e-9) best = j;
        REQUIRE(best >= 0);
        perm[static_cast<size_t>(i)] = best;
    }

    auto interior = [&](int col, int row) {
        std::int32_t label = img.label_at(col, row);
        for (int dc = -2; dc <= 2; ++dc)
            for (int dr = -2; dr <= 2; ++dr) {
                int c = col + dc, r = row + dr;
                if (c < 0 || r < 0 || c >= px || r >= px) return false;
                if (img.label_at(c, r) != label) return false;
            }
        return true;
    };

    int checked = 0, agreed = 0;
    for (int row = 0; row < px; ++row)
        for (int col = 0; col < px; ++col) {
            if (img.label_at(col, row) == kSentinelLabel || !interior(col, row)) continue;
            Complex z = vp.pixel_center(col, row);
            Complex zr = rot * z;
            int rcol = static_cast<int>(std::floor((zr.real() - vp.center.real()) / vp.width *
                                                       px +
                                                   px / 2.0));
            int rrow = static_cast<int>(std::floor((vp.center.imag() - zr.imag()) /
                                                       vp.plane_height() * px +
                                                   px / 2.0));
            if (rcol < 0 || rrow < 0 || rcol >= px || rrow >= px) continue;
            if (!interior(rcol, rrow)) continue;
            ++checked;
            if (img.label_at(rcol, rrow) ==
                perm[static_cast<size_t>(img.label_at(col, row))])
                ++agreed;
        }
    REQUIRE(checked > 2000);
    CHECK(static_cast<double>(agreed) / static_cast<double>(checked) >= 0.99);
}

TEST_CASE("extraneous cycle pixels are labelled after the roots") {
    NonconvergentCubic c = nonconvergent_cubic(Complex(0.5), -1);
    RelaxedNewtonMap N = cubic_map(c.h, c.a);
    OrbitOutcome o = iterate_orbit(N, c.xi, 2000);
    REQUIRE(o.kind == OrbitOutcome::Kind::AttractedToCycle);
    Viewport vp{Complex(0.0), 6.0, 96, 96};
    BasinImage img = render_basins(N, {*o.cycle}, vp, 600);
    int cycle_pixels = 0;
    for (std::int32_t label : img.labels)
        if (label == static_cast<std::int32_t>(img.roots.size())) ++cycle_pixels;
    CHECK(cycle_pixels > 0);
}

TEST_CASE("rendering and encoding are deterministic") {
    RelaxedNewtonMap N = build_map(two_root_rep(1, 1), Complex(0.5, M_PI / 4.0));
    Viewport vp{Complex(0.0), 4.0, 48, 48};
    BasinImage a = render_basins(N, {}, vp, 300);
    BasinImage b = render_basins(N, {}, vp, 300);
    CHECK(a.labels == b.labels);
    CHECK(a.iters == b.iters);
    auto palette = default_palette(2, 0);
    CHECK(encode_ppm(a, palette, Shading::ByIterations) ==
          encode_ppm(b, palette, Shading::ByIterations));
}

TEST_CASE("ppm encoding") {
    BasinImage img;
    img.px_width = 1;
    img.px_height = 1;
    img.budget = 10;
    img.labels = {0};
    img.iters = {0};
    img.roots = {Complex(1.0)};
    std::vector<Rgb> palette{{10, 20, 30}, {0, 0, 0}};

    SUBCASE("single pixel, flat") {
        auto bytes = encode_ppm(img, palette, Shading::Flat);
        std::string header = "P6\n1 1\n255\n";
        REQUIRE(bytes.size() == header.size() + 3);
        CHECK(std::equal(header.begin(), header.end(), bytes.begin()));
        CHECK(bytes[header.size() + 0] == 10);
        CHECK(bytes[header.size() + 1] == 20);
        CHECK(bytes[header.size() + 2] == 30);
    }
    SUBCASE("row order and sentinel") {
        img.px_width = 2;
        img.labels = {0, kSentinelLabel};
        img.iters = {0, 10};
        auto bytes = encode_ppm(img, palette, Shading::Flat);
        std::string header = "P6\n2 1\n255\n";
        REQUIRE(bytes.size() == header.size() + 6);
        CHECK(bytes[header.size() + 0] == 10);  // first pixel: palette[0]
        CHECK(bytes[header.size() + 3] == 0);   // sentinel -> last entry
    }
    SUBCASE("brightness shading stays within [0.35, 1.0]") {
        img.px_width = 2;
        img.labels = {0, 0};
        img.iters = {0, 10};
        auto bytes = encode_ppm(img, palette, Shading::ByIterations);
        size_t off = std::string("P6\n2 1\n255\n").size();
        CHECK(bytes[off + 0] == 10);  // zero iterations: full brightness
        CHECK(bytes[off + 3] == static_cast<std::uint8_t>(std::lround(10 * 0.35)));
    }
    SUBCASE("palette too small") {
        std::vector<Rgb> tiny{{1, 2, 3}};
        CHECK_THROWS_AS(encode_ppm(img, tiny, Shading::Flat), PaletteTooSmall);
    }
}

TEST_SUITE_END();

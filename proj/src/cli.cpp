#include "renewt/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "renewt/constructions.hpp"
#include "renewt/dynamics.hpp"
#include "renewt/errors.hpp"
#include "renewt/geometry.hpp"
#include "renewt/parse.hpp"
#include "renewt/polyroot.hpp"
#include "renewt/render.hpp"
#include "renewt/report.hpp"

namespace renewt::cli {

namespace {

constexpr const char* kComplexGrammar =
    "complex = real | imag | real (\"+\"|\"-\") unsigned-imag ; "
    "real = [\"+\"|\"-\"] number ; imag = [\"+\"|\"-\"] number \"i\" ; no spaces "
    "(examples: 1.5, -2i, 0.5+0.7853981634i)";

struct PolySource {
    std::string coeffs;
    std::string factored;
    std::string klass;
};

void add_poly_options(CLI::App* cmd, PolySource& src) {
    auto* a = cmd->add_option("--coeffs", src.coeffs,
                              "dense polynomial: comma-separated complex coefficients, "
                              "ascending degree");
    auto* b = cmd->add_option("--factored", src.factored,
                              "factored polynomial: \"(root^mult,...);leading\"");
    auto* c = cmd->add_option("--class", src.klass,
                              "representative family: two_root:k,m | unicritical:n | "
                              "composite:m,n");
    a->excludes(b)->excludes(c);
    b->excludes(c);
}

FactoredPolynomial resolve_poly(const PolySource& src) {
    int given = (!src.coeffs.empty()) + (!src.factored.empty()) + (!src.klass.empty());
    if (given != 1)
        throw InvalidParameter("exactly one of --coeffs, --factored, --class is required");
    if (!src.coeffs.empty()) return factor(parse_coeffs(src.coeffs));
    if (!src.factored.empty()) return parse_factored(src.factored);
    return parse_class(src.klass);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open output file '" + path + "'");
    out << text;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open output file '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void warn_admissibility(const RelaxedNewtonMap& N) {
    if (N.h_admissible()) return;
    Json w{{"warning", "h-outside-admissible-disk"},
           {"message", "h lies outside D_m(m) for the least multiplicity m; roots need not all "
                       "be attracting"},
           {"h", complex_json(N.h())}};
    std::cerr << dump_json(w);
}

// Attracting cycles discovered by the classifier, deduplicated by proximity.
std::vector<CycleInfo> collect_cycles(const ConvergenceVerdict& v) {
    std::vector<CycleInfo> cycles;
    for (const OrbitOutcome& o : v.orbits) {
        if (o.kind != OrbitOutcome::Kind::AttractedToCycle) continue;
        const CycleInfo& cy = *o.cycle;
        if (cy.classification != CycleInfo::Class::Superattracting &&
            cy.classification != CycleInfo::Class::Attracting)
            continue;
        bool dup = false;
        for (const CycleInfo& known : cycles)
            for (Complex a : cy.points)
                for (Complex b : known.points)
                    if (std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b))) dup = true;
        if (!dup) cycles.push_back(cy);
    }
    return cycles;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"renewt: dynamics of the relaxed Newton family N_{h,p}(z) = z - h p(z)/p'(z)"};
    app.require_subcommand(1);
    // --h is an option; keep help on --help only
    app.set_help_flag("--help", "print help and exit");

    // analyze
    auto* analyze = app.add_subcommand("analyze",
                                       "fixed points, multipliers, residue indices, critical "
                                       "points as JSON");
    analyze->set_help_flag("--help", "print help and exit");
    PolySource an_src;
    std::string an_h, an_out;
    add_poly_options(analyze, an_src);
    analyze->add_option("--h", an_h, kComplexGrammar)->required();
    analyze->add_option("--out", an_out, "output path (default stdout)");

    // classify
    auto* classify = app.add_subcommand("classify",
                                        "critical-orbit convergence verdict as JSON");
    classify->set_help_flag("--help", "print help and exit");
    PolySource cl_src;
    std::string cl_h, cl_out;
    int cl_budget = 2000;
    add_poly_options(classify, cl_src);
    classify->add_option("--h", cl_h, kComplexGrammar)->required();
    classify->add_option("--budget", cl_budget, "iteration budget per orbit");
    classify->add_option("--out", cl_out, "output path (default stdout)");

    // render
    auto* render = app.add_subcommand("render", "basin-of-attraction raster as binary PPM (P6)");
    render->set_help_flag("--help", "print help and exit");
    PolySource re_src;
    std::string re_h, re_out, re_center = "0", re_shading = "flat";
    double re_width = 6.0, re_eps = kRootCaptureEps;
    int re_pxw = 800, re_pxh = 800, re_budget = 1000;
    bool re_detect = false;
    add_poly_options(render, re_src);
    render->add_option("--h", re_h, kComplexGrammar)->required();
    render->add_option("--out", re_out, "PPM output path; legend goes to <out>.legend.json")
        ->required();
    render->add_option("--center", re_center, "viewport center (complex)");
    render->add_option("--width", re_width, "viewport width in plane units");
    render->add_option("--px-width", re_pxw, "image width in pixels");
    render->add_option("--px-height", re_pxh, "image height in pixels");
    render->add_option("--budget", re_budget, "iteration budget per pixel");
    render->add_option("--eps", re_eps, "root/cycle capture radius");
    render->add_flag("--detect-cycles", re_detect,
                     "classify first and label extraneous attracting cycles");
    render->add_option("--shading", re_shading, "flat | iterations")
        ->check(CLI::IsMember({"flat", "iterations"}));

    // construct-nonconvergent
    auto* construct = app.add_subcommand("construct-nonconvergent",
                                         "Theorem-B cubic z^3-3z+a with a superattracting "
                                         "2-cycle, fully verified");
    construct->set_help_flag("--help", "print help and exit");
    std::string co_h, co_sign = "+", co_out;
    int co_budget = 2000;
    construct->add_option("--h", co_h, kComplexGrammar)->required();
    construct->add_option("--sign", co_sign, "branch choice for xi: + or -")
        ->check(CLI::IsMember({"+", "-"}));
    construct->add_option("--budget", co_budget, "iteration budget for the verdict");
    construct->add_option("--out", co_out, "output path (default stdout)");

    // line-test
    auto* line = app.add_subcommand("line-test",
                                    "Julia-line criterion plus a sampled numeric witness");
    line->set_help_flag("--help", "print help and exit");
    PolySource li_src;
    std::string li_h, li_out, li_csv;
    int li_samples = 2000;
    std::uint64_t li_seed = 1;
    double li_tol = 1e-6;
    add_poly_options(line, li_src);
    line->add_option("--h", li_h, kComplexGrammar)->required();
    line->add_option("--samples", li_samples, "Julia sample count (0 skips the numeric check)");
    line->add_option("--seed", li_seed, "RNG seed for inverse iteration");
    line->add_option("--tol", li_tol, "deviation tolerance for within_tol");
    line->add_option("--csv-out", li_csv, "also write the samples as re,im CSV");
    line->add_option("--out", li_out, "output path (default stdout)");

    // symmetry
    auto* symmetry = app.add_subcommand("symmetry",
                                        "rotational symmetry orders of the sampled Julia set");
    symmetry->set_help_flag("--help", "print help and exit");
    PolySource sy_src;
    std::string sy_h, sy_out, sy_csv;
    int sy_max_order = 8, sy_samples = 3000;
    std::uint64_t sy_seed = 1;
    double sy_tau = 0.0;
    add_poly_options(symmetry, sy_src);
    symmetry->add_option("--h", sy_h, kComplexGrammar)->required();
    symmetry->add_option("--max-order", sy_max_order, "largest rotation order to test");
    symmetry->add_option("--samples", sy_samples, "Julia sample count");
    symmetry->add_option("--seed", sy_seed, "RNG seed for inverse iteration");
    symmetry->add_option("--tau", sy_tau,
                         "defect threshold; <= 0 selects 3x median nearest-neighbour spacing");
    symmetry->add_option("--csv-out", sy_csv, "also write the samples as re,im CSV");
    symmetry->add_option("--out", sy_out, "output path (default stdout)");

    // characterize
    auto* characterize = app.add_subcommand("characterize",
                                            "reconstruct (h, p) from a JSON multiplier file "
                                            "(quadratic cases or the general lemma)");
    characterize->set_help_flag("--help", "print help and exit");
    std::string ch_in, ch_out;
    characterize->add_option("--input", ch_in, "JSON file: analyze output, or "
                                               "{\"case\":..., ...} for the quadratic lemma")
        ->required();
    characterize->add_option("--out", ch_out, "output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage diagnostic
        Json err{{"error", "usage"}, {"message", e.what()}};
        std::cerr << dump_json(err);
        return 2;
    }

    if (app.got_subcommand(analyze)) {
        RelaxedNewtonMap N = build_map(resolve_poly(an_src), parse_complex(an_h));
        warn_admissibility(N);
        write_text(an_out, dump_json(analysis_report(N)));
        return 0;
    }
    if (app.got_subcommand(classify)) {
        RelaxedNewtonMap N = build_map(resolve_poly(cl_src), parse_complex(cl_h));
        warn_admissibility(N);
        write_text(cl_out, dump_json(verdict_report(classify_convergence(N, cl_budget))));
        return 0;
    }
    if (app.got_subcommand(render)) {
        RelaxedNewtonMap N = build_map(resolve_poly(re_src), parse_complex(re_h));
        warn_admissibility(N);
        std::vector<CycleInfo> cycles;
        if (re_detect) cycles = collect_cycles(classify_convergence(N, re_budget));
        Viewport vp{parse_complex(re_center), re_width, re_pxw, re_pxh};
        BasinImage img = render_basins(N, cycles, vp, re_budget, re_eps);
        auto palette = default_palette(static_cast<int>(img.roots.size()),
                                       static_cast<int>(img.cycles.size()));
        Shading shading = re_shading == "flat" ? Shading::Flat : Shading::ByIterations;
        write_bytes(re_out, encode_ppm(img, palette, shading));
        write_text(re_out + ".legend.json", dump_json(legend_report(img)));
        return 0;
    }
    if (app.got_subcommand(construct)) {
        Complex h = parse_complex(co_h);
        NonconvergentCubic c = nonconvergent_cubic(h, co_sign == "+" ? 1 : -1);
        CycleResiduals r = verify_superattracting_2cycle(c);
        ConvergenceVerdict v = classify_convergence(cubic_map(c.h, c.a), co_budget);
        write_text(co_out, dump_json(cubic_report(c, r, v)));
        return 0;
    }
    if (app.got_subcommand(line)) {
        FactoredPolynomial p = resolve_poly(li_src);
        Complex h = parse_complex(li_h);
        LineVerdict v = line_predicate(p, h);
        std::optional<LineFit> fit;
        int actual = 0;
        if (li_samples > 0) {
            RelaxedNewtonMap N = build_map(p, h);
            JuliaSample js = sample_julia(N, li_samples, li_samples + kJuliaBurnIn + 8, li_seed);
            actual = static_cast<int>(js.points.size());
            fit = numeric_line_check(js, li_tol);
            if (!li_csv.empty()) write_text(li_csv, julia_csv(js));
        }
        write_text(li_out, dump_json(line_report(v, fit, actual)));
        return 0;
    }
    if (app.got_subcommand(symmetry)) {
        RelaxedNewtonMap N = build_map(resolve_poly(sy_src), parse_complex(sy_h));
        JuliaSample js = sample_julia(N, sy_samples, sy_samples + kJuliaBurnIn + 8, sy_seed);
        if (!sy_csv.empty()) write_text(sy_csv, julia_csv(js));
        write_text(sy_out, dump_json(symmetry_report(symmetry_order(js, sy_max_order, sy_tau))));
        return 0;
    }
    if (app.got_subcommand(characterize)) {
        std::ifstream in(ch_in);
        if (!in) throw InvalidParameter("cannot open input file '" + ch_in + "'");
        Json j = Json::parse(in);
        if (j.contains("case") && j["case"].is_string()) {
            std::string which = j["case"].get<std::string>();
            QuadraticCharacterization qc;
            if (which == "equal-multipliers")
                qc = characterize_quadratic(
                    EqualAttractingMultipliers{complex_from_json(j.at("lambda"))});
            else if (which == "superattracting-rational")
                qc = characterize_quadratic(
                    SuperattractingWithMultiplier{complex_from_json(j.at("multiplier"))});
            else if (which == "index-ratio")
                qc = characterize_quadratic(IndexRatio{j.at("ratio").get<double>()});
            else
                throw InvalidParameter("unknown characterize case '" + which + "'");
            write_text(ch_out, dump_json(quadratic_report(qc)));
            return 0;
        }
        Complex h = complex_from_json(j.at("h"));
        std::vector<FixedPointDatum> fps;
        for (const Json& r : j.at("roots"))
            fps.push_back({complex_from_json(r.at("value")), complex_from_json(r.at("multiplier"))});
        ExtendedPoint repelling = ExtendedPoint::infinity();
        if (j.contains("repelling")) repelling = ExtendedPoint::finite(complex_from_json(j["repelling"]));
        Reconstruction rec = reconstruct_general(fps, repelling, h);
        write_text(ch_out, dump_json(reconstruction_report(rec, h)));
        return 0;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const MathError& e) {
        Json err{{"error", e.code()}, {"message", e.what()}};
        std::cerr << dump_json(err);
        return 3;
    } catch (const InputError& e) {
        Json err{{"error", e.code()}, {"message", e.what()}};
        std::cerr << dump_json(err);
        return 2;
    } catch (const nlohmann::json::exception& e) {
        Json err{{"error", "json"}, {"message", e.what()}};
        std::cerr << dump_json(err);
        return 2;
    } catch (const std::exception& e) {
        Json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << dump_json(err);
        return 3;
    }
}

} // namespace renewt::cli

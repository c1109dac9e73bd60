#include "renewt/report.hpp"

#include <cmath>
#include <cstdio>

#include "renewt/errors.hpp"

namespace renewt {

namespace {

void dump_value(const Json& j, std::string& out, int indent);

void append_double(double x, std::string& out) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    out += buf;
}

void dump_value(const Json& j, std::string& out, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += Json(it.key()).dump();
                out += ": ";
                dump_value(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Short numeric arrays (complex values) stay on one line.
            bool inline_ok = j.size() <= 4;
            for (const auto& el : j)
                if (!el.is_number() && !el.is_null()) inline_ok = false;
            if (inline_ok) {
                out += "[";
                bool first = true;
                for (const auto& el : j) {
                    if (!first) out += ", ";
                    first = false;
                    dump_value(el, out, indent);
                }
                out += "]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_value(el, out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            append_double(j.get<double>(), out);
            return;
        default:
            out += j.dump();
            return;
    }
}

const char* orbit_kind_name(OrbitOutcome::Kind k) { return to_string(k); }

} // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("expected a complex value as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json analysis_report(const RelaxedNewtonMap& N) {
    Json roots = Json::array();
    auto fps = fixed_points(N);
    for (const FixedPointRecord& r : fps) {
        if (r.at_infinity) continue;
        roots.push_back(Json{{"value", complex_json(r.location)},
                             {"multiplicity", r.multiplicity},
                             {"multiplier", complex_json(r.multiplier)},
                             {"class", to_string(r.classification)},
                             {"index", complex_json(r.residue_index)}});
    }
    const FixedPointRecord& inf = fps.back();
    Json crit = Json::array();
    for (Complex c : critical_points(N)) crit.push_back(complex_json(c));
    Complex index_sum(0.0);
    for (const FixedPointRecord& r : fps) index_sum += r.residue_index;
    return Json{{"h", complex_json(N.h())},
                {"h_admissible", N.h_admissible()},
                {"reduced_degree", N.reduced_degree()},
                {"degree", N.polynomial_degree()},
                {"roots", std::move(roots)},
                {"infinity", Json{{"multiplier", complex_json(inf.multiplier)},
                                  {"class", to_string(inf.classification)},
                                  {"index", complex_json(inf.residue_index)}}},
                {"critical_points", std::move(crit)},
                {"index_sum", complex_json(index_sum)}};
}

Json cycle_json(const CycleInfo& c) {
    Json pts = Json::array();
    for (Complex z : c.points) pts.push_back(complex_json(z));
    return Json{{"period", c.period},
                {"points", std::move(pts)},
                {"multiplier", complex_json(c.multiplier)},
                {"class", to_string(c.classification)}};
}

Json verdict_report(const ConvergenceVerdict& v) {
    Json cycles = Json::array();
    for (const OrbitOutcome& o : v.orbits)
        if (o.kind == OrbitOutcome::Kind::AttractedToCycle) cycles.push_back(cycle_json(*o.cycle));
    Json orbits = Json::array();
    for (size_t i = 0; i < v.orbits.size(); ++i) {
        const OrbitOutcome& o = v.orbits[i];
        Json entry{{"seed", complex_json(v.seeds[i])},
                   {"kind", orbit_kind_name(o.kind)},
                   {"iterations", o.iterations}};
        if (o.kind == OrbitOutcome::Kind::ConvergedToRoot) entry["root_index"] = o.root_index;
        if (o.kind == OrbitOutcome::Kind::DivergedToInfinity) entry["pole_hit"] = o.pole_hit;
        orbits.push_back(std::move(entry));
    }
    return Json{{"status", to_string(v.status)},
                {"cycles", std::move(cycles)},
                {"orbits", std::move(orbits)}};
}

Json cubic_report(const NonconvergentCubic& c, const CycleResiduals& r,
                  const ConvergenceVerdict& v) {
    return Json{{"h", complex_json(c.h)},
                {"sign", c.sign > 0 ? "+" : "-"},
                {"a", complex_json(c.a)},
                {"xi", complex_json(c.xi)},
                {"partner", complex_json(c.partner)},
                {"residuals", Json{{"fix", r.residual_fix},
                                   {"crit", r.residual_crit},
                                   {"multiplier_mag", r.multiplier_mag}}},
                {"verdict", to_string(v.status)}};
}

Json line_report(const LineVerdict& v, const std::optional<LineFit>& fit, int sample_count) {
    Json out{{"is_line", v.is_line}};
    if (v.is_line)
        out["line"] = Json{{"point", complex_json(v.point)},
                           {"direction", complex_json(v.direction)}};
    else
        out["line"] = nullptr;
    if (fit) {
        out["numeric"] = Json{{"samples", sample_count},
                              {"max_deviation", fit->max_deviation},
                              {"within_tol", fit->within_tol},
                              {"fit", Json{{"point", complex_json(fit->point)},
                                           {"direction", complex_json(fit->direction)}}}};
    }
    return out;
}

Json symmetry_report(const SymmetryEstimate& e) {
    Json defects = Json::array();
    for (const auto& d : e.defects)
        defects.push_back(Json{{"order", d.order}, {"defect", d.defect}, {"verified", d.verified}});
    return Json{{"order", e.order}, {"tau", e.tau}, {"defects", std::move(defects)}};
}

Json reconstruction_report(const Reconstruction& rec, Complex h) {
    Json roots = Json::array();
    for (const RootFactor& f : rec.p.factors())
        roots.push_back(Json{{"value", complex_json(f.root)}, {"multiplicity", f.multiplicity}});
    return Json{{"h", complex_json(h)},
                {"phi", Json{{"a", complex_json(rec.phi.a())},
                             {"b", complex_json(rec.phi.b())},
                             {"c", complex_json(rec.phi.c())},
                             {"d", complex_json(rec.phi.d())}}},
                {"polynomial",
                 Json{{"leading", complex_json(rec.p.leading())}, {"roots", std::move(roots)}}}};
}

Json quadratic_report(const QuadraticCharacterization& qc) {
    return Json{{"case", qc.case_id},
                {"h", complex_json(qc.h)},
                {"k", qc.k},
                {"m", qc.m},
                {"scale_free", qc.scale_free},
                {"polynomial", "(z-1)^" + std::to_string(qc.k) + "(z+1)^" + std::to_string(qc.m)}};
}

Json legend_report(const BasinImage& img) {
    Json attractors = Json::array();
    int index = 0;
    for (Complex r : img.roots)
        attractors.push_back(Json{{"index", index++}, {"type", "root"}, {"value", complex_json(r)}});
    for (const CycleInfo& c : img.cycles) {
        Json entry = cycle_json(c);
        entry["index"] = index++;
        entry["type"] = "cycle";
        attractors.push_back(std::move(entry));
    }
    return Json{{"attractors", std::move(attractors)},
                {"sentinel", Json{{"label", kSentinelLabel}, {"type", "undecided"}}},
                {"budget", img.budget},
                {"px_width", img.px_width},
                {"px_height", img.px_height}};
}

std::string julia_csv(const JuliaSample& s) {
    std::string out;
    out.reserve(s.points.size() * 48);
    char buf[96];
    for (Complex z : s.points) {
        std::snprintf(buf, sizeof(buf), "%.16e,%.16e\n", z.real(), z.imag());
        out += buf;
    }
    return out;
}

} // namespace renewt

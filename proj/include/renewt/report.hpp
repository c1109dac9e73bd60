#ifndef RENEWT_REPORT_HPP
#define RENEWT_REPORT_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "renewt/constructions.hpp"
#include "renewt/dynamics.hpp"
#include "renewt/geometry.hpp"
#include "renewt/newton_map.hpp"
#include "renewt/render.hpp"

namespace renewt {

using Json = nlohmann::ordered_json;

/// Serialize with every floating-point field at 17 significant digits
/// ("%.16e"); field order and bytes are stable across runs.
std::string dump_json(const Json& j);

Json complex_json(Complex z);  // [re, im]
Complex complex_from_json(const Json& j);

/// {h, h_admissible, reduced_degree, roots[], infinity{}, critical_points[], index_sum}
Json analysis_report(const RelaxedNewtonMap& N);

/// {status, cycles[], orbits[]}
Json verdict_report(const ConvergenceVerdict& v);

Json cycle_json(const CycleInfo& c);

/// {h, sign, a, xi, partner, residuals{}, verdict}
Json cubic_report(const NonconvergentCubic& c, const CycleResiduals& r,
                  const ConvergenceVerdict& v);

Json line_report(const LineVerdict& v, const std::optional<LineFit>& fit, int sample_count);

Json symmetry_report(const SymmetryEstimate& e);

Json reconstruction_report(const Reconstruction& rec, Complex h);
Json quadratic_report(const QuadraticCharacterization& qc);

/// Sidecar legend for a rendered image: {attractors[], sentinel{}}.
Json legend_report(const BasinImage& img);

/// "re,im" per line, 17 significant digits.
std::string julia_csv(const JuliaSample& s);

} // namespace renewt

#endif

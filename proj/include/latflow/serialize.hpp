#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "latflow/critical.hpp"
#include "latflow/dani.hpp"
#include "latflow/experiments.hpp"
#include "latflow/flow.hpp"
#include "latflow/norms.hpp"
#include "latflow/vec.hpp"

namespace latflow {

// Norm descriptors:
//   {"kind":"sup","dim":2}            dim optional, default 2
//   {"kind":"euclidean","dim":3}      dim optional, default 2
//   {"kind":"lp","p":2.5}
//   {"kind":"polygon","vertices":[[1,0],[0.5,0.9],...]}   one vertex per +/- pair
//   {"kind":"radial","angles":[...],"radii":[...]}
// norm_from_json accepts either a JSON value or, via norm_from_text, an inline
// JSON string or a path to a file containing one.
nlohmann::json norm_to_json(const NormDescriptor& norm);
NormDescriptor norm_from_json(const nlohmann::json& j);
NormDescriptor norm_from_text(const std::string& inline_json_or_path);

// Bases as row-major nested arrays, e.g. [[1,0],[0,1]]; square, dim 2..4.
nlohmann::json basis_to_json(const MatN& basis);
MatN basis_from_json(const nlohmann::json& j);

// Approximation-rate specs:
//   {"family":"scaled"|"powergap"|"loggap","param":x,"m":1,"n":1,"t_start":...}
//   {"family":"tabulated","ts":[...],"values":[...],"m":1,"n":1}
// t_start is optional and may only raise the family default.
nlohmann::json psi_to_json(const PsiSpec& psi);
PsiSpec psi_from_json(const nlohmann::json& j);

// One trajectory scanned for target hits up to flow time s_max.
struct CheckReport {
    double alpha = 0.0;
    PsiSpec psi;
    double s_max = 0.0;
    std::vector<HitRecord> hits;

    // Largest flow time at which the trajectory was still inside the target.
    std::optional<double> last_hit() const;
    // True when every recorded hit ends strictly before s_max, i.e. the scan
    // saw improvable behavior on a final stretch of the horizon.
    bool dirichlet_up_to_smax() const;
};

nlohmann::json check_to_json(const CheckReport& report);
CheckReport check_from_json(const nlohmann::json& j);

// Certificates round-trip losslessly: 120-bit interval endpoints travel as
// 30-digit hex strings next to their double projections.
nlohmann::json certificate_to_json(const CounterexampleCertificate& cert);
CounterexampleCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json zeroone_to_json(const ZeroOneReport& report);
ZeroOneReport zeroone_from_json(const nlohmann::json& j);

// Columns: window_lo, window_hi, hit_fraction, n, psi_id, classification.
std::string zeroone_to_csv(const ZeroOneReport& report);

// Columns: psi_id, K, euclidean_sum, supnorm_sum, classification.
std::string condition_table_to_csv(const std::vector<ConditionRow>& rows);

// Columns: t0, px, py, qx, qy, det, is_critical.
std::string locus_to_csv(const std::vector<LocusPoint>& points);

// Canonical float formatting for CSV cells: 12 significant digits.
std::string csv_double(double x);

}  // namespace latflow

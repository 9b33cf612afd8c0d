// io.hpp: parameter documents and deterministic CSV / JSON output

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"

#include "tisbm/dynamics.hpp"
#include "tisbm/groundstate.hpp"
#include "tisbm/model.hpp"
#include "tisbm/oracle.hpp"

namespace tisbm::io {

/// Parses the parameter document. Throws ParseError naming the offending field.
TisbmParams parse_params(const std::string& text);
TisbmParams load_params(const std::string& path);

nlohmann::json params_to_json(const TisbmParams& p);

/// 17 significant digits, "nan"/"inf" spelled out for CSV.
std::string format_double(double v);

/// Compact JSON with sorted keys and 17-significant-digit numbers.
std::string dump_json(const nlohmann::json& j);

nlohmann::json sector_to_json(const SectorParams& s);

inline constexpr const char* kTraceHeader = "t,sigma1z,sigma2z,sigma_total,regime,formula_id";
void write_trace_csv(std::ostream& os, const MagnetizationTrace& tr);

inline constexpr const char* kPhaseScanHeader =
    "alpha_a,alpha_b,k,lambda_gap,gs_sector,order_parameter,iter_a,iter_b,error";
void write_phase_row(std::ostream& os, const PhasePoint& pt);
void write_phase_error_row(std::ostream& os, double alpha_a, double alpha_b, double k, const std::string& error);

nlohmann::json transition_to_json(const TransitionReport& rep);

/// Dense matrix as CSV, one row per line.
void write_matrix_csv(std::ostream& os, const oracle::Matrix& m);

}  // namespace tisbm::io

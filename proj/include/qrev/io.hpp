#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>

#include "qrev/criteria.hpp"

namespace qrev {
namespace io {

using json = nlohmann::ordered_json;

// Matrices are {"rows": n, "cols": m, "data": [[re, im], ...]} row-major;
// complex numbers are two-element arrays throughout.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j, const std::string& path = "");

json vector_to_json(const Vec& v);
Vec vector_from_json(const json& j, const std::string& path = "");

json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j, const std::string& path = "");

json channel_to_json(const KrausChannel& phi);
KrausChannel channel_from_json(const json& j, const std::string& path = "");

json family_to_json(const PureStateFamily& f);
PureStateFamily family_from_json(const json& j, const std::string& path = "");

json ensemble_to_json(const DiscreteEnsemble& e);
DiscreteEnsemble ensemble_from_json(const json& j, const std::string& path = "");

json cq_to_json(const CqStructure& cq);
json criterion_report_to_json(const CriterionReport& report);

// Top-level machine-readable result of one CLI invocation.
struct ReportEnvelope {
  std::string command;
  std::string inputs_digest;
  std::string verdict;
  std::map<std::string, double> residuals;
  json witnesses = json::object();
  double tolerance = 0.0;
  std::string log_base = "2";
  std::optional<std::uint64_t> seed;
  std::int64_t wall_time_ms = 0;

  json to_json() const;
};

// Serializer with floating-point numbers at 17 significant digits, so equal
// values produce identical bytes. indent < 0 emits compact one-line JSON.
std::string dump(const json& j, int indent = -1);

// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

json parse_text(const std::string& text, const std::string& origin);
json load_file(const std::string& file_path);
std::string read_file_bytes(const std::string& file_path);
void write_file(const std::string& file_path, const std::string& contents);

}  // namespace io
}  // namespace qrev

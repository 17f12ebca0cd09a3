#include "qrev/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qrev {
namespace io {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path.empty() ? what : path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

cxd complex_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    schema_error(path, "expected [re, im]");
  return {number_at(j[0], path + "/0"), number_at(j[1], path + "/1")};
}

json complex_to_json(const cxd& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json matrix_to_json(const Mat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected a matrix object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    schema_error(path, "matrix needs rows, cols, data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    schema_error(path + "/rows", "rows/cols must be integers");
  int rows = j["rows"].get<int>();
  int cols = j["cols"].get<int>();
  if (rows <= 0 || cols <= 0) schema_error(path + "/rows", "dimensions must be positive");
  const json& data = j["data"];
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) !=
                              static_cast<Eigen::Index>(rows) * cols)
    schema_error(path + "/data", "data length must equal rows*cols");
  Mat m(rows, cols);
  Eigen::Index idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      m(r, c) = complex_at(data[idx], path + "/data/" + std::to_string(idx));
      ++idx;
    }
  if (!m.allFinite())
    throw Error(ErrorKind::ValidationError, "matrix has non-finite entries");
  return m;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty vector");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_at(j[i], path + "/" + std::to_string(i));
  return v;
}

json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.mat); }

DensityMatrix state_from_json(const json& j, const std::string& path) {
  return DensityMatrix(matrix_from_json(j, path));
}

json channel_to_json(const KrausChannel& phi) {
  json kraus = json::array();
  for (const Mat& v : phi.kraus) kraus.push_back(matrix_to_json(v));
  return json{{"dim_in", phi.dim_in}, {"dim_out", phi.dim_out}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected a channel object");
  if (!j.contains("dim_in") || !j.contains("dim_out") || !j.contains("kraus"))
    schema_error(path, "channel needs dim_in, dim_out, kraus");
  int din = j["dim_in"].get<int>();
  int dout = j["dim_out"].get<int>();
  const json& kraus = j["kraus"];
  if (!kraus.is_array() || kraus.empty())
    schema_error(path + "/kraus", "kraus must be a non-empty array");
  std::vector<Mat> ops;
  ops.reserve(kraus.size());
  for (size_t k = 0; k < kraus.size(); ++k)
    ops.push_back(matrix_from_json(kraus[k], path + "/kraus/" + std::to_string(k)));
  return KrausChannel(din, dout, std::move(ops));
}

json family_to_json(const PureStateFamily& f) {
  json vectors = json::array();
  for (const Vec& v : f.vectors) vectors.push_back(vector_to_json(v));
  return json{{"dim", f.dim}, {"vectors", std::move(vectors)}};
}

PureStateFamily family_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected a family object");
  if (!j.contains("dim") || !j.contains("vectors"))
    schema_error(path, "family needs dim and vectors");
  int dim = j["dim"].get<int>();
  const json& vectors = j["vectors"];
  if (!vectors.is_array() || vectors.empty())
    schema_error(path + "/vectors", "vectors must be a non-empty array");
  std::vector<Vec> vs;
  vs.reserve(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i)
    vs.push_back(vector_from_json(vectors[i], path + "/vectors/" + std::to_string(i)));
  return PureStateFamily(dim, std::move(vs));
}

json ensemble_to_json(const DiscreteEnsemble& e) {
  json weights = json::array();
  for (double w : e.weights) weights.push_back(w);
  json states = json::array();
  for (const DensityMatrix& s : e.states) states.push_back(state_to_json(s));
  return json{{"weights", std::move(weights)}, {"states", std::move(states)}};
}

DiscreteEnsemble ensemble_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an ensemble object");
  if (!j.contains("weights") || !j.contains("states"))
    schema_error(path, "ensemble needs weights and states");
  const json& weights = j["weights"];
  const json& states = j["states"];
  if (!weights.is_array() || !states.is_array() || weights.size() != states.size())
    schema_error(path, "weights and states must be arrays of equal length");
  std::vector<double> w;
  std::vector<DensityMatrix> s;
  for (size_t i = 0; i < weights.size(); ++i) {
    w.push_back(number_at(weights[i], path + "/weights/" + std::to_string(i)));
    s.push_back(state_from_json(states[i], path + "/states/" + std::to_string(i)));
  }
  return DiscreteEnsemble(std::move(w), std::move(s));
}

json cq_to_json(const CqStructure& cq) {
  json projectors = json::array();
  for (const Mat& p : cq.projectors) projectors.push_back(matrix_to_json(p));
  json sigmas = json::array();
  for (const DensityMatrix& s : cq.sigmas) sigmas.push_back(state_to_json(s));
  return json{{"projectors", std::move(projectors)}, {"sigmas", std::move(sigmas)}};
}

json criterion_report_to_json(const CriterionReport& report) {
  json statements = json::object();
  for (const auto& [label, st] : report.statements) {
    json entry{{"pass", st.pass}, {"residual", st.residual}, {"known", st.known}};
    if (!st.note.empty()) entry["note"] = st.note;
    statements[label] = std::move(entry);
  }
  json out{{"verdict", to_string(report.verdict)},
           {"statements", std::move(statements)},
           {"m_value", report.m_value},
           {"tolerance", report.tolerance},
           {"restricted", report.restricted},
           {"max_residual", report.max_residual}};
  if (!report.member_residuals.empty()) out["member_residuals"] = report.member_residuals;
  if (!report.warnings.empty()) out["warnings"] = report.warnings;
  if (report.cq_witness) out["cq_structure"] = cq_to_json(*report.cq_witness);
  if (report.gram_witness) out["gram"] = matrix_to_json(*report.gram_witness);
  if (report.isometry_witness) out["isometry"] = matrix_to_json(*report.isometry_witness);
  if (report.kraus_witness && !report.kraus_ranks.empty())
    out["kraus_ranks"] = report.kraus_ranks;
  return out;
}

json ReportEnvelope::to_json() const {
  json residual_obj = json::object();
  for (const auto& [name, value] : residuals) residual_obj[name] = value;
  json out{{"command", command},
           {"inputs_digest", inputs_digest},
           {"verdict", verdict},
           {"residuals", std::move(residual_obj)},
           {"witnesses", witnesses},
           {"tolerance", tolerance},
           {"log_base", log_base}};
  if (seed) out["seed"] = *seed;
  out["wall_time_ms"] = wall_time_ms;
  return out;
}

namespace {

void dump_impl(const json& j, std::string& out, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent >= 0) {
      out.push_back('\n');
      out.append(static_cast<size_t>(indent) * d, ' ');
    }
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out.push_back(':');
        if (indent >= 0) out.push_back(' ');
        dump_impl(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : j) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        dump_impl(item, out, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  dump_impl(j, out, indent, 0);
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json parse_text(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::SchemaError, origin + ": invalid JSON");
  return j;
}

std::string read_file_bytes(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot open " + file_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_file(const std::string& file_path) {
  return parse_text(read_file_bytes(file_path), file_path);
}

void write_file(const std::string& file_path, const std::string& contents) {
  std::ofstream out(file_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::SchemaError, "cannot write " + file_path);
  out << contents;
}

}  // namespace io
}  // namespace qrev

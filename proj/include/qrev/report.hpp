#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrev/channel.hpp"

namespace qrev {

enum class Verdict { Reversible, NotReversible, Unknown };

const char* to_string(Verdict v);

// One tested statement of a criterion: pass/fail with the measured residual.
// known = false marks a statement the best-effort machinery could not decide
// (e.g. a failed witness search); such entries never flip a verdict.
struct StatementResult {
  bool pass = false;
  double residual = 0.0;
  bool known = true;
  std::string note;
};

// Structured verdict of a reversibility test, carrying whatever constructive
// witnesses the check produced.
struct CriterionReport {
  Verdict verdict = Verdict::Unknown;
  std::map<std::string, StatementResult> statements;

  std::optional<CqStructure> cq_witness;
  std::optional<std::vector<Mat>> kraus_witness;
  std::vector<int> kraus_ranks;
  std::optional<Mat> gram_witness;
  std::optional<Mat> isometry_witness;

  int m_value = -1;
  double tolerance = 0.0;
  bool restricted = false;  // check ran on a proper support subspace
  std::vector<double> member_residuals;
  double max_residual = 0.0;
  std::vector<std::string> warnings;

  void set_statement(const std::string& label, bool pass, double residual,
                     bool known = true, const std::string& note = "");
  // Verdict from the definitive statements: all pass -> Reversible, any fail
  // with none passing a constructive check -> NotReversible, mixed -> Unknown.
  void conclude();
};

}  // namespace qrev

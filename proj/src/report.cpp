#include "relkit/report.hpp"

#include <sstream>

#include "json.hpp"

namespace relkit::report {

std::string verdict_string(const entail::Verdict& v) {
  switch (v.truth) {
    case entail::Truth::yes: return "true";
    case entail::Truth::no: return "false";
    case entail::Truth::unknown: return "unknown";
  }
  return "unknown";
}

std::string reason_string(const entail::Verdict& v) {
  if (!v.is_unknown()) return "";
  return v.reason == entail::UnknownReason::no_witness ? "no-witness"
                                                       : "budget-exhausted";
}

int exit_code(const std::string& verdict) {
  if (verdict == "true" || verdict == "pass") return 0;
  if (verdict == "false" || verdict == "fail") return 1;
  return 2;
}

std::string to_json_text(const JobReport& r) {
  nlohmann::json j;
  j["job"] = r.job;
  j["inputs"] = r.inputs;
  j["verdict"] = r.verdict;
  if (r.reason.empty())
    j["reason"] = nullptr;
  else
    j["reason"] = r.reason;
  if (r.witness.empty())
    j["witness"] = nullptr;
  else
    j["witness"] = r.witness;
  j["ms"] = r.ms;
  nlohmann::json budget = nlohmann::json::object();
  for (const auto& [k, v] : r.budget) budget[k] = v;
  j["budget"] = budget;
  return j.dump();
}

std::string to_text(const JobReport& r, bool show_witness) {
  std::ostringstream out;
  out << r.job;
  for (const auto& in : r.inputs) out << " " << in;
  out << ": " << r.verdict;
  if (!r.reason.empty()) out << " (" << r.reason << ")";
  out << "\n";
  bool failing = r.verdict == "false" || r.verdict == "fail";
  if ((failing || show_witness) && !r.witness.empty())
    for (const auto& w : r.witness) out << "  witness: " << w << "\n";
  return out.str();
}

}  // namespace relkit::report

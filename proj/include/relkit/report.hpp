// relkit -- job reports shared by the CLI and its tests.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "relkit/entail.hpp"

namespace relkit::report {

struct JobReport {
  std::string job;  // entail | frame-verify | check | morphism
  std::vector<std::string> inputs;
  std::string verdict;  // true | false | unknown | pass | fail
  std::string reason;   // empty when not applicable
  std::vector<std::string> witness;
  double ms = 0;
  std::map<std::string, long long> budget;
};

std::string verdict_string(const entail::Verdict& v);
std::string reason_string(const entail::Verdict& v);

// {0 true/pass, 1 false/fail, 2 unknown}; usage errors map to 3 elsewhere.
int exit_code(const std::string& verdict);

std::string to_json_text(const JobReport& r);
std::string to_text(const JobReport& r, bool show_witness);

}  // namespace relkit::report

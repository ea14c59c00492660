// relkit -- error codes shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace relkit {

enum class ErrorCode {
  unknown_symbol,
  arity_mismatch,
  duplicate_symbol,
  symbol_not_in_source,
  signature_mismatch,
  budget_zero_with_schemas,
  ill_formed_goal,
  flexible_symbol_in_interpretation,
  non_rigid_right_hand_side,
  unknown_flexible_symbol,
  unknown_relation_symbol,
  unbound_point_variable,
  unmapped_symbol,
  invalid_path,
  frame_condition_violated,
  empty_quant_domain,
  not_a_state_formula,
  unknown_state_id,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace relkit

#pragma once

#include <stdexcept>
#include <string>

namespace polyfermion {

enum class Errc {
  invalid_argument,
  out_of_range,
  degree_too_large,
  capacity,
  weight_exceeded,
  not_a_codeword,
  parameter_invalid,
  no_segment_advantage,
  resource,
  infeasible_polynomial,
  angle_finding_failed,
  invalid_support,
  unsupported_topology,
  parse_error,
  audit_failure,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace polyfermion

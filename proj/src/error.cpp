#include "polyfermion/error.hpp"

namespace polyfermion {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::out_of_range: return "out-of-range";
    case Errc::degree_too_large: return "degree-too-large";
    case Errc::capacity: return "capacity";
    case Errc::weight_exceeded: return "weight-exceeded";
    case Errc::not_a_codeword: return "not-a-codeword";
    case Errc::parameter_invalid: return "parameter-invalid";
    case Errc::no_segment_advantage: return "no-segment-advantage";
    case Errc::resource: return "resource";
    case Errc::infeasible_polynomial: return "infeasible-polynomial";
    case Errc::angle_finding_failed: return "angle-finding-failed";
    case Errc::invalid_support: return "invalid-support";
    case Errc::unsupported_topology: return "unsupported-topology";
    case Errc::parse_error: return "parse-error";
    case Errc::audit_failure: return "audit-failure";
  }
  return "error";
}

}  // namespace polyfermion

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minnet {

enum class Errc {
  degenerate_quad,
  degenerate_fit,
  degenerate,
  not_circular,
  not_isothermic,
  domain_mismatch,
  parse_error,
  unsupported_gamma,
  pole_on_grid,
  propagation_blowup,
  infeasible_spec,
  no_convergence,
  closure_failure,
  zero_dg,
  inconsistent_bundle,
  not_coplanar,
  zero_area,
  not_reflectable,
  not_planar_boundary,
  orbit_explosion,
  invalid_argument,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::degenerate_quad: return "DegenerateQuad";
    case Errc::degenerate_fit: return "DegenerateFit";
    case Errc::degenerate: return "Degenerate";
    case Errc::not_circular: return "NotCircular";
    case Errc::not_isothermic: return "NotIsothermic";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::parse_error: return "ParseError";
    case Errc::unsupported_gamma: return "UnsupportedGamma";
    case Errc::pole_on_grid: return "PoleOnGrid";
    case Errc::propagation_blowup: return "PropagationBlowup";
    case Errc::infeasible_spec: return "InfeasibleSpec";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::closure_failure: return "ClosureFailure";
    case Errc::zero_dg: return "ZeroDg";
    case Errc::inconsistent_bundle: return "InconsistentBundle";
    case Errc::not_coplanar: return "NotCoplanar";
    case Errc::zero_area: return "ZeroArea";
    case Errc::not_reflectable: return "NotReflectable";
    case Errc::not_planar_boundary: return "NotPlanarBoundary";
    case Errc::orbit_explosion: return "OrbitExplosion";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }
  /// The message without the error-code prefix.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace minnet

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "minnet/lattice.hpp"

namespace minnet {

/// Outcome of one invariant check over a net: worst residual and where it occurred.
struct CheckReport {
  std::string name;
  double tolerance{0.0};
  bool pass{true};
  double max_residual{0.0};
  std::optional<Vertex> worst;
  std::size_t checked{0};
  std::size_t failures{0};

  CheckReport() = default;
  CheckReport(std::string name_, double tol) : name(std::move(name_)), tolerance(tol) {}

  void record(double residual, Vertex where) {
    ++checked;
    if (!(residual <= tolerance)) {
      ++failures;
      pass = false;
    }
    // NaN residuals always become the reported worst location.
    const bool nan_now = residual != residual;
    const bool nan_before = max_residual != max_residual;
    if (!worst || (nan_now && !nan_before) || (!nan_before && residual > max_residual)) {
      max_residual = residual;
      worst = where;
    }
  }
};

/// Collapse per-item residuals (computed in parallel) into a report in item order.
inline CheckReport collect(std::string name, double tol, const std::vector<Vertex>& where,
                           const std::vector<double>& residuals) {
  CheckReport r(std::move(name), tol);
  for (std::size_t i = 0; i < where.size(); ++i) r.record(residuals[i], where[i]);
  return r;
}

}  // namespace minnet

#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "minnet/parallel.hpp"

namespace minnet {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// r(x): writes the residual vector for parameters x. Must be pure; it is
/// called concurrently while the Jacobian is assembled.
using ResidualFn = std::function<VecX(const VecX&)>;

struct LmOptions {
  int max_iter{500};
  double lambda0{1e-3};
  double lambda_down{0.5};
  double lambda_up{4.0};
  double lambda_max{1e16};
  double target{1e-14};     ///< stop once |r| <= target
  double fd_step{1e-7};     ///< relative central-difference step
  double clamp{0.0};        ///< if > 0, parameters are clipped to [-clamp, clamp]
  std::function<void(VecX&)> project;  ///< optional projection applied to each trial point
};

struct LmResult {
  VecX x;
  VecX r;
  double norm{0.0};
  int iterations{0};
  bool reached_target{false};
};

inline MatX finite_difference_jacobian(const ResidualFn& f, const VecX& x, Eigen::Index rows, double rel_step) {
  MatX J(rows, x.size());
  parallel_for(static_cast<std::size_t>(x.size()), [&](std::size_t jj) {
    const auto j = static_cast<Eigen::Index>(jj);
    const double h = rel_step * std::max(1.0, std::abs(x[j]));
    VecX xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (f(xp) - f(xm)) / (2.0 * h);
  });
  return J;
}

/// Damped Gauss-Newton (Levenberg-Marquardt) with Marquardt scaling.
inline LmResult levenberg_marquardt(const ResidualFn& f, VecX x, const LmOptions& opt = {}) {
  auto project = [&](VecX& v) {
    if (opt.clamp > 0.0) v = v.cwiseMax(-opt.clamp).cwiseMin(opt.clamp);
    if (opt.project) opt.project(v);
  };
  project(x);
  LmResult out;
  VecX r = f(x);
  double cost = r.squaredNorm();
  double lambda = opt.lambda0;
  int it = 0;
  for (; it < opt.max_iter && std::sqrt(cost) > opt.target; ++it) {
    const MatX J = finite_difference_jacobian(f, x, r.size(), opt.fd_step);
    const MatX A = J.transpose() * J;
    const VecX grad = J.transpose() * r;
    bool improved = false;
    while (lambda <= opt.lambda_max) {
      MatX damped = A;
      damped.diagonal() += lambda * (A.diagonal().array() + 1e-12).matrix();
      VecX trial = x - damped.ldlt().solve(grad);
      project(trial);
      const VecX rt = f(trial);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        x = std::move(trial);
        r = rt;
        cost = ct;
        lambda *= opt.lambda_down;
        improved = true;
        break;
      }
      lambda *= opt.lambda_up;
    }
    if (!improved) break;
  }
  out.x = std::move(x);
  out.r = std::move(r);
  out.norm = std::sqrt(cost);
  out.iterations = it;
  out.reached_target = out.norm <= opt.target;
  return out;
}

}  // namespace minnet

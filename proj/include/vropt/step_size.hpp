#ifndef VROPT_STEP_SIZE_HPP
#define VROPT_STEP_SIZE_HPP

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Core>

#include "vropt/errors.hpp"

namespace vropt {

enum class step_variant {
  fixed,
  bb,
  modified_bb_convex,
  modified_bb_nonconvex,
};

struct step_interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Secant-style step across consecutive outer-loop snapshots:
/// eta = (1/lambda_kappa) ||dx||^2 / <dx, dg>, optionally clamped.
/// Returns nullopt when the quotient is numerically undefined (curvature
/// exhausted); the caller keeps its previous step then.
inline std::optional<double> bb_eta(const Eigen::VectorXd& x_prev,
                                    const Eigen::VectorXd& x_prev2,
                                    const Eigen::VectorXd& g_prev,
                                    const Eigen::VectorXd& g_prev2,
                                    double lambda_kappa,
                                    std::optional<step_interval> clamp = {},
                                    bool* clamped = nullptr) {
  if (!(lambda_kappa > 0.0))
    throw config_error("bb_eta: lambda_kappa must be positive");
  const Eigen::VectorXd dx = x_prev - x_prev2;
  const double dx_sq = dx.squaredNorm();
  if (dx_sq <= 1e-30) return std::nullopt;
  const double denom = dx.dot(g_prev - g_prev2);
  if (denom <= 1e-30 * dx_sq) return std::nullopt;
  double eta = dx_sq / (lambda_kappa * denom);
  if (clamp) {
    const double raw = eta;
    eta = std::clamp(eta, clamp->lo, clamp->hi);
    if (clamped) *clamped = (eta != raw);
  } else if (clamped) {
    *clamped = false;
  }
  return eta;
}

/// Regularized secant step with an explicit 1/m scale. The convex form keeps
/// the signed curvature; the nonconvex form takes its absolute value so the
/// step stays positive.
inline std::optional<double> modified_bb_eta(bool nonconvex,
                                             const Eigen::VectorXd& x_prev,
                                             const Eigen::VectorXd& x_prev2,
                                             const Eigen::VectorXd& g_prev,
                                             const Eigen::VectorXd& g_prev2,
                                             std::int64_t m,
                                             double lambda_reg) {
  if (m < 1) throw config_error("modified_bb_eta: m must be >= 1");
  if (!(lambda_reg > 0.0))
    throw config_error("modified_bb_eta: lambda must be positive");
  const Eigen::VectorXd dx = x_prev - x_prev2;
  const double dx_sq = dx.squaredNorm();
  if (dx_sq <= 1e-30) return std::nullopt;
  double curv = dx.dot(g_prev - g_prev2);
  if (nonconvex) curv = std::abs(curv);
  return dx_sq / (static_cast<double>(m) * (curv + lambda_reg * dx_sq));
}

/// Per-run step-size policy. Holds exactly one previous (snapshot, gradient)
/// pair; adaptive variants emit eta_init until that state exists.
class step_size_controller {
 public:
  step_variant variant = step_variant::fixed;
  double lambda_kappa = 1.0;     // bb scale
  double lambda_reg = 1.0;       // modified-bb regularizer
  std::int64_t m = 1;            // modified-bb 1/m factor
  std::optional<step_interval> clamp;

  void reset(double eta_init) {
    eta_ = eta_init;
    has_prev_ = false;
    last_clamped_ = false;
  }

  /// Called once per outer loop with the current snapshot and its full
  /// gradient; returns the step for the loop that starts there.
  double next_eta(const Eigen::VectorXd& x_snap, const Eigen::VectorXd& g_snap) {
    if (variant != step_variant::fixed && has_prev_) {
      std::optional<double> eta;
      last_clamped_ = false;
      if (variant == step_variant::bb) {
        eta = bb_eta(x_snap, x_prev_, g_snap, g_prev_, lambda_kappa, clamp,
                     &last_clamped_);
      } else {
        eta = modified_bb_eta(variant == step_variant::modified_bb_nonconvex,
                              x_snap, x_prev_, g_snap, g_prev_, m, lambda_reg);
      }
      if (eta) eta_ = *eta;  // degenerate quotient: keep the previous step
    }
    if (variant != step_variant::fixed) {
      x_prev_ = x_snap;
      g_prev_ = g_snap;
      has_prev_ = true;
    }
    return eta_;
  }

  double current_eta() const { return eta_; }
  bool last_clamped() const { return last_clamped_; }

 private:
  double eta_ = 0.0;
  bool has_prev_ = false;
  bool last_clamped_ = false;
  Eigen::VectorXd x_prev_, g_prev_;
};

}  // namespace vropt

#endif

#ifndef VROPT_SURROGATE_HPP
#define VROPT_SURROGATE_HPP

#include <algorithm>
#include <memory>
#include <utility>

#include "vropt/objective.hpp"

namespace vropt {

/// The base objective plus a quadratic anchor term (mu/2)||x - anchor||^2,
/// folded into every component so the whole thing still satisfies the
/// finite-sum contract. The quadratic term is oracle-free: a component
/// gradient of the surrogate costs the one IFO of the base gradient.
class anchored_surrogate final : public objective {
 public:
  anchored_surrogate(std::shared_ptr<const objective> base, vec anchor,
                     double mu)
      : base_(std::move(base)), anchor_(std::move(anchor)), mu_(mu) {
    if (mu_ < 0.0) throw config_error("anchored_surrogate: mu must be >= 0");
    if (anchor_.size() != base_->dim())
      throw dimension_error("anchored_surrogate: anchor dimension mismatch");
    counter_ = base_->counter();  // shared accounting

    const smoothness_info b = base_->smoothness();
    // Curvature lower bound of the base is mu_sc - sigma_bn; adding mu shifts
    // it up. A shift past zero turns bounded nonconvexity into strong
    // convexity (mu = sigma + theta gives modulus theta).
    const double low = b.mu_sc - b.sigma_bn + mu_;
    const double L_eff = b.L + mu_;
    info_ = smoothness_info(L_eff, std::clamp(low, 0.0, L_eff),
                            std::clamp(-low, 0.0, L_eff));
  }

  std::int64_t num_components() const override { return base_->num_components(); }
  int dim() const override { return base_->dim(); }
  smoothness_info smoothness() const override { return info_; }

  double value(const vec& x) const override {
    return base_->value(x) + 0.5 * mu_ * (x - anchor_).squaredNorm();
  }

  vec component_grad(std::int64_t i, const vec& x) const override {
    vec g = base_->component_grad(i, x);
    add_anchor_term(x, g);
    return g;
  }

  vec full_grad(const vec& x) const override {
    vec g = base_->full_grad(x);
    add_anchor_term(x, g);
    return g;
  }

  double mu() const { return mu_; }
  const vec& anchor() const { return anchor_; }
  const objective& base() const { return *base_; }

 private:
  // The added term is exactly zero at the anchor; skipping it there keeps
  // grad f~(anchor) bit-identical to grad f(anchor).
  void add_anchor_term(const vec& x, vec& g) const {
    if (mu_ == 0.0) return;
    if ((x.array() == anchor_.array()).all()) return;
    g += mu_ * (x - anchor_);
  }

  std::shared_ptr<const objective> base_;
  vec anchor_;
  double mu_;
  smoothness_info info_;
};

inline std::shared_ptr<anchored_surrogate> make_anchored(
    std::shared_ptr<const objective> base, vec anchor, double mu) {
  return std::make_shared<anchored_surrogate>(std::move(base),
                                              std::move(anchor), mu);
}

namespace detail {

inline void check_same_dim(const vec& a, const vec& b, const char* who) {
  if (a.size() != b.size())
    throw dimension_error(std::string(who) + ": dimension mismatch");
}

}  // namespace detail

/// Recovers the base gradient from a surrogate gradient at the same point:
/// grad f(x) = grad f~(x) - mu (x - anchor). Zero oracle cost.
inline vec true_grad_from_surrogate(const vec& surrogate_grad_at_x, double mu,
                                    const vec& x, const vec& anchor) {
  detail::check_same_dim(surrogate_grad_at_x, x, "true_grad_from_surrogate");
  detail::check_same_dim(x, anchor, "true_grad_from_surrogate");
  if (mu == 0.0 || (x.array() == anchor.array()).all())
    return surrogate_grad_at_x;
  return surrogate_grad_at_x - mu * (x - anchor);
}

/// Re-anchoring identity for moving-anchor stages: the previous stage's final
/// full gradient grad f~_s(x_s) becomes the next stage's starting gradient
/// grad f~_{s+1}(x_s) by stripping the old anchor term (the new term vanishes
/// at its own anchor). Zero oracle cost.
inline vec carry_over_grad(const vec& prev_surrogate_full_grad, double mu_prev,
                           const vec& x_s, const vec& anchor_prev) {
  return true_grad_from_surrogate(prev_surrogate_full_grad, mu_prev, x_s,
                                  anchor_prev);
}

/// General form that also covers fixed-anchor weight changes: converts
/// grad f~(x) under (mu_prev, anchor_prev) into the gradient under
/// (mu_next, anchor_next) at the same point.
inline vec carry_over_grad(const vec& prev_surrogate_full_grad, double mu_prev,
                           const vec& x, const vec& anchor_prev,
                           double mu_next, const vec& anchor_next) {
  detail::check_same_dim(x, anchor_next, "carry_over_grad");
  if (mu_prev == mu_next &&
      (anchor_prev.array() == anchor_next.array()).all())
    return prev_surrogate_full_grad;  // same surrogate, nothing to shift
  vec g = true_grad_from_surrogate(prev_surrogate_full_grad, mu_prev, x,
                                   anchor_prev);
  if (mu_next != 0.0 && (x.array() != anchor_next.array()).any())
    g += mu_next * (x - anchor_next);
  return g;
}

}  // namespace vropt

#endif

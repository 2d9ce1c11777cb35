#ifndef VROPT_META_HPP
#define VROPT_META_HPP

#include <cmath>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "vropt/sarah.hpp"
#include "vropt/surrogate.hpp"

namespace vropt {

enum class reg_scheme { single, recursive_v1, recursive_v2, nonconvex };
enum class subsolver_kind { sarah_fixed, sarah_bb };

struct meta_config {
  reg_scheme scheme = reg_scheme::single;
  subsolver_kind subsolver = subsolver_kind::sarah_fixed;
  double epsilon = 1e-6;  // target for ||grad f||^2

  double mu0 = 1.0;    // recursive-v2 starting weight
  double mu1 = 1e-3;   // recursive-v1 starting weight (practical schedule)
  double gamma = 0.1;  // recursive-v1 per-stage decay
  double theta = 0.0;  // nonconvex strong-convexity shift; 0 = use sigma
  double sigma = 0.0;  // bounded-nonconvexity modulus; 0 = from smoothness()

  std::int64_t stage_cap = 20;
  std::int64_t k1_cap = 0;   // loops for stage 1 / single stage; 0 = from epsilon
  std::int64_t k_const = 2;  // loops per later stage
  std::int64_t m_cap = 0;    // inner-length cap; 0 = 5n

  double c_mu = 1.0;  // mu recipe scale
  double c_m = 2.0;   // inner-length scale
  double c_k = 1.0;   // stage-1 gradient-target scale

  double r_hat = 0.0;  // distance proxy in the mu recipe; 0 = ||grad f(x0)||/L
  std::optional<double> mu_override;  // single scheme: bypass the mu recipe
  bool theory_exact_v1 = false;       // start v1 at the mu floor

  double lambda_kappa = 0.0;  // bb scale; 0 = surrogate condition number
  bool clamp_bb = true;

  std::uint64_t seed = 0;
  std::int64_t max_ifo = 0;  // working-IFO budget; 0 = unbounded
  snapshot_rule snapshot = snapshot_rule::uniform_0_to_m_minus_1;

  void validate() const {
    if (!(epsilon > 0.0)) throw config_error("meta: epsilon must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0))
      throw config_error("meta: gamma must lie in (0,1]");
    if (stage_cap < 1 || k_const < 1)
      throw config_error("meta: stage_cap and k_const must be >= 1");
    if (theta < 0.0 || sigma < 0.0 || c_mu <= 0.0 || c_m <= 0.0 || c_k <= 0.0)
      throw config_error("meta: negative constant");
  }
};

/// Per-stage solver parameters resolved from the smoothness constants.
struct stage_params {
  double mu_reg = 0.0;  // weight of the quadratic term added to f
  double mu_eff = 0.0;  // strong-convexity modulus of the surrogate
  double eta = 0.0;
  std::int64_t m = 1;
};

/// Deterministic parameter recipes. Convex schemes regularize with
/// mu = c_mu sqrt(eps)/r_hat unless a stage weight is supplied; the nonconvex
/// scheme adds sigma + theta and is theta-strongly convex. eta = 0.5/L_eff and
/// m = ceil(c_m L_eff / mu_eff), capped.
inline stage_params theorem_params(reg_scheme scheme, double L, double sigma,
                                   double epsilon, const meta_config& cfg,
                                   double mu_for_stage = kNaN) {
  if (!(L > 0.0) || !(epsilon > 0.0))
    throw config_error("theorem_params: need L > 0 and epsilon > 0");
  stage_params p;
  if (scheme == reg_scheme::nonconvex) {
    if (!(sigma > 0.0) && !(cfg.theta > 0.0))
      throw config_error("theorem_params: nonconvex scheme needs sigma or theta");
    const double theta = cfg.theta > 0.0 ? cfg.theta : sigma;
    p.mu_reg = sigma + theta;
    p.mu_eff = theta;
  } else {
    double mu = mu_for_stage;
    if (std::isnan(mu)) {
      if (!(cfg.r_hat > 0.0))
        throw config_error("theorem_params: r_hat unresolved");
      mu = cfg.c_mu * std::sqrt(epsilon) / cfg.r_hat;
    }
    if (!(mu > 0.0)) throw config_error("theorem_params: mu must be positive");
    p.mu_reg = mu;
    p.mu_eff = mu;
  }
  const double L_eff = L + p.mu_reg;
  p.eta = 0.5 / L_eff;
  // Cap in floating point first: tiny mu_eff makes the recipe overflow any
  // integer type long before the cap applies.
  double m_real = std::ceil(cfg.c_m * L_eff / p.mu_eff);
  const double cap = cfg.m_cap > 0 ? static_cast<double>(cfg.m_cap) : 1e15;
  m_real = std::min(m_real, cap);
  p.m = std::max<std::int64_t>(static_cast<std::int64_t>(m_real), 1);
  return p;
}

struct meta_result : run_result {
  std::vector<vec> stage_points;   // [0] = x0, [s] = stage-s output
  std::int64_t selected_stage = 0;  // nonconvex uniform draw; else last stage
};

namespace detail {

/// Shared driver for all four regularization schemes. Stages hand their final
/// full surrogate gradient to the next stage through the re-anchoring
/// identity, so each new stage starts without recomputing a snapshot
/// gradient; the one measurement that nothing consumes stays logged as a
/// probe.
class meta_driver {
 public:
  meta_driver(std::shared_ptr<const objective> base, vec x0, meta_config cfg)
      : base_(std::move(base)), x0_(std::move(x0)), cfg_(std::move(cfg)),
        r_(cfg_.seed) {
    cfg_.validate();
    if (x0_.size() != base_->dim())
      throw dimension_error("meta: x0 dimension mismatch");
    n_ = base_->num_components();
    if (cfg_.m_cap == 0) cfg_.m_cap = 5 * n_;
    const smoothness_info info = base_->smoothness();
    L_ = info.L;
    sigma_ = cfg_.sigma > 0.0 ? cfg_.sigma : info.sigma_bn;
  }

  meta_result run() {
    out_.stage_points.push_back(x0_);
    counter_start_ = base_->ifo_read();

    // Opening full gradient: it doubles as the first stage's snapshot
    // gradient, since every scheme anchors stage 1 at x0 and the anchor term
    // vanishes there.
    vec g0 = base_->full_grad(x0_);
    out_.tr.work_ifo += n_;
    const double g0_sq = g0.squaredNorm();
    if (cfg_.r_hat <= 0.0)
      cfg_.r_hat = std::max(std::sqrt(g0_sq) / L_, 1e-12);

    const double mu_first = first_stage_mu();
    out_.tr.records.push_back({1, 0, 0, kNaN, mu_first, kNaN, g0_sq, g0_sq,
                               false, false, false});

    if (g0_sq <= cfg_.epsilon) {
      out_.reached_target = true;
      finish(0);
      return std::move(out_);
    }

    run_stages(std::move(g0), mu_first);
    return std::move(out_);
  }

 private:
  double first_stage_mu() const {
    switch (cfg_.scheme) {
      case reg_scheme::single:
        return cfg_.mu_override ? *cfg_.mu_override
                                : cfg_.c_mu * std::sqrt(cfg_.epsilon) / cfg_.r_hat;
      case reg_scheme::recursive_v1:
        return v1_mu(1);
      case reg_scheme::recursive_v2:
        return cfg_.mu0;
      default:
        return theorem_params(cfg_.scheme, L_, sigma_, cfg_.epsilon, cfg_).mu_reg;
    }
  }

  double v1_mu(std::int64_t s) const {
    const double floor = cfg_.c_mu * std::sqrt(cfg_.epsilon);
    if (cfg_.theory_exact_v1) return floor;
    return std::max(cfg_.mu1 * std::pow(cfg_.gamma, static_cast<double>(s - 1)),
                    floor);
  }

  std::int64_t stage1_loop_cap(double start_grad_sq) const {
    if (cfg_.k1_cap > 0) return cfg_.k1_cap;
    const double target = cfg_.epsilon * cfg_.c_k;
    const double ratio = std::max(start_grad_sq / target, std::exp(1.0));
    return std::max<std::int64_t>(3, 2 * static_cast<std::int64_t>(
                                         std::ceil(std::log(ratio))));
  }

  bool budget_spent() const {
    return cfg_.max_ifo > 0 && out_.tr.work_ifo >= cfg_.max_ifo;
  }

  /// One subsolver call on the given surrogate. `g_start` is the surrogate
  /// gradient at `start`, already accounted for. Records merge into the
  /// global trace with the stage's opening row dropped (its point is the
  /// previous stage's closing row).
  sarah_result run_stage(int stage_idx, const anchored_surrogate& surr,
                         const stage_params& p, const vec& start, vec g_start,
                         std::int64_t loops, double stop_sq, double eta_init) {
    sarah_config sc;
    sc.eta_init = eta_init;
    sc.m = p.m;
    sc.outer_loops = loops;
    sc.snapshot = cfg_.snapshot;
    sc.stop_grad_sq = stop_sq;
    sc.final_grad_probe = true;
    sc.stage = stage_idx;
    sc.trace_mu = p.mu_reg;
    if (cfg_.max_ifo > 0)
      sc.max_ifo = std::max<std::int64_t>(cfg_.max_ifo - out_.tr.work_ifo, 1);
    if (cfg_.subsolver == subsolver_kind::sarah_bb) {
      sc.controller.variant = step_variant::bb;
      const double lk = cfg_.lambda_kappa > 0.0 ? cfg_.lambda_kappa
                                                : (L_ + p.mu_reg) / p.mu_eff;
      sc.controller.lambda_kappa = lk;
      if (cfg_.clamp_bb)
        sc.controller.clamp =
            step_interval{1.0 / (lk * (L_ + p.mu_reg)), 1.0 / (lk * p.mu_eff)};
    }
    const vec anchor = surr.anchor();
    const double mu = surr.mu();
    sc.true_grad_map = [mu, anchor](const vec& x, const vec& g) {
      return true_grad_from_surrogate(g, mu, x, anchor);
    };

    sarah_result res =
        sarah_run(surr, start, sc, r_, sarah_init{std::move(g_start)});

    const std::int64_t base_work = out_.tr.work_ifo;
    bool first = true;
    for (trace_record& rec : res.tr.records) {
      if (first) {
        first = false;
        continue;
      }
      rec.ifo += base_work;
      out_.tr.records.push_back(rec);
    }
    out_.tr.work_ifo += res.tr.work_ifo;
    out_.tr.probe_ifo += res.tr.probe_ifo;
    return res;
  }

  /// The next stage starts from the last closing measurement, which then
  /// counts as that stage's snapshot work rather than an extra probe.
  void consume_closing_probe(const sarah_result& res) {
    if (res.tr.probe_ifo == 0) return;  // stage ended on its stop target
    out_.tr.probe_ifo -= n_;
    out_.tr.work_ifo += n_;
    for (auto it = out_.tr.records.rbegin(); it != out_.tr.records.rend(); ++it)
      if (it->probe) {
        it->probe = false;
        break;
      }
  }

  void finish(std::int64_t last_stage) {
    if (cfg_.scheme == reg_scheme::nonconvex && last_stage >= 1) {
      out_.selected_stage = 1 + r_.uniform_index(last_stage);
      out_.x_out = out_.stage_points[out_.selected_stage];
    } else {
      out_.selected_stage = last_stage;
      out_.x_out = out_.stage_points[last_stage];
    }
    out_.ifo_total =
        static_cast<std::int64_t>(base_->ifo_read() - counter_start_);
  }

  void run_stages(vec carry, double mu_first) {
    const bool moving_anchor = cfg_.scheme == reg_scheme::recursive_v2 ||
                               cfg_.scheme == reg_scheme::nonconvex;
    double mu = mu_first;
    double prev_mu = kNaN;
    std::optional<double> carry_eta;
    std::int64_t s = 1;

    for (; s <= cfg_.stage_cap; ++s) {
      if (budget_spent()) break;

      const stage_params p =
          theorem_params(cfg_.scheme, L_, sigma_, cfg_.epsilon, cfg_, mu);
      // Copies: stage_points may reallocate when the stage output lands.
      const vec anchor = moving_anchor ? out_.stage_points.back() : x0_;
      const vec start = out_.stage_points.back();
      const auto surr = std::make_shared<anchored_surrogate>(
          base_, anchor, p.mu_reg);

      std::int64_t loops = cfg_.k_const;
      double stop_sq = 0.0;
      if (cfg_.scheme == reg_scheme::single ||
          (cfg_.scheme == reg_scheme::recursive_v1 && s == 1)) {
        loops = stage1_loop_cap(carry.squaredNorm());
        stop_sq = cfg_.epsilon * cfg_.c_k;
      }
      const double eta_init = carry_eta.value_or(p.eta);

      const double g_start_sq = carry.squaredNorm();
      vec carry_backup;
      if (cfg_.scheme == reg_scheme::recursive_v2) carry_backup = carry;

      sarah_result res = run_stage(static_cast<int>(s), *surr, p, start,
                                   std::move(carry), loops, stop_sq, eta_init);
      double rho = res.final_grad.squaredNorm() / g_start_sq;
      bool retried = false;
      bool frozen = false;

      if (cfg_.scheme == reg_scheme::recursive_v2 && rho >= 1.0 &&
          !budget_spent()) {
        // One retry with twice the loops; the abandoned attempt's closing
        // measurement stays an accounted probe.
        retried = true;
        res = run_stage(static_cast<int>(s), *surr, p, start,
                        std::move(carry_backup), 2 * loops, stop_sq, eta_init);
        rho = res.final_grad.squaredNorm() / g_start_sq;
        if (rho >= 1.0) frozen = true;
      }

      out_.stage_points.push_back(res.x_out);
      const vec true_grad = true_grad_from_surrogate(res.final_grad, p.mu_reg,
                                                     res.x_out, anchor);
      const double true_sq = true_grad.squaredNorm();

      stage_record sr;
      sr.stage = static_cast<int>(s);
      sr.mu = p.mu_reg;
      sr.anchor_id = moving_anchor ? static_cast<int>(s - 1) : 0;
      sr.outer_loops_used = res.completed_outer;
      sr.rho_measured = rho;
      sr.grad_f_sq = true_sq;
      sr.grad_surr_sq = res.final_grad.squaredNorm();
      sr.ifo_cumulative = out_.tr.work_ifo;
      sr.eta_last = res.last_eta;
      sr.retried = retried;
      sr.mu_frozen = frozen;
      out_.tr.stages.push_back(sr);
      if (!out_.tr.records.empty()) {
        out_.tr.records.back().rho = rho;
        out_.tr.records.back().mu_frozen = frozen;
      }

      if (true_sq <= cfg_.epsilon) {
        out_.reached_target = true;
        ++s;
        break;
      }
      if (s == cfg_.stage_cap || budget_spent() ||
          cfg_.scheme == reg_scheme::single) {
        ++s;
        break;
      }

      // Hand the closing gradient to stage s+1 under its new anchor/weight.
      prev_mu = p.mu_reg;
      double mu_next = mu;
      switch (cfg_.scheme) {
        case reg_scheme::recursive_v1:
          mu_next = v1_mu(s + 1);
          break;
        case reg_scheme::recursive_v2:
          mu_next = frozen ? mu : mu * rho;
          break;
        default:
          break;
      }
      consume_closing_probe(res);
      if (moving_anchor) {
        carry = carry_over_grad(res.final_grad, prev_mu, res.x_out, anchor);
      } else {
        carry = carry_over_grad(res.final_grad, prev_mu, res.x_out, x0_,
                                mu_next, x0_);
      }
      mu = mu_next;
      if (cfg_.scheme == reg_scheme::nonconvex &&
          cfg_.subsolver == subsolver_kind::sarah_bb)
        carry_eta = res.last_eta;
    }

    finish(s - 1);
  }

  std::shared_ptr<const objective> base_;
  vec x0_;
  meta_config cfg_;
  rng r_;
  std::int64_t n_ = 0;
  double L_ = 0.0;
  double sigma_ = 0.0;
  std::uint64_t counter_start_ = 0;
  meta_result out_;
};

}  // namespace detail

inline meta_result run_single_reg(std::shared_ptr<const objective> obj,
                                  const vec& x0, meta_config cfg) {
  cfg.scheme = reg_scheme::single;
  return detail::meta_driver(std::move(obj), x0, std::move(cfg)).run();
}

inline meta_result run_recursive_v1(std::shared_ptr<const objective> obj,
                                    const vec& x0, meta_config cfg) {
  cfg.scheme = reg_scheme::recursive_v1;
  return detail::meta_driver(std::move(obj), x0, std::move(cfg)).run();
}

inline meta_result run_recursive_v2(std::shared_ptr<const objective> obj,
                                    const vec& x0, meta_config cfg) {
  cfg.scheme = reg_scheme::recursive_v2;
  return detail::meta_driver(std::move(obj), x0, std::move(cfg)).run();
}

inline meta_result run_nonconvex(std::shared_ptr<const objective> obj,
                                 const vec& x0, meta_config cfg) {
  cfg.scheme = reg_scheme::nonconvex;
  return detail::meta_driver(std::move(obj), x0, std::move(cfg)).run();
}

inline meta_result run_meta(std::shared_ptr<const objective> obj, const vec& x0,
                            const meta_config& cfg) {
  switch (cfg.scheme) {
    case reg_scheme::single:
      return run_single_reg(std::move(obj), x0, cfg);
    case reg_scheme::recursive_v1:
      return run_recursive_v1(std::move(obj), x0, cfg);
    case reg_scheme::recursive_v2:
      return run_recursive_v2(std::move(obj), x0, cfg);
    default:
      return run_nonconvex(std::move(obj), x0, cfg);
  }
}

}  // namespace vropt

#endif

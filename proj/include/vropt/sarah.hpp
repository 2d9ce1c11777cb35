#ifndef VROPT_SARAH_HPP
#define VROPT_SARAH_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "vropt/objective.hpp"
#include "vropt/rng.hpp"
#include "vropt/step_size.hpp"
#include "vropt/trace.hpp"

namespace vropt {

/// A run left the finite range; the trace gathered so far rides along.
class divergence_error : public error {
 public:
  divergence_error(const std::string& what, trace tr)
      : error(what), trace_(std::move(tr)) {}
  const trace& partial_trace() const { return trace_; }

 private:
  trace trace_;
};

enum class snapshot_rule {
  uniform_0_to_m_minus_1,  // classical choice; final inner iterate unused
  uniform_0_to_m,
  last_iterate,
};

struct sarah_config {
  double eta_init = 0.0;
  std::int64_t m = 1;            // inner loop length
  std::int64_t outer_loops = 1;  // S
  snapshot_rule snapshot = snapshot_rule::uniform_0_to_m_minus_1;
  std::uint64_t seed = 0;
  step_size_controller controller{};

  /// Early exit once the snapshot gradient satisfies ||g||^2 <= stop_grad_sq
  /// (checked on the loop-opening full gradient, so it costs nothing extra).
  double stop_grad_sq = 0.0;
  /// Working-IFO budget; 0 means unbounded. No new outer loop starts once
  /// spent.
  std::int64_t max_ifo = 0;
  /// Measure the final snapshot's full gradient when the run did not already
  /// produce it (costs n, logged as a probe).
  bool final_grad_probe = true;

  // trace labeling
  int stage = 1;
  double trace_mu = kNaN;
  /// Maps (x, gradient of the function being minimized) to the gradient of
  /// the underlying objective, e.g. the surrogate identity. Unset means the
  /// run minimizes the objective itself.
  std::function<vec(const vec&, const vec&)> true_grad_map;

  void validate() const {
    if (!(eta_init > 0.0)) throw config_error("sarah: eta_init must be positive");
    if (m < 1) throw config_error("sarah: m must be >= 1");
    if (outer_loops < 1) throw config_error("sarah: outer_loops must be >= 1");
  }
};

struct sarah_init {
  /// Full gradient at the start point, carried over from a previous stage at
  /// zero oracle cost.
  std::optional<vec> snapshot_grad;
};

struct sarah_result : run_result {
  vec final_grad;  // gradient at x_out of the function that was minimized
  double last_eta = kNaN;
  std::int64_t completed_outer = 0;
};

inline sarah_result sarah_run(const objective& obj, const vec& x0,
                              const sarah_config& cfg, rng& r,
                              sarah_init init = {}) {
  cfg.validate();
  const std::int64_t n = obj.num_components();
  if (x0.size() != obj.dim())
    throw dimension_error("sarah: x0 dimension mismatch");

  step_size_controller controller = cfg.controller;
  controller.reset(cfg.eta_init);

  sarah_result out;
  trace& tr = out.tr;
  const std::uint64_t counter_start = obj.ifo_read();

  vec snap = x0;
  std::int64_t snap_ifo = 0;
  std::optional<vec> carried = std::move(init.snapshot_grad);
  double prev_eta = kNaN;
  bool prev_clamped = false;
  vec g_snap;
  bool have_final_grad = false;

  auto emit = [&](std::int64_t outer_idx, bool probe) {
    trace_record rec;
    rec.stage = cfg.stage;
    rec.outer = outer_idx;
    rec.ifo = snap_ifo;
    rec.eta = prev_eta;
    rec.mu = cfg.trace_mu;
    rec.grad_surr_sq = cfg.true_grad_map ? g_snap.squaredNorm() : kNaN;
    rec.grad_f_sq = cfg.true_grad_map
                        ? cfg.true_grad_map(snap, g_snap).squaredNorm()
                        : g_snap.squaredNorm();
    rec.probe = probe;
    rec.eta_clamped = prev_clamped;
    tr.records.push_back(rec);
  };

  for (std::int64_t s = 1; s <= cfg.outer_loops; ++s) {
    if (cfg.max_ifo > 0 && tr.work_ifo >= cfg.max_ifo) break;

    if (carried) {
      g_snap = std::move(*carried);
      carried.reset();
    } else {
      g_snap = obj.full_grad(snap);
      tr.work_ifo += n;
    }
    emit(s - 1, false);
    if (cfg.stop_grad_sq > 0.0 && g_snap.squaredNorm() <= cfg.stop_grad_sq) {
      out.reached_target = true;
      have_final_grad = true;
      break;
    }

    const double eta = controller.next_eta(snap, g_snap);
    const bool clamped = controller.last_clamped();

    std::int64_t k_star;
    switch (cfg.snapshot) {
      case snapshot_rule::uniform_0_to_m_minus_1:
        k_star = r.uniform_index(cfg.m);
        break;
      case snapshot_rule::uniform_0_to_m:
        k_star = r.uniform_index(cfg.m + 1);
        break;
      default:
        k_star = cfg.m;
    }

    vec x_prev = snap;
    vec v = g_snap;
    vec x = snap - eta * v;
    vec next_snap = (k_star == 0) ? snap : x;
    for (std::int64_t k = 1; k <= cfg.m - 1; ++k) {
      const std::int64_t i = r.uniform_index(n);
      const vec g_new = obj.component_grad(i, x);
      const vec g_old = obj.component_grad(i, x_prev);
      v += g_new - g_old;
      x_prev = x;
      x -= eta * v;
      if (k + 1 == k_star) next_snap = x;
    }
    tr.work_ifo += 2 * (cfg.m - 1);
    if (!x.allFinite()) {
      out.x_out = std::move(next_snap);
      throw divergence_error("sarah: iterate diverged at outer loop " +
                                 std::to_string(s),
                             tr);
    }

    snap = std::move(next_snap);
    snap_ifo = tr.work_ifo;
    prev_eta = eta;
    prev_clamped = clamped;
    out.completed_outer = s;
  }

  if (!have_final_grad && cfg.final_grad_probe) {
    g_snap = obj.full_grad(snap);
    tr.probe_ifo += n;
    have_final_grad = true;
    emit(out.completed_outer, true);
  }

  out.x_out = std::move(snap);
  if (have_final_grad) out.final_grad = std::move(g_snap);
  out.last_eta = controller.current_eta();
  out.ifo_total = static_cast<std::int64_t>(obj.ifo_read() - counter_start);
  return out;
}

inline sarah_result sarah_run(const objective& obj, const vec& x0,
                              const sarah_config& cfg, sarah_init init = {}) {
  rng r(cfg.seed);
  return sarah_run(obj, x0, cfg, r, std::move(init));
}

}  // namespace vropt

#endif

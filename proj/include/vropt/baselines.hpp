#ifndef VROPT_BASELINES_HPP
#define VROPT_BASELINES_HPP

#include <cmath>
#include <string>

#include "vropt/objective.hpp"
#include "vropt/rng.hpp"
#include "vropt/sarah.hpp"
#include "vropt/trace.hpp"

namespace vropt {

/// Plain gradient descent, full gradient every step.
inline run_result gd_run(const objective& obj, const vec& x0, double eta,
                         std::int64_t steps, std::int64_t max_ifo = 0) {
  if (!(eta > 0.0) || steps < 1) throw config_error("gd_run: bad parameters");
  if (x0.size() != obj.dim()) throw dimension_error("gd_run: x0 dimension");
  const std::int64_t n = obj.num_components();
  const std::uint64_t counter_start = obj.ifo_read();

  run_result out;
  vec x = x0;
  double prev_eta = kNaN;
  std::int64_t t = 0;
  for (; t < steps; ++t) {
    if (max_ifo > 0 && out.tr.work_ifo >= max_ifo) break;
    const vec g = obj.full_grad(x);
    out.tr.records.push_back({1, t, out.tr.work_ifo, prev_eta, kNaN, kNaN,
                              g.squaredNorm(), kNaN, false, false, false});
    out.tr.work_ifo += n;
    x -= eta * g;
    prev_eta = eta;
    if (!x.allFinite())
      throw divergence_error("gd: diverged at step " + std::to_string(t),
                             out.tr);
  }
  const vec g = obj.full_grad(x);
  out.tr.probe_ifo += n;
  out.tr.records.push_back({1, t, out.tr.work_ifo, prev_eta, kNaN, kNaN,
                            g.squaredNorm(), kNaN, true, false, false});
  out.x_out = std::move(x);
  out.ifo_total = static_cast<std::int64_t>(obj.ifo_read() - counter_start);
  return out;
}

/// Stochastic gradient descent with the decaying schedule
/// eta_k = eta0 / (1 + k/n). True gradient norms along the way come from
/// explicit probes every `trace_every` steps (0 disables them).
inline run_result sgd_run(const objective& obj, const vec& x0, double eta0,
                          std::int64_t steps, std::uint64_t seed,
                          std::int64_t trace_every = -1,
                          std::int64_t max_ifo = 0) {
  if (!(eta0 > 0.0) || steps < 1) throw config_error("sgd_run: bad parameters");
  if (x0.size() != obj.dim()) throw dimension_error("sgd_run: x0 dimension");
  const std::int64_t n = obj.num_components();
  if (trace_every < 0) trace_every = n;
  const std::uint64_t counter_start = obj.ifo_read();
  rng r(seed);

  run_result out;
  auto probe = [&](std::int64_t k, double eta) {
    const vec g = obj.full_grad(out.x_out);
    out.tr.probe_ifo += n;
    out.tr.records.push_back({1, k, out.tr.work_ifo, eta, kNaN, kNaN,
                              g.squaredNorm(), kNaN, true, false, false});
  };

  out.x_out = x0;
  double prev_eta = kNaN;
  std::int64_t k = 0;
  for (; k < steps; ++k) {
    if (max_ifo > 0 && out.tr.work_ifo >= max_ifo) break;
    if (trace_every > 0 && k % trace_every == 0) probe(k, prev_eta);
    const double eta =
        eta0 / (1.0 + static_cast<double>(k) / static_cast<double>(n));
    const std::int64_t i = r.uniform_index(n);
    out.x_out -= eta * obj.component_grad(i, out.x_out);
    out.tr.work_ifo += 1;
    prev_eta = eta;
    if (!out.x_out.allFinite())
      throw divergence_error("sgd: diverged at step " + std::to_string(k),
                             out.tr);
  }
  probe(k, prev_eta);
  out.ifo_total = static_cast<std::int64_t>(obj.ifo_read() - counter_start);
  return out;
}

enum class adagrad_batch { single, full };

/// Diagonal AdaGrad: G accumulates squared gradients coordinate-wise and the
/// step is alpha * g / sqrt(G + eps0), with the accumulator updated before
/// the step.
inline run_result adagrad_run(const objective& obj, const vec& x0, double alpha,
                              double eps0, std::int64_t steps,
                              adagrad_batch batch, std::uint64_t seed,
                              std::int64_t max_ifo = 0) {
  if (!(alpha > 0.0) || eps0 < 0.0 || steps < 1)
    throw config_error("adagrad_run: bad parameters");
  if (x0.size() != obj.dim()) throw dimension_error("adagrad_run: x0 dimension");
  const std::int64_t n = obj.num_components();
  const std::uint64_t counter_start = obj.ifo_read();
  rng r(seed);

  run_result out;
  vec x = x0;
  vec accum = vec::Zero(obj.dim());
  double prev_eta = kNaN;
  std::int64_t t = 0;
  for (; t < steps; ++t) {
    if (max_ifo > 0 && out.tr.work_ifo >= max_ifo) break;
    vec g;
    if (batch == adagrad_batch::full) {
      g = obj.full_grad(x);
      out.tr.records.push_back({1, t, out.tr.work_ifo, prev_eta, kNaN, kNaN,
                                g.squaredNorm(), kNaN, false, false, false});
      out.tr.work_ifo += n;
    } else {
      if (t % n == 0) {
        const vec gf = obj.full_grad(x);
        out.tr.probe_ifo += n;
        out.tr.records.push_back({1, t, out.tr.work_ifo, prev_eta, kNaN, kNaN,
                                  gf.squaredNorm(), kNaN, true, false, false});
      }
      g = obj.component_grad(r.uniform_index(n), x);
      out.tr.work_ifo += 1;
    }
    accum.array() += g.array().square();
    for (int j = 0; j < x.size(); ++j) {
      const double denom = std::sqrt(accum[j] + eps0);
      if (denom > 0.0) x[j] -= alpha * g[j] / denom;
    }
    prev_eta = alpha;
    if (!x.allFinite())
      throw divergence_error("adagrad: diverged at step " + std::to_string(t),
                             out.tr);
  }
  const vec gf = obj.full_grad(x);
  out.tr.probe_ifo += n;
  out.tr.records.push_back({1, t, out.tr.work_ifo, prev_eta, kNaN, kNaN,
                            gf.squaredNorm(), kNaN, true, false, false});
  out.x_out = std::move(x);
  out.ifo_total = static_cast<std::int64_t>(obj.ifo_read() - counter_start);
  return out;
}

}  // namespace vropt

#endif

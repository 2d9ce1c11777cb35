#ifndef VROPT_TRACE_HPP
#define VROPT_TRACE_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace vropt {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One per-outer-loop measurement. `ifo` is the cumulative working oracle
/// count at which the recorded point existed; gradient norms obtained through
/// an extra (separately accounted) full-gradient evaluation carry the probe
/// flag.
struct trace_record {
  int stage = 1;
  std::int64_t outer = 0;
  std::int64_t ifo = 0;
  double eta = kNaN;           // step size of the loop that produced the point
  double mu = kNaN;            // regularization weight in force, if any
  double rho = kNaN;           // measured stage contraction, stage-end rows only
  double grad_f_sq = kNaN;     // ||grad f||^2 at the point
  double grad_surr_sq = kNaN;  // ||grad f~||^2 at the point, if a surrogate runs
  bool probe = false;
  bool eta_clamped = false;
  bool mu_frozen = false;
};

/// Per-stage summary emitted by the regularization drivers.
struct stage_record {
  int stage = 0;
  double mu = kNaN;
  int anchor_id = 0;  // 0 = initial point, s = stage-s output
  std::int64_t outer_loops_used = 0;
  double rho_measured = kNaN;
  double grad_f_sq = kNaN;
  double grad_surr_sq = kNaN;
  std::int64_t ifo_cumulative = 0;
  double eta_last = kNaN;
  bool retried = false;
  bool mu_frozen = false;
};

struct trace {
  std::vector<trace_record> records;
  std::vector<stage_record> stages;
  std::int64_t work_ifo = 0;   // cost implied by the loop structure
  std::int64_t probe_ifo = 0;  // explicitly logged extra measurements

  std::int64_t total_ifo() const { return work_ifo + probe_ifo; }

  void append(trace&& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    stages.insert(stages.end(), other.stages.begin(), other.stages.end());
    work_ifo += other.work_ifo;
    probe_ifo += other.probe_ifo;
  }
};

struct run_result {
  Eigen::VectorXd x_out;
  trace tr;
  std::int64_t ifo_total = 0;  // counter delta over the run
  bool reached_target = false;
};

}  // namespace vropt

#endif

#include <memory>

#include <catch_amalgamated.hpp>

#include "support/test_util.hpp"
#include "vropt/meta.hpp"
#include "vropt/trace_io.hpp"

using namespace vropt;
using vropt_test::chi_square_uniform;
using vropt_test::random_vec;

namespace {

std::shared_ptr<const dataset> data() {
  static const auto ds = std::make_shared<dataset>(
      synthetic_logistic_dataset(300, 12, 161));
  return ds;
}

meta_config base_config() {
  meta_config cfg;
  cfg.epsilon = 1e-20;  // targets stay out of the way unless a test wants them
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("theorem_params resolves the published recipes") {
  meta_config cfg;
  cfg.r_hat = 1.0;

  SECTION("single regularizer") {
    const stage_params p =
        theorem_params(reg_scheme::single, 1.0, 0.0, 1e-4, cfg);
    REQUIRE_THAT(p.mu_reg, Catch::Matchers::WithinRel(1e-2, 1e-14));
    REQUIRE_THAT(p.eta, Catch::Matchers::WithinRel(0.5 / 1.01, 1e-14));
    REQUIRE(p.m == 202);  // ceil(c_m (L+mu)/mu) with c_m = 2
  }
  SECTION("nonconvex") {
    cfg.theta = 1.0;
    const stage_params p =
        theorem_params(reg_scheme::nonconvex, 1.0, 1.0, 1e-4, cfg);
    REQUIRE(p.mu_reg == 2.0);
    REQUIRE(p.mu_eff == 1.0);
    REQUIRE_THAT(p.eta, Catch::Matchers::WithinRel(1.0 / 6.0, 1e-14));
    REQUIRE(p.m == 6);  // 3 c_m before any cap
  }
  SECTION("m cap binds") {
    cfg.m_cap = 100;
    const stage_params p =
        theorem_params(reg_scheme::single, 1.0, 0.0, 1e-4, cfg);
    REQUIRE(p.m == 100);
  }
  SECTION("validation") {
    REQUIRE_THROWS_AS(theorem_params(reg_scheme::single, 0.0, 0.0, 1e-4, cfg),
                      config_error);
    meta_config no_rhat;
    REQUIRE_THROWS_AS(
        theorem_params(reg_scheme::single, 1.0, 0.0, 1e-4, no_rhat),
        config_error);
    REQUIRE_THROWS_AS(
        theorem_params(reg_scheme::nonconvex, 1.0, 0.0, 1e-4, no_rhat),
        config_error);
  }
}

TEST_CASE("single regularizer satisfies the gradient identity at its output") {
  auto obj = make_logistic(data());
  meta_config cfg = base_config();
  cfg.mu_override = 1e-3;
  cfg.k1_cap = 6;
  const meta_result res = run_single_reg(obj, vec::Zero(obj->dim()), cfg);

  const vec x = res.x_out;
  auto surr = make_anchored(obj, vec::Zero(obj->dim()), 1e-3);
  const vec lhs = obj->full_grad(x);
  const vec rhs = true_grad_from_surrogate(surr->full_grad(x), 1e-3, x,
                                           vec::Zero(obj->dim()));
  REQUIRE((lhs - rhs).norm() <= 1e-13 * (1.0 + lhs.norm()));
}

TEST_CASE("tiny mu behaves like vanilla sarah") {
  auto obj = make_logistic(data());
  const double mu = 1e-12;
  const double L = obj->smoothness().L;
  const auto n = obj->num_components();

  meta_config cfg = base_config();
  cfg.mu_override = mu;
  cfg.k1_cap = 3;
  cfg.seed = 21;
  const meta_result reg = run_single_reg(obj, vec::Zero(obj->dim()), cfg);

  sarah_config sc;
  sc.eta_init = 0.5 / (L + mu);
  sc.m = 5 * n;  // the mu recipe hits the cap
  sc.outer_loops = 3;
  sc.seed = 21;
  const sarah_result vanilla = sarah_run(*obj, vec::Zero(obj->dim()), sc);

  REQUIRE((reg.x_out - vanilla.x_out).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("one-stage v1 equals the single regularizer run exactly") {
  auto obj = make_logistic(data());
  meta_config cfg = base_config();
  cfg.mu1 = 1e-2;
  cfg.k1_cap = 4;
  cfg.stage_cap = 1;
  cfg.seed = 33;
  const meta_result v1 = run_recursive_v1(obj, vec::Zero(obj->dim()), cfg);

  meta_config cfg2 = base_config();
  cfg2.mu_override = 1e-2;
  cfg2.k1_cap = 4;
  cfg2.seed = 33;
  const meta_result single = run_single_reg(obj, vec::Zero(obj->dim()), cfg2);

  REQUIRE(v1.x_out == single.x_out);
  REQUIRE(traces_to_csv("x", {{33, v1.tr}}) ==
          traces_to_csv("x", {{33, single.tr}}));
}

TEST_CASE("gamma = 1 collapses v1 into one long single-regularizer run") {
  auto obj = make_logistic(data());
  meta_config cfg = base_config();
  cfg.mu1 = 5e-3;
  cfg.gamma = 1.0;
  cfg.k1_cap = 3;
  cfg.k_const = 2;
  cfg.stage_cap = 3;  // 3 + 2 + 2 loops on one shared surrogate
  cfg.seed = 44;
  const meta_result v1 = run_recursive_v1(obj, vec::Zero(obj->dim()), cfg);

  meta_config cfg2 = base_config();
  cfg2.mu_override = 5e-3;
  cfg2.k1_cap = 7;
  cfg2.seed = 44;
  const meta_result single = run_single_reg(obj, vec::Zero(obj->dim()), cfg2);

  REQUIRE(v1.x_out == single.x_out);
  REQUIRE(v1.ifo_total == single.ifo_total);
}

TEST_CASE("v1 mu schedule decays by gamma down to the floor") {
  auto obj = make_logistic(data());
  meta_config cfg = base_config();
  cfg.epsilon = 1e-8;  // floor = sqrt(eps) = 1e-4
  cfg.mu1 = 1e-2;
  cfg.gamma = 0.1;
  cfg.k1_cap = 2;
  cfg.k_const = 1;
  cfg.stage_cap = 5;
  const meta_result res = run_recursive_v1(obj, vec::Zero(obj->dim()), cfg);

  REQUIRE(res.tr.stages.size() == 5);
  REQUIRE(res.tr.stages[0].mu == 1e-2);
  REQUIRE_THAT(res.tr.stages[1].mu, Catch::Matchers::WithinRel(1e-3, 1e-12));
  REQUIRE_THAT(res.tr.stages[2].mu, Catch::Matchers::WithinRel(1e-4, 1e-12));
  REQUIRE_THAT(res.tr.stages[3].mu, Catch::Matchers::WithinRel(1e-4, 1e-12));
  REQUIRE(res.tr.stages[4].mu == res.tr.stages[3].mu);  // pinned at the floor
  for (const stage_record& sr : res.tr.stages) REQUIRE(sr.anchor_id == 0);
}

TEST_CASE("v2 schedule multiplies mu by the measured contraction") {
  auto obj = make_logistic(data());
  meta_config cfg = base_config();
  cfg.mu0 = 1.0;
  cfg.k_const = 2;
  cfg.stage_cap = 4;
  const meta_result res = run_recursive_v2(obj, vec::Zero(obj->dim()), cfg);

  REQUIRE(res.tr.stages.size() == 4);
  REQUIRE(res.tr.stages[0].mu == 1.0);
  for (std::size_t s = 1; s < res.tr.stages.size(); ++s) {
    const stage_record& prev = res.tr.stages[s - 1];
    const stage_record& cur = res.tr.stages[s];
    if (!prev.mu_frozen)
      REQUIRE(cur.mu == prev.mu * prev.rho_measured);
    REQUIRE(cur.anchor_id == cur.stage - 1);  // moving anchor
    REQUIRE(prev.rho_measured < 1.0);         // strongly convex stages contract
  }
}

TEST_CASE("v2 driver matches a hand-built stage loop seed for seed") {
  auto obj = make_logistic(data());
  const double L = obj->smoothness().L;
  const auto n = obj->num_components();

  meta_config cfg = base_config();
  cfg.mu0 = 1.0;
  cfg.k_const = 2;
  cfg.stage_cap = 3;
  cfg.seed = 314;
  const meta_result driver = run_recursive_v2(obj, vec::Zero(obj->dim()), cfg);

  // replay: same parameter recipes, same rng stream, explicit carries
  rng r(314);
  vec x = vec::Zero(obj->dim());
  vec carry = obj->full_grad(x);
  double mu = 1.0;
  for (int s = 1; s <= 3; ++s) {
    auto surr = make_anchored(obj, x, mu);
    const double L_eff = L + mu;
    std::int64_t m = static_cast<std::int64_t>(
        std::ceil(2.0 * L_eff / mu));
    m = std::min<std::int64_t>(m, 5 * n);
    sarah_config sc;
    sc.eta_init = 0.5 / L_eff;
    sc.m = m;
    sc.outer_loops = 2;
    const sarah_result res = sarah_run(*surr, x, sc, r, sarah_init{carry});
    const double rho = res.final_grad.squaredNorm() / carry.squaredNorm();
    carry = carry_over_grad(res.final_grad, mu, res.x_out, x);
    x = res.x_out;
    mu *= rho;
  }
  REQUIRE(driver.x_out == x);
}

TEST_CASE("nonconvex stages stay near their anchors under a huge theta") {
  auto obj = make_sigmoidsq(data());
  const double L = obj->smoothness().L;
  meta_config cfg = base_config();
  cfg.theta = 1e6 * L;
  cfg.k_const = 3;
  cfg.stage_cap = 3;
  const meta_result res = run_nonconvex(obj, vec::Ones(obj->dim()), cfg);

  REQUIRE(res.tr.stages.size() == 3);
  // strong convexity pins each stage output within ||grad f(anchor)|| / theta
  double prev_grad_norm = std::sqrt(res.tr.records.front().grad_f_sq);
  for (std::size_t s = 0; s < res.tr.stages.size(); ++s) {
    const vec& a = res.stage_points[s];
    const vec& b = res.stage_points[s + 1];
    REQUIRE((b - a).norm() <= 2.0 * prev_grad_norm / cfg.theta);
    prev_grad_norm = std::sqrt(res.tr.stages[s].grad_f_sq);
  }
}

TEST_CASE("nonconvex returned iterate is a uniform stage draw") {
  const std::int64_t S = 7;
  rng r(123);
  std::vector<long> counts(S, 0);
  for (int t = 0; t < 10000; ++t) ++counts[r.uniform_index(S)];
  REQUIRE(chi_square_uniform(counts, 10000) < 16.812);  // df = 6, 1% level

  // and the driver's draw lands on one of the stage outputs
  auto obj = make_sigmoidsq(data());
  meta_config cfg = base_config();
  cfg.k_const = 2;
  cfg.stage_cap = 4;
  const meta_result res = run_nonconvex(obj, vec::Zero(obj->dim()), cfg);
  REQUIRE(res.selected_stage >= 1);
  REQUIRE(res.selected_stage <= 4);
  REQUIRE(res.x_out == res.stage_points[res.selected_stage]);
}

TEST_CASE("nonconvex bb subsolver seeds each stage with the previous step") {
  auto obj = make_sigmoidsq(data());
  meta_config cfg = base_config();
  cfg.subsolver = subsolver_kind::sarah_bb;
  cfg.k_const = 3;
  cfg.stage_cap = 3;
  const meta_result res = run_nonconvex(obj, vec::Zero(obj->dim()), cfg);

  REQUIRE(res.tr.stages.size() == 3);
  for (std::size_t s = 1; s < res.tr.stages.size(); ++s) {
    const int stage = res.tr.stages[s].stage;
    // the first kept record of a stage reports loop 1, which runs on the
    // carried initialization before bb has a snapshot pair
    for (const trace_record& rec : res.tr.records) {
      if (rec.stage == stage && rec.outer == 1 && !rec.probe) {
        REQUIRE(rec.eta == res.tr.stages[s - 1].eta_last);
        break;
      }
    }
  }
}

TEST_CASE("meta accounting: work matches the stage loop structure") {
  auto obj = make_logistic(data());
  const auto n = obj->num_components();
  meta_config cfg = base_config();
  cfg.mu0 = 0.5;
  cfg.k_const = 2;
  cfg.stage_cap = 3;
  obj->ifo_reset();
  const meta_result res = run_recursive_v2(obj, vec::Zero(obj->dim()), cfg);

  std::int64_t expected_work = 0;
  for (const stage_record& sr : res.tr.stages) {
    const double L_eff = obj->smoothness().L + sr.mu;
    std::int64_t m = static_cast<std::int64_t>(std::ceil(2.0 * L_eff / sr.mu));
    m = std::min<std::int64_t>(m, 5 * n);
    expected_work += sr.outer_loops_used * (n + 2 * (m - 1));
  }
  REQUIRE(res.tr.work_ifo == expected_work);
  REQUIRE(res.tr.probe_ifo == n);  // only the final measurement is unconsumed
  REQUIRE(res.ifo_total == expected_work + n);
  REQUIRE(obj->ifo_read() == static_cast<std::uint64_t>(res.ifo_total));

  // records: strictly increasing work axis
  for (std::size_t i = 1; i < res.tr.records.size(); ++i)
    REQUIRE(res.tr.records[i].ifo > res.tr.records[i - 1].ifo);
}

TEST_CASE("epsilon target stops at a stage boundary") {
  auto obj = std::make_shared<ridge_quadratic_objective>(40, 8, 0.2, 1.0, 15);
  meta_config cfg = base_config();
  cfg.epsilon = 1e-9;
  cfg.mu0 = 1.0;
  cfg.k_const = 3;
  cfg.stage_cap = 40;
  const meta_result res = run_recursive_v2(obj, vec::Zero(8), cfg);
  REQUIRE(res.reached_target);
  REQUIRE(obj->full_grad(res.x_out).squaredNorm() <= 1e-9 * (1.0 + 1e-9));
}

TEST_CASE("meta config validation") {
  auto obj = make_logistic(data());
  meta_config cfg = base_config();
  cfg.epsilon = 0.0;
  REQUIRE_THROWS_AS(run_single_reg(obj, vec::Zero(obj->dim()), cfg),
                    config_error);
  cfg = base_config();
  cfg.gamma = 1.5;
  REQUIRE_THROWS_AS(run_recursive_v1(obj, vec::Zero(obj->dim()), cfg),
                    config_error);
  cfg = base_config();
  REQUIRE_THROWS_AS(run_single_reg(obj, vec::Zero(obj->dim() + 1), cfg),
                    dimension_error);
}

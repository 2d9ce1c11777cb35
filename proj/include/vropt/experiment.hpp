#ifndef VROPT_EXPERIMENT_HPP
#define VROPT_EXPERIMENT_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "vropt/baselines.hpp"
#include "vropt/dataset.hpp"
#include "vropt/ini.hpp"
#include "vropt/meta.hpp"
#include "vropt/objective.hpp"
#include "vropt/sarah.hpp"
#include "vropt/svg_plot.hpp"
#include "vropt/trace_io.hpp"

namespace vropt {

/// Dataset search path environment variable.
inline constexpr const char* kDataDirEnv = "VROPT_DATA_DIR";

namespace detail {

inline std::string find_data_file(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv(kDataDirEnv)) {
    fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return "";
}

inline std::string format_double_key(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Loads the dataset named by `dataset.*` keys and writes the resolved
/// provenance back, so the sidecar pins exactly what ran. kind `auto` falls
/// back to the seeded synthetic problem when the file is absent.
inline std::shared_ptr<const dataset> load_experiment_dataset(config_map& m) {
  config_view v{m};
  const std::string kind = v.get("dataset.kind", "auto");
  const std::string path = v.get("dataset.path", "a3a");
  const int min_dim = static_cast<int>(v.get_int("dataset.min_dim", 0));

  if (kind == "libsvm" || kind == "auto") {
    const std::string found = detail::find_data_file(path);
    if (!found.empty()) {
      std::ifstream f(found);
      if (!f) throw io_error("cannot open dataset file " + found);
      auto ds = std::make_shared<dataset>(parse_libsvm(f, min_dim));
      validate_dataset(*ds);
      m["dataset.kind"] = "libsvm";
      m["dataset.path"] = found;
      m["dataset.n"] = std::to_string(ds->n());
      m["dataset.d"] = std::to_string(ds->dim);
      return ds;
    }
    if (kind == "libsvm")
      throw config_error("dataset file not found: " + path +
                         " (searched cwd and $" + std::string(kDataDirEnv) + ")");
  }

  const int n = static_cast<int>(v.get_int("dataset.synthetic_n", 2000));
  const int d = static_cast<int>(v.get_int("dataset.synthetic_d", 50));
  const auto seed =
      static_cast<std::uint64_t>(v.get_int("dataset.synthetic_seed", 13));
  auto ds = std::make_shared<dataset>(synthetic_logistic_dataset(n, d, seed));
  validate_dataset(*ds);
  m["dataset.kind"] = "synthetic";
  m["dataset.synthetic_n"] = std::to_string(n);
  m["dataset.synthetic_d"] = std::to_string(d);
  m["dataset.synthetic_seed"] = std::to_string(seed);
  m["dataset.n"] = std::to_string(ds->n());
  m["dataset.d"] = std::to_string(ds->dim);
  return ds;
}

struct resolved_experiment {
  config_map cfg;
  std::shared_ptr<const dataset> data;
  std::shared_ptr<objective> obj;
  std::string algo;
  std::int64_t budget_ifo = 0;
  std::vector<std::uint64_t> seeds;
};

namespace detail {

inline snapshot_rule parse_snapshot_rule(const std::string& s) {
  if (s == "uniform_m" || s == "uniform_0_to_m_minus_1")
    return snapshot_rule::uniform_0_to_m_minus_1;
  if (s == "uniform_m_plus_1" || s == "uniform_0_to_m")
    return snapshot_rule::uniform_0_to_m;
  if (s == "last" || s == "last_iterate") return snapshot_rule::last_iterate;
  throw config_error("unknown snapshot rule '" + s + "'");
}

}  // namespace detail

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> algos = {
      "vanilla_sarah", "bb_sarah", "single_reg", "rr_v1",       "rr_v2",
      "ncvx",          "adagrad",  "modified_bb", "gd",          "sgd"};
  return algos;
}

/// Fills every key the run depends on with its final value and constructs the
/// objective. Resolution is idempotent: resolving an already-resolved map is
/// a no-op, which is what makes sidecar re-runs reproduce runs exactly.
inline resolved_experiment resolve_experiment(config_map m) {
  resolved_experiment R;
  R.data = load_experiment_dataset(m);
  config_view v{m};

  R.algo = v.get("experiment.algo", "vanilla_sarah");
  bool known = false;
  for (const std::string& a : known_algorithms()) known |= (a == R.algo);
  if (!known) throw config_error("unknown algorithm '" + R.algo + "'");

  std::string loss = v.get("dataset.loss", R.algo == "ncvx" ? "sigmoidsq"
                                                            : "logistic");
  if (loss == "logistic")
    R.obj = make_logistic(R.data);
  else if (loss == "sigmoidsq")
    R.obj = make_sigmoidsq(R.data);
  else
    throw config_error("unknown loss '" + loss + "'");
  m["dataset.loss"] = loss;

  // algorithm/payload consistency
  if ((R.algo == "single_reg" || R.algo == "rr_v1" || R.algo == "rr_v2") &&
      loss != "logistic")
    throw config_error(R.algo + " requires a convex loss (logistic)");
  if (R.algo == "ncvx" && loss == "logistic" &&
      v.get_double("meta.sigma", 0.0) <= 0.0)
    throw config_error("ncvx on a convex loss needs an explicit meta.sigma");

  const double passes = v.get_double("experiment.budget_passes", 100.0);
  if (!(passes > 0.0)) throw config_error("budget must be positive");
  const auto n = static_cast<std::int64_t>(R.data->n());
  R.budget_ifo = static_cast<std::int64_t>(passes * static_cast<double>(n));
  m["experiment.budget_passes"] = detail::format_double_key(passes);

  for (const std::string& s : v.get_list("experiment.seeds", "1")) {
    try {
      R.seeds.push_back(std::stoull(s));
    } catch (const std::exception&) {
      throw config_error("bad seed '" + s + "'");
    }
  }
  if (R.seeds.empty()) throw config_error("experiment.seeds must be non-empty");

  const smoothness_info info = R.obj->smoothness();
  m["objective.L"] = detail::format_double_key(info.L);
  m["objective.sigma_bn"] = detail::format_double_key(info.sigma_bn);
  m["experiment.name"] = v.get("experiment.name", "exp");
  m["experiment.algo"] = R.algo;
  m["experiment.x0"] = v.get("experiment.x0", "zero");
  m["experiment.out_dir"] = v.get("experiment.out_dir", "out");

  // fill the per-algorithm defaults that depend on (n, L)
  auto set_default = [&](const std::string& key, const std::string& val) {
    if (m.find(key) == m.end() || m[key].empty() || m[key] == "0" ||
        m[key] == "auto")
      m[key] = val;
  };
  if (R.algo == "vanilla_sarah" || R.algo == "bb_sarah" ||
      R.algo == "modified_bb") {
    set_default("sarah.m", std::to_string(n));
    const double m_len = v.get_double("sarah.m", static_cast<double>(n));
    // The step a plain-convex analysis supports: 2/(L(sqrt(4m+1)+1)). The
    // regularized drivers get to use 0.5/(L+mu) because their surrogates are
    // strongly convex; the raw-f baselines do not.
    set_default("sarah.eta",
                detail::format_double_key(
                    2.0 / (info.L * (std::sqrt(4.0 * m_len + 1.0) + 1.0))));
    set_default("sarah.snapshot", "uniform_m");
    set_default("sarah.lambda_kappa", "1");
    // lambda = L/sqrt(m) puts the modified-BB ceiling at 1/(L sqrt(m))
    set_default("sarah.lambda_reg",
                detail::format_double_key(info.L / std::sqrt(m_len)));
    set_default("sarah.modified_variant",
                loss == "sigmoidsq" ? "nonconvex" : "convex");
  }
  if (R.algo == "gd") set_default("gd.eta", detail::format_double_key(1.0 / info.L));
  if (R.algo == "sgd")
    set_default("sgd.eta0", detail::format_double_key(1.0 / info.L));
  if (R.algo == "adagrad") {
    set_default("adagrad.alpha", "0.1");
    set_default("adagrad.eps0", "1e-8");
    set_default("adagrad.batch", "full");
  }

  R.cfg = std::move(m);
  return R;
}

inline vec make_x0(const resolved_experiment& R) {
  config_view v{R.cfg};
  const std::string spec = v.get("experiment.x0", "zero");
  vec x0 = vec::Zero(R.data->dim);
  if (spec != "zero") {
    try {
      x0.setConstant(std::stod(spec));
    } catch (const std::exception&) {
      throw config_error("experiment.x0 must be 'zero' or a number");
    }
  }
  return x0;
}

inline meta_config meta_config_from(const resolved_experiment& R,
                                    std::uint64_t seed) {
  config_view v{R.cfg};
  meta_config mc;
  if (R.algo == "single_reg") mc.scheme = reg_scheme::single;
  else if (R.algo == "rr_v1") mc.scheme = reg_scheme::recursive_v1;
  else if (R.algo == "rr_v2") mc.scheme = reg_scheme::recursive_v2;
  else mc.scheme = reg_scheme::nonconvex;
  mc.subsolver = v.get("meta.subsolver", "fixed") == "bb"
                     ? subsolver_kind::sarah_bb
                     : subsolver_kind::sarah_fixed;
  mc.epsilon = v.get_double("meta.epsilon", 1e-10);
  const double mu_override = v.get_double("meta.mu", 0.0);
  if (mu_override > 0.0) mc.mu_override = mu_override;
  mc.mu0 = v.get_double("meta.mu0", 1.0);
  mc.mu1 = v.get_double("meta.mu1", 1e-3);
  mc.gamma = v.get_double("meta.gamma", 0.1);
  mc.theta = v.get_double("meta.theta", 0.0);
  mc.sigma = v.get_double("meta.sigma", 0.0);
  mc.stage_cap = v.get_int("meta.stage_cap", 1000);
  mc.k1_cap = v.get_int("meta.k1_cap", 0);
  mc.k_const = v.get_int("meta.k_const", 2);
  mc.m_cap = v.get_int("meta.m_cap", 0);
  mc.c_mu = v.get_double("meta.c_mu", 1.0);
  mc.c_m = v.get_double("meta.c_m", 2.0);
  mc.c_k = v.get_double("meta.c_k", 1.0);
  mc.r_hat = v.get_double("meta.r_hat", 0.0);
  mc.theory_exact_v1 = v.get_bool("meta.theory_exact_v1", false);
  mc.lambda_kappa = v.get_double("meta.lambda_kappa", 0.0);
  mc.clamp_bb = v.get_bool("meta.clamp_bb", true);
  mc.snapshot =
      detail::parse_snapshot_rule(v.get("meta.snapshot", "uniform_m"));
  mc.seed = seed;
  mc.max_ifo = R.budget_ifo;
  return mc;
}

/// Executes one algorithm at one seed and returns its trace.
inline seeded_trace run_single(const resolved_experiment& R,
                               std::uint64_t seed) {
  config_view v{R.cfg};
  const vec x0 = make_x0(R);
  const auto n = static_cast<std::int64_t>(R.data->n());

  if (R.algo == "vanilla_sarah" || R.algo == "bb_sarah" ||
      R.algo == "modified_bb") {
    sarah_config sc;
    sc.eta_init = v.get_double("sarah.eta", 0.0);
    sc.m = v.get_int("sarah.m", n);
    sc.snapshot = detail::parse_snapshot_rule(v.get("sarah.snapshot", "uniform_m"));
    sc.seed = seed;
    sc.max_ifo = R.budget_ifo;
    sc.outer_loops = R.budget_ifo / std::max<std::int64_t>(n, 1) + 2;
    if (R.algo == "bb_sarah") {
      sc.controller.variant = step_variant::bb;
      sc.controller.lambda_kappa = v.get_double("sarah.lambda_kappa", 1.0);
    } else if (R.algo == "modified_bb") {
      sc.controller.variant =
          v.get("sarah.modified_variant", "convex") == "nonconvex"
              ? step_variant::modified_bb_nonconvex
              : step_variant::modified_bb_convex;
      sc.controller.lambda_reg = v.get_double("sarah.lambda_reg", 1.0);
      sc.controller.m = sc.m;
    }
    return {seed, sarah_run(*R.obj, x0, sc).tr};
  }

  if (R.algo == "single_reg" || R.algo == "rr_v1" || R.algo == "rr_v2" ||
      R.algo == "ncvx")
    return {seed, run_meta(R.obj, x0, meta_config_from(R, seed)).tr};

  if (R.algo == "gd") {
    const double eta = v.get_double("gd.eta", 0.0);
    const std::int64_t steps = std::max<std::int64_t>(R.budget_ifo / n, 1);
    return {seed, gd_run(*R.obj, x0, eta, steps, R.budget_ifo).tr};
  }
  if (R.algo == "sgd") {
    const double eta0 = v.get_double("sgd.eta0", 0.0);
    return {seed, sgd_run(*R.obj, x0, eta0, R.budget_ifo, seed, n,
                          R.budget_ifo)
                      .tr};
  }
  // adagrad
  const double alpha = v.get_double("adagrad.alpha", 0.1);
  const double eps0 = v.get_double("adagrad.eps0", 1e-8);
  const bool full = v.get("adagrad.batch", "full") != "single";
  const std::int64_t steps =
      full ? std::max<std::int64_t>(R.budget_ifo / n, 1) : R.budget_ifo;
  return {seed, adagrad_run(*R.obj, x0, alpha, eps0, steps,
                            full ? adagrad_batch::full : adagrad_batch::single,
                            seed, R.budget_ifo)
                    .tr};
}

struct experiment_output {
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
  std::vector<seeded_trace> runs;
  bool diverged = false;
};

/// Runs every seed, then writes `<name>.csv` and its JSON sidecar atomically.
/// A diverging run keeps its partial trace and flags the output.
inline experiment_output run_experiment(const config_map& raw,
                                        const std::string& out_dir_override =
                                            "") {
  resolved_experiment R = resolve_experiment(raw);
  if (!out_dir_override.empty()) R.cfg["experiment.out_dir"] = out_dir_override;
  config_view v{R.cfg};

  experiment_output out;
  for (std::uint64_t seed : R.seeds) {
    try {
      out.runs.push_back(run_single(R, seed));
    } catch (const divergence_error& e) {
      out.runs.push_back({seed, e.partial_trace()});
      out.diverged = true;
    }
  }

  const std::filesystem::path dir = v.get("experiment.out_dir", "out");
  const std::string name = v.get("experiment.name", "exp");
  out.csv_path = dir / (name + ".csv");
  out.json_path = dir / (name + ".json");
  write_file_atomic(out.csv_path, traces_to_csv(R.algo, out.runs));
  write_file_atomic(out.json_path, config_to_sidecar_json(R.cfg));
  return out;
}

// ---------------------------------------------------------------------------
// figure presets

/// Single-regularizer mu sweep on the logistic loss; one trace file per mu at
/// matched budgets and seeds. Overlaying them shows the gradient-norm plateau
/// move with mu.
inline std::vector<experiment_output> fig1_experiment(config_map base) {
  config_view v{base};
  const auto grid = v.get_list("fig1.mu_grid", "1e-3,1e-4,1e-5");
  base["experiment.algo"] = "single_reg";
  if (base.find("experiment.budget_passes") == base.end())
    base["experiment.budget_passes"] = "200";
  if (base.find("experiment.seeds") == base.end())
    base["experiment.seeds"] = "1,2,3";
  if (base.find("dataset.loss") == base.end())
    base["dataset.loss"] = "logistic";
  if (base.find("meta.epsilon") == base.end()) base["meta.epsilon"] = "1e-16";
  load_experiment_dataset(base);  // pin provenance; also exposes n
  if (base.find("meta.m_cap") == base.end())
    base["meta.m_cap"] = base["dataset.n"];  // inner length m = n convention

  std::vector<experiment_output> outs;
  for (const std::string& mu : grid) {
    config_map m = base;
    m["meta.mu"] = mu;
    std::string tag = mu;
    for (char& c : tag)
      if (c == '.' || c == '+') c = '_';
    m["experiment.name"] = v.get("experiment.name", "fig1") + "_mu" + tag;
    outs.push_back(run_experiment(m));
  }
  return outs;
}

/// Convex comparison: vanilla SARAH against the three regularization schemes
/// at one matched budget.
inline std::vector<experiment_output> fig2_convex_experiment(config_map base) {
  config_view v{base};
  if (base.find("experiment.budget_passes") == base.end())
    base["experiment.budget_passes"] = "100";
  if (base.find("experiment.seeds") == base.end())
    base["experiment.seeds"] = "1,2,3,4,5";
  if (base.find("dataset.loss") == base.end())
    base["dataset.loss"] = "logistic";
  if (base.find("meta.epsilon") == base.end()) base["meta.epsilon"] = "1e-12";
  load_experiment_dataset(base);
  if (base.find("meta.m_cap") == base.end())
    base["meta.m_cap"] = base["dataset.n"];

  const std::string stem = v.get("experiment.name", "fig2a");
  std::vector<experiment_output> outs;
  for (const std::string& algo :
       {std::string("vanilla_sarah"), std::string("single_reg"),
        std::string("rr_v1"), std::string("rr_v2")}) {
    config_map m = base;
    m["experiment.algo"] = algo;
    m["experiment.name"] = stem + "_" + algo;
    if (algo == "single_reg" && m.find("meta.mu") == m.end())
      m["meta.mu"] = "1e-4";
    if (algo == "rr_v1" && m.find("meta.k1_cap") == m.end())
      m["meta.k1_cap"] = "8";  // leave most of the budget for later stages
    outs.push_back(run_experiment(m));
  }
  return outs;
}

/// Nonconvex comparison: the regularized scheme with a BB subsolver against
/// modified-BB SARAH and grid-tuned full-batch AdaGrad.
inline std::vector<experiment_output> fig2_nonconvex_experiment(
    config_map base) {
  config_view v{base};
  if (base.find("experiment.budget_passes") == base.end())
    base["experiment.budget_passes"] = "100";
  if (base.find("experiment.seeds") == base.end())
    base["experiment.seeds"] = "1,2,3,4,5";
  base["dataset.loss"] = "sigmoidsq";
  if (base.find("meta.epsilon") == base.end()) base["meta.epsilon"] = "1e-16";
  auto ds = load_experiment_dataset(base);
  if (base.find("meta.m_cap") == base.end())
    base["meta.m_cap"] = base["dataset.n"];
  if (base.find("meta.sigma") == base.end()) {
    // Small prox weight: the loss is near-convex along trajectories from the
    // origin, and larger stage movement is what lets the stages keep pace at
    // this budget. Recorded in the sidecar like every other resolved value.
    const smoothness_info info = smoothness_bound(*ds, loss_kind::sigmoidsq);
    base["meta.sigma"] = detail::format_double_key(1e-3 * info.L);
  }
  if (base.find("meta.k_const") == base.end()) base["meta.k_const"] = "1";

  const std::string stem = v.get("experiment.name", "fig2b");
  std::vector<experiment_output> outs;

  {
    config_map m = base;
    m["experiment.algo"] = "ncvx";
    m["meta.subsolver"] = "bb";
    m["experiment.name"] = stem + "_ncvx_bb";
    outs.push_back(run_experiment(m));
  }
  {
    config_map m = base;
    m["experiment.algo"] = "modified_bb";
    m["experiment.name"] = stem + "_modified_bb";
    outs.push_back(run_experiment(m));
  }

  // 9-point grid search for AdaGrad; full-batch runs are deterministic, so
  // the first seed ranks the grid.
  const auto alphas = v.get_list("fig2.adagrad_alphas", "0.01,0.1,1.0");
  const auto eps0s = v.get_list("fig2.adagrad_eps0s", "1e-8,1e-6,1e-4");
  double best_final = std::numeric_limits<double>::infinity();
  std::string best_alpha = alphas.front(), best_eps0 = eps0s.front();
  for (const std::string& a : alphas) {
    for (const std::string& e : eps0s) {
      config_map m = base;
      m["experiment.algo"] = "adagrad";
      m["adagrad.alpha"] = a;
      m["adagrad.eps0"] = e;
      m["experiment.seeds"] = "1";
      resolved_experiment R = resolve_experiment(m);
      double final_sq = std::numeric_limits<double>::infinity();
      try {
        const seeded_trace st = run_single(R, R.seeds.front());
        if (!st.tr.records.empty()) final_sq = st.tr.records.back().grad_f_sq;
      } catch (const divergence_error&) {
        // divergent grid point: stays at +inf
      }
      if (final_sq < best_final) {
        best_final = final_sq;
        best_alpha = a;
        best_eps0 = e;
      }
    }
  }
  {
    config_map m = base;
    m["experiment.algo"] = "adagrad";
    m["adagrad.alpha"] = best_alpha;
    m["adagrad.eps0"] = best_eps0;
    m["experiment.name"] = stem + "_adagrad";
    outs.push_back(run_experiment(m));
  }
  return outs;
}

// ---------------------------------------------------------------------------
// trace reading and plotting

struct csv_trace_row {
  std::string algo;
  int stage = 1;
  std::int64_t outer = 0;
  std::int64_t ifo = 0;
  double eta = kNaN, mu = kNaN, rho = kNaN;
  double grad_f_sq = kNaN, grad_surr_sq = kNaN;
  std::uint64_t seed = 0;
};

inline std::vector<csv_trace_row> parse_trace_csv(std::istream& in) {
  std::vector<csv_trace_row> rows;
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty trace file");
  if (line != kTraceCsvHeader)
    throw parse_error("unexpected trace header: " + line);
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    while (f.size() < 10) f.push_back("");
    csv_trace_row r;
    try {
      r.algo = f[0];
      r.stage = std::stoi(f[1]);
      r.outer = std::stoll(f[2]);
      r.ifo = std::stoll(f[3]);
      r.eta = f[4].empty() ? kNaN : std::stod(f[4]);
      r.mu = f[5].empty() ? kNaN : std::stod(f[5]);
      r.rho = f[6].empty() ? kNaN : std::stod(f[6]);
      r.grad_f_sq = f[7].empty() ? kNaN : std::stod(f[7]);
      r.grad_surr_sq = f[8].empty() ? kNaN : std::stod(f[8]);
      r.seed = std::stoull(f[9]);
    } catch (const std::exception&) {
      throw parse_error("bad trace row", line_no);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Renders every *.csv in `dir` into one overlay: per-seed polylines colored
/// by file, x in effective passes (IFO/n from the sidecar when present).
inline std::string plot_trace_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".csv") files.push_back(entry.path());
  if (files.empty()) throw io_error("no .csv traces in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<plot_series> series;
  for (std::size_t fi = 0; fi < files.size(); ++fi) {
    std::ifstream f(files[fi]);
    if (!f) throw io_error("cannot open " + files[fi].string());
    const auto rows = parse_trace_csv(f);

    double n = 1.0;
    fs::path sidecar = files[fi];
    sidecar.replace_extension(".json");
    if (fs::exists(sidecar)) {
      std::ifstream jf(sidecar);
      const config_map side = sidecar_json_to_config(jf);
      if (auto it = side.find("dataset.n"); it != side.end())
        n = std::max(1.0, std::stod(it->second));
    }

    std::map<std::uint64_t, plot_series> by_seed;
    for (const csv_trace_row& r : rows) {
      auto [it, inserted] = by_seed.try_emplace(r.seed);
      if (inserted) {
        it->second.color = static_cast<int>(fi);
        it->second.label =
            by_seed.size() == 1 ? files[fi].stem().string() : "";
      }
      if (std::isfinite(r.grad_f_sq))
        it->second.points.emplace_back(static_cast<double>(r.ifo) / n,
                                       r.grad_f_sq);
    }
    for (auto& [seed, s] : by_seed) series.push_back(std::move(s));
  }
  return render_convergence_svg(series, "effective passes (IFO/n)",
                                "||grad f||^2");
}

}  // namespace vropt

#endif

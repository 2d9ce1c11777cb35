#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vropt/vropt.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitIo = 3;

vropt::config_map load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw vropt::io_error("cannot open config file " + path);
  if (std::filesystem::path(path).extension() == ".json")
    return vropt::sidecar_json_to_config(f);
  return vropt::parse_ini(f);
}

int report_outputs(const std::vector<vropt::experiment_output>& outs) {
  bool diverged = false;
  for (const auto& out : outs) {
    std::cout << "wrote " << out.csv_path.string() << " ("
              << out.runs.size() << " seed"
              << (out.runs.size() == 1 ? "" : "s") << ")"
              << (out.diverged ? " [diverged]" : "") << "\n";
    diverged |= out.diverged;
  }
  return diverged ? kExitDivergence : kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const vropt::config_map cfg = load_config(config_path);
  return report_outputs({vropt::run_experiment(cfg, out_dir)});
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  vropt::config_map cfg = load_config(config_path);
  if (!out_dir.empty()) cfg["experiment.out_dir"] = out_dir;
  const vropt::config_view v{cfg};
  const std::string preset = v.get("sweep.preset", "grid");

  if (preset == "fig1") return report_outputs(vropt::fig1_experiment(cfg));
  if (preset == "fig2_convex")
    return report_outputs(vropt::fig2_convex_experiment(cfg));
  if (preset == "fig2_nonconvex")
    return report_outputs(vropt::fig2_nonconvex_experiment(cfg));
  if (preset != "grid")
    throw vropt::config_error("unknown sweep preset '" + preset + "'");

  const std::string param = v.get("sweep.param", "");
  if (param.empty())
    throw vropt::config_error("sweep needs sweep.param or a preset");
  const auto values = v.get_list("sweep.values", "");
  if (values.empty()) throw vropt::config_error("sweep.values is empty");

  std::vector<vropt::experiment_output> outs;
  const std::string stem = v.get("experiment.name", "sweep");
  for (const std::string& value : values) {
    vropt::config_map m = cfg;
    m[param] = value;
    std::string tag = value;
    for (char& c : tag)
      if (c == '.' || c == '+' || c == '/') c = '_';
    m["experiment.name"] = stem + "_" + tag;
    outs.push_back(vropt::run_experiment(m));
  }
  return report_outputs(outs);
}

int cmd_plot(const std::string& traces_dir, const std::string& out_path) {
  const std::string svg = vropt::plot_trace_dir(traces_dir);
  vropt::write_file_atomic(out_path, svg);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& data_path) {
  std::ifstream f(data_path);
  if (!f) throw vropt::io_error("cannot open dataset file " + data_path);
  const vropt::dataset ds = vropt::parse_libsvm(f);
  vropt::validate_dataset(ds);
  std::cout << "n=" << ds.n() << ", d=" << ds.dim << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vropt: finite-sum stochastic optimization benchmark"};
  app.require_subcommand(1);

  std::string config_path, out_dir, traces_dir, out_path, data_path;

  CLI::App* run = app.add_subcommand("run", "execute one experiment config");
  run->add_option("--config", config_path, "INI config or JSON sidecar")
      ->required();
  run->add_option("--out", out_dir, "output directory override");

  CLI::App* sweep =
      app.add_subcommand("sweep", "run a parameter/preset sweep");
  sweep->add_option("--config", config_path, "INI config or JSON sidecar")
      ->required();
  sweep->add_option("--out", out_dir, "output directory override");

  CLI::App* plot = app.add_subcommand("plot", "render traces to an SVG");
  plot->add_option("--traces", traces_dir, "directory of trace CSV files")
      ->required();
  plot->add_option("--out", out_path, "output SVG path")->required();

  CLI::App* validate =
      app.add_subcommand("validate", "check a LIBSVM dataset file");
  validate->add_option("--data", data_path, "dataset path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir);
    if (plot->parsed()) return cmd_plot(traces_dir, out_path);
    return cmd_validate(data_path);
  } catch (const vropt::divergence_error& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const vropt::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const vropt::error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

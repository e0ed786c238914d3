#include "otoc/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonFlags {
  std::string config_path;
  std::string protocol;
  double delta = -1.0;
  double beta = -1.0;
  long shots = -1;
  int reps = -1;
  std::uint64_t seed = 0;
  double theta = -1.0;
  bool exact_gates = false;
  std::string out;
  std::string format = "csv";
};

void attach_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "key=value config file");
  cmd->add_option("--delta", f.delta, "single anisotropy value");
  cmd->add_option("--beta", f.beta, "inverse temperature");
  cmd->add_option("--shots", f.shots, "shots per repetition");
  cmd->add_option("--reps", f.reps, "repetitions per cell");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--theta", f.theta, "ISM coupling angle");
  cmd->add_flag("--exact-gates", f.exact_gates,
                "use exact propagators instead of Trotter circuits");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

otoc::ExperimentConfig resolve(const CLI::App* cmd, const CommonFlags& f) {
  otoc::ExperimentConfig cfg = f.config_path.empty()
                                   ? otoc::default_config()
                                   : otoc::load_config_file(f.config_path);
  if (cmd->count("--delta")) cfg.deltas = {f.delta};
  if (cmd->count("--beta")) cfg.beta = f.beta;
  if (cmd->count("--shots")) cfg.shots = f.shots;
  if (cmd->count("--reps")) cfg.reps = f.reps;
  if (cmd->count("--seed")) cfg.master_seed = f.seed;
  if (cmd->count("--theta")) cfg.theta = f.theta;
  if (f.exact_gates) cfg.evolution.mode = otoc::EvolutionMode::ExactGate;
  if (cmd->count("--out")) cfg.output_path = f.out;
  if (!f.protocol.empty()) cfg.protocols = {f.protocol};
  cfg.check();
  return cfg;
}

void emit(const otoc::ResultTable& table, const CommonFlags& f) {
  const std::string payload =
      f.format == "json" ? otoc::json_string(table) : otoc::csv_string(table);
  if (f.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream file(f.out);
    if (!file) throw std::runtime_error("cannot open " + f.out);
    file << payload;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OTOC measurement-protocol toolkit"};
  app.require_subcommand(1);

  CommonFlags oracle_f, run_f, sweep_f, gibbs_f;
  bool corrupt_alpha = false;

  CLI::App* oracle = app.add_subcommand("oracle", "exact OTOC curves");
  attach_common(oracle, oracle_f);

  CLI::App* run = app.add_subcommand("run", "one protocol over the grid");
  run->add_option("--protocol", run_f.protocol, "RTM, WMM or ISM")->required();
  attach_common(run, run_f);

  CLI::App* sweep = app.add_subcommand("sweep", "full protocol x grid sweep");
  attach_common(sweep, sweep_f);

  CLI::App* gibbs =
      app.add_subcommand("gibbs", "variational Gibbs prep + fidelity report");
  attach_common(gibbs, gibbs_f);

  CLI::App* validate = app.add_subcommand("validate", "self-check suite");
  validate->add_flag("--corrupt-alpha", corrupt_alpha,
                     "negative control: corrupt the weighting coefficients");

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle->parsed()) {
      const otoc::ExperimentConfig cfg = resolve(oracle, oracle_f);
      const std::string payload = otoc::oracle_csv(cfg);
      if (oracle_f.out.empty()) {
        std::cout << payload;
      } else {
        std::ofstream file(oracle_f.out);
        if (!file) throw std::runtime_error("cannot open " + oracle_f.out);
        file << payload;
      }
    } else if (run->parsed()) {
      emit(otoc::run_sweep(resolve(run, run_f)), run_f);
    } else if (sweep->parsed()) {
      emit(otoc::run_sweep(resolve(sweep, sweep_f)), sweep_f);
    } else if (gibbs->parsed()) {
      otoc::ExperimentConfig cfg = resolve(gibbs, gibbs_f);
      nlohmann::json report = nlohmann::json::array();
      for (double delta : cfg.deltas) {
        const otoc::GibbsSpec gspec{
            otoc::build_xxz(otoc::XXZParams::with_field_rule(cfg.n, delta)),
            cfg.beta};
        otoc::OptimizerConfig ocfg;
        ocfg.seed = cfg.master_seed;
        const otoc::VQAResult r = otoc::vqa_optimize(
            gspec, otoc::TFDAnsatz::zeros(cfg.n, 2, 2), ocfg);
        report.push_back({{"delta", delta},
                          {"beta", cfg.beta},
                          {"free_energy", r.free_energy},
                          {"target_free_energy", otoc::gibbs_free_energy(gspec)},
                          {"fidelity", r.fidelity_to_exact},
                          {"iterations", r.iterations},
                          {"converged", r.converged}});
      }
      if (gibbs_f.out.empty()) {
        std::cout << report.dump(2) << '\n';
      } else {
        std::ofstream file(gibbs_f.out);
        if (!file) throw std::runtime_error("cannot open " + gibbs_f.out);
        file << report.dump(2) << '\n';
      }
    } else if (validate->parsed()) {
      const otoc::ValidationReport report =
          otoc::validate({.corrupt_alpha = corrupt_alpha});
      std::cout << report.to_json() << '\n';
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

#pragma once

#include "otoc/protocols.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace otoc {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct ExperimentConfig {
  int n = 4;
  std::vector<double> deltas{0.1, 0.3, 0.5, 0.7, 0.9};
  double beta = 1.0;
  double t_max = 2.1;
  int n_points = 15;  // evenly spaced, both endpoints included
  long shots = 1000;
  int reps = 10;
  std::vector<std::string> protocols{"RTM", "WMM", "ISM"};
  double theta = 0.4;
  std::array<double, 4> phis{M_PI / 2, M_PI / 2, M_PI / 2, M_PI / 2};
  std::string gibbs_mode = "exact";  // "exact" or "vqa"
  Evolution evolution{EvolutionMode::Trotter, TrotterConfig{2, 4}};
  std::uint64_t master_seed = 1;
  std::string output_path = "otoc_results";

  void check() const;
  std::vector<double> time_grid() const;
};

/// n = 4, Delta in {0.1 .. 0.9}, h = (1-Delta)/2, t in [0, 2.1] over 15
/// points, 1000 shots x 10 reps, theta = 0.4, W = V = X on site 0,
/// beta = 1.0, exact Gibbs input.
ExperimentConfig default_config();

struct ResultTable {
  std::vector<EstimateRecord> rows;
  ExperimentConfig config;
  std::string version = kToolkitVersion;
  std::string started_at;   // JSON metadata only; never in the CSV
  std::string finished_at;
};

/// Per-cell seed, independent of execution order.
std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& protocol,
                        int delta_index, int tau_index);

/// Full (protocol x delta x tau) grid. A failing cell produces an error row
/// (metadata["error"]) instead of aborting the sweep.
ResultTable run_sweep(const ExperimentConfig& cfg);

/// Exact oracle curves over the same grid: delta, beta, tau, C, Re F, Im F.
std::string oracle_csv(const ExperimentConfig& cfg);

std::string csv_string(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& path);
void write_json(const ResultTable& table, const std::string& path);
std::string json_string(const ResultTable& table);

struct ValidationOptions {
  bool corrupt_alpha = false;  // negative-control hook for the POVM check
};

struct ValidationReport {
  struct Check {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string detail;
  };
  std::vector<Check> checks;
  bool all_pass() const;
  std::string to_json() const;
};

/// Oracle identities, POVM algebra, protocol-oracle agreement, Trotter slope.
ValidationReport validate(const ValidationOptions& opts = {});

/// Flat key=value config file; unknown keys are an error.
ExperimentConfig load_config_file(const std::string& path);

}  // namespace otoc

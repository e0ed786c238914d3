#include "otoc/harness.hpp"

#include "otoc/rng.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace otoc {

namespace {

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string now_iso8601() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

std::string evolution_mode_string(const Evolution& ev) {
  if (ev.mode == EvolutionMode::ExactGate) return "exact-gate";
  return "trotter(" + std::to_string(ev.trotter.order) + "," +
         std::to_string(ev.trotter.steps_per_unit) + ")";
}

OTOCSpec make_spec(int n, double delta, double beta, double tau) {
  OTOCSpec spec;
  spec.H = build_xxz(XXZParams::with_field_rule(n, delta));
  spec.beta = beta;
  spec.W0 = embed_local(pauli_matrix(Pauli::X), {0}, n);
  spec.V0 = spec.W0;
  spec.tau = tau;
  return spec;
}

}  // namespace

void ExperimentConfig::check() const {
  if (deltas.empty()) throw std::invalid_argument("config: deltas empty");
  if (!(t_max > 0.0)) throw std::invalid_argument("config: t_max must be > 0");
  if (n_points < 2) throw std::invalid_argument("config: n_points must be >= 2");
  if (shots < 1 || reps < 1)
    throw std::invalid_argument("config: shots and reps must be >= 1");
  if (n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (protocols.empty())
    throw std::invalid_argument("config: protocols empty");
  for (const std::string& p : protocols)
    if (p != "RTM" && p != "WMM" && p != "ISM")
      throw std::invalid_argument("config: unknown protocol " + p);
  if (gibbs_mode != "exact" && gibbs_mode != "vqa")
    throw std::invalid_argument("config: unknown gibbs_mode " + gibbs_mode);
}

std::vector<double> ExperimentConfig::time_grid() const {
  std::vector<double> grid(n_points);
  for (int i = 0; i < n_points; ++i)
    grid[i] = t_max * static_cast<double>(i) / (n_points - 1);
  return grid;
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& protocol,
                        int delta_index, int tau_index) {
  std::uint64_t proto_hash = 1469598103934665603ULL;  // FNV-1a
  for (char c : protocol) {
    proto_hash ^= static_cast<unsigned char>(c);
    proto_hash *= 1099511628211ULL;
  }
  return mix_seed({master_seed, proto_hash,
                   static_cast<std::uint64_t>(delta_index),
                   static_cast<std::uint64_t>(tau_index)});
}

ResultTable run_sweep(const ExperimentConfig& cfg) {
  cfg.check();
  ResultTable table;
  table.config = cfg;
  table.started_at = now_iso8601();

  // thermal system state per delta (VQA runs once per delta)
  std::map<int, DensityMatrix> rho_by_delta;
  std::map<int, std::string> fidelity_by_delta;
  for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
    const GibbsSpec gspec{
        build_xxz(XXZParams::with_field_rule(cfg.n, cfg.deltas[di])), cfg.beta};
    if (cfg.gibbs_mode == "vqa") {
      OptimizerConfig ocfg;
      ocfg.seed = mix_seed({cfg.master_seed, 0xF1D0, di});
      const VQAResult vqa = vqa_optimize(
          gspec, TFDAnsatz::zeros(cfg.n, 2, 2), ocfg);
      TFDAnsatz best = TFDAnsatz::zeros(cfg.n, 2, 2);
      best.theta = vqa.optimal_theta;
      best.phi = vqa.optimal_phi;
      rho_by_delta.emplace(static_cast<int>(di), tfd_system_state(best));
      fidelity_by_delta[static_cast<int>(di)] = fmt(vqa.fidelity_to_exact);
    } else {
      rho_by_delta.emplace(static_cast<int>(di), exact_gibbs(gspec));
    }
  }

  const std::vector<double> grid = cfg.time_grid();
  for (const std::string& protocol : cfg.protocols) {
    for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
      for (std::size_t ti = 0; ti < grid.size(); ++ti) {
        const double delta = cfg.deltas[di];
        const std::uint64_t seed = cell_seed(
            cfg.master_seed, protocol, static_cast<int>(di),
            static_cast<int>(ti));
        EstimateRecord rec;
        try {
          const OTOCSpec spec = make_spec(cfg.n, delta, cfg.beta, grid[ti]);
          const ThermalInput input{rho_by_delta.at(static_cast<int>(di)),
                                   false};
          if (protocol == "RTM") {
            rec = rtm_estimate(
                {spec, cfg.shots, cfg.reps, seed, cfg.evolution}, input);
          } else if (protocol == "WMM") {
            rec = wmm_estimate(
                {spec, cfg.phis, cfg.shots, cfg.reps, seed, cfg.evolution},
                input);
          } else {
            ISMConfig icfg;
            icfg.spec = spec;
            icfg.theta = cfg.theta;
            icfg.shots = cfg.shots;
            icfg.reps = cfg.reps;
            icfg.seed = seed;
            icfg.evolution = cfg.evolution;
            rec = ism_estimate(icfg, input);
          }
        } catch (const std::exception& e) {
          rec.protocol = protocol;
          rec.beta = cfg.beta;
          rec.tau = grid[ti];
          rec.shots = cfg.shots;
          rec.reps = cfg.reps;
          rec.seed = seed;
          rec.mean_C = rec.std_C = rec.oracle_C =
              std::numeric_limits<double>::quiet_NaN();
          rec.metadata["error"] = e.what();
        }
        rec.delta = delta;
        if (auto it = fidelity_by_delta.find(static_cast<int>(di));
            it != fidelity_by_delta.end())
          rec.metadata["gibbs_fidelity"] = it->second;
        table.rows.push_back(std::move(rec));
      }
    }
  }
  table.finished_at = now_iso8601();
  return table;
}

std::string oracle_csv(const ExperimentConfig& cfg) {
  cfg.check();
  std::ostringstream out;
  out << "delta,beta,tau,C_exact,ReF,ImF\n";
  for (double delta : cfg.deltas) {
    for (double tau : cfg.time_grid()) {
      const OTOCSpec spec = make_spec(cfg.n, delta, cfg.beta, tau);
      const Complex f = correlator_f(spec);
      out << fmt(delta) << ',' << fmt(cfg.beta) << ',' << fmt(tau) << ','
          << fmt(otoc_c(spec)) << ',' << fmt(f.real()) << ',' << fmt(f.imag())
          << '\n';
    }
  }
  return out.str();
}

std::string csv_string(const ResultTable& table) {
  std::ostringstream out;
  out << "protocol,delta,beta,tau,mean_C,std_C,oracle_C,shots,reps,seed,"
         "gibbs_mode,evolution_mode,extra\n";
  const std::string evo = evolution_mode_string(table.config.evolution);
  for (const EstimateRecord& r : table.rows) {
    std::string extra;
    for (const auto& [k, v] : r.metadata) {
      if (!extra.empty()) extra += ';';
      extra += k + '=' + v;
    }
    out << r.protocol << ',' << fmt(r.delta) << ',' << fmt(r.beta) << ','
        << fmt(r.tau) << ',' << fmt(r.mean_C) << ',' << fmt(r.std_C) << ','
        << fmt(r.oracle_C) << ',' << r.shots << ',' << r.reps << ',' << r.seed
        << ',' << table.config.gibbs_mode << ',' << evo << ',' << extra
        << '\n';
  }
  return out.str();
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  f << csv_string(table);
}

std::string json_string(const ResultTable& table) {
  nlohmann::json j;
  const ExperimentConfig& c = table.config;
  j["config"] = {
      {"n", c.n},
      {"deltas", c.deltas},
      {"beta", c.beta},
      {"t_max", c.t_max},
      {"n_points", c.n_points},
      {"shots", c.shots},
      {"reps", c.reps},
      {"protocols", c.protocols},
      {"theta", c.theta},
      {"phis", c.phis},
      {"gibbs_mode", c.gibbs_mode},
      {"evolution_mode", evolution_mode_string(c.evolution)},
      {"master_seed", c.master_seed},
      {"output_path", c.output_path},
  };
  j["versions"] = {{"toolkit", table.version}};
  j["wallclock"] = {{"started_at", table.started_at},
                    {"finished_at", table.finished_at}};
  j["rows"] = nlohmann::json::array();
  for (const EstimateRecord& r : table.rows) {
    nlohmann::json row = {
        {"protocol", r.protocol}, {"delta", r.delta},
        {"beta", r.beta},         {"tau", r.tau},
        {"mean_C", r.mean_C},     {"std_C", r.std_C},
        {"oracle_C", r.oracle_C}, {"shots", r.shots},
        {"reps", r.reps},         {"seed", r.seed},
        {"extra", r.metadata},
    };
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

void write_json(const ResultTable& table, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_json: cannot open " + path);
  f << json_string(table);
}

bool ValidationReport::all_pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"residual", c.residual},
                           {"detail", c.detail}});
  return j.dump(2);
}

ValidationReport validate(const ValidationOptions& opts) {
  ValidationReport report;
  auto add = [&](const std::string& name, double residual, double tol,
                 const std::string& detail = {}) {
    report.checks.push_back({name, residual < tol, residual, detail});
  };

  // oracle identity chain on random small specs
  {
    Rng rng(0x07ACULL);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 2);
      const double beta = 3.0 * rng.next_double();
      const double tau = 2.0 * rng.next_double();
      const double delta = rng.next_double();
      const OTOCSpec spec = make_spec(n, delta, beta, tau);
      const double c = otoc_c(spec);
      const Complex f = correlator_f(spec);
      worst = std::max(worst, std::abs(c - 2.0 * (1.0 - f.real())));
      worst = std::max(worst, std::abs(c - frobenius_form(spec)));
    }
    add("oracle_identity_chain", worst, 1e-10);
  }

  // POVM algebra (alpha corruption hook = negative control)
  {
    double worst = 0.0;
    const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const ComplexMatrix a = pauli_matrix(p);
      for (double phi : {M_PI / 8, M_PI / 4, M_PI / 2}) {
        ComplexMatrix povm_sum = ComplexMatrix::Zero(2, 2);
        ComplexMatrix weighted = ComplexMatrix::Zero(2, 2);
        for (int lab = 0; lab < 2; ++lab) {
          const ComplexMatrix m = weak_measurement_kraus(a, phi, lab);
          const double alpha =
              opts.corrupt_alpha
                  ? (lab == 0 ? 1.0 : -1.0) / std::sin(phi / 2)
                  : modified_eigenvalue(lab, phi);
          povm_sum += m.adjoint() * m;
          weighted += alpha * m.adjoint() * m;
        }
        worst = std::max(worst, max_abs_diff(povm_sum, eye));
        worst = std::max(worst, max_abs_diff(weighted, a));
      }
    }
    add("povm_completeness_and_alpha_decomposition", worst, 1e-12);
  }

  // protocol-oracle agreement, exact-expectation mode, n = 2
  {
    const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
    const ThermalInput input = exact_thermal_input(spec);
    const double oracle = otoc_c(spec);
    const double rtm = rtm_exact_c({spec}, input);
    const double wmm = wmm_exact_c({spec}, input);
    ISMConfig icfg;
    icfg.spec = spec;
    icfg.theta_sweep = {0.2, 0.1, 0.05};
    const double ism = ism_exact_c_extrapolated(icfg, input);
    add("protocol_oracle_agreement_rtm", std::abs(rtm - oracle), 1e-8);
    add("protocol_oracle_agreement_wmm", std::abs(wmm - oracle), 1e-8);
    add("protocol_oracle_agreement_ism_extrapolated", std::abs(ism - oracle),
        1e-6);
  }

  // order-2 Trotter slope over one decade of dt
  {
    const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(4, 0.5));
    const double tau = 2.1;
    const ComplexMatrix exact = exact_propagator(H, tau);
    std::vector<double> log_dt, log_err;
    for (int steps : {8, 16, 32, 80}) {
      TrotterConfig tc{2, 1};
      tc.steps_per_unit = static_cast<int>(std::ceil(steps / tau));
      const Circuit c = trotter_circuit(H, tau, tc);
      ComplexVector col;
      ComplexMatrix u = ComplexMatrix::Identity(H.dim(), H.dim());
      for (Eigen::Index j = 0; j < H.dim(); ++j) {
        ComplexVector v = u.col(j);
        for (const Gate& g : c.gates) apply_gate(v, H.n, g);
        u.col(j) = v;
      }
      const int actual_steps =
          std::max(1, (int)std::ceil(tc.steps_per_unit * tau));
      log_dt.push_back(std::log(tau / actual_steps));
      log_err.push_back(std::log(max_abs_diff(u, exact)));
    }
    // least-squares slope
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < log_dt.size(); ++i) {
      mx += log_dt[i];
      my += log_err[i];
    }
    mx /= log_dt.size();
    my /= log_err.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < log_dt.size(); ++i) {
      num += (log_dt[i] - mx) * (log_err[i] - my);
      den += (log_dt[i] - mx) * (log_dt[i] - mx);
    }
    const double slope = num / den;
    add("trotter_order2_slope", std::abs(slope - 2.0), 0.3,
        "slope=" + fmt(slope));
  }

  return report;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_config_file: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  auto parse_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
  };
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "n") cfg.n = std::stoi(val);
    else if (key == "deltas") {
      cfg.deltas.clear();
      for (const std::string& d : parse_list(val))
        cfg.deltas.push_back(std::stod(d));
    } else if (key == "beta") cfg.beta = std::stod(val);
    else if (key == "t_max") cfg.t_max = std::stod(val);
    else if (key == "n_points") cfg.n_points = std::stoi(val);
    else if (key == "shots") cfg.shots = std::stol(val);
    else if (key == "reps") cfg.reps = std::stoi(val);
    else if (key == "protocols") cfg.protocols = parse_list(val);
    else if (key == "theta") cfg.theta = std::stod(val);
    else if (key == "phis") {
      const auto items = parse_list(val);
      if (items.size() != 4)
        throw std::runtime_error("config: phis needs 4 values");
      for (int i = 0; i < 4; ++i) cfg.phis[i] = std::stod(items[i]);
    } else if (key == "gibbs_mode") cfg.gibbs_mode = val;
    else if (key == "evolution_mode") {
      if (val == "exact-gate") cfg.evolution.mode = EvolutionMode::ExactGate;
      else if (val == "trotter") cfg.evolution.mode = EvolutionMode::Trotter;
      else throw std::runtime_error("config: unknown evolution_mode " + val);
    } else if (key == "trotter_order") cfg.evolution.trotter.order = std::stoi(val);
    else if (key == "trotter_steps_per_unit")
      cfg.evolution.trotter.steps_per_unit = std::stoi(val);
    else if (key == "master_seed") cfg.master_seed = std::stoull(val);
    else if (key == "output_path") cfg.output_path = val;
    else throw std::runtime_error("config: unknown key " + key);
  }
  cfg.check();
  return cfg;
}

}  // namespace otoc

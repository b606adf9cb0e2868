// leadlag: command-line front end for the lead-lag rough path library.
//
// Subcommands: simulate, leadlag, lift, pvar, ode, experiment.
// Exit codes: 0 success, 2 validation error (bad flags, bad files),
// 1 runtime error.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leadlag/experiments.hpp"
#include "leadlag/leadlag_path.hpp"
#include "leadlag/rde.hpp"
#include "leadlag/roughlift.hpp"
#include "leadlag/timeseries.hpp"
#include "leadlag/version.hpp"

namespace {

using namespace leadlag;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("LEADLAG_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw invalid_input("LEADLAG_SEED is not an unsigned integer");
    }
    return static_cast<std::uint64_t>(v);
  }
  return 12345;
}

SimKind parse_kind(const std::string& kind) {
  if (kind == "brownian") return SimKind::brownian;
  if (kind == "brownian_drift") return SimKind::brownian_plus_drift;
  if (kind == "linear_t" || kind == "sin_t") return SimKind::deterministic_fn;
  throw invalid_input("--kind must be brownian, brownian_drift, linear_t or sin_t");
}

SampledSeries load_series(const std::string& path, int n) {
  SampledSeries s = load_csv(path);
  if (n > 0) s = restrict(s, uniform_partition(n));
  return s;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw invalid_input(key + ": bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw invalid_input(key + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') {
      throw invalid_input(key + ": bad number '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw invalid_input(key + ": empty list");
  return out;
}

// key=value configuration file; '#' starts a comment.  Flags win over file
// values, so this only fills fields the command line left untouched.
void apply_config_file(const std::string& path, ExperimentConfig& cfg,
                       const std::vector<std::string>& flags_set) {
  std::ifstream f(path);
  if (!f) throw invalid_input("config file not found: " + path);
  auto overridden = [&](const std::string& key) {
    for (const auto& k : flags_set) {
      if (k == key) return true;
    }
    return false;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw invalid_input("config line " + std::to_string(lineno) +
                          ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (overridden(key)) continue;
    if (key == "name") {
      cfg.name = value;
    } else if (key == "seed") {
      cfg.root_seed = std::strtoull(value.c_str(), nullptr, 10);
    } else if (key == "seeds") {
      cfg.seeds = std::stoi(value);
    } else if (key == "n_values") {
      cfg.n_values = parse_int_list(value, key);
    } else if (key == "p") {
      cfg.p = std::strtod(value.c_str(), nullptr);
    } else if (key == "qv_mode") {
      if (value != "analytic" && value != "realized") {
        throw invalid_input("config line " + std::to_string(lineno) +
                            ": qv_mode must be analytic or realized");
      }
      cfg.qv_mode = value == "analytic" ? QvMode::analytic : QvMode::realized;
    } else if (key == "kind") {
      cfg.kind = value;
    } else if (key == "dim") {
      cfg.dim = std::stoi(value);
    } else if (key == "drift_amplitude") {
      cfg.drift_amplitude = std::strtod(value.c_str(), nullptr);
    } else if (key == "fine_n") {
      cfg.fine_n = std::stoi(value);
    } else if (key == "alpha") {
      cfg.alpha = std::strtod(value.c_str(), nullptr);
    } else if (key == "deltas") {
      cfg.deltas = parse_double_list(value, key);
    } else if (key == "counter_ns") {
      cfg.counter_ns = parse_int_list(value, key);
    } else if (key == "field") {
      cfg.field = value;
    } else if (key == "y0") {
      cfg.y0 = std::strtod(value.c_str(), nullptr);
    } else if (key == "outdir") {
      cfg.outdir = value;
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else {
      throw invalid_input("config line " + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
    }
  }
}

void print_config(const std::string& sub, const std::vector<std::string>& kvs) {
  std::cout << "config: subcommand=" << sub;
  for (const auto& item : kvs) std::cout << " " << item;
  std::cout << "\n";
}

std::string kv(const std::string& key, const std::string& value) {
  return key + "=" + value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lead-lag rough path toolkit: build Hoff paths from sampled "
               "series, lift them to level-2 rough paths, solve lead-lag "
               "random ODEs and run convergence experiments",
               "leadlag"};
  app.set_version_flag("--version", std::string("leadlag ") + leadlag::kVersion);
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  std::string out;
  app.add_option("--seed", seed_flag, "root seed (default: LEADLAG_SEED or 12345)");
  app.add_option("--out", out, "output file or directory");
  app.fallthrough();

  auto* sim = app.add_subcommand("simulate", "simulate a series and write it as CSV");
  std::string sim_kind = "brownian";
  int sim_dim = 1;
  int sim_n = 1 << 10;
  double sim_drift = 1.0;
  sim->add_option("--kind", sim_kind, "brownian | brownian_drift | linear_t | sin_t");
  sim->add_option("--dim", sim_dim, "signal dimension d")->check(CLI::PositiveNumber);
  sim->add_option("--n", sim_n, "uniform grid resolution")->check(CLI::PositiveNumber);
  sim->add_option("--drift", sim_drift, "drift amplitude for brownian_drift");

  auto* ll = app.add_subcommand("leadlag", "build the Hoff lead-lag path from a CSV series");
  std::string ll_in;
  int ll_n = 0;
  int ll_samples = 0;
  ll->add_option("--in", ll_in, "input series CSV")->required();
  ll->add_option("--n", ll_n, "restrict to the uniform n-partition first (0 = keep)");
  ll->add_option("--samples", ll_samples, "output rows (0 = exact breakpoints)");

  auto* lf = app.add_subcommand("lift", "lift the Hoff path to a level-2 skeleton CSV");
  std::string lf_in;
  int lf_n = 0;
  double lf_p = 2.5;
  lf->add_option("--in", lf_in, "input series CSV")->required();
  lf->add_option("--n", lf_n, "restrict to the uniform n-partition first (0 = keep)");
  lf->add_option("--p", lf_p, "p-variation exponent to report");

  auto* pv = app.add_subcommand("pvar", "p-variation distance between two skeleton CSVs");
  std::string pv_a, pv_b;
  double pv_p = 2.5;
  pv->add_option("--a", pv_a, "first skeleton CSV")->required();
  pv->add_option("--b", pv_b, "second skeleton CSV")->required();
  pv->add_option("--p", pv_p, "p-variation exponent");

  auto* ode = app.add_subcommand("ode", "solve the lead-lag random ODE dY = f(X^b) dX^f");
  std::string ode_in;
  int ode_n = 0;
  std::string ode_field = "linear";
  double ode_y0 = 0.0;
  ode->add_option("--in", ode_in, "input series CSV (fine grid)")->required();
  ode->add_option("--n", ode_n, "sampling resolution for the Hoff driver (0 = keep)");
  ode->add_option("--field", ode_field, "const1 | linear | sin | tanhpoly");
  ode->add_option("--y0", ode_y0, "initial value");

  auto* ex = app.add_subcommand("experiment", "run a Monte Carlo experiment, write CSV + manifest");
  std::string ex_name;
  std::string ex_config;
  int ex_seeds = 0;
  std::string ex_nvals;
  std::string ex_kind;
  std::string ex_field;
  int ex_fine = 0;
  int ex_threads = 0;
  ex->add_option("--name", ex_name,
                 "hoff_convergence | pointwise_rate | ito_recovery | holder_blowup | tightness_probe");
  ex->add_option("--config", ex_config, "key=value config file (flags win)");
  ex->add_option("--seeds", ex_seeds, "Monte Carlo seed count");
  ex->add_option("--n-values", ex_nvals, "comma-separated sampling resolutions");
  ex->add_option("--kind", ex_kind, "signal kind override");
  ex->add_option("--field", ex_field, "vector field override");
  ex->add_option("--fine-n", ex_fine, "fine grid resolution override");
  ex->add_option("--threads", ex_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);

    if (sim->parsed()) {
      if (out.empty()) throw invalid_input("simulate: --out is required");
      SimSpec spec;
      spec.kind = parse_kind(sim_kind);
      spec.dim = sim_dim;
      spec.seed = seed;
      spec.fine_grid = uniform_partition(sim_n);
      if (sim_kind == "brownian_drift") spec.drift_amplitude = sim_drift;
      if (sim_kind == "linear_t") {
        const int d = sim_dim;
        spec.fn = [d](double t) { return std::vector<double>(d, t); };
      } else if (sim_kind == "sin_t") {
        const int d = sim_dim;
        spec.fn = [d](double t) {
          std::vector<double> v(d);
          for (int c = 0; c < d; ++c) {
            const double w = 2.0 * 3.14159265358979323846 * (c + 1);
            v[c] = std::sin(w * t) / w;
          }
          return v;
        };
      }
      print_config("simulate", {kv("kind", sim_kind), kv("dim", std::to_string(sim_dim)),
                                kv("n", std::to_string(sim_n)),
                                kv("seed", std::to_string(seed)), kv("out", out)});
      save_csv(simulate(spec).series, out);
      std::cout << "wrote " << out << "\n";
    } else if (ll->parsed()) {
      if (out.empty()) throw invalid_input("leadlag: --out is required");
      print_config("leadlag", {kv("in", ll_in), kv("n", std::to_string(ll_n)),
                               kv("samples", std::to_string(ll_samples)), kv("out", out)});
      const SampledSeries s = load_series(ll_in, ll_n);
      save_hoff_csv(build_hoff(s), out, ll_samples);
      std::cout << "wrote " << out << "\n";
    } else if (lf->parsed()) {
      if (out.empty()) throw invalid_input("lift: --out is required");
      print_config("lift", {kv("in", lf_in), kv("n", std::to_string(lf_n)),
                            kv("p", format_double(lf_p)), kv("out", out)});
      const SampledSeries s = load_series(lf_in, lf_n);
      const GroupPathSkeleton skel = hoff_lift(s);
      const double pnorm = pvar_norm(skel, lf_p);
      save_skeleton_csv(skel, out);
      std::cout << "wrote " << out << "\n";
      std::cout << "pvar_norm(p=" << format_double(lf_p)
                << ") = " << format_double(pnorm) << "\n";
    } else if (pv->parsed()) {
      print_config("pvar", {kv("a", pv_a), kv("b", pv_b), kv("p", format_double(pv_p))});
      const GroupPathSkeleton a = load_skeleton_csv(pv_a);
      const GroupPathSkeleton b = load_skeleton_csv(pv_b);
      std::cout << "pvar_dist(p=" << format_double(pv_p)
                << ") = " << format_double(pvar_dist(a, b, pv_p)) << "\n";
    } else if (ode->parsed()) {
      print_config("ode", {kv("in", ode_in), kv("n", std::to_string(ode_n)),
                           kv("field", ode_field), kv("y0", format_double(ode_y0))});
      const SampledSeries fine = load_csv(ode_in);
      SampledSeries driver = fine;
      if (ode_n > 0) driver = restrict(fine, uniform_partition(ode_n));
      const VectorFieldSet f = make_builtin_field(ode_field);
      const OdeRun run = solve_leadlag_ode(build_hoff(driver), f, {ode_y0});
      const double ito = ito_integral(fine, f)[0] + ode_y0;
      const double strat = strat_integral(fine, f)[0] + ode_y0;
      std::cout << "Y1 = " << format_double(run.terminal()[0]) << "\n";
      std::cout << "ito_ref = " << format_double(ito) << "\n";
      std::cout << "strat_ref = " << format_double(strat) << "\n";
    } else if (ex->parsed()) {
      ExperimentConfig cfg;
      std::vector<std::string> given;
      if (!ex_name.empty()) given.push_back("name");
      if (ex_seeds > 0) given.push_back("seeds");
      if (!ex_nvals.empty()) given.push_back("n_values");
      if (!ex_kind.empty()) given.push_back("kind");
      if (!ex_field.empty()) given.push_back("field");
      if (ex_fine > 0) given.push_back("fine_n");
      if (ex_threads > 0) given.push_back("threads");
      if (seed_flag || std::getenv("LEADLAG_SEED")) given.push_back("seed");
      if (!out.empty()) given.push_back("outdir");

      cfg.root_seed = seed;
      if (!ex_name.empty()) cfg.name = ex_name;
      if (ex_seeds > 0) cfg.seeds = ex_seeds;
      if (!ex_nvals.empty()) cfg.n_values = parse_int_list(ex_nvals, "--n-values");
      if (!ex_kind.empty()) cfg.kind = ex_kind;
      if (!ex_field.empty()) cfg.field = ex_field;
      if (ex_fine > 0) cfg.fine_n = ex_fine;
      if (ex_threads > 0) cfg.threads = ex_threads;
      if (!out.empty()) cfg.outdir = out;
      if (!ex_config.empty()) apply_config_file(ex_config, cfg, given);
      if (cfg.outdir.empty()) cfg.outdir = ".";
      cfg = resolved_config(cfg);

      std::ostringstream nv;
      for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        nv << (i ? "," : "") << cfg.n_values[i];
      }
      print_config("experiment",
                   {kv("name", cfg.name), kv("seed", std::to_string(cfg.root_seed)),
                    kv("seeds", std::to_string(cfg.seeds)), kv("n_values", nv.str()),
                    kv("kind", cfg.kind), kv("field", cfg.field),
                    kv("fine_n", std::to_string(cfg.fine_n)),
                    kv("outdir", cfg.outdir)});
      const ExperimentResult res = run_experiment(cfg);
      write_experiment_outputs(cfg, res);
      std::cout << "wrote "
                << (std::filesystem::path(cfg.outdir) / (cfg.name + ".csv")).string()
                << "\n";
      std::cout << res.table.to_csv();
    }
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const write_error& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "nlscd/cli.hpp"

#include "nlscd/report.hpp"
#include "nlscd/solver.hpp"
#include "nlscd/spectral.hpp"
#include "nlscd/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace nlscd::cli {

namespace {

using report::json;

struct RunConfig {
  std::string verb;
  double nu = -1.0;
  double alpha = 0.0;
  double p = 3.0;
  std::optional<double> mu;
  std::optional<double> omega;
  double lambda = 4.0;
  int count = 6;
  int samples = 100;
  bool cross_validate = false;
  grid::GridSpec grid{};
  solver::SolveConfig solve{};
  std::vector<std::string> only;
  std::string json_path;
  std::string csv_path;
  std::string config_path;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Options {
 public:
  Options(CLI::App* sub, RunConfig& rc) : sub_(sub), rc_(rc) {}

  template <class T>
  void add(const std::string& key, T& target, const std::string& help) {
    opts_[key] = sub_->add_option("--" + key, target, help);
  }
  void add_optional(const std::string& key, std::optional<double>& target, const std::string& help) {
    opts_[key] = sub_->add_option_function<double>("--" + key, [&target](const double& v) { target = v; }, help);
  }
  void add_flag(const std::string& key, bool& target, const std::string& help) {
    opts_[key] = sub_->add_flag("--" + key, target, help);
  }

  void track(const std::string& key, CLI::Option* opt) { opts_[key] = opt; }

  bool given(const std::string& key) const {
    auto it = opts_.find(key);
    return it != opts_.end() && it->second->count() > 0;
  }

  // File values fill every option not given on the command line.
  void apply_config(const json& cfg) {
    std::set<std::string> known;
    for (const auto& [k, o] : opts_) known.insert(k);
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
      const std::string& k = it.key();
      if (!known.count(k)) throw std::invalid_argument("config file: unknown key '" + k + "'");
      if (given(k)) continue;
      const json& v = it.value();
      if (k == "mu") rc_.mu = v.get<double>();
      else if (k == "omega") rc_.omega = v.get<double>();
      else if (k == "nu") rc_.nu = v.get<double>();
      else if (k == "alpha") rc_.alpha = v.get<double>();
      else if (k == "p") rc_.p = v.get<double>();
      else if (k == "lambda") rc_.lambda = v.get<double>();
      else if (k == "nodes") rc_.grid.nodes = v.get<int>();
      else if (k == "rmin") rc_.grid.r_min = v.get<double>();
      else if (k == "rmax") rc_.grid.r_max = v.get<double>();
      else if (k == "restarts") rc_.solve.restarts = v.get<int>();
      else if (k == "seed") rc_.solve.seed = v.get<std::uint64_t>();
      else if (k == "tol") rc_.solve.grad_tol = v.get<double>();
      else if (k == "count") rc_.count = v.get<int>();
      else if (k == "samples") rc_.samples = v.get<int>();
      else if (k == "only") rc_.only = v.get<std::vector<std::string>>();
      else if (k == "json") rc_.json_path = v.get<std::string>();
      else if (k == "csv") rc_.csv_path = v.get<std::string>();
      else if (k == "cross-validate") rc_.cross_validate = v.get<bool>();
      else if (k == "config") throw std::invalid_argument("config file: nested 'config' is not allowed");
    }
  }

 private:
  CLI::App* sub_;
  RunConfig& rc_;
  std::map<std::string, CLI::Option*> opts_;
};

void add_phys(Options& o, RunConfig& rc, bool with_p) {
  o.add("nu", rc.nu, "Coulomb charge nu");
  o.add("alpha", rc.alpha, "point-interaction strength alpha");
  if (with_p) o.add("p", rc.p, "nonlinearity power p");
}

void add_grid(Options& o, RunConfig& rc) {
  o.add("nodes", rc.grid.nodes, "radial nodes");
  o.add("rmin", rc.grid.r_min, "smallest radius");
  o.add("rmax", rc.grid.r_max, "outer radius");
}

void add_solve(Options& o, RunConfig& rc) {
  o.add("restarts", rc.solve.restarts, "independent restarts (>= 3)");
  o.add("seed", rc.solve.seed, "base RNG seed");
  o.add("tol", rc.solve.grad_tol, "projected-gradient tolerance");
}

void add_output(Options& o, RunConfig& rc, bool csv) {
  o.add("json", rc.json_path, "JSON report path (default stdout)");
  if (csv) o.add("csv", rc.csv_path, "CSV profile path");
  o.add("config", rc.config_path, "JSON file with default values for these flags");
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + path);
  f << text;
}

spectral::PhysParams phys(const RunConfig& rc) {
  if (rc.mu && rc.omega) throw std::invalid_argument("give exactly one of --mu and --omega");
  if (rc.omega) return spectral::PhysParams::frequency(rc.nu, rc.alpha, rc.p, *rc.omega);
  return spectral::PhysParams::mass(rc.nu, rc.alpha, rc.p, rc.mu.value_or(1.0));
}

json params_block(const RunConfig& rc, const spectral::PhysParams& pp, bool solver_part) {
  json j = report::params_json(pp);
  j["grid"] = report::grid_json(rc.grid);
  if (solver_part) j["solve"] = report::solve_json(rc.solve);
  return j;
}

int run_spectrum(const RunConfig& rc, std::ostream& out) {
  if (rc.count < 1) throw std::invalid_argument("--count must be positive");
  spectral::PhysParams pp = spectral::PhysParams::mass(rc.nu, rc.alpha, 3.0, 1.0);
  if (!(rc.nu < 0.0)) throw std::invalid_argument("spectrum requires nu < 0 (attractive Coulomb charge)");
  auto rep = spectral::eigenvalue_ladder(pp, rc.count, rc.solve.specfun);
  json params{{"nu", rc.nu}, {"alpha", rc.alpha}, {"count", rc.count}};
  json cites = json::array({"eigenvalue condition alpha + theta_{-E,nu} = 0",
                            "Friedrichs eigenvalues -nu^2/(1+2n)^2", "omega_nu: bottom of the spectrum"});
  write_text(rc.json_path,
             report::dump(report::envelope("spectrum", params, report::spectrum_results(rep),
                                           report::spectrum_diagnostics(rep), cites)),
             out);
  return rep.all_converged ? ok : not_converged;
}

int run_solve(const RunConfig& rc, bool action_mode, std::ostream& out) {
  if (action_mode && !rc.omega) throw std::invalid_argument("actionmin requires --omega");
  if (!action_mode && rc.omega) throw std::invalid_argument("groundstate works at fixed mass; use --mu");
  spectral::PhysParams pp = phys(rc);
  if (action_mode)
    pp.validate_for_action();
  else
    pp.validate_for_energy();
  rc.grid.validate();
  rc.solve.validate();

  auto rep = action_mode ? solver::minimize_action(pp, rc.grid, rc.solve)
                         : solver::minimize_energy(pp, rc.grid, rc.solve);
  json results = report::ground_state_results(rep);
  json diag = report::ground_state_diagnostics(rep);
  bool cv_ok = true;
  if (!action_mode && rc.cross_validate && rep.state) {
    auto cv = solver::cross_validate(rep, pp, rc.grid, rc.solve);
    results["cross_validation"] = report::cross_validation_json(cv);
    cv_ok = cv.pass;
  }
  json cites = action_mode ? json::array({"action minimiser on the Nehari manifold", "d(omega) < d~(omega)",
                                          "boundary condition phi(0) = q (alpha + theta)"})
                           : json::array({"ground state at fixed mass", "F(mu) < E(mu) < 0",
                                          "2F(u) - (p-2)/p ||u||_p^p = -omega ||u||^2",
                                          "boundary condition phi(0) = q (alpha + theta)"});
  write_text(rc.json_path,
             report::dump(report::envelope(action_mode ? "actionmin" : "groundstate", params_block(rc, pp, true),
                                           results, diag, cites)),
             out);
  if (!rc.csv_path.empty() && rep.state) {
    std::ostringstream csv;
    report::write_profile_csv(csv, *rep.state);
    write_text(rc.csv_path, csv.str(), out);
  }
  return rep.converged && cv_ok ? ok : not_converged;
}

int run_verify(const RunConfig& rc, std::ostream& out) {
  verify::VerifyConfig vc;
  vc.seed = rc.solve.seed;
  vc.samples = rc.samples;
  vc.only = rc.only;
  vc.grid = rc.grid;
  vc.solve = rc.solve;
  rc.grid.validate();
  rc.solve.validate();
  auto rep = verify::run_all(vc);
  json cites = json::array();
  std::set<std::string> seen;
  for (const auto& c : rep.results)
    if (seen.insert(c.citation).second) cites.push_back(c.citation);
  json params{{"seed", rc.solve.seed}, {"samples", rc.samples}, {"only", rc.only}, {"grid", report::grid_json(rc.grid)}};
  write_text(rc.json_path,
             report::dump(report::envelope("verify", params, report::verify_results(rep),
                                           report::verify_diagnostics(rep), cites)),
             out);
  return rep.pass ? ok : verify_failed;
}

int run_kernel_dump(const RunConfig& rc, std::ostream& out) {
  specfun::GreenParams gp(rc.lambda, rc.nu);
  gp.require_admissible();
  rc.grid.validate();
  grid::RadialGrid g(rc.grid);
  std::ostringstream csv;
  report::write_kernel_csv(csv, gp, g, rc.solve.specfun);
  if (!rc.json_path.empty()) {
    auto n = specfun::green_norm(gp, 2.0, g, rc.solve.specfun);
    json params{{"lambda", rc.lambda}, {"nu", rc.nu}, {"grid", report::grid_json(rc.grid)}};
    json results{{"a", gp.a()},
                 {"wronskian", specfun::kernel_wronskian(gp, rc.solve.specfun)},
                 {"green_l2_norm_sq", n.value},
                 {"green_l2_error_estimate", n.error_estimate}};
    json diag{{"tail_fraction", n.tail_fraction}, {"tail_warning", n.tail_warning}};
    write_text(rc.json_path,
               report::dump(report::envelope("kernel-dump", params, results, diag,
                                             json::array({"integral representation of G_{lambda,nu}"}))),
               out);
  }
  write_text(rc.csv_path, csv.str(), out);
  return ok;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Radial NLS solver in the plane: Coulomb 1/r term plus a delta interaction (dimensionless units)",
               "nlscd"};
  app.require_subcommand(1);

  std::map<std::string, std::unique_ptr<Options>> opts;
  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    opts[name] = std::make_unique<Options>(s, rc);
    return std::pair{s, opts[name].get()};
  };

  {
    auto [s, o] = make("spectrum", "omega_nu and the eigenvalue ladder");
    add_phys(*o, rc, false);
    o->add("count", rc.count, "number of eigenvalues");
    add_output(*o, rc, false);
  }
  {
    auto [s, o] = make("groundstate", "ground state at fixed mass");
    add_phys(*o, rc, true);
    o->add_optional("mu", rc.mu, "mass ||u||^2");
    o->add_optional("omega", rc.omega, "(not valid here)");
    add_grid(*o, rc);
    add_solve(*o, rc);
    o->add_flag("cross-validate", rc.cross_validate, "re-solve in action mode at the multiplier");
    add_output(*o, rc, true);
  }
  {
    auto [s, o] = make("actionmin", "action minimiser at fixed frequency");
    add_phys(*o, rc, true);
    o->add_optional("omega", rc.omega, "frequency omega > omega_nu");
    o->add_optional("mu", rc.mu, "(not valid here)");
    add_grid(*o, rc);
    add_solve(*o, rc);
    add_output(*o, rc, true);
  }
  {
    auto [s, o] = make("verify", "run the inequality suite");
    add_grid(*o, rc);
    add_solve(*o, rc);
    o->add("samples", rc.samples, "random samples per check");
    o->track("only", s->add_option("--only", rc.only, "check names or groups")->delimiter(','));
    add_output(*o, rc, false);
  }
  {
    auto [s, o] = make("kernel-dump", "CSV of r, G, Phi, F");
    o->add("nu", rc.nu, "Coulomb charge nu");
    o->add("lambda", rc.lambda, "spectral shift lambda");
    add_grid(*o, rc);
    add_output(*o, rc, true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return validation_error;
  }

  CLI::App* sub = app.get_subcommands().front();
  rc.verb = sub->get_name();
  try {
    if (!rc.config_path.empty()) {
      std::ifstream f(rc.config_path);
      if (!f) throw std::invalid_argument("cannot read config file " + rc.config_path);
      json cfg;
      try {
        cfg = json::parse(f);
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config file: ") + e.what());
      }
      if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
      try {
        opts.at(rc.verb)->apply_config(cfg);
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config file: ") + e.what());
      }
    }
    if (rc.verb == "spectrum") return run_spectrum(rc, out);
    if (rc.verb == "groundstate") return run_solve(rc, false, out);
    if (rc.verb == "actionmin") return run_solve(rc, true, out);
    if (rc.verb == "verify") return run_verify(rc, out);
    return run_kernel_dump(rc, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return not_converged;
  }
}

}  // namespace nlscd::cli

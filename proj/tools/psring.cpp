// psring: command-line front end for the positronium ring-model library.
//
//   psring scan        --model ring-ml --rmin 1e-6 --rmax 1e-4 --points 400
//   psring minimize    --model coulomb
//   psring tune        --model ring-bltp --target 0
//   psring flux-solve  --kappa 1.8e5
//   psring variational --R 2.661639e-5
//   psring reproduce   [--json]
//
// Exit codes: 0 ok, 1 acceptance failure, 2 usage or validation error,
// 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psring/errors.hpp"
#include "psring/flux.hpp"
#include "psring/models.hpp"
#include "psring/reproduce.hpp"
#include "psring/variational.hpp"

using namespace psring;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr double kDefaultBltpR = 2.57e-5;
constexpr double kDefaultBltpKappa = 1.8e5;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string model = "coulomb";
  int n = 1;
  double alpha = kAlphaDefault;
  double R = 0.0;
  double R_over_alpha2 = 0.0;
  double R_coeff = 0.0;
  double kappa = 0.0;
  int k = 1;
  double rmin = 0.0;
  double rmax = 0.0;
  std::size_t points = 400;
  bool log = false;
  bool linear = false;
  std::size_t points_per_decade = 40;
  double x_tol = 1e-10;
  double target = 0.0;
  double a = 0.0;
  double amin = 1e-7;
  double amax = 1e4;
  std::size_t a_points_per_decade = 20;
  std::string format;
  std::string output;
  bool no_timing = false;
  bool json = false;
  double ring_coefficient = kTunedRingCoefficient;
};

struct Given {
  CLI::Option* R;
  CLI::Option* R_over_alpha2;
  CLI::Option* R_coeff;
  CLI::Option* kappa;
  CLI::Option* k;
  CLI::Option* rmin;
  CLI::Option* rmax;
  CLI::Option* a;
  CLI::Option* format;

  static bool set(const CLI::Option* o) { return o->count() > 0; }
};

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw UsageError(message);
  }
}

Json encode(double x) {
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// --- model resolution -------------------------------------------------------

struct ResolvedModel {
  PotentialModel model;
  Json echo;
};

double ring_radius(const RunConfig& c, const Given& g, int power, double fallback,
                   bool scaling = false) {
  const int given = Given::set(g.R) + Given::set(g.R_over_alpha2) + Given::set(g.R_coeff);
  require(given <= 1, "--R, --R-over-alpha2 and --R-coeff are mutually exclusive");
  if (Given::set(g.R)) {
    require(c.R > 0.0 && std::isfinite(c.R), "--R must be positive");
    return c.R;
  }
  if (Given::set(g.R_over_alpha2)) {
    require(!scaling, "--R-over-alpha2 applies to ring-ml and ring-bltp; use --R-coeff for scaling");
    require(c.R_over_alpha2 > 0.0, "--R-over-alpha2 must be positive");
    return c.R_over_alpha2 * c.alpha * c.alpha;
  }
  if (Given::set(g.R_coeff)) {
    require(c.R_coeff > 0.0, "--R-coeff must be positive");
    return c.R_coeff * std::pow(c.alpha, power);
  }
  return fallback;
}

ResolvedModel resolve_model(const RunConfig& c, const Given& g) {
  require(c.alpha > 0.0 && c.alpha < 1.0, "--alpha must lie in (0, 1)");
  require(c.n >= 1, "--n must be >= 1");
  const PhysicalConfig cfg{c.alpha, c.n};
  Json echo{{"model", c.model}, {"n", c.n}, {"alpha", c.alpha}};

  if (c.model == "coulomb" || c.model == "dipole") {
    require(!Given::set(g.R) && !Given::set(g.R_over_alpha2) && !Given::set(g.R_coeff) &&
                !Given::set(g.kappa),
            "--R/--kappa do not apply to --model " + c.model);
    if (c.model == "coulomb") {
      return {{CoulombPoint{}, cfg}, echo};
    }
    return {{CoulombDipole{}, cfg}, echo};
  }
  if (c.model == "ring-ml") {
    require(!Given::set(g.kappa), "--kappa applies only to --model ring-bltp");
    require(!Given::set(g.k), "--k applies only to --model scaling");
    const double R = ring_radius(c, g, 2, kTunedRingCoefficient * c.alpha * c.alpha);
    echo["R"] = R;
    echo["R_over_alpha2"] = R / (c.alpha * c.alpha);
    return {{RingML{{R, {}}}, cfg}, echo};
  }
  if (c.model == "ring-bltp") {
    require(!Given::set(g.k), "--k applies only to --model scaling");
    const double R = ring_radius(c, g, 2, kDefaultBltpR);
    const double kappa = Given::set(g.kappa) ? c.kappa : kDefaultBltpKappa;
    require(kappa > 0.0 && std::isfinite(kappa), "--kappa must be positive");
    echo["R"] = R;
    echo["R_over_alpha2"] = R / (c.alpha * c.alpha);
    echo["kappa"] = kappa;
    return {{RingBLTP{{R, kappa}}, cfg}, echo};
  }
  if (c.model == "scaling") {
    require(!Given::set(g.kappa), "--kappa applies only to --model ring-bltp");
    require(c.k >= 0 && c.k <= 3, "--k must be in {0,1,2,3}");
    const int power = 1 + c.k;
    const double R =
        ring_radius(c, g, power, kTunedRingCoefficient * std::pow(c.alpha, power), true);
    echo["k"] = c.k;
    echo["R"] = R;
    echo["R_coeff"] = R / std::pow(c.alpha, power);
    return {{ScalingLaw{c.k, {R, {}}}, cfg}, echo};
  }
  throw UsageError("--model must be one of coulomb, dipole, ring-ml, ring-bltp, scaling; got " +
                   c.model);
}

std::pair<double, double> default_range(const PotentialModel& m, bool full) {
  if (std::holds_alternative<CoulombPoint>(m.variant) ||
      std::holds_alternative<CoulombDipole>(m.variant)) {
    return {kCoulombMin, kCoulombMax};
  }
  return full ? std::pair{kBiotSavartMin, kCoulombMax} : std::pair{kBiotSavartMin, kBiotSavartMax};
}

std::pair<double, double> resolve_range(const RunConfig& c, const Given& g,
                                        std::pair<double, double> fallback) {
  const double lo = Given::set(g.rmin) ? c.rmin : fallback.first;
  const double hi = Given::set(g.rmax) ? c.rmax : fallback.second;
  require(lo > 0.0 && std::isfinite(lo), "--rmin must be positive");
  require(hi > lo && std::isfinite(hi), "--rmin/--rmax: need rmin < rmax");
  return {lo, hi};
}

// --- output -----------------------------------------------------------------

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw UsageError("--output: cannot open " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

Json point_json(const StationaryPoint& p) {
  return Json{{"r_star", encode(p.r_star)},
              {"v_star", encode(p.v_star)},
              {"kind", std::string(to_string(p.kind))},
              {"bracket", Json::array({p.bracket.lo, p.bracket.mid, p.bracket.hi})}};
}

Json envelope(const std::string& command, Json parameters, Json results) {
  return Json{{"tool", "psring"},
              {"version", PSRING_VERSION},
              {"command", command},
              {"parameters", std::move(parameters)},
              {"results", std::move(results)}};
}

void emit(const RunConfig& c, Json env, double seconds) {
  if (!c.no_timing) {
    env["metadata"] = Json{{"elapsed_seconds", seconds}};
  }
  Output out(c.output);
  out.stream() << env.dump(2) << '\n';
}

void require_json(const RunConfig& c, const std::string& verb) {
  require(c.format.empty() || c.format == "json", "--format: " + verb + " writes json only");
}

// --- verbs ------------------------------------------------------------------

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int cmd_scan(const RunConfig& c, const Given& g) {
  const auto t0 = Clock::now();
  const std::string format = c.format.empty() ? "csv" : c.format;
  require(format == "csv" || format == "json", "--format must be csv or json");
  require(!(c.log && c.linear), "--log and --linear are mutually exclusive");
  require(c.points >= 2, "--points must be >= 2");
  auto [model, echo] = resolve_model(c, g);
  const auto [lo, hi] = resolve_range(c, g, default_range(model, false));
  const Spacing spacing = c.linear ? Spacing::linear : Spacing::log;
  const auto curve = sample_curve(model, lo, hi, c.points, spacing);

  if (format == "csv") {
    Output out(c.output);
    auto& s = out.stream();
    s << "r,V\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      s << csv_number(curve.grid[i]) << ',' << csv_number(curve.values[i]) << '\n';
    }
    return kExitOk;
  }
  echo["rmin"] = lo;
  echo["rmax"] = hi;
  echo["points"] = c.points;
  echo["spacing"] = c.linear ? "linear" : "log";
  Json results{{"r", curve.grid}, {"V", curve.values}};
  emit(c, envelope("scan", echo, results), since(t0));
  return kExitOk;
}

int cmd_minimize(const RunConfig& c, const Given& g) {
  const auto t0 = Clock::now();
  require_json(c, "minimize");
  require(c.points_per_decade >= 10, "--ppd must be >= 10");
  require(c.x_tol > 0.0, "--x-tol must be positive");
  auto [model, echo] = resolve_model(c, g);
  const auto [lo, hi] = resolve_range(c, g, default_range(model, true));
  const auto minima = model_minima(model, lo, hi, c.points_per_decade, {c.x_tol, true});
  echo["rmin"] = lo;
  echo["rmax"] = hi;
  echo["ppd"] = c.points_per_decade;
  echo["x_tol"] = c.x_tol;
  Json list = Json::array();
  for (const auto& m : minima) {
    list.push_back(point_json(m));
  }
  emit(c, envelope("minimize", echo, Json{{"minima", list}}), since(t0));
  return kExitOk;
}

// 11 significant digits, then the last one dropped.
double dropped_digit(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  std::string s(buf);
  const auto e = s.find('e');
  s = s.substr(0, e - 1) + s.substr(e);
  return std::stod(s);
}

Json probe_json(double value, const std::optional<StationaryPoint>& m) {
  Json j{{"value", value}};
  if (m) {
    j["v_star"] = m->v_star;
    j["sign"] = m->v_star < 0.0 ? "negative" : (m->v_star > 0.0 ? "positive" : "zero");
  } else {
    j["v_star"] = nullptr;
    j["sign"] = "no minimum";
  }
  return j;
}

int cmd_tune(const RunConfig& c, const Given& g) {
  const auto t0 = Clock::now();
  require_json(c, "tune");
  require(c.alpha > 0.0 && c.alpha < 1.0, "--alpha must lie in (0, 1)");
  require(!Given::set(g.R) && !Given::set(g.R_over_alpha2) && !Given::set(g.R_coeff),
          "tune determines R; do not pass --R, --R-over-alpha2 or --R-coeff");
  require(std::isfinite(c.target), "--target must be finite");
  const PhysicalConfig cfg{c.alpha, 1};
  Json echo{{"model", c.model}, {"n", 1}, {"alpha", c.alpha}, {"target", c.target}};

  if (c.model == "ring-ml" || c.model == "scaling") {
    const int k = c.model == "ring-ml" ? 1 : c.k;
    require(c.model == "scaling" || !Given::set(g.k), "--k applies only to --model scaling");
    require(k >= 0 && k <= 3, "--k must be in {0,1,2,3}");
    if (c.model == "scaling") {
      echo["k"] = k;
    }
    RingTuneOptions opts;
    opts.points_per_decade = c.points_per_decade;
    opts.x_tol = c.x_tol;
    echo["ppd"] = opts.points_per_decade;
    echo["x_tol"] = opts.x_tol;
    const auto t = tune_ring_radius({k}, cfg, c.target, opts);
    const double scale = std::pow(c.alpha, 1 + k);
    const double probe = dropped_digit(t.coefficient);
    const PotentialModel probe_model =
        k == 1 ? PotentialModel{RingML{{probe * scale, {}}}, cfg}
               : PotentialModel{ScalingLaw{k, {probe * scale, {}}}, cfg};
    const auto probe_min = biot_savart_minimum(probe_model, opts.points_per_decade, opts.x_tol);
    Json results{{"R", t.R},
                 {"R_coeff", t.coefficient},
                 {"R_coeff_power", 1 + k},
                 {"minimum", point_json(t.minimum)},
                 {"residual", t.residual},
                 {"dropped_digit_probe", probe_json(probe, probe_min)}};
    emit(c, envelope("tune", echo, results), since(t0));
    return kExitOk;
  }
  if (c.model == "ring-bltp") {
    require(!Given::set(g.kappa), "tune determines kappa; do not pass --kappa");
    BltpTuneOptions opts;
    opts.points_per_decade = c.points_per_decade;
    opts.x_tol = c.x_tol;
    echo["ppd"] = opts.points_per_decade;
    echo["x_tol"] = opts.x_tol;
    const auto t = tune_bltp(c.alpha, c.target, opts);
    const double probe = dropped_digit(t.flux.R);
    const auto probe_min =
        bltp_biot_savart_minimum({probe, t.flux.kappa}, cfg, opts.points_per_decade, opts.x_tol);
    Json results{{"kappa", t.flux.kappa},
                 {"R", t.flux.R},
                 {"kappa_R", t.u},
                 {"flux_residual", t.flux.residual},
                 {"minimum", point_json(t.minimum)},
                 {"residual", t.minimum.v_star - c.target},
                 {"dropped_digit_probe", probe_json(probe, probe_min)}};
    emit(c, envelope("tune", echo, results), since(t0));
    return kExitOk;
  }
  throw UsageError("--model: tune supports ring-ml, ring-bltp and scaling; got " + c.model);
}

int cmd_flux_solve(const RunConfig& c, const Given& g) {
  const auto t0 = Clock::now();
  require_json(c, "flux-solve");
  require(Given::set(g.kappa), "--kappa is required");
  require(c.kappa > 0.0 && std::isfinite(c.kappa), "--kappa must be positive");
  require(c.alpha > 0.0 && c.alpha < 1.0, "--alpha must lie in (0, 1)");
  const auto s = solve_R_given_kappa(c.kappa, c.alpha);
  Json echo{{"kappa", c.kappa}, {"alpha", c.alpha}};
  Json results{{"kappa", s.kappa}, {"R", s.R}, {"kappa_R", s.kappa * s.R}, {"residual", s.residual}};
  emit(c, envelope("flux-solve", echo, results), since(t0));
  return kExitOk;
}

Json variational_json(const VariationalResult& v) {
  return Json{{"a_star", v.a_star},
              {"kinetic", v.kinetic},
              {"potential", v.potential},
              {"energy", v.energy},
              {"kind", std::string(to_string(v.kind))}};
}

int cmd_variational(const RunConfig& c, const Given& g) {
  const auto t0 = Clock::now();
  require_json(c, "variational");
  require(Given::set(g.R), "--R is required");
  require(c.R > 0.0 && std::isfinite(c.R), "--R must be positive");
  require(c.alpha > 0.0 && c.alpha < 1.0, "--alpha must lie in (0, 1)");
  const PhysicalConfig cfg{c.alpha, 1};
  Json echo{{"R", c.R}, {"alpha", c.alpha}};

  if (Given::set(g.a)) {
    require(c.a > 0.0 && std::isfinite(c.a), "--a must be positive");
    echo["a"] = c.a;
    auto v = evaluate_trial(TrialScale(c.a), c.R, cfg);
    Json results{{"trial", variational_json(v)}};
    results["trial"].erase("kind");
    emit(c, envelope("variational", echo, results), since(t0));
    return kExitOk;
  }
  require(c.amin > 0.0 && c.amax > c.amin, "--amin/--amax: need 0 < amin < amax");
  require(c.a_points_per_decade >= 10, "--a-ppd must be >= 10");
  echo["amin"] = c.amin;
  echo["amax"] = c.amax;
  echo["a_ppd"] = c.a_points_per_decade;
  echo["x_tol"] = c.x_tol;
  VariationalOptions opts;
  opts.points_per_decade = c.a_points_per_decade;
  opts.x_tol = c.x_tol;
  const auto results = minimize_over_a(c.R, c.amin, c.amax, cfg, opts);

  const auto grid = log_grid_per_decade(c.amin, c.amax, c.a_points_per_decade);
  const auto values = evaluate_on_grid(
      [&](double a) { return energy_expectation(TrialScale(a), c.R, cfg); }, grid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) {
      best = i;
    }
  }
  Json list = Json::array();
  for (const auto& v : results) {
    list.push_back(variational_json(v));
  }
  Json payload{{"minima", list},
               {"scan_minimum", Json{{"a", grid[best]}, {"energy", values[best]}}}};
  emit(c, envelope("variational", echo, payload), since(t0));
  return kExitOk;
}

int cmd_reproduce(const RunConfig& c) {
  require(c.ring_coefficient > 0.0, "--ring-coefficient must be positive");
  ReproduceOptions opts;
  opts.ring_coefficient = c.ring_coefficient;
  const bool as_json = c.json || c.format == "json";
  require(c.format.empty() || c.format == "json", "--format: reproduce writes a table or json");
  const auto report = run_acceptance(opts);

  Output out(c.output);
  if (as_json) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      rows.push_back(Json{{"criterion", r.criterion},
                          {"check", r.check},
                          {"computed", encode(r.computed)},
                          {"reference", encode(r.reference)},
                          {"delta", encode(r.delta())},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass},
                          {"detail", r.detail}});
    }
    Json summary = Json::array();
    for (const auto& s : report.summary()) {
      summary.push_back(Json{{"criterion", s.id}, {"name", s.name}, {"pass", s.pass}});
    }
    Json env = envelope("reproduce", Json{{"ring_coefficient", c.ring_coefficient}},
                        Json{{"all_pass", report.all_pass()}, {"criteria", summary}, {"rows", rows}});
    if (!c.no_timing) {
      env["metadata"] = Json{{"elapsed_seconds", report.seconds}};
    }
    out.stream() << env.dump(2) << '\n';
  } else {
    print_table(out.stream(), report);
    out.stream() << '\n';
    print_summary(out.stream(), report);
  }
  return report.all_pass() ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective potentials, ring tuning and variational bounds for positronium"};
  app.set_version_flag("--version", std::string(PSRING_VERSION));
  app.set_config("--config", "", "key=value file; command-line flags override its values");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  RunConfig c;
  Given g{};
  auto* model_group = "Model";
  app.add_option("--model", c.model, "coulomb | dipole | ring-ml | ring-bltp | scaling")
      ->group(model_group);
  app.add_option("--n", c.n, "Bohr quantum number")->group(model_group);
  app.add_option("--alpha", c.alpha, "fine-structure constant")->group(model_group);
  g.R = app.add_option("--R", c.R, "ring radius (reduced Compton lengths)")->group(model_group);
  g.R_over_alpha2 = app.add_option("--R-over-alpha2", c.R_over_alpha2, "ring radius / alpha^2")
                        ->group(model_group);
  g.R_coeff = app.add_option("--R-coeff", c.R_coeff, "scaling model: ring radius / alpha^(1+k)")
                  ->group(model_group);
  g.kappa = app.add_option("--kappa", c.kappa, "Bopp inverse length (ring-bltp, flux-solve)")
                ->group(model_group);
  g.k = app.add_option("--k", c.k, "scaling-law exponent in {0,1,2,3}")->group(model_group);

  auto* grid_group = "Grid";
  g.rmin = app.add_option("--rmin", c.rmin, "lower end of the r range")->group(grid_group);
  g.rmax = app.add_option("--rmax", c.rmax, "upper end of the r range")->group(grid_group);
  app.add_option("--points", c.points, "scan: number of grid points")->group(grid_group);
  app.add_flag("--log", c.log, "scan: log spacing (default)")->group(grid_group);
  app.add_flag("--linear", c.linear, "scan: linear spacing")->group(grid_group);
  app.add_option("--ppd", c.points_per_decade, "minimum search: scan points per decade")
      ->group(grid_group);
  app.add_option("--x-tol", c.x_tol, "relative abscissa tolerance of minimizers")->group(grid_group);

  auto* other_group = "Other";
  app.add_option("--target", c.target, "tune: target minimum energy (mc^2)")->group(other_group);
  g.a = app.add_option("--a", c.a, "variational: evaluate a single trial scale")->group(other_group);
  app.add_option("--amin", c.amin, "variational: smallest trial scale")->group(other_group);
  app.add_option("--amax", c.amax, "variational: largest trial scale")->group(other_group);
  app.add_option("--a-ppd", c.a_points_per_decade, "variational: scan points per decade")
      ->group(other_group);
  app.add_option("--ring-coefficient", c.ring_coefficient,
                 "reproduce: reference R/alpha^2 (change it for a negative control)")
      ->group(other_group);
  g.format = app.add_option("--format", c.format, "csv | json")->group(other_group);
  app.add_option("--output,-o", c.output, "write to this file instead of stdout")->group(other_group);
  app.add_flag("--no-timing", c.no_timing, "omit run timing (byte-comparable output)")
      ->group(other_group);
  app.add_flag("--json", c.json, "reproduce: machine-readable report")->group(other_group);

  auto* scan = app.add_subcommand("scan", "sample V_n(r) on a grid (CSV r,V or JSON)")->fallthrough();
  auto* minimize = app.add_subcommand("minimize", "all local minima of V_n in a range")->fallthrough();
  auto* tune = app.add_subcommand("tune", "tune R (and kappa) so the tight minimum hits a target")
                   ->fallthrough();
  auto* flux = app.add_subcommand("flux-solve", "R on the flux constraint for given kappa")
                   ->fallthrough();
  auto* variational = app.add_subcommand("variational", "Rayleigh-Ritz bound over trial scales")
                          ->fallthrough();
  auto* reproduce = app.add_subcommand("reproduce", "run the acceptance suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (scan->parsed()) return cmd_scan(c, g);
    if (minimize->parsed()) return cmd_minimize(c, g);
    if (tune->parsed()) return cmd_tune(c, g);
    if (flux->parsed()) return cmd_flux_solve(c, g);
    if (variational->parsed()) return cmd_variational(c, g);
    if (reproduce->parsed()) return cmd_reproduce(c);
  } catch (const UsageError& e) {
    std::cerr << "psring: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "psring: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "psring: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

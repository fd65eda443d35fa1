#include "psring/models.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "format.hpp"
#include "psring/errors.hpp"
#include "psring/special_fns.hpp"

namespace psring {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_r(double r, const char* where) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(where) + ": separation must satisfy r > 0, got " +
                      detail::format_number(r));
  }
}

double magnetic_coupling(int k, double alpha) {
  return std::pow(alpha, 1 + 2 * k);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void PhysicalConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must satisfy 0 < alpha < 1, got " + detail::format_number(alpha));
  }
  if (n < 1) {
    throw DomainError("n must be >= 1, got " + detail::format_number(n));
  }
}

void RingParams::validate(bool needs_kappa) const {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw DomainError("ring radius R must be positive, got " + detail::format_number(R));
  }
  if (needs_kappa && !kappa) {
    throw DomainError("BLTP model needs kappa");
  }
  if (kappa && (!(*kappa > 0.0) || !std::isfinite(*kappa))) {
    throw DomainError("kappa must be positive, got " + detail::format_number(*kappa));
  }
}

void PotentialModel::validate() const {
  cfg.validate();
  std::visit(Overloaded{
                 [](const CoulombPoint&) {},
                 [](const CoulombDipole&) {},
                 [](const RingML& m) { m.ring.validate(false); },
                 [](const RingBLTP& m) { m.ring.validate(true); },
                 [](const ScalingLaw& m) {
                   if (m.k < 0 || m.k > 3) {
                     throw DomainError("scaling-law exponent k must be in {0,1,2,3}, got " +
                                       detail::format_number(m.k));
                   }
                   m.ring.validate(false);
                 },
             },
             variant);
}

double PotentialModel::operator()(double r) const {
  return std::visit(Overloaded{
                        [&](const CoulombPoint&) { return potential_v1(cfg, r); },
                        [&](const CoulombDipole&) { return potential_v2(cfg, r); },
                        [&](const RingML& m) { return potential_v3(m.ring, cfg, r); },
                        [&](const RingBLTP& m) { return potential_v4(m.ring, cfg, r); },
                        [&](const ScalingLaw& m) {
                          return potential_scaling_law(m.k, m.ring, cfg, r);
                        },
                    },
                    variant);
}

double PotentialModel::interaction(double r) const {
  const double a = cfg.alpha;
  return std::visit(
      Overloaded{
          [&](const CoulombPoint&) {
            require_positive_r(r, "interaction");
            return -a / r;
          },
          [&](const CoulombDipole&) {
            require_positive_r(r, "interaction");
            return -a / r - a * a * a / (8.0 * kPi * kPi * r * r * r);
          },
          [&](const RingML& m) { return ring_pair_energy_ML(m.ring, cfg, r); },
          [&](const RingBLTP& m) { return bltp_pair_energy(m.ring, cfg, r); },
          [&](const ScalingLaw& m) {
            return ring_pair_energy(m.ring.R, a, magnetic_coupling(m.k, a), r).total();
          },
      },
      variant);
}

double PotentialModel::binding(double r) const {
  return kinetic_excess(cfg.n, r) + interaction(r);
}

std::string PotentialModel::name() const {
  return std::visit(Overloaded{
                        [](const CoulombPoint&) { return std::string("coulomb"); },
                        [](const CoulombDipole&) { return std::string("dipole"); },
                        [](const RingML&) { return std::string("ring-ml"); },
                        [](const RingBLTP&) { return std::string("ring-bltp"); },
                        [](const ScalingLaw&) { return std::string("scaling"); },
                    },
                    variant);
}

double bohr_energy(const PhysicalConfig& cfg) {
  cfg.validate();
  const double x = cfg.alpha / (2.0 * cfg.n);
  return 2.0 * std::sqrt((1.0 - x) * (1.0 + x));
}

BohrCoefficients bohr_expansion_coeffs(const PhysicalConfig& cfg) {
  cfg.validate();
  const double n2 = static_cast<double>(cfg.n) * cfg.n;
  return {-1.0 / (8.0 * n2), -1.0 / (128.0 * n2 * n2)};
}

double coulomb_minimizer(const PhysicalConfig& cfg) {
  cfg.validate();
  const double n = cfg.n;
  return n * std::sqrt((2.0 * n - cfg.alpha) * (2.0 * n + cfg.alpha)) / cfg.alpha;
}

double kinetic_term(int n, double r) {
  return 2.0 * std::hypot(1.0, static_cast<double>(n) / r);
}

double kinetic_excess(int n, double r) {
  const double t = static_cast<double>(n) / r;
  return 2.0 * t * t / (1.0 + std::hypot(1.0, t));
}

double potential_v1(const PhysicalConfig& cfg, double r) {
  require_positive_r(r, "potential_v1");
  return kinetic_term(cfg.n, r) - cfg.alpha / r;
}

double potential_v2(const PhysicalConfig& cfg, double r) {
  require_positive_r(r, "potential_v2");
  const double a = cfg.alpha;
  return potential_v1(cfg, r) - a * a * a / (8.0 * kPi * kPi * r * r * r);
}

RingPairEnergy ring_pair_energy(double R, double alpha, double magnetic_coupling, double r) {
  require_positive_r(r, "ring_pair_energy");
  if (!(R > 0.0)) {
    throw DomainError("ring_pair_energy: R must be positive");
  }
  // s = 1 + r^2/(4R^2); modulus k = 1/sqrt(s), complement kc = rho/sqrt(s).
  const double rho = r / (2.0 * R);
  const double sqrt_s = std::hypot(1.0, rho);
  const double k = 1.0 / sqrt_s;
  const double kc = rho / sqrt_s;
  const auto ell = complete_elliptic(k, kc);
  const double electric = -(alpha / (kPi * R)) * k * ell.K;
  const double magnetic =
      -(magnetic_coupling / (4.0 * kPi * kPi * kPi * R * R * R)) * sqrt_s * ell.maxwell;
  return {electric, magnetic};
}

double ring_pair_energy_ML(const RingParams& params, const PhysicalConfig& cfg, double r) {
  return ring_pair_energy(params.R, cfg.alpha, magnetic_coupling(1, cfg.alpha), r).total();
}

double potential_v3(const RingParams& params, const PhysicalConfig& cfg, double r) {
  require_positive_r(r, "potential_v3");
  return kinetic_term(cfg.n, r) + ring_pair_energy_ML(params, cfg, r);
}

BltpIntegrals bltp_integrals(double R, double kappa, double r, QuadratureTolerance tol) {
  require_positive_r(r, "bltp_integrals");
  const double rho = r / (2.0 * R);
  const double two_u = 2.0 * kappa * R;
  // Both integrands are symmetric about pi/2; integrate [0, pi/2] and double.
  const Integrand screened = [rho, two_u](double phi) {
    const double S = std::hypot(std::sin(phi), rho);
    return -std::expm1(-two_u * S) / S;
  };
  const Integrand weighted = [rho, two_u](double phi) {
    const double S = std::hypot(std::sin(phi), rho);
    return std::cos(2.0 * phi) * (-std::expm1(-two_u * S) / S);
  };
  const double half_pi = 0.5 * kPi;
  const double electric = 2.0 * integrate(screened, 0.0, half_pi, tol).value;
  const double magnetic = 2.0 * integrate(weighted, 0.0, half_pi, tol).value;
  return {electric, magnetic};
}

double bltp_pair_energy(const RingParams& params, const PhysicalConfig& cfg, double r,
                        QuadratureTolerance tol) {
  require_positive_r(r, "bltp_pair_energy");
  params.validate(true);
  const auto integrals = bltp_integrals(params.R, *params.kappa, r, tol);
  const double g = cfg.alpha / (2.0 * kPi * params.R);
  return -g * integrals.electric - g * g * g * integrals.magnetic;
}

double potential_v4(const RingParams& params, const PhysicalConfig& cfg, double r,
                    QuadratureTolerance tol) {
  require_positive_r(r, "potential_v4");
  return kinetic_term(cfg.n, r) + bltp_pair_energy(params, cfg, r, tol);
}

double potential_scaling_law(int k, const RingParams& params, const PhysicalConfig& cfg,
                             double r) {
  require_positive_r(r, "potential_scaling_law");
  if (k < 0 || k > 3) {
    throw DomainError("potential_scaling_law: k must be in {0,1,2,3}");
  }
  return kinetic_term(cfg.n, r) +
         ring_pair_energy(params.R, cfg.alpha, magnetic_coupling(k, cfg.alpha), r).total();
}

EnergyCurve sample_curve(const PotentialModel& model, double r_min, double r_max,
                         std::size_t points, Spacing spacing) {
  model.validate();
  if (!(r_min > 0.0)) {
    throw DomainError("sample_curve: r_min must be positive");
  }
  auto grid = make_grid(r_min, r_max, points, spacing);
  auto values = evaluate_on_grid([&model](double r) { return model(r); }, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NonFiniteValue("sample_curve", grid[i]);
    }
  }
  return {model, std::move(grid), std::move(values)};
}

std::vector<StationaryPoint> model_minima(const PotentialModel& model, double r_min, double r_max,
                                          std::size_t points_per_decade, ScanOptions options) {
  model.validate();
  auto minima = find_local_minima([&model](double r) { return model.binding(r); }, r_min, r_max,
                                  points_per_decade, options);
  for (auto& m : minima) {
    m.v_star += 2.0;
  }
  return minima;
}

std::pair<double, double> biot_savart_window(double R) {
  return {1e-3 * R, 30.0 * R};
}

std::optional<StationaryPoint> biot_savart_minimum(const PotentialModel& model,
                                                   std::size_t points_per_decade,
                                                   double x_tol) {
  model.validate();
  double lo = kBiotSavartMin;
  double hi = kBiotSavartMax;
  if (const auto* ml = std::get_if<RingML>(&model.variant)) {
    std::tie(lo, hi) = biot_savart_window(ml->ring.R);
  } else if (const auto* sl = std::get_if<ScalingLaw>(&model.variant)) {
    std::tie(lo, hi) = biot_savart_window(sl->ring.R);
  }
  auto minima = model_minima(model, lo, hi, points_per_decade, {x_tol, true});
  if (minima.empty()) {
    return std::nullopt;
  }
  for (auto& m : minima) {
    if (m.kind == MinimumKind::global_min) {
      return m;
    }
  }
  return minima.front();
}

RingTuning tune_ring_radius(RingFamily family, const PhysicalConfig& cfg, double target_energy,
                            RingTuneOptions options) {
  cfg.validate();
  if (family.k < 0 || family.k > 3) {
    throw DomainError("tune_ring_radius: k must be in {0,1,2,3}");
  }
  const double scale = std::pow(cfg.alpha, 1 + family.k);
  PhysicalConfig ground = cfg;
  ground.n = 1;

  auto model_for = [&](double coefficient) {
    RingParams ring{coefficient * scale, std::nullopt};
    if (family.k == 1) {
      return PotentialModel{RingML{ring}, ground};
    }
    return PotentialModel{ScalingLaw{family.k, ring}, ground};
  };
  auto minimum_for = [&](double coefficient) {
    auto m = biot_savart_minimum(model_for(coefficient), options.points_per_decade,
                                 options.x_tol);
    if (!m) {
      throw NumericalError("tune_ring_radius: no Biot-Savart minimum at R/alpha^" +
                           detail::format_number(1 + family.k) + " = " + detail::format_number(coefficient));
    }
    return *m;
  };
  auto excess = [&](double coefficient) { return minimum_for(coefficient).v_star - target_energy; };

  const double g_lo = excess(options.coefficient_lo);
  const double g_hi = excess(options.coefficient_hi);
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw NumericalError("tune_ring_radius: no sign change of (minimum energy - target) for "
                         "R/alpha^" + detail::format_number(1 + family.k) + " in [" +
                         detail::format_number(options.coefficient_lo) + ", " +
                         detail::format_number(options.coefficient_hi) + "]: " + detail::format_number(g_lo) +
                         ", " + detail::format_number(g_hi));
  }
  const double coefficient =
      find_root(excess, options.coefficient_lo, options.coefficient_hi, 1e-18);
  const auto minimum = minimum_for(coefficient);
  return {coefficient * scale, coefficient, minimum, minimum.v_star - target_energy};
}

}  // namespace psring

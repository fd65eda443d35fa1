#pragma once

// Effective potentials for circular Bohr orbits of an electron-positron pair.
//
// Units: energies in mc^2, lengths in reduced Compton lengths hbar/(mc),
// angular momentum in hbar, charge in e. Angular momentum enters only through
// the Bohr condition p r = n, so every potential is
//   V_n(r) = 2 sqrt(1 + n^2/r^2) + (pair interaction energy at separation r).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "psring/grid.hpp"
#include "psring/optimize.hpp"
#include "psring/quadrature.hpp"

namespace psring {

inline constexpr double kAlphaDefault = 1.0 / 137.036;

/// Ring radius that puts the magnetically bound n = 1 minimum at energy 0,
/// in units of alpha^2 (or alpha^(1+k) for the scaling-law family).
inline constexpr double kTunedRingCoefficient = 0.49597832375;

/// Biot-Savart (magnetically dominated) and Coulomb regime windows.
inline constexpr double kBiotSavartMin = 1e-7;
inline constexpr double kBiotSavartMax = 1e-3;
inline constexpr double kCoulombMin = 1.0;
inline constexpr double kCoulombMax = 1e4;

struct PhysicalConfig {
  double alpha = kAlphaDefault;
  int n = 1;

  /// Throws DomainError unless 0 < alpha < 1 and n >= 1.
  void validate() const;
};

/// Born ring radius R and, for the BLTP model, Bopp's inverse length kappa.
/// The ring current is eliminated through the anomalous-moment relation.
struct RingParams {
  double R = 0.0;
  std::optional<double> kappa;

  void validate(bool needs_kappa) const;
};

struct CoulombPoint {};
struct CoulombDipole {};
struct RingML {
  RingParams ring;
};
struct RingBLTP {
  RingParams ring;
};
/// Ring model with the magnetic coupling alpha^3 replaced by alpha^(1+2k).
struct ScalingLaw {
  int k = 1;
  RingParams ring;
};

using ModelVariant = std::variant<CoulombPoint, CoulombDipole, RingML, RingBLTP, ScalingLaw>;

struct PotentialModel {
  ModelVariant variant;
  PhysicalConfig cfg;

  void validate() const;
  double operator()(double r) const;
  /// Pair interaction energy alone (V minus the kinetic term).
  double interaction(double r) const;
  /// V(r) - 2, free of the cancellation in forming V and subtracting 2.
  double binding(double r) const;
  std::string name() const;
};

struct EnergyCurve {
  PotentialModel model;
  std::vector<double> grid;
  std::vector<double> values;
};

// --- Bohr spectrum ---------------------------------------------------------

/// E_n = 2 sqrt(1 - alpha^2 / (4 n^2)).
double bohr_energy(const PhysicalConfig& cfg);

struct BohrCoefficients {
  double c2;
  double c4;
};

/// E_n = 2 (1 + c2 alpha^2 + c4 alpha^4 + ...): c2 = -1/(8n^2), c4 = -1/(128 n^4).
BohrCoefficients bohr_expansion_coeffs(const PhysicalConfig& cfg);

/// r at which V_n^(1) is stationary: n sqrt(4 n^2 - alpha^2) / alpha.
double coulomb_minimizer(const PhysicalConfig& cfg);

// --- potentials ------------------------------------------------------------

/// 2 sqrt(1 + n^2/r^2).
double kinetic_term(int n, double r);

/// kinetic_term(n, r) - 2.
double kinetic_excess(int n, double r);

/// Point charges: kinetic - alpha/r.
double potential_v1(const PhysicalConfig& cfg, double r);

/// Point charges plus point magnetic dipoles: V^(1) - alpha^3 / (8 pi^2 r^3).
double potential_v2(const PhysicalConfig& cfg, double r);

/// Interaction energy of two co-planar Born rings under Maxwell-Lorentz fields,
/// split into its electric (Coulomb) and magnetic (current-current) parts.
struct RingPairEnergy {
  double electric;
  double magnetic;
  double total() const { return electric + magnetic; }
};

/// U_R(r) with modulus k = 1/sqrt(1 + r^2/(4R^2)) and an arbitrary magnetic
/// coupling (alpha^3 for the physical model).
RingPairEnergy ring_pair_energy(double R, double alpha, double magnetic_coupling, double r);

/// U_R(r) with the physical magnetic coupling alpha^3.
double ring_pair_energy_ML(const RingParams& params, const PhysicalConfig& cfg, double r);

/// kinetic + U_R(r).
double potential_v3(const RingParams& params, const PhysicalConfig& cfg, double r);

/// The two phi-quadratures of the BLTP ring-ring energy (without prefactors):
///   electric = int_0^pi (1 - exp(-2 kappa R S)) / S dphi
///   magnetic = int_0^pi cos(2 phi) (1 - exp(-2 kappa R S)) / S dphi
/// with S = sqrt(sin^2 phi + r^2/(4R^2)).
struct BltpIntegrals {
  double electric;
  double magnetic;
};

BltpIntegrals bltp_integrals(double R, double kappa, double r, QuadratureTolerance tol = {});

/// -(alpha/(2 pi R)) electric - (alpha/(2 pi R))^3 magnetic.
double bltp_pair_energy(const RingParams& params, const PhysicalConfig& cfg, double r,
                        QuadratureTolerance tol = {});

/// kinetic + bltp_pair_energy.
double potential_v4(const RingParams& params, const PhysicalConfig& cfg, double r,
                    QuadratureTolerance tol = {});

/// Ring model with magnetic coupling alpha^(1+2k); k in {0,1,2,3}.
double potential_scaling_law(int k, const RingParams& params, const PhysicalConfig& cfg, double r);

// --- curves and tuning -----------------------------------------------------

/// Deterministic sampling of a model on a grid (evaluated in parallel).
EnergyCurve sample_curve(const PotentialModel& model, double r_min, double r_max,
                         std::size_t points, Spacing spacing);

/// Ring family to tune: k = 1 is the Maxwell-Lorentz ring model; other k use
/// the scaling-law coupling. R = coefficient * alpha^(1+k).
struct RingFamily {
  int k = 1;
};

struct RingTuneOptions {
  double coefficient_lo = 0.48;
  double coefficient_hi = 0.4975;
  std::size_t points_per_decade = 40;
  double x_tol = 1e-10;
};

struct RingTuning {
  double R;
  double coefficient;  // R / alpha^(1+k)
  StationaryPoint minimum;
  double residual;  // minimum.v_star - target
};

/// All local minima of a model over [r_min, r_max] (see find_local_minima).
/// The scan and refinement run on V - 2, so a minimum near the rest energy 2 is
/// located to the resolution of the binding energy rather than of V.
std::vector<StationaryPoint> model_minima(const PotentialModel& model, double r_min, double r_max,
                                          std::size_t points_per_decade, ScanOptions options = {});

/// Search window for the magnetically bound minimum of a ring of radius R.
/// For the physical scale this covers (1e-7, 1e-3) up to the R-relative
/// margins; it tracks R so the scaling-law family is scanned where its
/// minimum actually lies.
std::pair<double, double> biot_savart_window(double R);

/// Least local minimum of V_n in the Biot-Savart window of a ring family
/// member; empty if there is none.
std::optional<StationaryPoint> biot_savart_minimum(const PotentialModel& model,
                                                   std::size_t points_per_decade = 40,
                                                   double x_tol = 1e-10);

/// Ring radius R for which the Biot-Savart global minimum of V_1 equals
/// target_energy. Root-finds on the coefficient R/alpha^(1+k) inside
/// [coefficient_lo, coefficient_hi]; throws NumericalError naming the bracket
/// if there is no sign change.
RingTuning tune_ring_radius(RingFamily family, const PhysicalConfig& cfg, double target_energy,
                            RingTuneOptions options = {});

}  // namespace psring

#include "psring/special_fns.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "format.hpp"
#include "psring/errors.hpp"

namespace psring {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 64;

// Arithmetic-geometric mean of (1, kc), together with sum_{n>=1} 2^n c_n^2
// where c_n are the half-differences of the AGM sequence. The c_n are
// generated from c_{n+1} = c_n^2 / (4 a_{n+1}) so no difference of nearly
// equal numbers is ever formed.
struct AgmResult {
  double mean;
  double weighted_sum;
};

AgmResult agm_with_differences(double k, double kc) {
  double a = 0.5 * (1.0 + kc);
  double b = std::sqrt(kc);
  double c = k * k / (2.0 * (1.0 + kc));  // c_1 = (1 - kc) / 2
  double weight = 2.0;
  double sum = weight * c * c;
  for (int i = 0; i < kMaxIterations; ++i) {
    if (std::abs(a - b) <= 2.0 * kEps * a && weight * c * c <= kEps * sum) {
      break;
    }
    const double a_next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = a_next;
    c = c * c / (4.0 * a);
    weight *= 2.0;
    sum += weight * c * c;
  }
  return {a, sum};
}

// Modified arithmetic-geometric mean N(1, kc^2); E(k) = pi N / (2 M(1, kc)).
double modified_agm(double y) {
  double x = 1.0;
  double z = 0.0;
  double gap = std::abs(x - y);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double d = std::sqrt((x - z) * (y - z));
    const double x_next = 0.5 * (x + y);
    y = z + d;
    z = z - d;
    x = x_next;
    const double new_gap = std::abs(x - y);
    if (new_gap <= 2.0 * kEps * x || new_gap >= gap) {
      break;
    }
    gap = new_gap;
  }
  return x;
}

}  // namespace

CompleteElliptic complete_elliptic(double k, double kc) {
  if (!(k >= 0.0 && k <= 1.0 && kc > 0.0 && kc <= 1.0)) {
    throw DomainError("complete_elliptic: need 0 <= k <= 1 and 0 < kc <= 1, got k = " +
                      detail::format_number(k) + ", kc = " + detail::format_number(kc));
  }
  if (std::abs(k * k + kc * kc - 1.0) > 16.0 * kEps) {
    throw DomainError("complete_elliptic: k and kc are not complementary");
  }
  const auto agm = agm_with_differences(k, kc);
  const double K = std::numbers::pi / (2.0 * agm.mean);
  const double E = std::numbers::pi * modified_agm(kc * kc) / (2.0 * agm.mean);
  return {K, E, K * agm.weighted_sum};
}

double ellip_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("ellip_K: modulus must satisfy 0 <= k < 1, got " + detail::format_number(k));
  }
  const double kc = std::sqrt((1.0 - k) * (1.0 + k));
  return std::numbers::pi / (2.0 * agm_with_differences(k, kc).mean);
}

double ellip_E(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("ellip_E: modulus must satisfy 0 <= k <= 1, got " + detail::format_number(k));
  }
  if (k == 1.0) {
    return 1.0;
  }
  return complete_elliptic(k, std::sqrt((1.0 - k) * (1.0 + k))).E;
}

}  // namespace psring

#pragma once

// Complete elliptic integrals of the first and second kind.
//
// CONVENTION: every function here takes the elliptic MODULUS k, not the
// parameter m = k^2. K(k) = int_0^{pi/2} dθ / sqrt(1 - k^2 sin^2 θ).
// Passing m where k is expected silently corrupts the ring interaction energy.

namespace psring {

/// K(k) for 0 <= k < 1. Throws DomainError for k < 0 or k >= 1 (k = 1 is the
/// logarithmic divergence and is never returned as infinity).
double ellip_K(double k);

/// E(k) for 0 <= k <= 1. Throws DomainError outside [0, 1].
double ellip_E(double k);

/// K, E and the Maxwell mutual-inductance combination (2 - k^2) K - 2 E.
///
/// Both the modulus k and the complementary modulus kc = sqrt(1 - k^2) are
/// taken from the caller, who can usually form each without cancellation:
/// K stays accurate as kc -> 0, and the combination is summed from the AGM
/// differences so it stays accurate as k -> 0 where it behaves like
/// (pi/16) k^4.
struct CompleteElliptic {
  double K;
  double E;
  double maxwell;  // (2 - k^2) K - 2 E
};

/// Requires 0 <= k <= 1, 0 < kc <= 1 and k^2 + kc^2 = 1 to rounding (k may
/// round to 1 while kc is still positive).
CompleteElliptic complete_elliptic(double k, double kc);

}  // namespace psring

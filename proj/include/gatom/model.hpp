#pragma once

#include <complex>
#include <span>
#include <vector>

// Core parameter records for a two-level emitter coupled to a 1-D waveguide
// at one or more points. Units: hbar = v_g = 1, so energies, rates and inverse
// lengths share one scale and the resonant wavevector equals the transition
// frequency.
namespace gatom {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Emitter frequency and coupling amplitude. The total emission rate into the
// even waveguide mode is gamma() = v^2 by construction.
struct AtomParams {
  double omega = 0.0;  // transition frequency, > 0
  double v = 0.0;      // coupling amplitude, energy^(1/2), > 0

  double gamma() const { return v * v; }

  // Convenience for specs phrased in terms of the decay rate.
  static AtomParams from_gamma(double gamma, double omega);

  void validate() const;  // throws std::invalid_argument on bad fields
};

// Coupling positions xi_0 = 0 < xi_1 < ... < xi_{n-1} together with the
// resonant wavevector k0 = omega. Leg phases beta_j = k0 * xi_j are kept as
// raw reals (never reduced mod 2*pi) so the detuning-dependent phase
// (1 + Delta_k/omega) * beta_j stays exact in the non-Markovian formulas.
class AtomGeometry {
 public:
  AtomGeometry(std::vector<double> points, double k0);

  // Two legs separated so that k0 * xi_1 == beta1.
  static AtomGeometry two_point_phase(double beta1, const AtomParams& params);
  // n legs with equal nearest-neighbour phase beta.
  static AtomGeometry equally_spaced(int n, double beta, const AtomParams& params);

  int legs() const { return static_cast<int>(points_.size()); }
  std::span<const double> points() const { return points_; }
  double point(int j) const { return points_[static_cast<std::size_t>(j)]; }
  double k0() const { return k0_; }
  double phase(int j) const { return k0_ * point(j); }  // beta_j

 private:
  std::vector<double> points_;
  double k0_ = 0.0;
};

// Interference-renormalized emission rate. The real part is the measurable
// decay (peak width); half the imaginary part is the resonance shift.
struct EffectiveRates {
  complexd rate;  // Gamma_e for two legs, Gamma_A for n legs

  double decay() const { return rate.real(); }            // Gamma_g / Gamma_N
  double lamb_shift() const { return rate.imag() / 2.0; }  // Delta_L
};

// Two legs: Gamma_e = Gamma (1 + e^{i beta1}) / 2, so the decay is
// Gamma (1 + cos beta1) / 2 and the shift Gamma sin(beta1) / 4.
EffectiveRates effective_rates_two_point(double beta1, const AtomParams& params);

// n legs: Gamma_A = (2 V^2 / n^2) [ sum_{i<j} e^{i(beta_j - beta_i)} + n/2 ].
// The real part is assembled as (V/n)^2 |sum_j e^{i beta_j}|^2, which is the
// same value and guarantees decay() >= 0 in floating point.
EffectiveRates effective_rates_n_point(const AtomGeometry& geom, const AtomParams& params);

// Closed form for equal nearest-neighbour phase beta:
//   Gamma_N  = (V^2/n^2) sin^2(n beta/2) / sin^2(beta/2)
//   Delta_L  = (V^2/(4 n^2)) [n sin(beta) - sin(n beta)] / sin^2(beta/2)
// beta == 0 takes the analytic limit (Gamma_N = V^2, Delta_L = 0); beta == pi
// takes the exact parity branch (Gamma_N = V^2/n^2 for odd n, 0 for even n)
// so those values hold bit-exactly, not merely to rounding.
EffectiveRates equal_spacing_rates(int n, double beta, const AtomParams& params);

}  // namespace gatom

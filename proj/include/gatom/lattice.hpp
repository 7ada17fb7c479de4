#pragma once

#include <span>
#include <vector>

#include "gatom/model.hpp"

// Tight-binding chain oracle. Photons hop with amplitude -J on an open chain
// (dispersion -2 J cos q, group velocity 2 J sin q); a two-level atom couples
// at one or more sites. Time evolution is plain RK4 on the full amplitude
// vector, independent of the analytic machinery it cross-checks.
namespace gatom {

struct LatticeLeg {
  int site = 0;
  double strength = 0.0;
};

struct LatticeConfig {
  int sites = 0;
  double hopping = 1.0;          // J
  double atom_frequency = 0.0;   // measured from the band centre
  std::vector<LatticeLeg> legs;
  double packet_center = 0.0;    // site index
  double packet_sigma = 0.0;     // position spread, sites
  double packet_momentum = 0.0;  // carrier momentum, usually pi/2
  double time_step = 0.0;
  double duration = 0.0;
  int analysis_buffer = 15;      // sites excluded around the legs when scoring

  // Rejects set-ups whose results a wall echo or a clipped packet would
  // contaminate: legs must sit in the middle 60% of the chain, sigma >= 10,
  // and duration < sites / (2 v_g) at the band centre.
  void validate() const;
};

// Atom self-energy on the energy shell of momentum q, written as the complex
// rate whose real part is the decay and half the imaginary part the line
// shift: rate = sum_{l,l'} g_l g_l' e^{i q |s_l - s_l'|} / (J sin q).
complexd lattice_complex_rate(double q, const LatticeConfig& config);

// Exact plane-wave reflection amplitude at momentum q, from the chain Green
// function. Feeds the same two-level response form as the continuum theory.
complexd lattice_reflection(double q, const LatticeConfig& config);

// |reflection|^2 averaged over the Gaussian momentum content of the
// configured packet. This is the analytic prediction the wave-packet runs
// are compared against.
double predicted_reflection(const LatticeConfig& config);

struct SingleRunResult {
  double transmitted = 0.0;
  double reflected = 0.0;
  double near_atom = 0.0;       // photon weight left inside the buffered leg span
  double atom_excited = 0.0;
  double norm_drift = 0.0;
  std::vector<double> site_abs2;
};

// One-photon wave packet scattering off the atom.
SingleRunResult evolve_single(const LatticeConfig& config);

struct PairRunResult {
  double both_transmitted = 0.0;
  double both_reflected = 0.0;
  double split = 0.0;           // one photon on each side
  double near_atom = 0.0;
  double atom_excited = 0.0;
  double norm_drift = 0.0;
  // Largest diagonal probability over the reflected quadrant relative to the
  // largest off-diagonal one; 1 means perfect antibunching.
  double diagonal_suppression = 0.0;
  // P(delta): probability of pair separation delta within the transmitted
  // quadrant, delta = 0 .. profile size - 1.
  std::vector<double> relative_profile;
  double decay_length = 0.0;    // sites, from the log-linear tail of P
};

// Two-photon wave packet (both photons in the same packet) scattering off the
// atom; evolves the full symmetric two-excitation sector.
PairRunResult evolve_pair(const LatticeConfig& config);

// Least-squares exponential decay length of profile[lo..hi], in samples.
double fit_decay_length(std::span<const double> profile, int lo, int hi);

}  // namespace gatom

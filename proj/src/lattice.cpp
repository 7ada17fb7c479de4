#include "gatom/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "gatom/quadrature.hpp"
#include "gatom/single_photon.hpp"

namespace gatom {
namespace {

// i * s * z without a full complex multiply.
inline complexd times_i(const complexd& z, double scale) {
  return {-scale * z.imag(), scale * z.real()};
}

inline double band_energy(double q, double hopping) { return -2.0 * hopping * std::cos(q); }

int min_leg_site(const LatticeConfig& config) {
  int site = config.legs.front().site;
  for (const auto& leg : config.legs) site = std::min(site, leg.site);
  return site;
}

int max_leg_site(const LatticeConfig& config) {
  int site = config.legs.front().site;
  for (const auto& leg : config.legs) site = std::max(site, leg.site);
  return site;
}

std::vector<complexd> packet_amplitudes(const LatticeConfig& config) {
  std::vector<complexd> packet(static_cast<std::size_t>(config.sites));
  double total = 0.0;
  for (int m = 0; m < config.sites; ++m) {
    const double offset = m - config.packet_center;
    const double envelope =
        std::exp(-offset * offset / (4.0 * config.packet_sigma * config.packet_sigma));
    packet[m] = std::polar(envelope, config.packet_momentum * m);
    total += envelope * envelope;
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& value : packet) value *= scale;
  return packet;
}

template <typename Deriv>
void rk4_evolve(std::vector<complexd>& state, double dt, long long steps, Deriv&& deriv) {
  const std::size_t n = state.size();
  std::vector<complexd> slope1(n), slope2(n), slope3(n), slope4(n), probe(n);
  for (long long step = 0; step < steps; ++step) {
    deriv(state, slope1);
    for (std::size_t i = 0; i < n; ++i) probe[i] = state[i] + 0.5 * dt * slope1[i];
    deriv(probe, slope2);
    for (std::size_t i = 0; i < n; ++i) probe[i] = state[i] + 0.5 * dt * slope2[i];
    deriv(probe, slope3);
    for (std::size_t i = 0; i < n; ++i) probe[i] = state[i] + dt * slope3[i];
    deriv(probe, slope4);
    const double sixth = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
      state[i] += sixth * (slope1[i] + 2.0 * (slope2[i] + slope3[i]) + slope4[i]);
  }
}

long long step_count(const LatticeConfig& config) {
  return std::llround(config.duration / config.time_step);
}

}  // namespace

void LatticeConfig::validate() const {
  if (sites < 16) throw std::invalid_argument("lattice needs at least 16 sites");
  if (!(hopping > 0.0)) throw std::invalid_argument("hopping must be positive");
  if (legs.empty()) throw std::invalid_argument("at least one coupling leg is required");
  for (const auto& leg : legs) {
    if (leg.site < 0 || leg.site >= sites)
      throw std::invalid_argument("coupling site outside the chain");
    const double position = static_cast<double>(leg.site) / (sites - 1);
    if (position < 0.2 || position > 0.8)
      throw std::invalid_argument("coupling sites must sit in the middle 60% of the chain");
    if (leg.strength == 0.0) throw std::invalid_argument("coupling strength must be nonzero");
  }
  if (!(packet_sigma >= 10.0))
    throw std::invalid_argument("packet sigma below 10 sites is too narrow-band to score");
  if (!(packet_momentum > 0.0 && packet_momentum < pi))
    throw std::invalid_argument("carrier momentum must lie inside (0, pi)");
  if (!(packet_center > 0.0 && packet_center < sites - 1))
    throw std::invalid_argument("packet centre outside the chain");
  if (!(time_step > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  if (!(duration < sites / (4.0 * hopping)))
    throw std::invalid_argument("duration long enough for a wall echo to return");
  if (analysis_buffer < 1) throw std::invalid_argument("analysis buffer must be positive");
}

complexd lattice_complex_rate(double q, const LatticeConfig& config) {
  const double speed_scale = config.hopping * std::sin(q);
  if (!(speed_scale > 0.0))
    throw std::domain_error("complex rate undefined at a band edge");
  complexd sum{0.0, 0.0};
  for (const auto& a : config.legs) {
    for (const auto& b : config.legs) {
      sum += a.strength * b.strength *
             std::polar(1.0, q * std::abs(double(a.site - b.site)));
    }
  }
  return sum / speed_scale;
}

complexd lattice_reflection(double q, const LatticeConfig& config) {
  const double detuning = band_energy(q, config.hopping) - config.atom_frequency;
  const EffectiveRates rates{lattice_complex_rate(q, config)};
  return 0.5 * (markov_transmission(detuning, rates) - 1.0);
}

double predicted_reflection(const LatticeConfig& config) {
  config.validate();
  const double sigma_q = 1.0 / (2.0 * config.packet_sigma);
  const double lo = std::max(config.packet_momentum - 8.0 * sigma_q, 1e-3);
  const double hi = std::min(config.packet_momentum + 8.0 * sigma_q, pi - 1e-3);
  const GaussRule rule = gauss_legendre(16);
  const auto weight = [&](double q) {
    const double off = q - config.packet_momentum;
    return std::exp(-2.0 * config.packet_sigma * config.packet_sigma * off * off);
  };
  const double numerator = integrate_panels(
      [&](double q) { return weight(q) * std::norm(lattice_reflection(q, config)); }, lo, hi,
      rule, 40);
  const double denominator = integrate_panels(weight, lo, hi, rule, 40);
  return numerator / denominator;
}

SingleRunResult evolve_single(const LatticeConfig& config) {
  config.validate();
  const int sites = config.sites;
  const double hop = config.hopping;

  // state = [psi_0 .. psi_{M-1}, phi]
  std::vector<complexd> state = packet_amplitudes(config);
  state.push_back(complexd{0.0, 0.0});

  const auto deriv = [&](const std::vector<complexd>& in, std::vector<complexd>& out) {
    const complexd* psi = in.data();
    const complexd atom = in[static_cast<std::size_t>(sites)];
    for (int m = 0; m < sites; ++m) {
      complexd acc{0.0, 0.0};
      if (m > 0) acc += psi[m - 1];
      if (m < sites - 1) acc += psi[m + 1];
      out[m] = times_i(acc, hop);
    }
    complexd feed{0.0, 0.0};
    for (const auto& leg : config.legs) {
      out[leg.site] += times_i(atom, -leg.strength);
      feed += leg.strength * psi[leg.site];
    }
    out[static_cast<std::size_t>(sites)] =
        times_i(atom, -config.atom_frequency) + times_i(feed, -1.0);
  };

  rk4_evolve(state, config.time_step, step_count(config), deriv);

  SingleRunResult result;
  result.site_abs2.resize(static_cast<std::size_t>(sites));
  const int lo_cut = min_leg_site(config) - config.analysis_buffer;
  const int hi_cut = max_leg_site(config) + config.analysis_buffer;
  double total = 0.0;
  for (int m = 0; m < sites; ++m) {
    const double weight = std::norm(state[m]);
    result.site_abs2[m] = weight;
    total += weight;
    if (m < lo_cut)
      result.reflected += weight;
    else if (m > hi_cut)
      result.transmitted += weight;
    else
      result.near_atom += weight;
  }
  result.atom_excited = std::norm(state[static_cast<std::size_t>(sites)]);
  result.norm_drift = std::abs(total + result.atom_excited - 1.0);
  return result;
}

PairRunResult evolve_pair(const LatticeConfig& config) {
  config.validate();
  const int sites = config.sites;
  const double hop = config.hopping;
  const std::size_t span = static_cast<std::size_t>(sites);
  const std::size_t cells = span * span;

  // Bosonic pair coupling: the symmetric two-photon sector couples to the
  // excited atom with strength g / sqrt(2) per leg when the photon matrix is
  // stored with both orderings.
  std::vector<LatticeLeg> pair_legs = config.legs;
  for (auto& leg : pair_legs) leg.strength /= std::sqrt(2.0);

  // state = [psi_{mn} row-major, phi_0 .. phi_{M-1}]
  std::vector<complexd> state(cells + span);
  {
    const std::vector<complexd> packet = packet_amplitudes(config);
    for (int m = 0; m < sites; ++m)
      for (int n = 0; n < sites; ++n) state[m * span + n] = packet[m] * packet[n];
  }

  const auto deriv = [&](const std::vector<complexd>& in, std::vector<complexd>& out) {
    const complexd* psi = in.data();
    const complexd* atom = in.data() + cells;
    for (int m = 0; m < sites; ++m) {
      const complexd* row = psi + m * span;
      const complexd* row_up = m > 0 ? row - span : nullptr;
      const complexd* row_dn = m < sites - 1 ? row + span : nullptr;
      complexd* out_row = out.data() + m * span;
      for (int n = 0; n < sites; ++n) {
        complexd acc{0.0, 0.0};
        if (n > 0) acc += row[n - 1];
        if (n < sites - 1) acc += row[n + 1];
        if (row_up) acc += row_up[n];
        if (row_dn) acc += row_dn[n];
        out_row[n] = times_i(acc, hop);
      }
    }
    for (const auto& leg : pair_legs) {
      const std::size_t leg_row = static_cast<std::size_t>(leg.site) * span;
      for (int n = 0; n < sites; ++n) {
        out[leg_row + n] += times_i(atom[n], -leg.strength);
        out[n * span + static_cast<std::size_t>(leg.site)] += times_i(atom[n], -leg.strength);
      }
    }
    complexd* out_atom = out.data() + cells;
    for (int m = 0; m < sites; ++m) {
      complexd acc{0.0, 0.0};
      if (m > 0) acc += atom[m - 1];
      if (m < sites - 1) acc += atom[m + 1];
      out_atom[m] = times_i(acc, hop) + times_i(atom[m], -config.atom_frequency);
    }
    for (const auto& leg : pair_legs) {
      const std::size_t leg_row = static_cast<std::size_t>(leg.site) * span;
      for (int m = 0; m < sites; ++m) {
        const complexd feed = psi[leg_row + m] + psi[m * span + static_cast<std::size_t>(leg.site)];
        out_atom[m] += times_i(feed, -leg.strength);
      }
    }
  };

  rk4_evolve(state, config.time_step, step_count(config), deriv);

  PairRunResult result;
  const int lo_cut = min_leg_site(config) - config.analysis_buffer;
  const int hi_cut = max_leg_site(config) + config.analysis_buffer;
  double total = 0.0;
  double max_diag = 0.0;
  double max_off = 0.0;
  const int profile_span = sites - 2 - hi_cut;
  result.relative_profile.assign(profile_span > 0 ? static_cast<std::size_t>(profile_span) : 0,
                                 0.0);
  for (int m = 0; m < sites; ++m) {
    for (int n = 0; n < sites; ++n) {
      const double weight = std::norm(state[m * span + n]);
      total += weight;
      const bool m_left = m < lo_cut;
      const bool n_left = n < lo_cut;
      const bool m_right = m > hi_cut;
      const bool n_right = n > hi_cut;
      if (m_right && n_right) {
        result.both_transmitted += weight;
        const int separation = std::abs(m - n);
        if (separation < profile_span) result.relative_profile[separation] += weight;
      } else if (m_left && n_left) {
        result.both_reflected += weight;
        if (m == n)
          max_diag = std::max(max_diag, weight);
        else
          max_off = std::max(max_off, weight);
      } else if ((m_left && n_right) || (m_right && n_left)) {
        result.split += weight;
      } else {
        result.near_atom += weight;
      }
    }
  }
  for (std::size_t m = 0; m < span; ++m) result.atom_excited += std::norm(state[cells + m]);
  result.norm_drift = std::abs(total + result.atom_excited - 1.0);
  result.diagonal_suppression = max_off > 0.0 ? 1.0 - max_diag / max_off : 0.0;
  if (result.relative_profile.size() > 5) {
    const int hi = std::min<int>(static_cast<int>(result.relative_profile.size()) - 1, 40);
    result.decay_length = fit_decay_length(result.relative_profile, 4, hi);
  }
  return result;
}

double fit_decay_length(std::span<const double> profile, int lo, int hi) {
  if (lo < 0 || hi >= static_cast<int>(profile.size()) || hi - lo < 2)
    throw std::invalid_argument("decay fit needs at least three samples in range");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int i = lo; i <= hi; ++i) {
    if (!(profile[i] > 0.0)) continue;
    const double x = i;
    const double y = std::log(profile[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 3) throw std::domain_error("decay fit has too few positive samples");
  const double denom = count * sxx - sx * sx;
  const double slope = (count * sxy - sx * sy) / denom;
  if (!(slope < 0.0)) throw std::domain_error("profile tail is not decaying");
  return -1.0 / slope;
}

}  // namespace gatom

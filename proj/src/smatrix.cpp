#include "gatom/smatrix.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gatom/quadrature.hpp"
#include "gatom/single_photon.hpp"

namespace gatom {
namespace {

constexpr complexd kImag{0.0, 1.0};

// Everything the output maps need, computed once per (pair, rates) call.
struct MapContext {
  double e1 = 0.0;
  double delta1 = 0.0;
  complexd sigma;       // delta_e1 + i rate
  complexd bound_base;  // decay^2 / (4 Delta1^2 - Sigma^2)
  complexd even_pair;   // t_{k1} t_{p1}
  complexd tbar_k, tbar_p, rbar_k, rbar_p;
};

MapContext make_context(const TwoPhotonPair& pair_in, const EffectiveRates& rates,
                        const AtomParams& params) {
  MapContext ctx;
  ctx.e1 = pair_in.e_total();
  ctx.delta1 = pair_in.delta();
  const double delta_e1 = ctx.e1 - 2.0 * params.omega;
  ctx.sigma = delta_e1 + kImag * rates.rate;
  const double decay = rates.decay();
  ctx.bound_base = decay * decay / (4.0 * ctx.delta1 * ctx.delta1 - ctx.sigma * ctx.sigma);
  const complexd t_k = markov_transmission(pair_in.k1 - params.omega, rates);
  const complexd t_p = markov_transmission(pair_in.p1 - params.omega, rates);
  ctx.even_pair = t_k * t_p;
  ctx.tbar_k = 0.5 * (t_k + 1.0);
  ctx.rbar_k = 0.5 * (t_k - 1.0);
  ctx.tbar_p = 0.5 * (t_p + 1.0);
  ctx.rbar_p = 0.5 * (t_p - 1.0);
  return ctx;
}

// e^{i Sigma |s| * scale}: the Im part of Sigma supplies the decay envelope.
complexd bound_envelope(const complexd& sigma, double separation, double scale) {
  return std::exp(kImag * sigma * (scale * std::abs(separation)));
}

}  // namespace

complexd bound_kernel(double delta_e1, double delta1, double delta2,
                      const EffectiveRates& rates) {
  const double decay = rates.decay();
  if (decay == 0.0) return complexd{0.0, 0.0};
  const complexd sigma = delta_e1 + kImag * rates.rate;
  const complexd s2 = sigma * sigma;
  return 16.0 * kImag * decay * decay * sigma /
         (pi * (4.0 * delta1 * delta1 - s2) * (4.0 * delta2 * delta2 - s2));
}

SMatrixElementEE element_ee(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                            const EffectiveRates& rates, const AtomParams& params) {
  const complexd pair_t = markov_transmission(pair_in.k1 - params.omega, rates) *
                          markov_transmission(pair_in.p1 - params.omega, rates);
  const double delta_e1 = pair_in.e_total() - 2.0 * params.omega;
  SMatrixElementEE out;
  out.forward_coeff = pair_t;
  out.exchange_coeff = pair_t;
  out.bound = bound_kernel(delta_e1, pair_in.delta(), pair_out.delta(), rates);
  return out;
}

DirectedElement rr_element(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                           const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd quarter_kernel =
      0.25 * bound_kernel(ctx.e1 - 2.0 * params.omega, ctx.delta1, pair_out.delta(), rates);
  return {ctx.tbar_k * ctx.tbar_p, ctx.tbar_k * ctx.tbar_p, quarter_kernel};
}

DirectedElement ll_element(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                           const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd quarter_kernel =
      0.25 * bound_kernel(ctx.e1 - 2.0 * params.omega, ctx.delta1, pair_out.delta(), rates);
  return {ctx.rbar_k * ctx.rbar_p, ctx.rbar_k * ctx.rbar_p, quarter_kernel};
}

DirectedElement rl_element(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                           const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd quarter_kernel =
      0.25 * bound_kernel(ctx.e1 - 2.0 * params.omega, ctx.delta1, pair_out.delta(), rates);
  return {ctx.tbar_k * ctx.rbar_p, ctx.rbar_k * ctx.tbar_p, quarter_kernel};
}

ModePairDecomposition mode_decompose(PairChannel channel) {
  const double half = 0.5;
  const double root_half = 1.0 / std::sqrt(2.0);
  switch (channel) {
    case PairChannel::kRR:
      return {half, root_half, 0.0, half};
    case PairChannel::kLL:
      return {half, -root_half, 0.0, half};
    case PairChannel::kRL:
      return {half, 0.0, -root_half, -half};
  }
  throw std::invalid_argument("unknown pair channel");
}

std::array<double, 3> mode_recompose(const ModePairDecomposition& parts) {
  const auto project = [&](PairChannel channel) {
    const ModePairDecomposition row = mode_decompose(channel);
    return row.ee * parts.ee + row.eo_sym * parts.eo_sym + row.eo_antisym * parts.eo_antisym +
           row.oo * parts.oo;
  };
  return {project(PairChannel::kRR), project(PairChannel::kLL), project(PairChannel::kRL)};
}

complexd output_realspace_e(const TwoPhotonPair& pair_in, double x_c, double x,
                            const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd carrier = std::exp(kImag * (ctx.e1 * x_c));
  const complexd plane = ctx.even_pair * std::cos(ctx.delta1 * x);
  const complexd bound =
      kBoundWeights.e_mode * ctx.bound_base * bound_envelope(ctx.sigma, x, 0.5);
  return carrier * (std::sqrt(2.0) / (2.0 * pi)) * (plane - bound);
}

complexd transmitted_map(const TwoPhotonPair& pair_in, double x_c, double x,
                         const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd carrier = std::exp(kImag * (ctx.e1 * x_c));
  const complexd plane = ctx.tbar_k * ctx.tbar_p * std::cos(ctx.delta1 * x);
  const complexd bound =
      kBoundWeights.directed * ctx.bound_base * bound_envelope(ctx.sigma, x, 0.5);
  return carrier * (std::sqrt(2.0) / (2.0 * pi)) * (plane - bound);
}

complexd reflected_map(const TwoPhotonPair& pair_in, double x_c, double x,
                       const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd carrier = std::exp(-kImag * (ctx.e1 * x_c));
  const complexd plane = ctx.rbar_k * ctx.rbar_p * std::cos(ctx.delta1 * x);
  const complexd bound =
      kBoundWeights.directed * ctx.bound_base * bound_envelope(ctx.sigma, x, 0.5);
  return carrier * (std::sqrt(2.0) / (2.0 * pi)) * (plane - bound);
}

complexd mixed_map(const TwoPhotonPair& pair_in, double x_c, double x,
                   const EffectiveRates& rates, const AtomParams& params) {
  const MapContext ctx = make_context(pair_in, rates, params);
  const complexd carrier = std::exp(kImag * (0.5 * ctx.e1 * x));
  const complexd spread = std::exp(kImag * (2.0 * ctx.delta1 * x_c));
  const complexd plane = ctx.tbar_k * ctx.rbar_p * spread + ctx.rbar_k * ctx.tbar_p / spread;
  const complexd bound =
      kBoundWeights.mixed * ctx.bound_base * bound_envelope(ctx.sigma, x_c, 1.0);
  return carrier / (2.0 * pi) * (plane - bound);
}

namespace {

// At the resonant input the even transmissions are -1, so tbar = 0 and the
// plane-wave part survives only in the reflected map (rbar rbar = 1).
complexd resonant_bound(const EffectiveRates& rates, double separation, double scale) {
  const complexd sigma = 2.0 * rates.lamb_shift() + kImag * rates.rate;
  const double decay = rates.decay();
  return decay * decay * bound_envelope(sigma, separation, scale) / (sigma * sigma);
}

double resonant_total_energy(const EffectiveRates& rates, const AtomParams& params) {
  return 2.0 * (params.omega + rates.lamb_shift());
}

}  // namespace

complexd transmitted_map_resonant(double x_c, double x, const EffectiveRates& rates,
                                  const AtomParams& params) {
  const complexd carrier = std::exp(kImag * (resonant_total_energy(rates, params) * x_c));
  return carrier / (std::sqrt(2.0) * pi) * resonant_bound(rates, x, 0.5);
}

complexd reflected_map_resonant(double x_c, double x, const EffectiveRates& rates,
                                const AtomParams& params) {
  const complexd carrier = std::exp(-kImag * (resonant_total_energy(rates, params) * x_c));
  return carrier / (std::sqrt(2.0) * pi) * (1.0 + resonant_bound(rates, x, 0.5));
}

complexd mixed_map_resonant(double x_c, double x, const EffectiveRates& rates,
                            const AtomParams& params) {
  const complexd carrier = std::exp(kImag * (0.5 * resonant_total_energy(rates, params) * x));
  return carrier / (2.0 * pi) * (2.0 * resonant_bound(rates, x_c, 1.0));
}

KernelDecomposition bound_kernel_decomposed(double delta_e1, double delta1, double delta2,
                                            const EffectiveRates& rates, double half_width,
                                            int panels, int order) {
  const double decay = rates.decay();
  if (!(decay > 0.0)) throw std::domain_error("kernel decomposition needs a coupled atom");
  if (delta1 == 0.0 || delta2 == 0.0 || std::abs(delta1) == std::abs(delta2)) {
    throw std::invalid_argument("pole positions must be nonzero and distinct in magnitude");
  }
  if (std::abs(delta1) >= half_width || std::abs(delta2) >= half_width) {
    throw std::invalid_argument("pole positions must lie inside the integration window");
  }

  const auto weight = [&](double d) { return 4.0 * d * d / (4.0 * d * d + decay * decay); };
  const auto pair_t = [&](double d) {
    return markov_transmission(0.5 * delta_e1 + d, rates) *
           markov_transmission(0.5 * delta_e1 - d, rates);
  };

  KernelDecomposition out;
  const double split = delta1 * delta1 - delta2 * delta2;
  out.secular = (decay / pi) * (pair_t(delta2) * weight(delta2) / split -
                                pair_t(delta1) * weight(delta1) / split);

  const auto numer = [&](double d) { return pair_t(d) * weight(d); };
  const std::vector<PoleTerm> poles = {
      {delta1, numer(delta1) / (2.0 * delta1 * split)},
      {-delta1, numer(-delta1) / (-2.0 * delta1 * split)},
      {delta2, numer(delta2) / (-2.0 * delta2 * split)},
      {-delta2, numer(-delta2) / (2.0 * delta2 * split)},
  };
  const auto integrand = [&](double d) {
    return numer(d) / ((d * d - delta1 * delta1) * (d * d - delta2 * delta2));
  };
  const GaussRule rule = gauss_legendre(order);
  complexd line = pv_integrate(integrand, poles, half_width, rule, panels);
  // The integrand tends to 1/Delta^4; add the truncated tails analytically.
  line += 2.0 / (3.0 * half_width * half_width * half_width);
  out.quartet = 0.5 * (decay / pi) * (decay / pi) * line;

  const complexd pair_phase = bound_transmission_markov(delta_e1, rates);
  out.bound_line = (8.0 * decay * decay * decay / pi) * pair_phase /
                   ((4.0 * delta1 * delta1 + decay * decay) *
                    (4.0 * delta2 * delta2 + decay * decay));
  return out;
}

}  // namespace gatom

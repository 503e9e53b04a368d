#pragma once

#include <string>

#include "rateregion/rng.hpp"

namespace rateregion {

// How the primary message is shared with the cognitive transmitters:
// CMS gives each cognitive encoder all messages of the encoders before it,
// PMS gives every cognitive encoder the primary message only.
enum class Sharing { CMS, PMS };

// What the receivers are required to decode on top of their own messages:
// Variant1 makes every public part decodable at every receiver, Variant2 only
// at the intended and primary receivers.
enum class Decoding { Variant1, Variant2 };

struct ModelVariant {
  Sharing sharing;
  Decoding decoding;

  friend bool operator==(const ModelVariant&, const ModelVariant&) = default;
};

inline constexpr ModelVariant kCms1{Sharing::CMS, Decoding::Variant1};
inline constexpr ModelVariant kCms2{Sharing::CMS, Decoding::Variant2};
inline constexpr ModelVariant kPms1{Sharing::PMS, Decoding::Variant1};
inline constexpr ModelVariant kPms2{Sharing::PMS, Decoding::Variant2};

// "cms1" | "cms2" | "pms1" | "pms2"
std::string model_name(ModelVariant variant);
ModelVariant parse_model_name(const std::string& name);  // throws Error(Config)

// Three-user Gaussian channel in standard form: unit direct gains, per-user
// transmit powers, per-receiver noise variances and six cross gains a_ij
// (receiver i, transmitter j). All values linear, not dB.
struct GaussianChannelSpec {
  double p1 = 1.0, p2 = 1.0, p3 = 1.0;
  double q1 = 1.0, q2 = 1.0, q3 = 1.0;
  double a12 = 0.0, a13 = 0.0;
  double a21 = 0.0, a23 = 0.0;
  double a31 = 0.0, a32 = 0.0;
  ModelVariant variant = kCms2;
};

// Throws NonPositivePower / NonPositiveNoise / NonFiniteCoefficient.
void validate_spec(const GaussianChannelSpec& spec);

// Coding parameters swept by the Monte-Carlo union: the primary power
// fraction, the public/private power splits of users 2 and 3, and the linear
// precoding coefficients of the auxiliary variables against X1 (alphas) and
// X2 (betas). Betas are identically zero under PMS.
struct SplittingParams {
  double lambda = 1.0;
  double tau = 0.5;
  double kappa = 0.5;
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0, alpha4 = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
};

// Draws lambda ~ U[1e-6, 1], tau, kappa ~ U[1e-6, 1 - 1e-6] and the six
// precoding coefficients ~ N(0, 1), always in the order lambda, tau, kappa,
// alpha1..alpha4, beta1, beta2. Under PMS the betas are drawn and then
// zeroed, so a PMS stream stays word-for-word aligned with the CMS stream of
// the same (seed, draw).
SplittingParams sample_params(const GaussianChannelSpec& spec, CounterRng& rng);

}  // namespace rateregion

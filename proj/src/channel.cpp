#include "rateregion/channel.hpp"

#include <cmath>

#include "rateregion/errors.hpp"

namespace rateregion {

std::string model_name(ModelVariant variant) {
  std::string name = variant.sharing == Sharing::CMS ? "cms" : "pms";
  name += variant.decoding == Decoding::Variant1 ? '1' : '2';
  return name;
}

ModelVariant parse_model_name(const std::string& name) {
  if (name == "cms1") return kCms1;
  if (name == "cms2") return kCms2;
  if (name == "pms1") return kPms1;
  if (name == "pms2") return kPms2;
  throw Error(ErrorKind::Config,
              "unknown model '" + name + "' (expected cms1, cms2, pms1 or pms2)");
}

void validate_spec(const GaussianChannelSpec& spec) {
  const struct {
    double value;
    const char* name;
  } powers[] = {{spec.p1, "p1"}, {spec.p2, "p2"}, {spec.p3, "p3"}},
    noises[] = {{spec.q1, "q1"}, {spec.q2, "q2"}, {spec.q3, "q3"}},
    coeffs[] = {{spec.a12, "a12"}, {spec.a13, "a13"}, {spec.a21, "a21"},
                {spec.a23, "a23"}, {spec.a31, "a31"}, {spec.a32, "a32"}};

  for (const auto& p : powers)
    if (!std::isfinite(p.value) || !(p.value > 0.0)) throw NonPositivePower(p.name);
  for (const auto& q : noises)
    if (!std::isfinite(q.value) || !(q.value > 0.0)) throw NonPositiveNoise(q.name);
  for (const auto& a : coeffs)
    if (!std::isfinite(a.value)) throw NonFiniteCoefficient(a.name);
}

SplittingParams sample_params(const GaussianChannelSpec& spec, CounterRng& rng) {
  constexpr double kMargin = 1e-6;
  SplittingParams sp;
  sp.lambda = rng.uniform(kMargin, 1.0);
  sp.tau = rng.uniform(kMargin, 1.0 - kMargin);
  sp.kappa = rng.uniform(kMargin, 1.0 - kMargin);
  sp.alpha1 = rng.normal();
  sp.alpha2 = rng.normal();
  sp.alpha3 = rng.normal();
  sp.alpha4 = rng.normal();
  sp.beta1 = rng.normal();
  sp.beta2 = rng.normal();
  if (spec.variant.sharing == Sharing::PMS) {
    sp.beta1 = 0.0;
    sp.beta2 = 0.0;
  }
  return sp;
}

}  // namespace rateregion

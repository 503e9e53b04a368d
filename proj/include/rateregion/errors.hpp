#pragma once

#include <stdexcept>
#include <string>

namespace rateregion {

// Failure classes; the CLI maps them to process exit codes
// (Config -> 1, Verification -> 2, Numeric -> 3).
enum class ErrorKind { Config, Verification, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct NonPositivePower final : Error {
  explicit NonPositivePower(const std::string& field)
      : Error(ErrorKind::Config,
              "transmit power must be finite and > 0: " + field) {}
};

struct NonPositiveNoise final : Error {
  explicit NonPositiveNoise(const std::string& field)
      : Error(ErrorKind::Config,
              "noise variance must be finite and > 0: " + field) {}
};

struct NonFiniteCoefficient final : Error {
  explicit NonFiniteCoefficient(const std::string& field)
      : Error(ErrorKind::Config, "channel coefficient must be finite: " + field) {}
};

struct VariantUnsupported final : Error {
  explicit VariantUnsupported(const std::string& what)
      : Error(ErrorKind::Config, what) {}
};

struct MissingVariable final : Error {
  explicit MissingVariable(const std::string& name)
      : Error(ErrorKind::Config, "variable not present in covariance: " + name) {}
};

struct SingularSubmatrix final : Error {
  explicit SingularSubmatrix(const std::string& what)
      : Error(ErrorKind::Numeric, what) {}
};

struct OverlappingSets final : Error {
  explicit OverlappingSets(const std::string& what)
      : Error(ErrorKind::Numeric, what) {}
};

struct Unbounded final : Error {
  explicit Unbounded(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct DegenerateSystem final : Error {
  explicit DegenerateSystem(const std::string& what)
      : Error(ErrorKind::Numeric, what) {}
};

struct EmptySlice final : Error {
  explicit EmptySlice(const std::string& what)
      : Error(ErrorKind::Numeric, what) {}
};

struct VerificationFailure final : Error {
  explicit VerificationFailure(const std::string& what)
      : Error(ErrorKind::Verification, what) {}
};

}  // namespace rateregion

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lvie {

/// Exact positive-or-zero step size such as 1/32, kept in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts "p/q", an integer, or a plain decimal ("0.125"). Throws
  /// std::invalid_argument on anything else.
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// this / 2^k; throws std::overflow_error if the denominator overflows.
  Rational halved(int k) const;

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace lvie

#include "lvie/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

namespace lvie {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : num;
  den_ = g ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return {parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text)};
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (digits.empty() || digits == "-" || digits == "+") {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    std::string_view d = digits;
    if (d.front() == '+') d.remove_prefix(1);
    return {parse_int(d, text), den};
  }
  return {parse_int(text, text), 1};
}

Rational Rational::halved(int k) const {
  if (k < 0) throw std::invalid_argument("negative halving count");
  std::int64_t num = num_;
  std::int64_t den = den_;
  for (int i = 0; i < k; ++i) {
    if (num % 2 == 0) {
      num /= 2;
    } else {
      if (den > std::numeric_limits<std::int64_t>::max() / 2) throw std::overflow_error("step denominator overflow");
      den *= 2;
    }
  }
  return {num, den};
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace lvie

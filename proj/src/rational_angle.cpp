#include "pstneps/rational_angle.hpp"

#include <charconv>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace pstneps {

RationalAngle::RationalAngle(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("RationalAngle: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

double RationalAngle::value() const {
  return static_cast<double>(num_) * std::numbers::pi / static_cast<double>(den_);
}

RationalAngle RationalAngle::operator+(const RationalAngle& other) const {
  return {num_ * other.den_ + other.num_ * den_, den_ * other.den_};
}

RationalAngle RationalAngle::operator-() const { return {-num_, den_}; }

RationalAngle RationalAngle::times(long long k) const { return {num_ * k, den_}; }

std::string RationalAngle::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<RationalAngle> RationalAngle::parse(std::string_view text) {
  long long p = 0, q = 1;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, p);
  if (ec != std::errc{}) return std::nullopt;
  if (ptr != end) {
    if (*ptr != '/') return std::nullopt;
    auto [ptr2, ec2] = std::from_chars(ptr + 1, end, q);
    if (ec2 != std::errc{} || ptr2 != end || q == 0) return std::nullopt;
  }
  return RationalAngle(p, q);
}

}  // namespace pstneps

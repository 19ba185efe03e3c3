#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pstneps {

// A time point t = num·π/den with den > 0 and gcd(|num|, den) = 1.
// Arithmetic stays exact; trig evaluation happens once, in double precision.
class RationalAngle {
 public:
  RationalAngle() = default;  // t = 0
  RationalAngle(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  double value() const;  // num·π/den

  RationalAngle operator+(const RationalAngle& other) const;
  RationalAngle operator-() const;
  RationalAngle times(long long k) const;

  auto operator<=>(const RationalAngle&) const = default;

  std::string str() const;  // "num/den"
  static std::optional<RationalAngle> parse(std::string_view text);

 private:
  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace pstneps

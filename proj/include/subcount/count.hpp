#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "subcount/error.hpp"

namespace subcount {

/// Exact non-negative count with 128-bit range. Arithmetic that would wrap
/// throws OverflowError instead.
class Count {
 public:
  using Rep = unsigned __int128;

  constexpr Count() = default;
  constexpr Count(std::uint64_t v) : value_(v) {}  // NOLINT(implicit)

  static constexpr Count from_rep(Rep v) {
    Count c;
    c.value_ = v;
    return c;
  }

  static constexpr Count max() {
    return from_rep(std::numeric_limits<Rep>::max());
  }

  constexpr Rep rep() const { return value_; }

  Count& operator+=(Count other) {
    if (value_ > std::numeric_limits<Rep>::max() - other.value_) {
      throw OverflowError("exact count exceeds 128-bit range");
    }
    value_ += other.value_;
    return *this;
  }

  Count& operator*=(Count other) {
    if (other.value_ != 0 &&
        value_ > std::numeric_limits<Rep>::max() / other.value_) {
      throw OverflowError("exact count exceeds 128-bit range");
    }
    value_ *= other.value_;
    return *this;
  }

  friend Count operator+(Count a, Count b) { return a += b; }
  friend Count operator*(Count a, Count b) { return a *= b; }

  Count& operator++() { return *this += Count(1); }

  friend constexpr bool operator==(Count, Count) = default;
  friend constexpr auto operator<=>(Count a, Count b) {
    return a.value_ <=> b.value_;
  }

  bool fits_u64() const {
    return value_ <= std::numeric_limits<std::uint64_t>::max();
  }

  std::uint64_t to_u64() const {
    if (!fits_u64()) throw OverflowError("count does not fit in 64 bits");
    return static_cast<std::uint64_t>(value_);
  }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(value_));
  }

  std::string to_string() const {
    if (value_ == 0) return "0";
    std::string digits;
    for (Rep v = value_; v != 0; v /= 10) {
      digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

  friend std::ostream& operator<<(std::ostream& os, Count c) {
    return os << c.to_string();
  }

 private:
  Rep value_ = 0;
};

/// base^exp computed exactly; throws OverflowError if it leaves the range.
inline Count checked_pow(std::uint64_t base, unsigned exp) {
  Count result(1);
  for (unsigned i = 0; i < exp; ++i) result *= Count(base);
  return result;
}

/// base^exp in floating point by repeated multiplication. 0^0 == 1.
inline double real_pow(double base, unsigned exp) {
  double result = 1.0;
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

}  // namespace subcount

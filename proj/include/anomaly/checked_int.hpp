#pragma once

#include <cstdint>
#include <stdexcept>

namespace anomaly {

struct IntOverflow : std::overflow_error {
  IntOverflow() : std::overflow_error("64-bit integer overflow") {}
};

// int64 that throws IntOverflow instead of wrapping. Lets the cohomology engine run on machine
// words and retry with GMP integers only when entries actually grow.
class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  constexpr std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw IntOverflow();
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw IntOverflow();
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw IntOverflow();
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (b.v_ == -1) return -a;
    return a.v_ / b.v_;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  CheckedInt operator-() const {
    if (v_ == INT64_MIN) throw IntOverflow();
    return -v_;
  }
  CheckedInt& operator+=(CheckedInt b) { return *this = *this + b; }
  CheckedInt& operator-=(CheckedInt b) { return *this = *this - b; }
  CheckedInt& operator*=(CheckedInt b) { return *this = *this * b; }

  friend constexpr bool operator==(CheckedInt a, CheckedInt b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(CheckedInt a, CheckedInt b) { return a.v_ <=> b.v_; }

 private:
  std::int64_t v_ = 0;
};

inline CheckedInt abs_of(CheckedInt a) { return a < 0 ? -a : a; }

}  // namespace anomaly

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace engelkit {

/// Arbitrary-precision integer with an inline 64-bit fast path.
///
/// Values that fit in int64_t never touch GMP; overflow promotes to an mpz and
/// results are demoted again whenever they fit. Exponents in collection are
/// almost always tiny, while Hermite reduction can produce large entries, so
/// both regimes matter.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(long v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(long long v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v) { assign(v); }

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      if (o.big_)
        big_ = std::make_unique<mpz_class>(*o.big_);
      else
        big_.reset();
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;

  /// Parses an optionally signed decimal literal; throws std::invalid_argument.
  static Integer from_string(std::string_view text);

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && small_ == 1; }
  [[nodiscard]] int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }
  [[nodiscard]] bool is_odd() const noexcept { return big_ ? mpz_odd_p(big_->get_mpz_t()) != 0 : (small_ & 1) != 0; }
  /// Only meaningful when is_small().
  [[nodiscard]] std::int64_t small() const noexcept { return small_; }
  [[nodiscard]] bool fits_int64() const noexcept { return !big_; }
  /// Throws std::overflow_error when the value does not fit.
  [[nodiscard]] std::int64_t to_int64() const;
  [[nodiscard]] mpz_class to_mpz() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::size_t hash() const noexcept;

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  void assign(const mpz_class& v);
  void assign(mpz_class&& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;  // set iff the value does not fit in int64
};

Integer abs(const Integer& v);
/// Floor division; divisor must be nonzero.
Integer floor_div(const Integer& a, const Integer& b);
/// a - b * floor_div(a, b); lies in [0, b) for b > 0.
Integer floor_mod(const Integer& a, const Integer& b);
/// Exact division; b must divide a.
Integer div_exact(const Integer& a, const Integer& b);
/// True iff b divides a (b == 0 divides only 0).
bool divides(const Integer& b, const Integer& a);
/// Non-negative gcd.
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

struct ExtendedGcd {
  Integer g;  // gcd(a, b) >= 0
  Integer s;  // s * a + t * b == g
  Integer t;
};
ExtendedGcd xgcd(const Integer& a, const Integer& b);

}  // namespace engelkit

template <>
struct std::hash<engelkit::Integer> {
  std::size_t operator()(const engelkit::Integer& v) const noexcept { return v.hash(); }
};

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace probclone {

/// Exact rational number over 64-bit integers, always stored in lowest terms
/// with a positive denominator. Arithmetic that would overflow throws
/// std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(int num) : Rational(static_cast<std::int64_t>(num)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(double) = delete;  // go through parse() for decimal input

  /// Accepts "p/q", integers, and decimal / scientific literals ("0.25",
  /// "-1e-4"). Decimal inputs are converted exactly.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  explicit operator double() const { return to_double(); }

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

/// Exact square root; nullopt unless both numerator and denominator are
/// perfect squares (and the value is non-negative).
std::optional<Rational> exact_sqrt(const Rational& r);

/// Square root usable from scalar-generic code. Throws std::domain_error when
/// the result is irrational.
Rational sqrt(const Rational& r);

}  // namespace probclone

namespace Eigen {

template <>
struct NumTraits<probclone::Rational> : GenericNumTraits<probclone::Rational> {
  using Real = probclone::Rational;
  using NonInteger = probclone::Rational;
  using Nested = probclone::Rational;
  using Literal = probclone::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 18; }
};

}  // namespace Eigen

namespace probclone {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalMatrix3 = Eigen::Matrix<Rational, 3, 3>;

}  // namespace probclone

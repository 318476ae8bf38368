#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace paxp {

using BigInt = boost::multiprecision::cpp_int;

// Exact non-negative-denominator rational. Values are kept as given (not
// reduced) so that numerator/denominator can carry raw model counts;
// comparisons cross-multiply.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt numerator, BigInt denominator);

  const BigInt &numerator() const { return num_; }
  const BigInt &denominator() const { return den_; }

  Rational reduced() const;

  // "n/d" in lowest terms.
  std::string fraction() const;
  // Round-half-up decimal rendering with a fixed number of places.
  std::string decimal(int places = 6) const;
  double to_double() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const BigInt &n);

  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

private:
  BigInt num_;
  BigInt den_;
};

// Conditional probability of the predicted class; always in [0, 1].
using Precision = Rational;

// Probability threshold delta = p/q in [0, 1], built only from exact text.
class Threshold {
public:
  // Accepts plain decimal text such as "0.93", "1", "1.0", ".5".
  // Throws PreconditionError on anything else or on values outside [0, 1].
  static Threshold parse(std::string_view text);

  Threshold(BigInt p, BigInt q);

  const BigInt &p() const { return p_; }
  const BigInt &q() const { return q_; }

  // precision >= delta, decided as num * q >= p * den.
  bool admits(const Precision &precision) const;
  // Same test on raw counts.
  bool admits(const BigInt &favourable, const BigInt &total) const {
    return favourable * q_ >= p_ * total;
  }

  bool is_one() const { return p_ == q_; }
  bool is_zero() const { return p_ == 0; }

  // Original decimal text when parsed, otherwise "p/q".
  const std::string &text() const { return text_; }
  Rational as_rational() const { return Rational(p_, q_); }

private:
  BigInt p_;
  BigInt q_;
  std::string text_;
};

} // namespace paxp

#include "paxp/rational.hpp"

#include "paxp/error.hpp"

#include <cctype>

namespace paxp {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) {
    throw PreconditionError("rational with zero denominator");
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Rational Rational::reduced() const {
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g == 0) {
    return *this;
  }
  return Rational(num_ / g, den_ / g);
}

std::string Rational::fraction() const {
  Rational r = reduced();
  return r.num_.str() + "/" + r.den_.str();
}

std::string Rational::decimal(int places) const {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) {
    scale *= 10;
  }
  bool negative = num_ < 0;
  BigInt magnitude = negative ? BigInt(-num_) : num_;
  BigInt scaled = (magnitude * scale * 2 + den_) / (den_ * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = (negative ? "-" : "") + whole.str();
  if (places > 0) {
    std::string digits = frac.str();
    out += "." + std::string(static_cast<std::size_t>(places) - digits.size(), '0') + digits;
  }
  return out;
}

double Rational::to_double() const {
  return std::stod(decimal(15));
}

Rational operator+(const Rational &a, const Rational &b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_).reduced();
}

Rational operator/(const Rational &a, const BigInt &n) {
  return Rational(a.num_, a.den_ * n).reduced();
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Threshold Threshold::parse(std::string_view text) {
  auto fail = [&]() -> Threshold {
    throw PreconditionError("threshold must be a decimal in [0,1], got '" + std::string(text) + "'");
  };
  if (text.empty()) {
    return fail();
  }
  BigInt p = 0;
  BigInt q = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_point) {
        return fail();
      }
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      return fail();
    }
    seen_digit = true;
    p = p * 10 + (ch - '0');
    if (seen_point) {
      q *= 10;
    }
  }
  if (!seen_digit || p > q) {
    return fail();
  }
  Threshold t(p, q);
  t.text_ = std::string(text);
  return t;
}

Threshold::Threshold(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {
  if (q_ <= 0 || p_ < 0 || p_ > q_) {
    throw PreconditionError("threshold outside [0,1]");
  }
  text_ = q_ == 1 ? p_.str() : p_.str() + "/" + q_.str();
}

bool Threshold::admits(const Precision &precision) const {
  return precision.numerator() * q_ >= p_ * precision.denominator();
}

} // namespace paxp

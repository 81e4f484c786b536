#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qwa {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, kept in lowest terms with a positive denominator
// (zero is 0/1). Arithmetic is delegated to boost::multiprecision; this
// wrapper owns the literal grammar shared by all file formats:
// optional '-', digits, optionally '/' and digits ("-3/5", "4", "0").
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : value_(n) {}
  explicit Rational(const BigInt& n) : value_(n) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    // Exact division canonicalizes (lowest terms, positive denominator).
    value_ = Backend(num) / Backend(den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_zero() const { return value_.is_zero(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Backend(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Backend(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Backend(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
    return Rational(Backend(a.value_ / b.value_));
  }
  Rational operator-() const { return Rational(Backend(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }

  bool operator==(const Rational& o) const { return value_ == o.value_; }
  std::strong_ordering operator<=>(const Rational& o) const {
    if (value_ < o.value_) return std::strong_ordering::less;
    if (o.value_ < value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  static Rational parse(std::string_view text);
  std::string to_string() const {
    std::string s = numerator().str();
    if (denominator() != 1) s += "/" + denominator().str();
    return s;
  }

 private:
  using Backend = boost::multiprecision::cpp_rational;
  explicit Rational(Backend v) : value_(std::move(v)) {}
  Backend value_;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  };
  auto digits = [&](std::string_view part) -> BigInt {
    if (part.empty()) fail();
    for (char c : part)
      if (c < '0' || c > '9') fail();
    return BigInt(std::string(part));
  };

  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  BigInt num, den = 1;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    num = digits(rest.substr(0, slash));
    den = digits(rest.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator in rational literal '" + std::string(text) + "'");
  } else {
    num = digits(rest);
  }
  if (negative) num = -num;
  return Rational(num, den);
}

}  // namespace qwa

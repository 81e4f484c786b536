#pragma once

#include "qwa/rational.hpp"

#include <string>
#include <utility>

namespace qwa {

// Element of Q(i): a complex number with exact rational real and imaginary
// parts. All field operations are exact; there is no rounding anywhere.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(long long n) : re(n) {}
  GaussianRational(Rational real) : re(std::move(real)) {}
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }

  // Multiplicative inverse; the only division entry point.
  GaussianRational inv() const {
    if (is_zero()) throw std::invalid_argument("GaussianRational: inverse of zero");
    Rational n = norm_sq();
    return {re / n, -im / n};
  }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const GaussianRational&) const = default;

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    std::string imag = im.to_string() + "i";
    if (re.is_zero()) return imag;
    return re.to_string() + (im < Rational(0) ? "" : "+") + imag;
  }
};

}  // namespace qwa

#pragma once

#include "qwa/gaussian.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace qwa {

// Formal sum sum_k c_k * e^{t_k} with distinct nonnegative integer exponent
// tags t_k and Gaussian-rational coefficients. Distinct tags make the e^{t_k}
// linearly independent, so the sum is zero exactly when no terms remain;
// canonical form therefore never stores a zero coefficient. Tag 0 stands for
// e^0 = 1 and carries plain scalar weights.
class ExpSum {
 public:
  using Tag = std::uint64_t;

  ExpSum() = default;
  static ExpSum one() { return scalar(GaussianRational(1)); }
  static ExpSum scalar(const GaussianRational& c) { return term(0, c); }
  static ExpSum term(Tag t, const GaussianRational& c) {
    ExpSum s;
    s.add_term(t, c);
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Tag, GaussianRational>& terms() const { return terms_; }

  void add_term(Tag t, const GaussianRational& c);
  ExpSum& operator+=(const ExpSum& o);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) {
    a += b;
    return a;
  }
  // Product; exponent tags add since e^a * e^b = e^{a+b}.
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
  ExpSum scaled(const GaussianRational& c) const;

  bool operator==(const ExpSum&) const = default;
  std::string to_string() const;  // "0", or "{tag: coeff, ...}" sorted by tag

 private:
  std::map<Tag, GaussianRational> terms_;
};

}  // namespace qwa

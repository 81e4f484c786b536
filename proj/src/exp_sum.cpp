#include "qwa/exp_sum.hpp"

namespace qwa {

void ExpSum::add_term(Tag t, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum out;
  for (const auto& [ta, ca] : a.terms_)
    for (const auto& [tb, cb] : b.terms_)
      out.add_term(ta + tb, ca * cb);
  return out;
}

ExpSum ExpSum::scaled(const GaussianRational& c) const {
  ExpSum out;
  for (const auto& [t, coeff] : terms_) out.add_term(t, coeff * c);
  return out;
}

std::string ExpSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s = "{";
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(t) + ": " + c.to_string();
  }
  return s + "}";
}

}  // namespace qwa

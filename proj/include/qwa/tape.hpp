#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qwa {

// Tape symbol: an input letter or one of the two end-markers. File formats
// spell the markers "cent" and "dollar"; letters are single characters.
class Symbol {
 public:
  static Symbol cent() { return Symbol(Kind::Cent, '\0'); }
  static Symbol letter(char c) { return Symbol(Kind::Letter, c); }
  static Symbol dollar() { return Symbol(Kind::Dollar, '\0'); }
  static std::optional<Symbol> from_str(std::string_view s) {
    if (s == "cent") return cent();
    if (s == "dollar") return dollar();
    if (s.size() == 1) return letter(s[0]);
    return std::nullopt;
  }

  bool is_letter() const { return kind_ == Kind::Letter; }
  bool is_cent() const { return kind_ == Kind::Cent; }
  bool is_dollar() const { return kind_ == Kind::Dollar; }
  char chr() const {
    if (!is_letter()) throw std::logic_error("Symbol: end-marker has no character");
    return c_;
  }
  std::string str() const {
    if (is_cent()) return "cent";
    if (is_dollar()) return "dollar";
    return std::string(1, c_);
  }

  friend std::strong_ordering operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  enum class Kind { Cent, Letter, Dollar };
  Symbol(Kind k, char c) : kind_(k), c_(c) {}
  Kind kind_;
  char c_;
};

// Read-only two-way tape holding cent, the input, dollar at positions
// 0 .. n+1.
class Tape {
 public:
  explicit Tape(std::string_view input) : input_(input) {}

  int cells() const { return static_cast<int>(input_.size()) + 2; }
  bool in_range(int pos) const { return pos >= 0 && pos < cells(); }
  Symbol at(int pos) const {
    if (!in_range(pos)) throw std::out_of_range("Tape: position off the tape");
    if (pos == 0) return Symbol::cent();
    if (pos == cells() - 1) return Symbol::dollar();
    return Symbol::letter(input_[static_cast<std::size_t>(pos) - 1]);
  }

 private:
  std::string input_;
};

// Membership verdict shared by both automaton models.
enum class Verdict { InLanguage, NotInLanguage };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::InLanguage ? "in_language" : "not_in_language";
}

}  // namespace qwa

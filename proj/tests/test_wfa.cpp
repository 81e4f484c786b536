#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwa/wfa.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace qwa;
using test_support::hand_built_wfas;
using test_support::sum_over_paths;
using test_support::wfa_head_conflict;
using test_support::wfa_one_way_products;
using test_support::wfa_split_merge_cancel;
using test_support::wfa_two_way_tagged;

TEST_CASE("one-way products evaluate to the expected weight") {
  const Wfa w = wfa_one_way_products();
  const EvalResult r = evaluate(w, "ab");
  REQUIRE(r.status == EvalStatus::Done);
  // 2 * (1+i)
  CHECK(r.value == ExpSum::scalar({Rational(2), Rational(2)}));

  // Scan record: straight left-to-right pass.
  REQUIRE(r.scan.size() == 4);
  for (std::size_t k = 0; k < r.scan.size(); ++k) CHECK(r.scan[k].pos == static_cast<int>(k));
}

TEST_CASE("parallel branches merge and can cancel to an exact zero") {
  const Wfa w = wfa_split_merge_cancel();
  CHECK(evaluate(w, "").value == ExpSum::scalar(GaussianRational(7)));
  CHECK(evaluate(w, "a").value.is_zero());
  CHECK(evaluate(w, "aaa").value.is_zero());
  CHECK(recognize_zero(w, "a") == Verdict::InLanguage);
  CHECK(recognize_zero(w, "") == Verdict::NotInLanguage);
}

TEST_CASE("a two-way pass carries a tagged terminal weight") {
  const Wfa w = wfa_two_way_tagged();
  CHECK(evaluate(w, "").value == ExpSum::term(5, GaussianRational(1)));
  CHECK(evaluate(w, "ab").value == ExpSum::term(5, GaussianRational(-3)));
  CHECK(evaluate(w, "bb").value == ExpSum::term(5, GaussianRational(9)));

  // The head walks out to dollar and back to cent.
  const EvalResult r = evaluate(w, "ab");
  REQUIRE(r.status == EvalStatus::Done);
  std::vector<int> positions;
  for (const ScanStep& s : r.scan) positions.push_back(s.pos);
  CHECK(positions == std::vector<int>{0, 1, 2, 3, 2, 1, 0});
}

TEST_CASE("frontier evaluation equals the brute-force path sum") {
  for (const Wfa& w : hand_built_wfas()) {
    for (const std::string& x : enumerate_strings(w.sigma, 3)) {
      const EvalResult r = evaluate(w, x);
      REQUIRE(r.status == EvalStatus::Done);
      CHECK(r.value == sum_over_paths(w, x, 64));
    }
  }
}

TEST_CASE("head nondeterminism is detected and reported") {
  const Wfa w = wfa_head_conflict();
  const EvalResult r = evaluate(w, "aa");
  CHECK(r.status == EvalStatus::HeadNondeterminism);
  CHECK(r.steps == 2);  // conflict surfaces at the first 'a'
  CHECK(r.detail.find("disagree") != std::string::npos);

  const HeadCheck check = check_head_determinism(w, "aa");
  CHECK_FALSE(check.ok);
  CHECK(check.step == 2);

  CHECK_THROWS_AS(recognize_zero(w, "aa"), EvalError);
}

TEST_CASE("weight cancellation cannot hide a structural conflict") {
  // Two cent-edges into 'ghost' cancel exactly, so the frontier never sees
  // its conflicting 'a' transition; the structural dry-run still does.
  Wfa w;
  w.sigma = {'a'};
  const int s0 = test_support::add_state(w, "s0");
  const int ghost = test_support::add_state(w, "ghost");
  const int live = test_support::add_state(w, "live");
  const int fin = test_support::add_state(w, "fin");
  w.initial = s0;
  w.finals = {fin};
  test_support::add_edge(w, s0, Symbol::cent(), ExpSum::one(), ghost, +1);
  test_support::add_edge(w, s0, Symbol::cent(), ExpSum::scalar(GaussianRational(-1)), ghost, +1);
  test_support::add_edge(w, s0, Symbol::cent(), ExpSum::one(), live, +1);
  test_support::add_edge(w, live, Symbol::letter('a'), ExpSum::one(), live, +1);
  test_support::add_edge(w, ghost, Symbol::letter('a'), ExpSum::one(), ghost, -1);
  test_support::add_edge(w, live, Symbol::dollar(), ExpSum::one(), fin, 0);

  CHECK(evaluate(w, "aa").status == EvalStatus::Done);
  CHECK_FALSE(check_head_determinism(w, "aa").ok);
}

TEST_CASE("an automaton without transitions evaluates to zero without drama") {
  Wfa w;
  w.sigma = {'a'};
  w.states = {"only"};
  w.initial = 0;
  const EvalResult r = evaluate(w, "aa");
  CHECK(r.status == EvalStatus::Done);
  CHECK(r.value.is_zero());
  CHECK(check_head_determinism(w, "aa").ok);
}

TEST_CASE("an initial final state absorbs the unit weight immediately") {
  Wfa w;
  w.sigma = {'a'};
  w.states = {"fin"};
  w.initial = 0;
  w.finals = {0};
  const EvalResult r = evaluate(w, "aaa");
  CHECK(r.status == EvalStatus::Done);
  CHECK(r.value == ExpSum::one());
  CHECK(r.value == sum_over_paths(w, "aaa", 8));
}

TEST_CASE("paths that walk off the tape die quietly") {
  Wfa w;
  w.sigma = {'a'};
  const int back = test_support::add_state(w, "back");
  const int fin = test_support::add_state(w, "fin");
  w.initial = back;
  w.finals = {fin};
  test_support::add_edge(w, back, Symbol::cent(), ExpSum::one(), back, -1);
  test_support::add_edge(w, back, Symbol::letter('a'), ExpSum::one(), fin, 0);

  const EvalResult r = evaluate(w, "a");
  CHECK(r.status == EvalStatus::Done);
  CHECK(r.value.is_zero());
  CHECK(r.steps == 1);
}

TEST_CASE("a stationary loop exhausts the budget") {
  Wfa w;
  w.sigma = {'a'};
  w.states = {"spin"};
  w.initial = 0;
  w.transitions.push_back({0, Symbol::cent(), ExpSum::one(), 0, 0});
  const EvalResult r = evaluate(w, "a", 100);
  CHECK(r.status == EvalStatus::BudgetExhausted);
}

TEST_CASE("merge order does not affect the result") {
  std::mt19937_64 g(67);
  for (const Wfa& original : hand_built_wfas()) {
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      Wfa permuted = original;
      std::shuffle(permuted.transitions.begin(), permuted.transitions.end(), g);
      for (const std::string& x : enumerate_strings(original.sigma, 3)) {
        CHECK(evaluate(permuted, x).value == evaluate(original, x).value);
      }
    }
  }
}

TEST_CASE("string enumeration is length-then-lexicographic") {
  const auto strings = enumerate_strings({'a', 'b'}, 8);
  CHECK(strings.size() == 511);
  const std::vector<std::string> head(strings.begin(), strings.begin() + 7);
  CHECK(head == std::vector<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"});

  CHECK(enumerate_strings({'a', 'b'}, 0) == std::vector<std::string>{""});
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwa/qcfa.hpp"

#include "test_support.hpp"

#include <random>
#include <string>

using namespace qwa;
using test_support::is_palindrome;
using test_support::random_string;
using test_support::scan_product;

namespace {

bool has_diag(const std::vector<Diagnostic>& diags, const std::string& code,
              const std::string& where_fragment) {
  for (const auto& d : diags)
    if (d.code == code && d.where.find(where_fragment) != std::string::npos) return true;
  return false;
}

// Two quantum states, one classical state that measures on every letter with
// a non-final observable and walks right; accepts classically at dollar.
Qcfa tiny_measuring_machine() {
  Qcfa m;
  m.sigma = {'a'};
  m.quantum_states = {"q0", "q1"};
  m.classical_states = {"go", "yes"};
  m.q0 = 0;
  m.s0 = 0;
  m.s_acc = {1};
  const Symbol a = Symbol::letter('a');
  m.theta[{0, Symbol::cent()}] = CMatrix::identity(2);
  m.delta[{0, Symbol::cent()}] = {0, +1};
  m.theta[{0, a}] = Observable{{}, {1}, {0}};
  m.delta[{0, a}] = {0, +1};
  m.theta[{0, Symbol::dollar()}] = CMatrix::identity(2);
  m.delta[{0, Symbol::dollar()}] = {1, 0};
  return m;
}

}  // namespace

TEST_CASE("palindrome machine validates cleanly") {
  CHECK(validate(build_palindrome_machine()).empty());
}

TEST_CASE("validator reports a scaled (non-unitary) matrix") {
  Qcfa m = build_palindrome_machine();
  CMatrix bad = std::get<CMatrix>(m.theta.at({0, Symbol::letter('a')}));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) bad.at(r, c) = bad.at(r, c) * GaussianRational(2);
  m.theta[{0, Symbol::letter('a')}] = bad;
  CHECK(has_diag(validate(m), "unitarity", "(scan1, a)"));
}

TEST_CASE("validator reports q0 placed outside the non-halting part") {
  Qcfa m = tiny_measuring_machine();
  // Non-final observable (nh nonempty) with q0 in the accepting part.
  m.theta[{0, Symbol::letter('a')}] = Observable{{0}, {}, {1}};
  CHECK(has_diag(validate(m), "q0-placement", "(go, a)"));

  // A final measurement may place q0 anywhere.
  Qcfa pal = build_palindrome_machine();
  CHECK(validate(pal).empty());
}

TEST_CASE("validator reports broken observable partitions") {
  Qcfa overlap = tiny_measuring_machine();
  overlap.theta[{0, Symbol::letter('a')}] = Observable{{1}, {1}, {0}};
  CHECK(has_diag(validate(overlap), "observable-partition", "(go, a)"));

  Qcfa gap = tiny_measuring_machine();
  gap.theta[{0, Symbol::letter('a')}] = Observable{{}, {}, {0}};
  CHECK(has_diag(validate(gap), "observable-partition", "(go, a)"));
}

TEST_CASE("validator reports missing entries and end-marker escapes") {
  Qcfa m = build_palindrome_machine();
  m.delta.erase({0, Symbol::dollar()});
  CHECK(has_diag(validate(m), "delta-missing", "(scan1, dollar)"));

  Qcfa escape = build_palindrome_machine();
  escape.delta[{1, Symbol::cent()}] = {2, -1};
  CHECK(has_diag(validate(escape), "end-marker", "(rewind, cent)"));

  Qcfa runoff = build_palindrome_machine();
  runoff.delta[{0, Symbol::dollar()}] = {1, +1};
  CHECK(has_diag(validate(runoff), "end-marker", "(scan1, dollar)"));
}

TEST_CASE("measure splits the squared norm exactly") {
  const Observable final_obs{{0}, {1, 2}, {}};

  SUBCASE("vector entirely in the accepting part") {
    CVector v = CVector::zero(3);
    v.entries[0] = GaussianRational(Rational(3, 5), Rational(4, 5));
    const MeasureOutcome o = measure(v, final_obs);
    CHECK(o.p_acc == Rational(1));
    CHECK(o.p_rej == Rational(0));
    CHECK(o.v_nh == CVector::zero(3));
  }

  SUBCASE("frozen post-scan vector of the 'ab' run") {
    CVector v{{GaussianRational(Rational(616, 625)), GaussianRational(Rational(-12, 125)),
               GaussianRational(Rational(87, 625))}};
    const MeasureOutcome o = measure(v, final_obs);
    CHECK(o.p_acc == Rational(616, 625) * Rational(616, 625));
    CHECK(o.p_rej == Rational(11169, 390625));
    CHECK(o.p_acc + o.p_rej == Rational(1));
    CHECK(o.v_nh == CVector::zero(3));
  }

  SUBCASE("projection onto the full space changes nothing") {
    const Observable all_nh{{}, {}, {0, 1, 2}};
    CVector v{{GaussianRational(Rational(1, 2)), GaussianRational(Rational(1, 2)),
               GaussianRational(Rational(0), Rational(1, 2))}};
    const MeasureOutcome o = measure(v, all_nh);
    CHECK(o.p_acc == Rational(0));
    CHECK(o.p_rej == Rational(0));
    CHECK(o.v_nh == v);
  }
}

TEST_CASE("single steps follow theta and delta") {
  const Qcfa m = build_palindrome_machine();
  const Tape tape("ab");

  SimConfig c = initial_config(m);
  c = step(c, m, tape);  // cent: identity, move right
  CHECK(c.head == 1);
  CHECK(c.v == CVector::basis(3, 0));

  c = step(c, m, tape);  // 'a': apply A
  CHECK(c.head == 2);
  const CVector after_a{{GaussianRational(Rational(4, 5)), GaussianRational(Rational(-3, 5)),
                         GaussianRational(0)}};
  CHECK(c.v == after_a);

  SUBCASE("rewind leaves the register untouched") {
    SimConfig r;
    r.s = 1;
    r.head = 2;
    r.v = after_a;
    SimConfig next = step(r, m, tape);
    CHECK(next.v == after_a);
    CHECK(next.head == 1);
    CHECK(next.s == 1);
  }
}

TEST_CASE("a measurement step with the vector inside the non-halting part is silent") {
  const Qcfa m = tiny_measuring_machine();
  const Tape tape("a");
  SimConfig c = initial_config(m);
  c = step(c, m, tape);  // cent
  c = step(c, m, tape);  // measurement on 'a'; e_q0 lies in nh
  CHECK(c.p_acc == Rational(0));
  CHECK(c.p_rej == Rational(0));
  CHECK(c.v == CVector::basis(2, 0));
}

TEST_CASE("frozen run values on the palindrome machine") {
  const Qcfa m = build_palindrome_machine();

  SimResult aa = run(m, "aa");
  CHECK(aa.halt == HaltKind::MixedFinal);
  CHECK(aa.p_rej == Rational(0));
  CHECK(aa.p_acc == Rational(1));

  SimResult ab = run(m, "ab");
  CHECK(ab.halt == HaltKind::MixedFinal);
  CHECK(ab.p_rej == Rational(11169, 390625));
  CHECK(ab.p_acc == Rational(379456, 390625));
  CHECK(ab.p_acc + ab.p_rej == Rational(1));

  SimResult empty = run(m, "");
  CHECK(empty.p_rej == Rational(0));
  CHECK(empty.steps == 4);  // cent, dollar, cent, final measurement at dollar

  SimResult abba = run(m, "abba");
  CHECK(abba.p_acc == Rational(1));
}

TEST_CASE("membership verdicts follow the one-sided rule") {
  const Qcfa m = build_palindrome_machine();
  CHECK(membership_verdict(run(m, "aa")) == Verdict::InLanguage);
  CHECK(membership_verdict(run(m, "ab")) == Verdict::NotInLanguage);

  SimResult starved = run(m, "ab", 3);
  CHECK(starved.halt == HaltKind::BudgetExhausted);
  CHECK_THROWS_AS(membership_verdict(starved), std::invalid_argument);
}

TEST_CASE("classical halting states absorb the remaining amplitude") {
  Qcfa m = tiny_measuring_machine();
  SimResult r = run(m, "");
  CHECK(r.halt == HaltKind::Accepted);
  CHECK(r.p_acc == Rational(1));
  CHECK(r.p_rej == Rational(0));

  m.s_acc = {};
  m.s_rej = {1};
  SimResult rej = run(m, "");
  CHECK(rej.halt == HaltKind::Rejected);
  CHECK(rej.p_rej == Rational(1));
  CHECK(membership_verdict(rej) == Verdict::NotInLanguage);
}

TEST_CASE("palindrome machine structure matches the two-scan construction") {
  const Qcfa m = build_palindrome_machine();
  const CMatrix& a = std::get<CMatrix>(m.theta.at({0, Symbol::letter('a')}));
  CHECK(a.at(0, 0) == GaussianRational(Rational(4, 5)));

  const CMatrix& bt = std::get<CMatrix>(m.theta.at({2, Symbol::letter('b')}));
  CHECK(is_unitary(bt));
  CHECK(bt == transpose(std::get<CMatrix>(m.theta.at({0, Symbol::letter('b')}))));

  const Observable& final_obs = std::get<Observable>(m.theta.at({2, Symbol::dollar()}));
  CHECK(final_obs.acc == std::set<int>{0});
  CHECK(final_obs.rej == std::set<int>{1, 2});
  CHECK(final_obs.is_final());
}

TEST_CASE("norm conservation holds at every traced step") {
  const Qcfa m = build_palindrome_machine();
  std::mt19937_64 g(51);
  for (int k = 0; k < 200; ++k) {
    const std::string x = random_string(g, 12);
    const SimResult r = run(m, x, 0, true);
    REQUIRE(r.halt == HaltKind::MixedFinal);
    const auto n = Tape(x).cells();
    Rational prev_norm(1);
    for (const TraceEntry& e : r.trace) {
      CHECK(e.p_acc + e.p_rej + e.v.norm_sq() == Rational(1));
      CHECK(e.head >= 0);
      CHECK(e.head < n);
      // Unitary steps preserve the norm; only the final measurement moves it.
      if (e.step > 0 && e.step < r.steps) CHECK(e.v.norm_sq() == prev_norm);
      prev_norm = e.v.norm_sq();
    }
  }
}

TEST_CASE("one-sided dichotomy over all strings up to length 8") {
  const Qcfa m = build_palindrome_machine();
  std::size_t checked = 0;
  for (const std::string& x : enumerate_strings(m.sigma, 8)) {
    const SimResult r = run(m, x);
    CHECK(r.p_rej.is_zero() == is_palindrome(x));
    // Independent matrix oracle: the two-scan product telescopes exactly for
    // palindromes.
    const CMatrix u = scan_product(m, x);
    CHECK((u == CMatrix::identity(3)) == is_palindrome(x));
    ++checked;
  }
  CHECK(checked == 511);
}

TEST_CASE("runs are deterministic") {
  const Qcfa m = build_palindrome_machine();
  const SimResult r1 = run(m, "abab", 0, true);
  const SimResult r2 = run(m, "abab", 0, true);
  REQUIRE(r1.trace.size() == r2.trace.size());
  CHECK(r1.p_acc == r2.p_acc);
  CHECK(r1.p_rej == r2.p_rej);
  for (std::size_t k = 0; k < r1.trace.size(); ++k) {
    CHECK(r1.trace[k].s == r2.trace[k].s);
    CHECK(r1.trace[k].head == r2.trace[k].head);
    CHECK(r1.trace[k].v == r2.trace[k].v);
  }
}

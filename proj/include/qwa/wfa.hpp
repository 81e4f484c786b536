#pragma once

#include "qwa/exp_sum.hpp"
#include "qwa/tape.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwa {

struct WTransition {
  int from = 0;
  Symbol symbol = Symbol::cent();
  ExpSum weight;  // canonical; zero-weight transitions are never stored
  int to = 0;
  int dir = 0;
};

// Two-way weighted finite automaton over the exponential-sum semiring with a
// single initial state and boundary weights fixed at 1. Final states are
// absorbing accumulators: weight entering them joins the result sum and takes
// no further part in the run.
struct Wfa {
  std::vector<char> sigma;
  std::vector<std::string> states;
  int initial = 0;
  std::set<int> finals;
  std::vector<WTransition> transitions;

  int state_count() const { return static_cast<int>(states.size()); }
};

struct ScanStep {
  int pos = 0;
  Symbol symbol = Symbol::cent();
  bool operator==(const ScanStep&) const = default;
};
// The symbols that came under the head, in reading order.
using ScanRecord = std::vector<ScanStep>;

enum class EvalStatus { Done, HeadNondeterminism, BudgetExhausted };

struct EvalTraceEntry {
  std::uint64_t step = 0;
  int head = 0;                    // position read at this step
  std::map<int, ExpSum> active;    // path-weight sums after the step
};

struct EvalResult {
  EvalStatus status = EvalStatus::Done;
  ExpSum value;  // sum over all initial-to-final paths labelled by the scan
  ScanRecord scan;
  std::uint64_t steps = 0;
  std::string detail;  // set for head-nondeterminism
  std::vector<EvalTraceEntry> trace;
};

// Frontier evaluation of W on cent x dollar: one sparse weight map over the
// states, advanced by one common head direction per step, until no live path
// remains. Each step costs O(enabled transitions) semiring operations.
EvalResult evaluate(const Wfa& w, std::string_view x, std::uint64_t max_steps = 0,
                    bool want_trace = false);

struct HeadCheck {
  bool ok = true;
  std::uint64_t step = 0;
  std::string detail;
};

// Structural dry-run over reachable state sets (ignoring weights, so
// cancellations cannot hide a conflict): confirms that at every step all
// enabled transitions move the head the same way.
HeadCheck check_head_determinism(const Wfa& w, std::string_view x,
                                 std::uint64_t max_steps = 0);

struct EvalError : std::runtime_error {
  EvalStatus status;
  EvalError(EvalStatus st, const std::string& what) : std::runtime_error(what), status(st) {}
};

// {0}-recognition: the input is in the language exactly when the evaluated
// sum is zero. Throws EvalError if the evaluation did not complete.
Verdict recognize_zero(const Wfa& w, std::string_view x, std::uint64_t max_steps = 0);

// Strings over sigma with length <= max_len, in length-then-lexicographic
// order (lexicographic in the given sigma order).
std::vector<std::string> enumerate_strings(const std::vector<char>& sigma, int max_len);

}  // namespace qwa

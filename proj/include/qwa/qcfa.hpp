#pragma once

#include "qwa/matrix.hpp"
#include "qwa/rational.hpp"
#include "qwa/tape.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qwa {

// Measurement observable: a partition of the quantum states into accepting,
// rejecting and non-halting parts. An empty non-halting part marks a final
// measurement.
struct Observable {
  std::set<int> acc, rej, nh;
  bool is_final() const { return nh.empty(); }
};

// Quantum action attached to a (classical state, tape symbol) pair.
using ThetaEntry = std::variant<CMatrix, Observable>;

// Classical continuation: successor state and head move. For measurement
// entries this is the continuation taken on the non-halting outcome only;
// accepting and rejecting outcomes halt on the spot.
struct DeltaEntry {
  int next = 0;
  int dir = 0;  // -1, 0, +1
};

// Two-way finite automaton with quantum and classical states. The quantum
// register is evolved by theta, the classical control and head by delta.
struct Qcfa {
  std::vector<char> sigma;
  std::vector<std::string> quantum_states;
  std::vector<std::string> classical_states;
  int q0 = 0;
  int s0 = 0;
  std::set<int> s_acc, s_rej;
  std::map<std::pair<int, Symbol>, ThetaEntry> theta;
  std::map<std::pair<int, Symbol>, DeltaEntry> delta;

  int quantum_count() const { return static_cast<int>(quantum_states.size()); }
  int classical_count() const { return static_cast<int>(classical_states.size()); }
  bool is_halting(int s) const { return s_acc.count(s) != 0 || s_rej.count(s) != 0; }
  // Tape alphabet in the fixed order used everywhere: cent, letters, dollar.
  std::vector<Symbol> tape_symbols() const;
};

// A classical state is a measurement state if any of its theta entries is a
// measurement (over the full tape alphabet, end-markers included); otherwise
// it is a unitary state.
bool is_measurement_state(const Qcfa& m, int s);
std::set<int> measurement_states(const Qcfa& m);
// Union of the rejecting parts over all measurement entries of state s.
std::set<int> rejecting_union(const Qcfa& m, int s);

struct Diagnostic {
  std::string code;     // e.g. "unitarity", "observable-partition"
  std::string where;    // offending (state, symbol) or state, by name
  std::string message;
};

// Full model check: unitarity of every unitary entry, observable partitions,
// totality of theta/delta on non-halting states, q0 placement in non-final
// observables, direction range, end-marker discipline, index ranges.
// An empty result means the machine is valid.
std::vector<Diagnostic> validate(const Qcfa& m);

struct MeasureOutcome {
  Rational p_acc, p_rej;
  CVector v_nh;  // unnormalized projection onto the non-halting part
};

// Orthogonal measurement of v. Returns the exact squared norms of the
// accepting/rejecting projections and the *unnormalized* non-halting
// projection; the skipped renormalization divisor is the overall
// normalization factor that cancels in every later comparison.
MeasureOutcome measure(const CVector& v, const Observable& obs);

// One simulation configuration: classical state, head, unnormalized
// amplitude vector and the measurement probability accumulated so far.
// p_acc + p_rej + |v|^2 == 1 holds exactly at every step.
struct SimConfig {
  int s = 0;
  int head = 0;
  CVector v;
  Rational p_acc, p_rej;
  std::uint64_t steps = 0;
};

SimConfig initial_config(const Qcfa& m);

// Applies one transition: reads the symbol under the head, evolves the
// quantum register per theta and the classical state/head per delta.
// Requires a validated machine and a non-halted configuration.
SimConfig step(const SimConfig& c, const Qcfa& m, const Tape& tape);

enum class HaltKind { Accepted, Rejected, MixedFinal, BudgetExhausted };

std::string_view to_string(HaltKind h);

struct TraceEntry {
  std::uint64_t step = 0;
  int s = 0;
  int head = 0;
  CVector v;
  Rational p_acc, p_rej;
};

struct SimResult {
  Rational p_acc, p_rej;
  HaltKind halt = HaltKind::BudgetExhausted;
  std::uint64_t steps = 0;
  std::vector<TraceEntry> trace;  // filled when requested; entry 0 = initial
};

std::uint64_t default_step_budget(std::size_t classical_count, std::size_t input_len);

// Runs the machine on cent x dollar until a halting classical state is
// entered, a final measurement fires, or the step budget runs out.
// max_steps == 0 selects the default budget.
SimResult run(const Qcfa& m, std::string_view x, std::uint64_t max_steps = 0,
              bool want_trace = false);

// One-sided-error membership: in the language exactly when the accumulated
// rejection probability is zero. Undefined for budget-exhausted runs.
Verdict membership_verdict(const SimResult& r);

// The two-scan palindrome recognizer with a three-dimensional quantum part:
// scan 1 applies A on 'a' and B on 'b', a rewind pass returns the head to
// cent, scan 2 applies the inverses (the transposes), and a final measurement
// accepts on q0 and rejects on q1/q2.
Qcfa build_palindrome_machine();

}  // namespace qwa

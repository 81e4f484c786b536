#pragma once

#include "qwa/qcfa.hpp"
#include "qwa/wfa.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qwa {

// State layout of a compiled automaton. Every classical state i gets a block
// of 2*|Q| states: the entry family q(i,j) and the exit family s(i,j);
// measurement states additionally own one terminal state f(i,j) per
// rejecting quantum state. Ids: all q states first (i-major), then all s
// states, then the f states in (i, j)-lexicographic order.
struct BlockLayout {
  int num_classical = 0;
  int num_quantum = 0;
  std::map<std::pair<int, int>, int> f_ids;
  std::vector<std::string> names;

  int q_state(int i, int j) const { return i * num_quantum + j; }
  int s_state(int i, int j) const { return (num_classical + i) * num_quantum + j; }
  int f_state(int i, int j) const { return f_ids.at({i, j}); }
  int total_states() const {
    return 2 * num_classical * num_quantum + static_cast<int>(f_ids.size());
  }
};

BlockLayout make_block_layout(const Qcfa& m);

// Distinct positive exponent tags for the terminal transitions, one per
// (measurement state, rejecting quantum state), in (i, j)-lexicographic
// order starting at 1. Tag 0 stays reserved for plain scalar weights.
using ExponentAssignment = std::map<std::pair<int, int>, ExpSum::Tag>;

ExponentAssignment assign_exponents(const Qcfa& m);

// Translates a validated machine into an equivalent weighted automaton:
//   - a unitary entry U at (i, sigma) becomes intra-block edges
//     q(i,j1) --sigma/U[j2][j1]--> s(i,j2) with the head standing still
//     (U's action on basis vector j1 supplies column j1);
//   - a measurement entry becomes weight-1 edges q(i,j)->s(i,j) on the
//     non-halting part and single-term e^tag edges q(i,j)->f(i,j) on the
//     rejecting part; accepting amplitudes are dropped by edge omission;
//   - the classical move (i', d) at (i, sigma) becomes inter-block edges
//     s(i,j) --sigma/1--> q(i',j) moving the head by d.
// Zero-weight edges are never emitted. Throws std::invalid_argument when
// validate(m) reports diagnostics.
Wfa compile(const Qcfa& m);

struct CrossCheckRow {
  std::string input;
  bool sim_completed = false;  // halted within budget
  bool wfa_completed = false;  // evaluation finished within budget
  bool sim_zero = false;       // accumulated rejection probability is zero
  bool wfa_zero = false;       // evaluated sum is the zero ExpSum
  bool agree = false;
  bool trace_match = false;    // block-wise amplitude/weight equality held
  Rational p_rej;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  std::size_t disagreements = 0;
  std::size_t trace_mismatches = 0;
  std::size_t budget_failures = 0;
  bool all_ok() const { return disagreements == 0 && trace_mismatches == 0 && budget_failures == 0; }
};

// Runs simulator and compiled evaluator side by side on the given inputs:
// the zero-sum verdicts must coincide, and at every aligned macro-step the
// evaluator's active weights on the current block must equal the simulator's
// unnormalized amplitudes (the evaluator takes two steps per simulator step;
// amplitudes are compared after the intra-block half). jobs > 1 distributes
// the inputs over threads; rows always come back in input order.
CrossCheckReport cross_check_strings(const Qcfa& m, const Wfa& w,
                                     const std::vector<std::string>& inputs,
                                     std::uint64_t max_steps = 0, unsigned jobs = 1);

// Compiles m and cross-checks every string over its alphabet up to max_len,
// in length-then-lexicographic order.
CrossCheckReport cross_check(const Qcfa& m, int max_len, std::uint64_t max_steps = 0,
                             unsigned jobs = 1);

}  // namespace qwa

#include "qwa/compiler.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>
#include <variant>

namespace qwa {

BlockLayout make_block_layout(const Qcfa& m) {
  BlockLayout layout;
  layout.num_classical = m.classical_count();
  layout.num_quantum = m.quantum_count();

  auto name = [&](const char* family, int i, int j) {
    return std::string(family) + "." + m.classical_states[static_cast<std::size_t>(i)] + "." +
           m.quantum_states[static_cast<std::size_t>(j)];
  };
  for (int i = 0; i < layout.num_classical; ++i)
    for (int j = 0; j < layout.num_quantum; ++j)
      layout.names.push_back(name("q", i, j));
  for (int i = 0; i < layout.num_classical; ++i)
    for (int j = 0; j < layout.num_quantum; ++j)
      layout.names.push_back(name("s", i, j));

  int next_id = 2 * layout.num_classical * layout.num_quantum;
  for (int i : measurement_states(m))
    for (int j : rejecting_union(m, i)) {
      layout.f_ids[{i, j}] = next_id++;
      layout.names.push_back(name("f", i, j));
    }
  return layout;
}

ExponentAssignment assign_exponents(const Qcfa& m) {
  ExponentAssignment tags;
  ExpSum::Tag next = 1;
  for (int i : measurement_states(m))
    for (int j : rejecting_union(m, i)) tags[{i, j}] = next++;
  return tags;
}

Wfa compile(const Qcfa& m) {
  if (auto diags = validate(m); !diags.empty()) {
    std::string what = "compile: machine failed validation:";
    for (const auto& d : diags) what += " [" + d.code + " at " + d.where + "] " + d.message + ";";
    throw std::invalid_argument(what);
  }

  const BlockLayout layout = make_block_layout(m);
  const ExponentAssignment tags = assign_exponents(m);

  Wfa w;
  w.sigma = m.sigma;
  w.states = layout.names;
  w.initial = layout.q_state(m.s0, m.q0);
  for (const auto& [key, id] : layout.f_ids) w.finals.insert(id);

  auto add = [&](int from, const Symbol& sym, ExpSum weight, int to, int dir) {
    if (weight.is_zero()) return;
    w.transitions.push_back({from, sym, std::move(weight), to, dir});
  };

  const int nq = layout.num_quantum;
  for (int i = 0; i < layout.num_classical; ++i) {
    if (m.is_halting(i)) continue;  // halting blocks keep no edges
    for (const Symbol& sym : m.tape_symbols()) {
      const ThetaEntry& th = m.theta.at({i, sym});
      const DeltaEntry& de = m.delta.at({i, sym});
      bool has_continuation = true;

      if (const auto* u = std::get_if<CMatrix>(&th)) {
        for (int j1 = 0; j1 < nq; ++j1)
          for (int j2 = 0; j2 < nq; ++j2)
            add(layout.q_state(i, j1), sym,
                ExpSum::scalar(u->at(static_cast<std::size_t>(j2), static_cast<std::size_t>(j1))),
                layout.s_state(i, j2), 0);
      } else {
        const Observable& obs = std::get<Observable>(th);
        for (int j : obs.nh) add(layout.q_state(i, j), sym, ExpSum::one(), layout.s_state(i, j), 0);
        for (int j : obs.rej)
          add(layout.q_state(i, j), sym, ExpSum::term(tags.at({i, j}), GaussianRational(1)),
              layout.f_state(i, j), 0);
        // Accepting amplitudes are dropped: a weight-0 self-loop and no edge
        // sum over paths identically.
        has_continuation = !obs.is_final();
      }

      if (has_continuation)
        for (int j = 0; j < nq; ++j)
          add(layout.s_state(i, j), sym, ExpSum::one(), layout.q_state(de.next, j), de.dir);
    }
  }
  return w;
}

namespace {

// Trace alignment: simulator step t corresponds to evaluator macro-step
// 2t-1, right after the intra-block edges. There the evaluator's active map
// must carry exactly {s(i_pre, j) -> amplitude_j} for the pre-step classical
// state i_pre and the simulator's post-step amplitude vector.
bool traces_match(const BlockLayout& layout, const std::vector<TraceEntry>& sim,
                  const std::vector<EvalTraceEntry>& eval) {
  if (sim.empty()) return false;
  const std::size_t sim_steps = sim.size() - 1;  // entry 0 is the initial config
  if (eval.size() + 1 < 2 * sim_steps) return false;

  for (std::size_t t = 1; t <= sim_steps; ++t) {
    const EvalTraceEntry& half = eval[2 * t - 2];
    if (half.head != sim[t - 1].head) return false;

    std::map<int, ExpSum> expected;
    const int i_pre = sim[t - 1].s;
    const CVector& v = sim[t].v;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v.entries[j].is_zero()) continue;
      expected[layout.s_state(i_pre, static_cast<int>(j))] = ExpSum::scalar(v.entries[j]);
    }
    if (expected != half.active) return false;
  }
  return true;
}

CrossCheckRow check_one(const Qcfa& m, const Wfa& w, const BlockLayout& layout,
                        const std::string& x, std::uint64_t max_steps) {
  CrossCheckRow row;
  row.input = x;

  SimResult sim = run(m, x, max_steps, /*want_trace=*/true);
  EvalResult ev = evaluate(w, x, max_steps == 0 ? 0 : 2 * max_steps + 2, /*want_trace=*/true);

  row.sim_completed = sim.halt != HaltKind::BudgetExhausted;
  row.wfa_completed = ev.status == EvalStatus::Done;
  if (!row.sim_completed || !row.wfa_completed) return row;

  row.p_rej = sim.p_rej;
  row.sim_zero = sim.p_rej.is_zero();
  row.wfa_zero = ev.value.is_zero();
  row.agree = row.sim_zero == row.wfa_zero;
  row.trace_match = traces_match(layout, sim.trace, ev.trace);
  return row;
}

}  // namespace

CrossCheckReport cross_check_strings(const Qcfa& m, const Wfa& w,
                                     const std::vector<std::string>& inputs,
                                     std::uint64_t max_steps, unsigned jobs) {
  const BlockLayout layout = make_block_layout(m);

  CrossCheckReport report;
  report.rows.resize(inputs.size());

  if (jobs <= 1) {
    for (std::size_t k = 0; k < inputs.size(); ++k)
      report.rows[k] = check_one(m, w, layout, inputs[k], max_steps);
  } else {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t k = cursor.fetch_add(1); k < inputs.size(); k = cursor.fetch_add(1))
        report.rows[k] = check_one(m, w, layout, inputs[k], max_steps);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const CrossCheckRow& row : report.rows) {
    if (!row.sim_completed || !row.wfa_completed) {
      ++report.budget_failures;
      continue;
    }
    if (!row.agree) ++report.disagreements;
    if (!row.trace_match) ++report.trace_mismatches;
  }
  return report;
}

CrossCheckReport cross_check(const Qcfa& m, int max_len, std::uint64_t max_steps, unsigned jobs) {
  const Wfa w = compile(m);
  return cross_check_strings(m, w, enumerate_strings(m.sigma, max_len), max_steps, jobs);
}

}  // namespace qwa

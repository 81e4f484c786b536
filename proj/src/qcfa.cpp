#include "qwa/qcfa.hpp"

#include <array>
#include <stdexcept>

namespace qwa {

namespace {

std::string entry_name(const Qcfa& m, int s, const Symbol& sym) {
  return "(" + m.classical_states[static_cast<std::size_t>(s)] + ", " + sym.str() + ")";
}

const ThetaEntry& theta_at(const Qcfa& m, int s, const Symbol& sym) {
  auto it = m.theta.find({s, sym});
  if (it == m.theta.end())
    throw std::logic_error("theta undefined at " + entry_name(m, s, sym) +
                           "; machine was not validated");
  return it->second;
}

const DeltaEntry& delta_at(const Qcfa& m, int s, const Symbol& sym) {
  auto it = m.delta.find({s, sym});
  if (it == m.delta.end())
    throw std::logic_error("delta undefined at " + entry_name(m, s, sym) +
                           "; machine was not validated");
  return it->second;
}

}  // namespace

std::vector<Symbol> Qcfa::tape_symbols() const {
  std::vector<Symbol> out;
  out.push_back(Symbol::cent());
  for (char c : sigma) out.push_back(Symbol::letter(c));
  out.push_back(Symbol::dollar());
  return out;
}

bool is_measurement_state(const Qcfa& m, int s) {
  for (const Symbol& sym : m.tape_symbols()) {
    auto it = m.theta.find({s, sym});
    if (it != m.theta.end() && std::holds_alternative<Observable>(it->second)) return true;
  }
  return false;
}

std::set<int> measurement_states(const Qcfa& m) {
  std::set<int> out;
  for (int s = 0; s < m.classical_count(); ++s)
    if (is_measurement_state(m, s)) out.insert(s);
  return out;
}

std::set<int> rejecting_union(const Qcfa& m, int s) {
  std::set<int> out;
  for (const Symbol& sym : m.tape_symbols()) {
    auto it = m.theta.find({s, sym});
    if (it == m.theta.end()) continue;
    if (const auto* obs = std::get_if<Observable>(&it->second))
      out.insert(obs->rej.begin(), obs->rej.end());
  }
  return out;
}

std::vector<Diagnostic> validate(const Qcfa& m) {
  std::vector<Diagnostic> diags;
  auto report = [&](std::string code, std::string where, std::string message) {
    diags.push_back({std::move(code), std::move(where), std::move(message)});
  };

  const int nq = m.quantum_count();
  const int ns = m.classical_count();

  if (nq == 0) report("state-range", "quantum_states", "no quantum states");
  if (ns == 0) report("state-range", "classical_states", "no classical states");
  if (m.q0 < 0 || m.q0 >= nq) report("state-range", "q0", "initial quantum state out of range");
  if (m.s0 < 0 || m.s0 >= ns) report("state-range", "s0", "initial classical state out of range");
  for (int s : m.s_acc)
    if (s < 0 || s >= ns) report("state-range", "s_acc", "accepting state out of range");
  for (int s : m.s_rej) {
    if (s < 0 || s >= ns) report("state-range", "s_rej", "rejecting state out of range");
    if (m.s_acc.count(s))
      report("halting-overlap", m.classical_states[static_cast<std::size_t>(s)],
             "state is both accepting and rejecting");
  }
  if (!diags.empty()) return diags;  // index errors poison everything below

  const std::vector<Symbol> gamma = m.tape_symbols();

  auto check_observable = [&](const Observable& obs, const std::string& where) {
    std::set<int> seen;
    std::size_t total = obs.acc.size() + obs.rej.size() + obs.nh.size();
    for (const auto* part : {&obs.acc, &obs.rej, &obs.nh})
      for (int q : *part) {
        if (q < 0 || q >= nq) {
          report("observable-partition", where, "quantum state index out of range");
          return;
        }
        seen.insert(q);
      }
    if (seen.size() != total)
      report("observable-partition", where, "acc/rej/nh parts are not pairwise disjoint");
    else if (static_cast<int>(seen.size()) != nq)
      report("observable-partition", where, "acc/rej/nh parts do not cover all quantum states");
    if (!obs.is_final() && obs.nh.count(m.q0) == 0)
      report("q0-placement", where,
             "initial quantum state must lie in the non-halting part of a non-final observable");
  };

  for (int s = 0; s < ns; ++s) {
    if (m.is_halting(s)) continue;
    for (const Symbol& sym : gamma) {
      const std::string where = entry_name(m, s, sym);
      auto th = m.theta.find({s, sym});
      if (th == m.theta.end()) {
        report("theta-missing", where, "theta is not total: entry missing");
      } else if (const auto* u = std::get_if<CMatrix>(&th->second)) {
        if (u->rows() != static_cast<std::size_t>(nq) || u->cols() != static_cast<std::size_t>(nq))
          report("unitarity", where, "matrix dimensions do not match the quantum state count");
        else if (!is_unitary(*u))
          report("unitarity", where, "matrix is not unitary");
      } else {
        check_observable(std::get<Observable>(th->second), where);
      }

      auto de = m.delta.find({s, sym});
      if (de == m.delta.end()) {
        report("delta-missing", where, "delta is not total: entry missing");
        continue;
      }
      if (de->second.next < 0 || de->second.next >= ns)
        report("state-range", where, "delta successor state out of range");
      if (de->second.dir < -1 || de->second.dir > 1)
        report("direction-range", where, "direction must be -1, 0 or +1");
      if (sym.is_cent() && de->second.dir == -1)
        report("end-marker", where, "head may not move left of cent");
      if (sym.is_dollar() && de->second.dir == 1)
        report("end-marker", where, "head may not move right of dollar");
    }
  }

  for (const auto& [key, _] : m.theta) {
    if (key.first < 0 || key.first >= ns)
      report("state-range", "theta", "entry keyed by an out-of-range classical state");
    else if (m.is_halting(key.first))
      report("halting-entry", entry_name(m, key.first, key.second),
             "theta entry on a halting classical state");
  }
  for (const auto& [key, _] : m.delta) {
    if (key.first < 0 || key.first >= ns)
      report("state-range", "delta", "entry keyed by an out-of-range classical state");
    else if (m.is_halting(key.first))
      report("halting-entry", entry_name(m, key.first, key.second),
             "delta entry on a halting classical state");
  }

  return diags;
}

MeasureOutcome measure(const CVector& v, const Observable& obs) {
  MeasureOutcome out;
  out.v_nh = CVector::zero(v.size());
  for (std::size_t q = 0; q < v.size(); ++q) {
    const GaussianRational& amp = v.entries[q];
    if (obs.acc.count(static_cast<int>(q)))
      out.p_acc += amp.norm_sq();
    else if (obs.rej.count(static_cast<int>(q)))
      out.p_rej += amp.norm_sq();
    else
      out.v_nh.entries[q] = amp;
  }
  return out;
}

SimConfig initial_config(const Qcfa& m) {
  SimConfig c;
  c.s = m.s0;
  c.head = 0;
  c.v = CVector::basis(static_cast<std::size_t>(m.quantum_count()),
                       static_cast<std::size_t>(m.q0));
  return c;
}

SimConfig step(const SimConfig& c, const Qcfa& m, const Tape& tape) {
  if (m.is_halting(c.s)) throw std::logic_error("step: configuration already halted");
  if (!tape.in_range(c.head)) throw std::logic_error("step: head off the tape");

  const Symbol sym = tape.at(c.head);
  SimConfig next = c;

  const ThetaEntry& th = theta_at(m, c.s, sym);
  if (const auto* u = std::get_if<CMatrix>(&th)) {
    next.v = mat_apply(*u, c.v);
  } else {
    MeasureOutcome o = measure(c.v, std::get<Observable>(th));
    next.p_acc += o.p_acc;
    next.p_rej += o.p_rej;
    next.v = std::move(o.v_nh);
  }

  const DeltaEntry& d = delta_at(m, c.s, sym);
  next.s = d.next;
  next.head = c.head + d.dir;
  if (!tape.in_range(next.head))
    throw std::logic_error("step: head left the tape at " + entry_name(m, c.s, sym) +
                           "; machine was not validated");
  next.steps = c.steps + 1;
  return next;
}

std::string_view to_string(HaltKind h) {
  switch (h) {
    case HaltKind::Accepted: return "accepted";
    case HaltKind::Rejected: return "rejected";
    case HaltKind::MixedFinal: return "mixed_final";
    case HaltKind::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

std::uint64_t default_step_budget(std::size_t classical_count, std::size_t input_len) {
  return 10 * (input_len + 2) * classical_count;
}

SimResult run(const Qcfa& m, std::string_view x, std::uint64_t max_steps, bool want_trace) {
  if (max_steps == 0)
    max_steps = default_step_budget(static_cast<std::size_t>(m.classical_count()), x.size());

  const Tape tape(x);
  SimConfig c = initial_config(m);

  SimResult result;
  auto record = [&](const SimConfig& cfg) {
    if (want_trace) result.trace.push_back({cfg.steps, cfg.s, cfg.head, cfg.v, cfg.p_acc, cfg.p_rej});
  };
  record(c);

  while (true) {
    if (m.is_halting(c.s)) {
      // The remaining unnormalized amplitude halts with the classical verdict.
      if (m.s_acc.count(c.s))
        c.p_acc += c.v.norm_sq();
      else
        c.p_rej += c.v.norm_sq();
      c.v = CVector::zero(c.v.size());
      result.halt = m.s_acc.count(c.s) ? HaltKind::Accepted : HaltKind::Rejected;
      break;
    }
    if (c.steps >= max_steps) {
      result.halt = HaltKind::BudgetExhausted;
      break;
    }

    const Symbol sym = tape.at(c.head);
    const ThetaEntry& th = theta_at(m, c.s, sym);
    const auto* obs = std::get_if<Observable>(&th);
    const bool final_measurement = obs != nullptr && obs->is_final();

    c = step(c, m, tape);
    record(c);

    if (final_measurement) {
      result.halt = HaltKind::MixedFinal;
      break;
    }
  }

  result.p_acc = c.p_acc;
  result.p_rej = c.p_rej;
  result.steps = c.steps;
  return result;
}

Verdict membership_verdict(const SimResult& r) {
  if (r.halt == HaltKind::BudgetExhausted)
    throw std::invalid_argument("membership_verdict: undefined for budget-exhausted runs");
  return r.p_rej.is_zero() ? Verdict::InLanguage : Verdict::NotInLanguage;
}

namespace {

CMatrix real_matrix3(const std::array<std::array<Rational, 3>, 3>& rows) {
  CMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m.at(i, j) = GaussianRational(rows[i][j]);
  return m;
}

}  // namespace

Qcfa build_palindrome_machine() {
  Qcfa m;
  m.sigma = {'a', 'b'};
  m.quantum_states = {"q0", "q1", "q2"};
  m.classical_states = {"scan1", "rewind", "scan2"};
  m.q0 = 0;
  m.s0 = 0;

  const CMatrix a = real_matrix3({{{Rational(4, 5), Rational(3, 5), 0},
                                   {Rational(-3, 5), Rational(4, 5), 0},
                                   {0, 0, 1}}});
  const CMatrix b = real_matrix3({{{Rational(4, 5), 0, Rational(3, 5)},
                                   {0, 1, 0},
                                   {Rational(-3, 5), 0, Rational(4, 5)}}});
  const CMatrix id = CMatrix::identity(3);

  const int scan1 = 0, rewind = 1, scan2 = 2;
  const Symbol ca = Symbol::letter('a'), cb = Symbol::letter('b');
  const Symbol cent = Symbol::cent(), dollar = Symbol::dollar();

  // First scan: apply A/B moving right, hand over to the rewind pass at dollar.
  m.theta[{scan1, cent}] = id;
  m.delta[{scan1, cent}] = {scan1, +1};
  m.theta[{scan1, ca}] = a;
  m.delta[{scan1, ca}] = {scan1, +1};
  m.theta[{scan1, cb}] = b;
  m.delta[{scan1, cb}] = {scan1, +1};
  m.theta[{scan1, dollar}] = id;
  m.delta[{scan1, dollar}] = {rewind, -1};

  // Rewind: identity quantum action while the head returns to cent.
  m.theta[{rewind, ca}] = id;
  m.delta[{rewind, ca}] = {rewind, -1};
  m.theta[{rewind, cb}] = id;
  m.delta[{rewind, cb}] = {rewind, -1};
  m.theta[{rewind, dollar}] = id;
  m.delta[{rewind, dollar}] = {rewind, -1};
  m.theta[{rewind, cent}] = id;
  m.delta[{rewind, cent}] = {scan2, +1};

  // Second scan: apply the inverses (transposes) moving right; at dollar a
  // final measurement accepts on q0 and rejects on q1/q2.
  m.theta[{scan2, ca}] = transpose(a);
  m.delta[{scan2, ca}] = {scan2, +1};
  m.theta[{scan2, cb}] = transpose(b);
  m.delta[{scan2, cb}] = {scan2, +1};
  m.theta[{scan2, cent}] = id;
  m.delta[{scan2, cent}] = {scan2, +1};
  m.theta[{scan2, dollar}] = Observable{{0}, {1, 2}, {}};
  m.delta[{scan2, dollar}] = {scan2, 0};  // never taken: the measurement is final

  return m;
}

}  // namespace qwa

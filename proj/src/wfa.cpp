#include "qwa/wfa.hpp"

#include <utility>

namespace qwa {

namespace {

using TransitionIndex = std::map<std::pair<int, Symbol>, std::vector<const WTransition*>>;

TransitionIndex index_transitions(const Wfa& w) {
  TransitionIndex idx;
  for (const WTransition& t : w.transitions) idx[{t.from, t.symbol}].push_back(&t);
  return idx;
}

// Moves weight sitting on final states into the accumulator.
void absorb_finals(std::map<int, ExpSum>& active, const std::set<int>& finals, ExpSum& accum) {
  for (int f : finals) {
    auto it = active.find(f);
    if (it == active.end()) continue;
    accum += it->second;
    active.erase(it);
  }
}

}  // namespace

EvalResult evaluate(const Wfa& w, std::string_view x, std::uint64_t max_steps, bool want_trace) {
  if (max_steps == 0)
    max_steps = 10 * (x.size() + 2) * static_cast<std::size_t>(w.state_count());

  const Tape tape(x);
  const TransitionIndex idx = index_transitions(w);

  EvalResult result;
  std::map<int, ExpSum> active;
  active.emplace(w.initial, ExpSum::one());
  absorb_finals(active, w.finals, result.value);

  int head = 0;
  while (!active.empty()) {
    if (result.steps >= max_steps) {
      result.status = EvalStatus::BudgetExhausted;
      return result;
    }
    if (!tape.in_range(head)) {
      // No symbol under the head: no live path can extend.
      break;
    }
    const Symbol sym = tape.at(head);
    result.scan.push_back({head, sym});
    ++result.steps;

    // All transitions enabled this step must agree on one head direction.
    const WTransition* chosen = nullptr;
    for (const auto& [state, weight] : active) {
      auto it = idx.find({state, sym});
      if (it == idx.end()) continue;
      for (const WTransition* t : it->second) {
        if (chosen == nullptr) {
          chosen = t;
        } else if (t->dir != chosen->dir) {
          result.status = EvalStatus::HeadNondeterminism;
          result.detail = "step " + std::to_string(result.steps) + ": transitions from '" +
                          w.states[static_cast<std::size_t>(chosen->from)] + "' and '" +
                          w.states[static_cast<std::size_t>(t->from)] + "' on '" + sym.str() +
                          "' disagree on the head direction";
          return result;
        }
      }
    }

    std::map<int, ExpSum> next;
    for (const auto& [state, weight] : active) {
      auto it = idx.find({state, sym});
      if (it == idx.end()) continue;  // path dies
      for (const WTransition* t : it->second) {
        ExpSum contribution = weight * t->weight;
        if (contribution.is_zero()) continue;
        auto slot = next.find(t->to);
        if (slot == next.end()) {
          next.emplace(t->to, std::move(contribution));
        } else {
          slot->second += contribution;
          if (slot->second.is_zero()) next.erase(slot);
        }
      }
    }
    absorb_finals(next, w.finals, result.value);

    if (want_trace) result.trace.push_back({result.steps, head, next});
    active = std::move(next);
    if (chosen != nullptr) head += chosen->dir;
  }

  result.status = EvalStatus::Done;
  return result;
}

HeadCheck check_head_determinism(const Wfa& w, std::string_view x, std::uint64_t max_steps) {
  if (max_steps == 0)
    max_steps = 10 * (x.size() + 2) * static_cast<std::size_t>(w.state_count());

  const Tape tape(x);
  const TransitionIndex idx = index_transitions(w);

  std::set<int> current;
  if (!w.finals.count(w.initial)) current.insert(w.initial);

  HeadCheck check;
  int head = 0;
  std::uint64_t steps = 0;
  while (!current.empty() && steps < max_steps && tape.in_range(head)) {
    const Symbol sym = tape.at(head);
    ++steps;

    const WTransition* chosen = nullptr;
    std::set<int> next;
    for (int state : current) {
      auto it = idx.find({state, sym});
      if (it == idx.end()) continue;
      for (const WTransition* t : it->second) {
        if (chosen == nullptr) {
          chosen = t;
        } else if (t->dir != chosen->dir) {
          check.ok = false;
          check.step = steps;
          check.detail = "step " + std::to_string(steps) + ": transitions from '" +
                         w.states[static_cast<std::size_t>(chosen->from)] + "' and '" +
                         w.states[static_cast<std::size_t>(t->from)] + "' on '" + sym.str() +
                         "' disagree on the head direction";
          return check;
        }
        if (!w.finals.count(t->to)) next.insert(t->to);
      }
    }
    current = std::move(next);
    if (chosen != nullptr) head += chosen->dir;
  }
  return check;
}

Verdict recognize_zero(const Wfa& w, std::string_view x, std::uint64_t max_steps) {
  EvalResult r = evaluate(w, x, max_steps);
  if (r.status == EvalStatus::HeadNondeterminism)
    throw EvalError(r.status, "recognize_zero: " + r.detail);
  if (r.status == EvalStatus::BudgetExhausted)
    throw EvalError(r.status, "recognize_zero: step budget exhausted");
  return r.value.is_zero() ? Verdict::InLanguage : Verdict::NotInLanguage;
}

std::vector<std::string> enumerate_strings(const std::vector<char>& sigma, int max_len) {
  std::vector<std::string> out;
  std::vector<std::string> frontier = {""};
  out.push_back("");
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& s : frontier)
      for (char c : sigma) {
        next.push_back(s + c);
        out.push_back(next.back());
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace qwa

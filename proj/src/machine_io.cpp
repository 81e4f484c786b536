#include "qwa/machine_io.hpp"

#include <fstream>
#include <map>
#include <variant>

namespace qwa {

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

const Json& need(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail("missing key '" + key + "'");
  return *it;
}

std::string need_string(const Json& j, const std::string& key) {
  const Json& v = need(j, key);
  if (!v.is_string()) fail("key '" + key + "' must be a string");
  return v.get<std::string>();
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail("expected a rational string at " + where);
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(std::string(e.what()) + " at " + where);
  }
}

Json complex_to_json(const GaussianRational& z) {
  return Json{{"re", z.re.to_string()}, {"im", z.im.to_string()}};
}

GaussianRational complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail("expected a complex object at " + where);
  return {rational_from_json(need(j, "re"), where + ".re"),
          rational_from_json(need(j, "im"), where + ".im")};
}

// Name table with lookup that names the offending key on failure.
class NameIndex {
 public:
  NameIndex(const Json& list, const std::string& what) : what_(what) {
    if (!list.is_array()) fail(what + " must be an array of names");
    for (const Json& item : list) {
      if (!item.is_string()) fail(what + " entries must be strings");
      std::string name = item.get<std::string>();
      if (name.find(':') != std::string::npos)
        fail(what + " name '" + name + "' may not contain ':'");
      if (!index_.emplace(name, static_cast<int>(names_.size())).second)
        fail("duplicate name '" + name + "' in " + what_);
      names_.push_back(std::move(name));
    }
  }

  int at(const std::string& name, const std::string& where) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail("unknown " + what_ + " reference '" + name + "' at " + where);
    return it->second;
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::string what_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

std::vector<char> sigma_from_json(const Json& j) {
  const Json& list = need(j, "sigma");
  if (!list.is_array()) fail("sigma must be an array");
  std::vector<char> sigma;
  for (const Json& item : list) {
    if (!item.is_string() || item.get<std::string>().size() != 1)
      fail("sigma entries must be single-character strings");
    char c = item.get<std::string>()[0];
    for (char seen : sigma)
      if (seen == c) fail(std::string("duplicate sigma letter '") + c + "'");
    sigma.push_back(c);
  }
  return sigma;
}

Json sigma_to_json(const std::vector<char>& sigma) {
  Json list = Json::array();
  for (char c : sigma) list.push_back(std::string(1, c));
  return list;
}

Symbol symbol_from_key(const std::string& text, const std::vector<char>& sigma,
                       const std::string& where) {
  auto sym = Symbol::from_str(text);
  if (!sym) fail("unknown symbol '" + text + "' at " + where);
  if (sym->is_letter()) {
    bool known = false;
    for (char c : sigma) known = known || c == sym->chr();
    if (!known) fail("symbol '" + text + "' at " + where + " is not in sigma");
  }
  return *sym;
}

std::set<int> state_set_from_json(const Json& list, const NameIndex& names,
                                  const std::string& where) {
  if (!list.is_array()) fail(where + " must be an array of names");
  std::set<int> out;
  for (const Json& item : list) {
    if (!item.is_string()) fail(where + " entries must be strings");
    out.insert(names.at(item.get<std::string>(), where));
  }
  return out;
}

Json name_list(const std::set<int>& ids, const std::vector<std::string>& names) {
  Json list = Json::array();
  for (int id : ids) list.push_back(names[static_cast<std::size_t>(id)]);
  return list;
}

}  // namespace

Json qcfa_to_json(const Qcfa& m) {
  Json j;
  j["sigma"] = sigma_to_json(m.sigma);
  j["quantum_states"] = m.quantum_states;
  j["classical_states"] = m.classical_states;
  j["q0"] = m.quantum_states[static_cast<std::size_t>(m.q0)];
  j["s0"] = m.classical_states[static_cast<std::size_t>(m.s0)];
  j["s_acc"] = name_list(m.s_acc, m.classical_states);
  j["s_rej"] = name_list(m.s_rej, m.classical_states);

  Json theta = Json::object();
  for (const auto& [key, entry] : m.theta) {
    const std::string k = m.classical_states[static_cast<std::size_t>(key.first)] + ":" + key.second.str();
    if (const auto* u = std::get_if<CMatrix>(&entry)) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < u->rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < u->cols(); ++c) row.push_back(complex_to_json(u->at(r, c)));
        rows.push_back(std::move(row));
      }
      theta[k] = Json{{"unitary", std::move(rows)}};
    } else {
      const Observable& obs = std::get<Observable>(entry);
      theta[k] = Json{{"measure", Json{{"acc", name_list(obs.acc, m.quantum_states)},
                                       {"rej", name_list(obs.rej, m.quantum_states)},
                                       {"nh", name_list(obs.nh, m.quantum_states)}}}};
    }
  }
  j["theta"] = std::move(theta);

  Json delta = Json::object();
  for (const auto& [key, entry] : m.delta) {
    const std::string k = m.classical_states[static_cast<std::size_t>(key.first)] + ":" + key.second.str();
    delta[k] = Json{{"next", m.classical_states[static_cast<std::size_t>(entry.next)]},
                    {"dir", entry.dir}};
  }
  j["delta"] = std::move(delta);
  return j;
}

Qcfa qcfa_from_json(const Json& j) {
  if (!j.is_object()) fail("machine file must hold a JSON object");
  Qcfa m;
  m.sigma = sigma_from_json(j);

  NameIndex quantum(need(j, "quantum_states"), "quantum_states");
  NameIndex classical(need(j, "classical_states"), "classical_states");
  m.quantum_states = quantum.names();
  m.classical_states = classical.names();
  m.q0 = quantum.at(need_string(j, "q0"), "q0");
  m.s0 = classical.at(need_string(j, "s0"), "s0");
  m.s_acc = state_set_from_json(need(j, "s_acc"), classical, "s_acc");
  m.s_rej = state_set_from_json(need(j, "s_rej"), classical, "s_rej");

  auto split_key = [&](const std::string& key, const std::string& table) {
    auto colon = key.rfind(':');
    if (colon == std::string::npos) fail("key '" + key + "' in " + table + " must be 'state:symbol'");
    const std::string where = table + "['" + key + "']";
    int s = classical.at(key.substr(0, colon), where);
    Symbol sym = symbol_from_key(key.substr(colon + 1), m.sigma, where);
    return std::pair<int, Symbol>(s, sym);
  };

  const Json& theta = need(j, "theta");
  if (!theta.is_object()) fail("theta must be an object");
  for (const auto& [key, value] : theta.items()) {
    const std::string where = "theta['" + key + "']";
    auto mapkey = split_key(key, "theta");
    const bool has_unitary = value.is_object() && value.contains("unitary");
    const bool has_measure = value.is_object() && value.contains("measure");
    if (has_unitary == has_measure)
      fail(where + " must hold exactly one of 'unitary' or 'measure'");
    if (has_unitary) {
      const Json& rows = value["unitary"];
      const std::size_t n = m.quantum_states.size();
      if (!rows.is_array() || rows.size() != n)
        fail(where + ": matrix must have one row per quantum state");
      CMatrix u(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n)
          fail(where + ": matrix row " + std::to_string(r) + " must have " + std::to_string(n) +
               " entries");
        for (std::size_t c = 0; c < n; ++c) u.at(r, c) = complex_from_json(rows[r][c], where);
      }
      m.theta.emplace(mapkey, std::move(u));
    } else {
      const Json& parts = value["measure"];
      Observable obs;
      obs.acc = state_set_from_json(need(parts, "acc"), quantum, where + ".acc");
      obs.rej = state_set_from_json(need(parts, "rej"), quantum, where + ".rej");
      obs.nh = state_set_from_json(need(parts, "nh"), quantum, where + ".nh");
      m.theta.emplace(mapkey, std::move(obs));
    }
  }

  const Json& delta = need(j, "delta");
  if (!delta.is_object()) fail("delta must be an object");
  for (const auto& [key, value] : delta.items()) {
    const std::string where = "delta['" + key + "']";
    auto mapkey = split_key(key, "delta");
    DeltaEntry entry;
    entry.next = classical.at(need_string(value, "next"), where);
    const Json& dir = need(value, "dir");
    if (!dir.is_number_integer()) fail(where + ".dir must be an integer");
    entry.dir = dir.get<int>();
    if (entry.dir < -1 || entry.dir > 1) fail(where + ".dir must be -1, 0 or 1");
    m.delta.emplace(mapkey, entry);
  }
  return m;
}

namespace {

Json weight_to_json(const ExpSum& weight) {
  auto term = [](ExpSum::Tag tag, const GaussianRational& coeff) {
    return Json{{"tag", tag}, {"coeff", complex_to_json(coeff)}};
  };
  if (weight.terms().size() == 1) {
    const auto& [tag, coeff] = *weight.terms().begin();
    return term(tag, coeff);
  }
  Json list = Json::array();
  for (const auto& [tag, coeff] : weight.terms()) list.push_back(term(tag, coeff));
  return list;
}

ExpSum weight_from_json(const Json& j, const std::string& where) {
  auto one_term = [&](const Json& t) -> std::pair<ExpSum::Tag, GaussianRational> {
    if (!t.is_object()) fail("expected a {tag, coeff} term at " + where);
    const Json& tag = need(t, "tag");
    if (!tag.is_number_integer() || (!tag.is_number_unsigned() && tag.get<long long>() < 0))
      fail(where + ": tag must be a nonnegative integer");
    return {tag.get<ExpSum::Tag>(), complex_from_json(need(t, "coeff"), where + ".coeff")};
  };
  ExpSum weight;
  if (j.is_array()) {
    for (const Json& t : j) {
      auto [tag, coeff] = one_term(t);
      weight.add_term(tag, coeff);
    }
  } else {
    auto [tag, coeff] = one_term(j);
    weight.add_term(tag, coeff);
  }
  return weight;
}

}  // namespace

Json wfa_to_json(const Wfa& w) {
  Json j;
  j["sigma"] = sigma_to_json(w.sigma);
  j["states"] = w.states;
  j["initial"] = w.states[static_cast<std::size_t>(w.initial)];
  j["finals"] = name_list(w.finals, w.states);
  Json transitions = Json::array();
  for (const WTransition& t : w.transitions) {
    transitions.push_back(Json{{"from", w.states[static_cast<std::size_t>(t.from)]},
                               {"symbol", t.symbol.str()},
                               {"weight", weight_to_json(t.weight)},
                               {"to", w.states[static_cast<std::size_t>(t.to)]},
                               {"dir", t.dir}});
  }
  j["transitions"] = std::move(transitions);
  return j;
}

Wfa wfa_from_json(const Json& j) {
  if (!j.is_object()) fail("automaton file must hold a JSON object");
  Wfa w;
  w.sigma = sigma_from_json(j);
  NameIndex states(need(j, "states"), "states");
  w.states = states.names();
  w.initial = states.at(need_string(j, "initial"), "initial");
  w.finals = state_set_from_json(need(j, "finals"), states, "finals");

  const Json& transitions = need(j, "transitions");
  if (!transitions.is_array()) fail("transitions must be an array");
  std::size_t index = 0;
  for (const Json& t : transitions) {
    const std::string where = "transitions[" + std::to_string(index++) + "]";
    if (!t.is_object()) fail(where + " must be an object");
    WTransition tr;
    tr.from = states.at(need_string(t, "from"), where + ".from");
    tr.symbol = symbol_from_key(need_string(t, "symbol"), w.sigma, where + ".symbol");
    tr.weight = weight_from_json(need(t, "weight"), where + ".weight");
    tr.to = states.at(need_string(t, "to"), where + ".to");
    const Json& dir = need(t, "dir");
    if (!dir.is_number_integer()) fail(where + ".dir must be an integer");
    tr.dir = dir.get<int>();
    if (tr.dir < -1 || tr.dir > 1) fail(where + ".dir must be -1, 0 or 1");
    if (w.finals.count(tr.from))
      fail(where + ": final state '" + w.states[static_cast<std::size_t>(tr.from)] +
           "' may not have outgoing transitions");
    if (tr.weight.is_zero()) continue;  // canonical form: drop zero weights
    w.transitions.push_back(std::move(tr));
  }
  return w;
}

namespace {

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail("'" + path.string() + "' is not valid JSON");
  return j;
}

void save_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

Qcfa load_qcfa(const std::filesystem::path& path) { return qcfa_from_json(load_json(path)); }
void save_qcfa(const Qcfa& m, const std::filesystem::path& path) { save_json(qcfa_to_json(m), path); }
Wfa load_wfa(const std::filesystem::path& path) { return wfa_from_json(load_json(path)); }
void save_wfa(const Wfa& w, const std::filesystem::path& path) { save_json(wfa_to_json(w), path); }

}  // namespace qwa

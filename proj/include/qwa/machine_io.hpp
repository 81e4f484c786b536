#pragma once

#include "qwa/qcfa.hpp"
#include "qwa/wfa.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace qwa {

// Insertion-ordered JSON so renderers are byte-stable.
using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Machine description files. theta/delta are keyed "state:symbol" with the
// end-markers spelled "cent" and "dollar"; complex entries are objects with
// "re"/"im" rational strings. parse(render(m)) == m on canonical machines.
Json qcfa_to_json(const Qcfa& m);
Qcfa qcfa_from_json(const Json& j);

// Weighted-automaton files. Transition weights are a single {"tag","coeff"}
// term or a list of such terms.
Json wfa_to_json(const Wfa& w);
Wfa wfa_from_json(const Json& j);

Qcfa load_qcfa(const std::filesystem::path& path);
void save_qcfa(const Qcfa& m, const std::filesystem::path& path);
Wfa load_wfa(const std::filesystem::path& path);
void save_wfa(const Wfa& w, const std::filesystem::path& path);

}  // namespace qwa

#include "qwa/compiler.hpp"
#include "qwa/machine_io.hpp"
#include "qwa/qcfa.hpp"
#include "qwa/wfa.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

constexpr int kExitIn = 0;          // in the language / zero sum
constexpr int kExitOut = 1;         // not in the language / nonzero sum
constexpr int kExitUsage = 2;       // usage or file-format error
constexpr int kExitBudget = 3;      // step budget exhausted

qwa::Qcfa load_validated(const std::string& path) {
  qwa::Qcfa m = qwa::load_qcfa(path);
  auto diags = qwa::validate(m);
  if (!diags.empty()) {
    for (const auto& d : diags)
      std::cerr << "error: " << d.code << " at " << d.where << ": " << d.message << "\n";
    throw qwa::ParseError("machine '" + path + "' failed validation");
  }
  return m;
}

void require_in_sigma(const std::string& input, const std::vector<char>& sigma) {
  for (char c : input) {
    bool known = false;
    for (char s : sigma) known = known || s == c;
    if (!known)
      throw qwa::ParseError(std::string("input character '") + c + "' is not in sigma");
  }
}

std::string render_amplitudes(const qwa::CVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += v.entries[i].to_string();
  }
  return out;
}

void print_sim_trace(const qwa::Qcfa& m, const qwa::SimResult& r) {
  for (const auto& e : r.trace)
    std::cout << e.step << " | " << m.classical_states[static_cast<std::size_t>(e.s)] << " | "
              << e.head << " | " << render_amplitudes(e.v) << "\n";
}

void print_eval_trace(const qwa::Wfa& w, const qwa::EvalResult& r) {
  for (const auto& e : r.trace) {
    std::cout << e.step << " | " << e.head << " | {";
    bool first = true;
    for (const auto& [state, weight] : e.active) {
      if (!first) std::cout << ", ";
      first = false;
      std::cout << w.states[static_cast<std::size_t>(state)] << ": " << weight.to_string();
    }
    std::cout << "}\n";
  }
}

int cmd_simulate(const std::string& path, const std::string& input, std::uint64_t max_steps,
                 bool trace) {
  qwa::Qcfa m = load_validated(path);
  require_in_sigma(input, m.sigma);
  qwa::SimResult r = qwa::run(m, input, max_steps, trace);
  if (trace) print_sim_trace(m, r);
  std::cout << "p_acc = " << r.p_acc.to_string() << "\n";
  std::cout << "p_rej = " << r.p_rej.to_string() << "\n";
  std::cout << "halt = " << qwa::to_string(r.halt) << "\n";
  if (r.halt == qwa::HaltKind::BudgetExhausted) return kExitBudget;
  qwa::Verdict v = qwa::membership_verdict(r);
  std::cout << "verdict = " << qwa::to_string(v) << "\n";
  return v == qwa::Verdict::InLanguage ? kExitIn : kExitOut;
}

int cmd_compile(const std::string& path, const std::string& out) {
  qwa::Qcfa m = load_validated(path);
  qwa::save_wfa(qwa::compile(m), out);
  return 0;
}

int cmd_eval(const std::string& path, const std::string& input, std::uint64_t max_steps,
             bool trace) {
  qwa::Wfa w = qwa::load_wfa(path);
  require_in_sigma(input, w.sigma);
  qwa::EvalResult r = qwa::evaluate(w, input, max_steps, trace);
  if (trace) print_eval_trace(w, r);
  if (r.status == qwa::EvalStatus::HeadNondeterminism) {
    std::cerr << "error: head nondeterminism: " << r.detail << "\n";
    return kExitUsage;
  }
  if (r.status == qwa::EvalStatus::BudgetExhausted) {
    std::cout << "halt = budget_exhausted\n";
    return kExitBudget;
  }
  std::cout << "W∘x = " << r.value.to_string() << "\n";
  bool zero = r.value.is_zero();
  std::cout << "verdict = "
            << qwa::to_string(zero ? qwa::Verdict::InLanguage : qwa::Verdict::NotInLanguage)
            << "\n";
  return zero ? kExitIn : kExitOut;
}

int cmd_check(const std::string& path, int max_len, unsigned jobs, std::uint64_t max_steps,
              bool trace) {
  qwa::Qcfa m = load_validated(path);
  qwa::Wfa w = qwa::compile(m);
  auto inputs = qwa::enumerate_strings(m.sigma, max_len);
  qwa::CrossCheckReport report = qwa::cross_check_strings(m, w, inputs, max_steps, jobs);

  std::cout << "string | simulator | wfa | agree | p_rej\n";
  std::size_t agree = 0;
  for (const auto& row : report.rows) {
    std::string sim_col, wfa_col, agree_col;
    if (!row.sim_completed || !row.wfa_completed) {
      sim_col = row.sim_completed ? "done" : "budget_exhausted";
      wfa_col = row.wfa_completed ? "done" : "budget_exhausted";
      agree_col = "n/a";
    } else {
      sim_col = std::string(qwa::to_string(row.sim_zero ? qwa::Verdict::InLanguage
                                                        : qwa::Verdict::NotInLanguage));
      wfa_col = std::string(qwa::to_string(row.wfa_zero ? qwa::Verdict::InLanguage
                                                        : qwa::Verdict::NotInLanguage));
      agree_col = row.agree ? "agree" : "DISAGREE";
      if (row.agree) ++agree;
    }
    std::cout << "\"" << row.input << "\" | " << sim_col << " | " << wfa_col << " | " << agree_col
              << " | " << row.p_rej.to_string() << "\n";
    if (trace) {
      qwa::SimResult sr = qwa::run(m, row.input, max_steps, true);
      qwa::EvalResult er = qwa::evaluate(w, row.input, max_steps, true);
      print_sim_trace(m, sr);
      print_eval_trace(w, er);
    }
  }
  std::cout << report.rows.size() << " strings, " << agree << " agree\n";
  if (report.trace_mismatches > 0)
    std::cout << "amplitude trace mismatches: " << report.trace_mismatches << "\n";
  if (report.budget_failures > 0) return kExitBudget;
  return report.all_ok() ? kExitIn : kExitOut;
}

int cmd_example(const std::string& name, const std::string& out) {
  if (name != "palindrome") {
    std::cerr << "error: unknown example '" << name << "' (available: palindrome)\n";
    return kExitUsage;
  }
  qwa::save_qcfa(qwa::build_palindrome_machine(), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulation of two-way quantum/classical automata and their"
               " compilation into two-way weighted automata"};
  app.require_subcommand(1);

  std::string machine_path, wfa_path, input, output, example_name;
  std::uint64_t max_steps = 0;  // 0 = default budget
  int max_len = 0;
  unsigned jobs = 1;
  bool trace = false;

  auto* simulate = app.add_subcommand("simulate", "Run a machine on an input string");
  simulate->add_option("machine", machine_path)->required();
  simulate->add_option("--input", input)->required();
  simulate->add_option("--max-steps", max_steps);
  simulate->add_flag("--trace", trace);

  auto* compile = app.add_subcommand("compile", "Translate a machine into a weighted automaton");
  compile->add_option("machine", machine_path)->required();
  compile->add_option("-o,--output", output)->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a weighted automaton on an input string");
  eval->add_option("wfa", wfa_path)->required();
  eval->add_option("--input", input)->required();
  eval->add_option("--max-steps", max_steps);
  eval->add_flag("--trace", trace);

  auto* check = app.add_subcommand("check", "Cross-check simulator and compiled automaton");
  check->add_option("machine", machine_path)->required();
  check->add_option("--max-len", max_len)->required();
  check->add_option("--jobs", jobs);
  check->add_option("--max-steps", max_steps);
  check->add_flag("--trace", trace);

  auto* example = app.add_subcommand("example", "Write a built-in example machine file");
  example->add_option("name", example_name)->required();
  example->add_option("-o,--output", output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(machine_path, input, max_steps, trace);
    if (compile->parsed()) return cmd_compile(machine_path, output);
    if (eval->parsed()) return cmd_eval(wfa_path, input, max_steps, trace);
    if (check->parsed()) return cmd_check(machine_path, max_len, jobs, max_steps, trace);
    if (example->parsed()) return cmd_example(example_name, output);
  } catch (const qwa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

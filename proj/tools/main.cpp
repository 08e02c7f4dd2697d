// mimica -- define, run, trace and classify mimic automata from .ma files.
//
// Exit codes: 0 ok/Accept, 1 Reject, 2 BudgetExhausted, 64 usage error,
// 65 unusable input data (parse or validation), 70 internal error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mimica/dot.hpp"
#include "mimica/error.hpp"
#include "mimica/executor.hpp"
#include "mimica/maspec.hpp"
#include "mimica/power.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

bool color_enabled() {
  const char* v = std::getenv("MA_COLOR");
  return v != nullptr && std::string(v) == "1";
}

void print_diagnostics(const std::vector<mimica::Diagnostic>& diags) {
  const bool color = color_enabled();
  for (const auto& d : diags) std::cerr << mimica::to_string(d, color) << "\n";
}

struct Loaded {
  mimica::MaSpecDocument document;
  mimica::MimicAutomaton automaton;
};

std::optional<Loaded> load(const std::string& path, int& exit_code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": cannot open file\n";
    exit_code = kExitData;
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  mimica::ParseResult parsed = mimica::parse(buffer.str(), path);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics);
    exit_code = kExitData;
    return std::nullopt;
  }
  mimica::LowerResult lowered = mimica::lower(*parsed.document, path);
  if (!lowered.ok()) {
    print_diagnostics(lowered.diagnostics);
    exit_code = kExitData;
    return std::nullopt;
  }
  return Loaded{std::move(*parsed.document), std::move(*lowered.automaton)};
}

// Segment words separated by '|', symbols by whitespace.
mimica::SegmentedInput parse_input(const std::string& text) {
  mimica::SegmentedInput input;
  mimica::Word current;
  std::istringstream is(text);
  std::string token;
  bool any = false;
  while (is >> token) {
    any = true;
    if (token == "|") {
      input.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(token);
    }
  }
  if (any || !input.empty()) input.push_back(std::move(current));
  if (input.empty()) input.push_back({});
  return input;
}

bool write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << path << ": cannot write file\n";
    return false;
  }
  out << content;
  return true;
}

int outcome_exit(mimica::Outcome outcome) {
  switch (outcome) {
    case mimica::Outcome::Accept: return 0;
    case mimica::Outcome::Reject: return 1;
    case mimica::Outcome::BudgetExhausted: return 2;
  }
  return kExitInternal;
}

std::vector<mimica::Symbol> union_alphabet(const mimica::MimicAutomaton& ma) {
  std::vector<mimica::Symbol> out;
  for (const auto& [state, binding] : ma.bindings)
    for (const auto& [key, sa] : binding.epoch_sas)
      for (const auto& s : sa.input_alphabet)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mimic automata toolkit"};
  app.require_subcommand(1);

  std::string file, input_text, output_path, alphabet_text;
  std::uint64_t budget = 100000;
  std::optional<std::uint64_t> seed;
  std::size_t max_len = 4;

  auto* validate_cmd = app.add_subcommand("validate", "check a .ma file");
  validate_cmd->add_option("file", file, "the .ma file")->required();

  auto* run_cmd = app.add_subcommand("run", "execute and print the outcome");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--input", input_text, "segment words separated by '|'")->required();
  run_cmd->add_option("--budget", budget, "rule-1 step budget");
  run_cmd->add_option("--seed", seed, "override the seed of random schedules");

  auto* trace_cmd = app.add_subcommand("trace", "execute and write the event trace");
  trace_cmd->add_option("file", file)->required();
  trace_cmd->add_option("--input", input_text)->required();
  trace_cmd->add_option("--budget", budget);
  trace_cmd->add_option("--seed", seed);
  trace_cmd->add_option("-o,--output", output_path, "output file (default stdout)");

  auto* classify_cmd = app.add_subcommand("classify", "print the power class");
  classify_cmd->add_option("file", file)->required();

  auto* flatten_cmd = app.add_subcommand("flatten", "write the concatenation FSA as a .ma file");
  flatten_cmd->add_option("file", file)->required();
  flatten_cmd->add_option("-o,--output", output_path);

  auto* sample_cmd = app.add_subcommand("sample", "enumerate the accepted language");
  sample_cmd->add_option("file", file)->required();
  sample_cmd->add_option("--max-len", max_len, "maximum word length")->required();
  sample_cmd->add_option("--budget", budget);
  sample_cmd->add_option("--alphabet", alphabet_text, "symbols (default: union of input alphabets)");
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("-o,--output", output_path);

  auto* dot_cmd = app.add_subcommand("export-dot", "write DOT digraphs of every component");
  dot_cmd->add_option("file", file)->required();
  dot_cmd->add_option("-o,--output", output_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  int exit_code = 0;
  try {
    auto loaded = load(file, exit_code);
    if (!loaded) return exit_code;
    const mimica::MimicAutomaton& ma = loaded->automaton;

    if (app.got_subcommand(validate_cmd)) {
      std::cout << "ok\n";
      return 0;
    }

    if (app.got_subcommand(run_cmd) || app.got_subcommand(trace_cmd)) {
      const mimica::SegmentedInput input = parse_input(input_text);
      const mimica::ExecutionTrace trace = mimica::execute(ma, input, budget, seed);
      if (app.got_subcommand(run_cmd)) {
        std::cout << mimica::to_string(trace.outcome) << "\n";
        if (!trace.reject_reason.empty()) std::cout << "reason: " << trace.reject_reason << "\n";
      } else {
        if (!write_output(output_path, mimica::serialize(trace))) return kExitInternal;
      }
      return outcome_exit(trace.outcome);
    }

    if (app.got_subcommand(classify_cmd)) {
      std::cout << mimica::to_string(mimica::classify(ma)) << "\n";
      return 0;
    }

    if (app.got_subcommand(flatten_cmd)) {
      const mimica::SequentialAutomaton flat = mimica::flatten_regular(ma);
      const std::string text = mimica::serialize(mimica::wrap_document(flat));
      return write_output(output_path, text) ? 0 : kExitInternal;
    }

    if (app.got_subcommand(sample_cmd)) {
      std::vector<mimica::Symbol> alphabet;
      if (alphabet_text.empty()) {
        alphabet = union_alphabet(ma);
      } else {
        std::istringstream is(alphabet_text);
        std::string token;
        while (is >> token) alphabet.push_back(token);
      }
      const mimica::LanguageSample sample =
          mimica::language_sample(ma, alphabet, max_len, budget, seed);
      return write_output(output_path, mimica::to_string(sample)) ? 0 : kExitInternal;
    }

    if (app.got_subcommand(dot_cmd)) {
      return write_output(output_path, mimica::export_dot(ma)) ? 0 : kExitInternal;
    }
  } catch (const mimica::Error& e) {
    std::cerr << "error (" << mimica::to_string(e.code()) << "): " << e.what() << "\n";
    switch (e.code()) {
      case mimica::ErrorCode::InvalidArgument: return kExitUsage;
      case mimica::ErrorCode::NotRegularCase:
      case mimica::ErrorCode::EnumerationTooLarge:
      case mimica::ErrorCode::UndeclaredSymbol: return kExitData;
      default: return kExitInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

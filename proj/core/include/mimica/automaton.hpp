/* automaton.hpp -- sequential automata (FSA / PDA / LBA / TM)
 *
 * A SequentialAutomaton is an immutable definition: states, alphabets and a
 * kind-specific transition relation. Execution works on Configuration values;
 * `run` explores nondeterminism breadth-first under a mandatory step budget,
 * so the outcome is three-valued (Accept / Reject / BudgetExhausted).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mimica/error.hpp"

namespace mimica {

enum class AutomatonKind { Fsa, Pda, Lba, Tm };

const char* to_string(AutomatonKind kind);
std::optional<AutomatonKind> automaton_kind_from(const std::string& text);

using StateId = std::string;
using Symbol = std::string;
using Word = std::vector<Symbol>;

// Tape end markers reserved for LBAs; they are not part of any declared
// alphabet and transitions may only bounce off them.
inline const Symbol kLbaLeftMark = "<";
inline const Symbol kLbaRightMark = ">";

enum class HeadMove { Left, Right };

struct FsaArc {
  StateId from;
  Symbol input;
  StateId to;
  bool operator==(const FsaArc&) const = default;
};

struct PdaArc {
  StateId from;
  std::optional<Symbol> input;      // nullopt = epsilon move
  std::vector<Symbol> pop;          // top first; empty = no pop
  std::vector<Symbol> push;         // top first; empty = no push
  StateId to;
  bool operator==(const PdaArc&) const = default;
};

struct TapeArc {
  StateId from;
  Symbol read;
  Symbol write;
  HeadMove move;
  StateId to;
  bool operator==(const TapeArc&) const = default;
};

using Transition = std::variant<FsaArc, PdaArc, TapeArc>;

const StateId& transition_from(const Transition& t);
const StateId& transition_to(const Transition& t);
std::string transition_label(const Transition& t);

struct SequentialAutomaton {
  std::string name;
  AutomatonKind kind = AutomatonKind::Fsa;
  std::vector<StateId> states;
  std::vector<Symbol> input_alphabet;
  std::vector<Symbol> stack_alphabet;  // PDA only
  std::vector<Symbol> tape_alphabet;   // LBA/TM only, end markers excluded
  Symbol blank;                        // TM required, LBA optional
  std::vector<Transition> transitions;
  StateId initial;
  std::vector<StateId> finals;

  bool has_state(const StateId& s) const;
  bool is_final(const StateId& s) const;
  bool has_input_symbol(const Symbol& s) const;

  bool operator==(const SequentialAutomaton&) const = default;
};

// One execution snapshot. Which fields are live depends on `kind`:
// FSA uses state+input, PDA adds the stack, LBA/TM use state+tape+head.
struct Configuration {
  AutomatonKind kind = AutomatonKind::Fsa;
  StateId state;
  Word input;                 // full input word
  std::size_t input_pos = 0;  // consumed prefix length
  std::vector<Symbol> stack;  // top at back
  std::vector<Symbol> tape;
  std::size_t head = 0;

  Word remaining_input() const;
  Word consumed_input() const;
  std::string key() const;  // canonical form for visited-set dedup

  bool operator==(const Configuration&) const = default;
};

enum class Outcome { Accept, Reject, BudgetExhausted };
const char* to_string(Outcome outcome);

struct AppliedStep {
  Transition transition;
  Configuration before;
  Configuration after;
  bool operator==(const AppliedStep&) const = default;
};

struct RunOptions {
  bool record_exploration = true;
};

struct RunResult {
  Outcome outcome = Outcome::Reject;
  std::vector<AppliedStep> accepting_path;  // empty unless outcome == Accept
  std::vector<AppliedStep> explored;        // every applied transition, in order
  std::uint64_t steps_used = 0;
};

// Empty result means every invariant of the definition holds.
std::vector<std::string> validate(const SequentialAutomaton& a);

Configuration initial_configuration(const SequentialAutomaton& a, const Word& word);

// Applies one declared transition if it matches; nullopt when inapplicable.
std::optional<Configuration> apply_transition(const SequentialAutomaton& a,
                                              const Configuration& c,
                                              const Transition& t);

// All configurations reachable in exactly one transition; empty = halted.
std::vector<Configuration> step(const SequentialAutomaton& a, const Configuration& c);

bool has_successor(const SequentialAutomaton& a, const Configuration& c);
bool is_halted(const SequentialAutomaton& a, const Configuration& c);

// Halted in a final state; FSA/PDA additionally require the word consumed.
bool is_accepting(const SequentialAutomaton& a, const Configuration& c);

RunResult run(const SequentialAutomaton& a, const Word& word, std::uint64_t budget,
              const RunOptions& options = {});

// Handoff payload of a halted configuration: FSA/PDA yield the consumed
// input, LBA/TM yield the non-blank tape contents (markers stripped).
Word output_word(const SequentialAutomaton& a, const Configuration& final_config);

std::string serialize(const RunResult& result);

// Shared breadth-first search used by run() and by the mimic executor, so a
// degenerate mimic automaton agrees with the bare run() by construction.
// `depth_cap` bounds the path length (logical ticks inside one epoch).
struct SearchResult {
  enum class Status { Accepted, Rejected, Truncated, OutOfBudget };
  Status status = Status::Rejected;
  std::vector<AppliedStep> path;  // to the accepting (or truncation-frontier) configuration
  std::uint64_t steps_used = 0;
  std::vector<AppliedStep> explored;
};

SearchResult bounded_search(const SequentialAutomaton& a, const Configuration& start,
                            std::optional<std::uint64_t> depth_cap, std::uint64_t budget,
                            bool record_exploration = false);

}  // namespace mimica

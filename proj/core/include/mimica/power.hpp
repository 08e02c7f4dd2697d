/* power.hpp -- computational-ability classification and desk-scale evidence
 *
 * classify() places a mimic automaton into the Case 1-4 scheme by the kinds
 * of its components. The evidence operations are finite: bounded word
 * enumeration, a concatenation construction for the all-regular case, and an
 * embedded Turing machine accepting { a^n b^n c^n } as the lower bound.
 * None of this is a proof; it is executable evidence on small instances.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mimica/executor.hpp"
#include "mimica/hierarchy.hpp"

namespace mimica {

enum class PowerClass {
  Case1_TuringEquivalent,
  Case2_LBAonTMschedule,
  Case3_LBAonRegularSchedule,
  Case4_FSAonRegularSchedule,
  Other,
};

const char* to_string(PowerClass value);

// Pure function of component kinds and schedule variants; invariant under
// renaming of states and symbols.
PowerClass classify(const MimicAutomaton& ma);

// Concatenation FSA of the segment automata in schedule order, final states
// of one segment identified with the initial state of the next. Requires
// classify(ma) == Case4 and state-identification glue.
SequentialAutomaton flatten_regular(const MimicAutomaton& ma);

struct LanguageSample {
  std::vector<Symbol> alphabet;
  std::size_t max_len = 0;
  std::uint64_t budget = 0;
  std::set<Word> accepted;
  std::set<Word> budget_exhausted;  // never silently counted as rejected
};

inline constexpr std::uint64_t kEnumerationGuard = 1000000;

LanguageSample language_sample(const SequentialAutomaton& a, const std::vector<Symbol>& alphabet,
                               std::size_t max_len, std::uint64_t budget);

// A word is accepted by the automaton when some split of it into segment
// words (state identification) or the word itself (word handoff) accepts.
LanguageSample language_sample(const MimicAutomaton& ma, const std::vector<Symbol>& alphabet,
                               std::size_t max_len, std::uint64_t budget,
                               std::optional<std::uint64_t> seed_override = std::nullopt);

std::string to_string(const LanguageSample& sample);

struct EquivalenceEvidence {
  bool equal = false;
  std::optional<Word> counterexample;
  std::string detail;
};

EquivalenceEvidence equivalence_evidence(const MimicAutomaton& ma,
                                         const SequentialAutomaton& fsa,
                                         const std::vector<Symbol>& alphabet, std::size_t max_len,
                                         std::uint64_t budget = 100000);

struct LowerBoundReport {
  bool all_passed = false;
  std::size_t accept_checks = 0;
  std::size_t reject_checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> lines;
};

// Runs the Case-1 embedding of the { a^n b^n c^n } machine: accept for
// 1 <= n <= 6 and reject 20 single-edit perturbations per n.
LowerBoundReport turing_lower_bound_demo();

std::string to_string(const LowerBoundReport& report);

// The deterministic marking machine for { a^n b^n c^n : n >= 1 }.
SequentialAutomaton demo_turing_machine();

// Case-1 embedding: one body, a single epoch, no reconfiguration.
MimicAutomaton wrap_single(const SequentialAutomaton& sa);

}  // namespace mimica

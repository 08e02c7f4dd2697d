/* Seeded random fixtures for property tests. */

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mimica/hierarchy.hpp"
#include "mimica/power.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// A connected random FSA with exactly one final state. State names carry the
// given prefix so segments of one mimic automaton stay disjoint.
inline mimica::SequentialAutomaton random_fsa(Rng& rng, const std::string& name,
                                              const std::string& state_prefix,
                                              const std::vector<mimica::Symbol>& alphabet,
                                              std::size_t max_states = 5) {
  mimica::SequentialAutomaton a;
  a.name = name;
  a.kind = mimica::AutomatonKind::Fsa;
  const std::size_t n = pick(rng, 1, max_states);
  for (std::size_t i = 0; i < n; ++i) a.states.push_back(state_prefix + std::to_string(i));
  a.input_alphabet = alphabet;
  a.initial = a.states.front();
  a.finals = {a.states[pick(rng, 0, n - 1)]};

  const std::size_t arcs = pick(rng, 1, 2 * n);
  for (std::size_t i = 0; i < arcs; ++i) {
    mimica::FsaArc arc{a.states[pick(rng, 0, n - 1)], alphabet[pick(rng, 0, alphabet.size() - 1)],
                       a.states[pick(rng, 0, n - 1)]};
    if (std::find(a.transitions.begin(), a.transitions.end(), mimica::Transition{arc}) ==
        a.transitions.end())
      a.transitions.push_back(arc);
  }
  return a;
}

// An all-FSA mimic automaton on a table schedule: Case 4 by construction.
// Segment durations are generous so epochs never truncate a computation.
inline mimica::MimicAutomaton random_case4_ma(Rng& rng, const std::vector<mimica::Symbol>& alphabet,
                                              std::size_t max_segments = 3) {
  const std::size_t segments = pick(rng, 1, max_segments);

  mimica::DhrBinding binding;
  binding.ca_name = "C";
  binding.key_mode = mimica::BindingKeyMode::ByEpoch;
  const std::size_t bodies = pick(rng, 1, segments);
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < segments; ++i) table.push_back(pick(rng, 1, bodies));
  binding.ca_initial = mimica::one_hot(bodies, table[0]);
  binding.schedule = mimica::ScheduleFunction::make_table(table, bodies);
  binding.epochs = segments;
  for (std::size_t i = 0; i < segments; ++i)
    binding.epoch_sas.emplace_back(
        i + 1, random_fsa(rng, "G" + std::to_string(i + 1), "g" + std::to_string(i + 1) + "_",
                          alphabet));

  mimica::SequentialAutomaton upper;
  upper.name = "U";
  upper.kind = mimica::AutomatonKind::Fsa;
  upper.states = {"P0"};
  upper.initial = "P0";
  upper.finals = {"P0"};

  mimica::TimeModel tm;
  for (std::size_t i = 0; i + 1 < segments; ++i) tm.durations.push_back(16);
  tm.tau = 1;

  return mimica::build(std::move(upper), {{mimica::StateId("P0"), std::move(binding)}},
                       std::move(tm), mimica::GlueMode::StateIdentification);
}

// A chain FSA accepting exactly `word`, named states prefix0..prefixN.
inline mimica::SequentialAutomaton chain_fsa(const std::string& name,
                                             const std::string& state_prefix,
                                             const std::vector<mimica::Symbol>& alphabet,
                                             const mimica::Word& word) {
  mimica::SequentialAutomaton a;
  a.name = name;
  a.kind = mimica::AutomatonKind::Fsa;
  a.input_alphabet = alphabet;
  for (std::size_t i = 0; i <= word.size(); ++i) a.states.push_back(state_prefix + std::to_string(i));
  a.initial = a.states.front();
  a.finals = {a.states.back()};
  for (std::size_t i = 0; i < word.size(); ++i)
    a.transitions.push_back(mimica::FsaArc{a.states[i], word[i], a.states[i + 1]});
  return a;
}

inline mimica::Word random_word(Rng& rng, const std::vector<mimica::Symbol>& alphabet,
                                std::size_t max_len) {
  mimica::Word w;
  const std::size_t len = pick(rng, 0, max_len);
  for (std::size_t i = 0; i < len; ++i) w.push_back(alphabet[pick(rng, 0, alphabet.size() - 1)]);
  return w;
}

}  // namespace testsupport

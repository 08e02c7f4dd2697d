/* hierarchy.hpp -- the mimic automaton skeleton
 *
 * A MimicAutomaton binds an upper-layer FSA of macro phases to one DHR
 * binding per phase: a cellular configuration + schedule picking execution
 * bodies, and one lower sequential automaton per epoch (or per body). The
 * hierarchy is a static depth-2 tree; it has no dynamics of its own.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mimica/automaton.hpp"
#include "mimica/scheduler.hpp"

namespace mimica {

enum class GlueMode { StateIdentification, WordHandoff };
const char* to_string(GlueMode mode);

enum class BindingKeyMode { ByEpoch, ByBody };
const char* to_string(BindingKeyMode mode);

struct DhrBinding {
  std::string ca_name;
  CellularConfiguration ca_initial;
  ScheduleFunction schedule;
  std::size_t epochs = 0;  // table schedules: equals table length
  BindingKeyMode key_mode = BindingKeyMode::ByEpoch;
  std::vector<std::pair<std::size_t, SequentialAutomaton>> epoch_sas;

  const SequentialAutomaton* find_sa(std::size_t key) const;

  bool operator==(const DhrBinding&) const = default;
};

struct MimicAutomaton {
  SequentialAutomaton upper;  // FSA of macro phases; edge labels are ignored
  std::vector<std::pair<StateId, DhrBinding>> bindings;
  TimeModel time_model;
  GlueMode glue = GlueMode::StateIdentification;

  const DhrBinding* find_binding(const StateId& upper_state) const;

  bool operator==(const MimicAutomaton&) const = default;
};

// One epoch of one phase, with the lower automaton in charge. `body_global`
// lives in the combined body space (bodies of all phases laid end to end),
// which is the coordinate system rule-2 trace events use.
struct PlannedSegment {
  std::size_t index = 0;  // 1-based across the whole run
  StateId upper_state;
  std::string ca_name;
  std::size_t phase = 0;
  std::size_t epoch = 0;  // 1-based within the binding
  std::size_t body = 0;   // local body index
  std::size_t body_global = 0;
  const SequentialAutomaton* sa = nullptr;
};

// Macro phases from the upper initial state to the terminal state.
// Throws InvalidArgument on branching or cycles.
std::vector<StateId> upper_path(const SequentialAutomaton& upper);

// Enumerates every segment the schedule produces. Requires a valid automaton;
// `seed_override` replaces the declared seed of SeededRandom schedules.
std::vector<PlannedSegment> plan(const MimicAutomaton& ma,
                                 std::optional<std::uint64_t> seed_override = std::nullopt);

std::size_t total_bodies(const MimicAutomaton& ma);

std::vector<std::string> validate(const MimicAutomaton& ma);

// Assembles and validates; throws Error with the first violation's code and
// every violation in the message. Glue defaults to StateIdentification when
// all bound automata share one kind, WordHandoff otherwise.
MimicAutomaton build(SequentialAutomaton upper,
                     std::vector<std::pair<StateId, DhrBinding>> bindings, TimeModel time_model,
                     std::optional<GlueMode> glue = std::nullopt);

struct GranularityNode {
  StateId upper_state;
  std::string ca_name;
  std::size_t epochs = 0;
  std::vector<std::string> lower;  // bound automaton per epoch, in order
};

struct GranularityReport {
  std::size_t depth = 2;
  std::size_t ca_count = 0;
  std::size_t leaf_count = 0;  // distinct (upper state, epoch) pairs
  std::vector<GranularityNode> nodes;
};

GranularityReport granularity(const MimicAutomaton& ma);
std::string to_string(const GranularityReport& report);

}  // namespace mimica

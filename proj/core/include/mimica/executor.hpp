/* executor.hpp -- small-step execution of a mimic automaton
 *
 * Three rule sets drive a run and tag every trace event:
 *   1  an applied transition of the active lower automaton (one tick each)
 *   2  a timed reconfiguration of the combined cellular state at an epoch
 *      boundary, clock = sum of (|T_j| + tau) so far
 *   3  the glue between consecutive segments: state identification or the
 *      handoff of the previous segment's output word (consumes the tau tick)
 *
 * Events are totally ordered; the serialized trace is byte-exact:
 * one event per line, `seq<TAB>clock<TAB>rule<TAB>payload`, LF endings.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mimica/hierarchy.hpp"

namespace mimica {

struct Rule1Payload {
  std::string sa_name;
  Transition transition;
  bool operator==(const Rule1Payload&) const = default;
};

struct Rule2Payload {
  CellularConfiguration before;
  CellularConfiguration after;
  bool operator==(const Rule2Payload&) const = default;
};

struct Rule3Payload {
  bool handoff = false;
  StateId from_state;  // glue only
  StateId to_state;    // glue only
  Word word;           // handoff only
  bool operator==(const Rule3Payload&) const = default;
};

using EventPayload = std::variant<Rule1Payload, Rule2Payload, Rule3Payload>;

struct ExecutionEvent {
  std::uint64_t seq = 0;  // 1-based, strictly increasing
  std::uint64_t clock = 0;
  int rule_set = 0;
  EventPayload payload;
  bool operator==(const ExecutionEvent&) const = default;
};

std::string to_line(const ExecutionEvent& event);

// One word per segment under state identification; exactly one word total
// under word handoff (later segments consume the previous output).
using SegmentedInput = std::vector<Word>;

struct ExecutionTrace {
  std::vector<ExecutionEvent> events;
  Outcome outcome = Outcome::Reject;
  Word final_payload;
  std::string reject_reason;  // empty unless outcome == Reject
  std::uint64_t steps_used = 0;

  // Carried so that replay() is self-contained; not part of the line format.
  SegmentedInput input;
  std::optional<std::uint64_t> seed;
};

std::string serialize(const ExecutionTrace& trace);

// Budget bounds rule-1 transition applications (including explored dead
// branches); rule-2/3 events are free.
ExecutionTrace execute(const MimicAutomaton& ma, const SegmentedInput& input,
                       std::uint64_t budget,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

struct ReplayResult {
  bool ok = true;
  std::uint64_t first_bad_seq = 0;  // 1-based position of the offending event
  std::string reason;
};

// Checks that every event is legal from the state induced by its
// predecessors under the three rule sets, and that an Accept outcome is
// backed by an accepting final segment.
ReplayResult replay(const MimicAutomaton& ma, const ExecutionTrace& trace);

// Initial configuration of the next segment given the previous segment's
// halted accepting configuration. Throws HandoffOnReject otherwise.
Configuration handoff(const SequentialAutomaton& prev_sa, const Configuration& prev_final,
                      const SequentialAutomaton& next_sa, GlueMode glue,
                      const Word& next_word = {});

}  // namespace mimica

#include "mimica/executor.hpp"

#include <algorithm>
#include <sstream>

namespace mimica {

namespace {

std::string join_word(const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += " ";
    out += word[i];
  }
  return out;
}

// Picks up a computation that ran out of epoch ticks: the next body resumes
// at the same-named state, keeping stack/tape and the unconsumed input, with
// the next segment's own word appended.
Configuration continuation_configuration(const Configuration& from,
                                         const SequentialAutomaton& next_sa,
                                         const Word& next_word) {
  Configuration c = from;
  Word rest = from.remaining_input();
  rest.insert(rest.end(), next_word.begin(), next_word.end());
  c.input = std::move(rest);
  c.input_pos = 0;
  (void)next_sa;
  return c;
}

bool continuation_possible(const Configuration& from, const SequentialAutomaton& next_sa,
                           GlueMode glue) {
  return glue == GlueMode::StateIdentification && next_sa.has_state(from.state);
}

struct SegmentTiming {
  std::uint64_t start_clock = 0;
  std::optional<std::uint64_t> cap;       // |T_i|; last segment may be open
  std::optional<std::uint64_t> boundary;  // start + |T_i| + tau
};

std::vector<SegmentTiming> segment_timings(const TimeModel& tm, std::size_t segment_count) {
  std::vector<SegmentTiming> out(segment_count);
  std::uint64_t clock = 0;
  for (std::size_t i = 0; i < segment_count; ++i) {
    out[i].start_clock = clock;
    if (i < tm.durations.size()) {
      out[i].cap = tm.durations[i];
      out[i].boundary = clock + tm.durations[i] + tm.tau;
      clock = *out[i].boundary;
    }
  }
  return out;
}

}  // namespace

std::string to_line(const ExecutionEvent& event) {
  std::string payload;
  if (const auto* r1 = std::get_if<Rule1Payload>(&event.payload)) {
    payload = "step " + r1->sa_name + " " + transition_from(r1->transition) + " " +
              transition_label(r1->transition) + " " + transition_to(r1->transition);
  } else if (const auto* r2 = std::get_if<Rule2Payload>(&event.payload)) {
    payload = "ca " + to_string(r2->before) + " -> " + to_string(r2->after);
  } else {
    const auto& r3 = std::get<Rule3Payload>(event.payload);
    if (r3.handoff) {
      payload = "handoff";
      if (!r3.word.empty()) payload += " " + join_word(r3.word);
    } else {
      payload = "glue " + r3.from_state + " -> " + r3.to_state;
    }
  }
  return std::to_string(event.seq) + "\t" + std::to_string(event.clock) + "\t" +
         std::to_string(event.rule_set) + "\t" + payload;
}

std::string serialize(const ExecutionTrace& trace) {
  std::string out;
  for (const auto& event : trace.events) {
    out += to_line(event);
    out += "\n";
  }
  return out;
}

Configuration handoff(const SequentialAutomaton& prev_sa, const Configuration& prev_final,
                      const SequentialAutomaton& next_sa, GlueMode glue,
                      const Word& next_word) {
  if (!is_accepting(prev_sa, prev_final))
    raise(ErrorCode::HandoffOnReject, "previous segment did not accept");
  if (glue == GlueMode::StateIdentification)
    return initial_configuration(next_sa, next_word);
  return initial_configuration(next_sa, output_word(prev_sa, prev_final));
}

ExecutionTrace execute(const MimicAutomaton& ma, const SegmentedInput& input,
                       std::uint64_t budget, std::optional<std::uint64_t> seed_override) {
  if (budget < 1) raise(ErrorCode::InvalidArgument, "execute budget must be at least 1");

  ExecutionTrace trace;
  trace.input = input;
  trace.seed = seed_override;

  const std::vector<PlannedSegment> segments = plan(ma, seed_override);
  const std::size_t segment_count = segments.size();
  const std::size_t bodies = total_bodies(ma);
  const StateId terminal = upper_path(ma.upper).back();
  const bool upper_accepts = ma.upper.is_final(terminal);

  if (segment_count == 0) {
    if (!input.empty())
      raise(ErrorCode::InvalidArgument, "this automaton plans no segments; expected no input");
    trace.outcome = upper_accepts ? Outcome::Accept : Outcome::Reject;
    if (trace.outcome == Outcome::Reject) trace.reject_reason = "upper automaton not final";
    return trace;
  }
  if (ma.glue == GlueMode::WordHandoff) {
    if (input.size() != 1)
      raise(ErrorCode::InvalidArgument, "word handoff runs take exactly one input word");
  } else if (input.size() != segment_count) {
    raise(ErrorCode::InvalidArgument,
          "expected " + std::to_string(segment_count) + " segment words, got " +
              std::to_string(input.size()));
  }

  const auto timings = segment_timings(ma.time_model, segment_count);
  std::uint64_t budget_left = budget;
  std::uint64_t seq = 0;

  auto emit = [&](std::uint64_t clock, int rule, EventPayload payload) {
    trace.events.push_back({++seq, clock, rule, std::move(payload)});
  };

  Configuration config = initial_configuration(*segments[0].sa, input[0]);

  for (std::size_t i = 0; i < segment_count; ++i) {
    const SequentialAutomaton& sa = *segments[i].sa;
    const SegmentTiming& timing = timings[i];

    SearchResult found = bounded_search(sa, config, timing.cap, budget_left);
    budget_left -= found.steps_used;
    trace.steps_used += found.steps_used;

    if (found.status == SearchResult::Status::OutOfBudget) {
      trace.outcome = Outcome::BudgetExhausted;
      return trace;
    }
    if (found.status == SearchResult::Status::Rejected) {
      trace.outcome = Outcome::Reject;
      trace.reject_reason = "segment " + std::to_string(i + 1) + " rejected";
      return trace;
    }

    const bool truncated = found.status == SearchResult::Status::Truncated;
    const Configuration end =
        found.path.empty() ? config : found.path.back().after;

    if (truncated) {
      const bool can_continue =
          i + 1 < segment_count &&
          continuation_possible(end, *segments[i + 1].sa, ma.glue);
      if (!can_continue) {
        trace.outcome = Outcome::Reject;
        trace.reject_reason = "EpochTruncation";
        return trace;
      }
    }

    // Commit the chosen path as rule-1 events, one tick per transition.
    std::uint64_t clock = timing.start_clock;
    for (const auto& applied : found.path)
      emit(++clock, 1, Rule1Payload{sa.name, applied.transition});

    if (i + 1 == segment_count) {
      // truncated is impossible here (no continuation without a next segment)
      trace.final_payload = output_word(sa, end);
      if (upper_accepts) {
        trace.outcome = Outcome::Accept;
      } else {
        trace.outcome = Outcome::Reject;
        trace.reject_reason = "upper automaton not final";
      }
      return trace;
    }

    const SequentialAutomaton& next_sa = *segments[i + 1].sa;
    const std::uint64_t boundary = *timing.boundary;
    emit(boundary, 2,
         Rule2Payload{one_hot(bodies, segments[i].body_global),
                      one_hot(bodies, segments[i + 1].body_global)});

    if (truncated) {
      emit(boundary, 3, Rule3Payload{false, end.state, end.state, {}});
      config = continuation_configuration(end, next_sa,
                                          ma.glue == GlueMode::WordHandoff ? Word{} : input[i + 1]);
    } else if (ma.glue == GlueMode::StateIdentification) {
      emit(boundary, 3, Rule3Payload{false, end.state, next_sa.initial, {}});
      config = initial_configuration(next_sa, input[i + 1]);
    } else {
      const Word word = output_word(sa, end);
      emit(boundary, 3, Rule3Payload{true, "", "", word});
      try {
        config = initial_configuration(next_sa, word);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UndeclaredSymbol) throw;
        trace.outcome = Outcome::Reject;
        trace.reject_reason = "handoff word outside the next input alphabet";
        return trace;
      }
    }
  }
  return trace;  // unreachable
}

namespace {

struct Verifier {
  const MimicAutomaton& ma;
  const ExecutionTrace& trace;
  std::vector<PlannedSegment> segments;
  std::vector<SegmentTiming> timings;
  std::size_t bodies = 0;

  std::size_t seg = 0;            // current segment, 0-based
  Configuration config;
  std::uint64_t steps_in_segment = 0;
  bool boundary_reconfigured = false;  // rule 2 seen, rule 3 pending
  Configuration end_config;            // config at the moment rule 2 fired

  ReplayResult fail(std::uint64_t seq, std::string reason) { return {false, seq, std::move(reason)}; }

  Word segment_word(std::size_t index) const {
    if (ma.glue == GlueMode::WordHandoff) return index == 0 ? trace.input[0] : Word{};
    return trace.input[index];
  }

  ReplayResult check() {
    segments = plan(ma, trace.seed);
    timings = segment_timings(ma.time_model, segments.size());
    bodies = total_bodies(ma);

    if (segments.empty())
      return trace.events.empty() ? ReplayResult{} : fail(1, "no segments planned, trace not empty");
    const bool shape_ok = ma.glue == GlueMode::WordHandoff ? trace.input.size() == 1
                                                           : trace.input.size() == segments.size();
    if (!shape_ok) return fail(0, "trace input does not match the segment plan");

    config = initial_configuration(*segments[0].sa, segment_word(0));

    std::uint64_t last_clock = 0;
    for (std::size_t pos = 0; pos < trace.events.size(); ++pos) {
      const ExecutionEvent& e = trace.events[pos];
      const std::uint64_t at = pos + 1;
      if (e.seq != at) return fail(at, "sequence number out of order");
      if (e.clock < last_clock) return fail(at, "clock went backwards");
      last_clock = e.clock;

      ReplayResult r = e.rule_set == 1   ? on_rule1(e, at)
                       : e.rule_set == 2 ? on_rule2(e, at)
                       : e.rule_set == 3 ? on_rule3(e, at)
                                         : fail(at, "unknown rule set");
      if (!r.ok) return r;
    }

    if (trace.outcome == Outcome::Accept) {
      if (seg + 1 != segments.size() || boundary_reconfigured)
        return fail(trace.events.size(), "accepting trace ends before the last segment");
      if (!is_accepting(*segments[seg].sa, config))
        return fail(trace.events.size(), "claimed Accept without an accepting configuration");
      if (!ma.upper.is_final(upper_path(ma.upper).back()))
        return fail(trace.events.size(), "claimed Accept with a non-final upper state");
    }
    return {};
  }

  ReplayResult on_rule1(const ExecutionEvent& e, std::uint64_t at) {
    if (boundary_reconfigured) return fail(at, "rule-1 event between rule-2 and rule-3");
    const auto* payload = std::get_if<Rule1Payload>(&e.payload);
    if (!payload) return fail(at, "rule-1 event with a foreign payload");
    const SequentialAutomaton& sa = *segments[seg].sa;
    if (payload->sa_name != sa.name) return fail(at, "event belongs to an inactive automaton");
    if (std::find(sa.transitions.begin(), sa.transitions.end(), payload->transition) ==
        sa.transitions.end())
      return fail(at, "transition is not declared");
    auto next = apply_transition(sa, config, payload->transition);
    if (!next) return fail(at, "transition does not apply to the current configuration");
    if (timings[seg].cap && steps_in_segment + 1 > *timings[seg].cap)
      return fail(at, "segment exceeds its epoch duration");
    if (e.clock != timings[seg].start_clock + steps_in_segment + 1)
      return fail(at, "rule-1 clock does not advance by one tick");
    config = std::move(*next);
    ++steps_in_segment;
    return {};
  }

  ReplayResult on_rule2(const ExecutionEvent& e, std::uint64_t at) {
    if (boundary_reconfigured) return fail(at, "two rule-2 events at one boundary");
    if (seg + 1 >= segments.size()) return fail(at, "rule-2 event after the last segment");
    const auto* payload = std::get_if<Rule2Payload>(&e.payload);
    if (!payload) return fail(at, "rule-2 event with a foreign payload");
    if (e.clock != *timings[seg].boundary) return fail(at, "rule-2 clock is not the epoch boundary");
    if (payload->before.cells != one_hot(bodies, segments[seg].body_global).cells)
      return fail(at, "rule-2 source configuration mismatch");
    if (payload->after.cells != one_hot(bodies, segments[seg + 1].body_global).cells)
      return fail(at, "rule-2 target configuration mismatch");

    const bool accepted = is_accepting(*segments[seg].sa, config);
    const bool truncation = !accepted && timings[seg].cap &&
                            steps_in_segment == *timings[seg].cap &&
                            continuation_possible(config, *segments[seg + 1].sa, ma.glue);
    if (!accepted && !truncation) return fail(at, "epoch ended without acceptance or truncation");
    boundary_reconfigured = true;
    end_config = config;
    return {};
  }

  ReplayResult on_rule3(const ExecutionEvent& e, std::uint64_t at) {
    if (!boundary_reconfigured) return fail(at, "rule-3 event without a preceding rule-2");
    const auto* payload = std::get_if<Rule3Payload>(&e.payload);
    if (!payload) return fail(at, "rule-3 event with a foreign payload");
    if (e.clock != *timings[seg].boundary) return fail(at, "rule-3 clock is not the epoch boundary");

    const SequentialAutomaton& sa = *segments[seg].sa;
    const SequentialAutomaton& next_sa = *segments[seg + 1].sa;
    const bool accepted = is_accepting(sa, end_config);

    if (ma.glue == GlueMode::WordHandoff && accepted) {
      if (!payload->handoff) return fail(at, "expected a handoff payload");
      const Word expected = output_word(sa, end_config);
      if (payload->word != expected) return fail(at, "handoff word mismatch");
      try {
        config = initial_configuration(next_sa, expected);
      } catch (const Error&) {
        return fail(at, "handoff word outside the next input alphabet");
      }
    } else {
      if (payload->handoff) return fail(at, "unexpected handoff payload");
      if (payload->from_state != end_config.state) return fail(at, "glue source state mismatch");
      if (accepted) {
        if (payload->to_state != next_sa.initial) return fail(at, "glue target state mismatch");
        config = initial_configuration(next_sa, segment_word(seg + 1));
      } else {
        if (payload->to_state != end_config.state)
          return fail(at, "truncation glue must keep the state");
        config = continuation_configuration(end_config, next_sa, segment_word(seg + 1));
      }
    }
    ++seg;
    steps_in_segment = 0;
    boundary_reconfigured = false;
    return {};
  }
};

}  // namespace

ReplayResult replay(const MimicAutomaton& ma, const ExecutionTrace& trace) {
  try {
    Verifier v{ma, trace};
    return v.check();
  } catch (const Error& e) {
    return {false, 0, e.what()};
  }
}

}  // namespace mimica

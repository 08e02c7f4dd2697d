#include "mimica/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mimica {

namespace {

using Violation = std::pair<ErrorCode, std::string>;

// Bodies a schedule can activate within `epochs` epochs, starting from the
// given initial body. For SeededRandom every body is possible.
std::set<std::size_t> reachable_bodies(const DhrBinding& b) {
  std::set<std::size_t> out;
  switch (b.schedule.variant) {
    case ScheduleVariant::Table:
      for (std::size_t i = 0; i < std::min(b.epochs, b.schedule.table.size()); ++i)
        out.insert(b.schedule.table[i]);
      break;
    case ScheduleVariant::RoundRobin: {
      std::size_t body = active_body(b.ca_initial);
      for (std::size_t e = 1; e <= b.epochs; ++e) {
        out.insert(body);
        body = body % b.schedule.body_count + 1;
      }
      break;
    }
    case ScheduleVariant::SeededRandom:
      for (std::size_t i = 1; i <= b.schedule.body_count; ++i) out.insert(i);
      break;
  }
  return out;
}

std::vector<const SequentialAutomaton*> bound_automata(const MimicAutomaton& ma) {
  std::vector<const SequentialAutomaton*> out;
  for (const auto& [state, binding] : ma.bindings)
    for (const auto& [key, sa] : binding.epoch_sas) out.push_back(&sa);
  return out;
}

}  // namespace

const char* to_string(GlueMode mode) {
  return mode == GlueMode::StateIdentification ? "state-identification" : "word-handoff";
}

const char* to_string(BindingKeyMode mode) {
  return mode == BindingKeyMode::ByEpoch ? "epoch" : "body";
}

const SequentialAutomaton* DhrBinding::find_sa(std::size_t key) const {
  for (const auto& [k, sa] : epoch_sas)
    if (k == key) return &sa;
  return nullptr;
}

const DhrBinding* MimicAutomaton::find_binding(const StateId& upper_state) const {
  for (const auto& [state, binding] : bindings)
    if (state == upper_state) return &binding;
  return nullptr;
}

std::vector<StateId> upper_path(const SequentialAutomaton& upper) {
  std::vector<StateId> path;
  std::unordered_set<std::string> seen;
  StateId current = upper.initial;
  for (;;) {
    if (!seen.insert(current).second)
      raise(ErrorCode::InvalidArgument, "upper automaton is cyclic at '" + current + "'");
    path.push_back(current);
    const StateId* next = nullptr;
    for (const auto& t : upper.transitions) {
      if (transition_from(t) != current) continue;
      if (next)
        raise(ErrorCode::InvalidArgument,
              "upper state '" + current + "' has more than one outgoing transition");
      next = &transition_to(t);
    }
    if (!next) return path;
    current = *next;
  }
}

std::vector<PlannedSegment> plan(const MimicAutomaton& ma,
                                 std::optional<std::uint64_t> seed_override) {
  std::vector<PlannedSegment> segments;
  std::size_t body_offset = 0;
  std::size_t phase = 0;
  std::size_t index = 0;
  for (const StateId& state : upper_path(ma.upper)) {
    const DhrBinding* binding = ma.find_binding(state);
    if (!binding) continue;
    ++phase;
    ScheduleFunction schedule = binding->schedule;
    if (seed_override && schedule.variant == ScheduleVariant::SeededRandom)
      schedule.seed = *seed_override;
    schedule.reset();
    CellularConfiguration ca = binding->ca_initial;
    for (std::size_t epoch = 1; epoch <= binding->epochs; ++epoch) {
      const std::size_t body = active_body(ca);
      const std::size_t key = binding->key_mode == BindingKeyMode::ByEpoch ? epoch : body;
      const SequentialAutomaton* sa = binding->find_sa(key);
      if (!sa)
        raise(ErrorCode::MissingBinding,
              "no automaton bound for " + std::string(to_string(binding->key_mode)) + " " +
                  std::to_string(key) + " of '" + binding->ca_name + "'");
      segments.push_back({++index, state, binding->ca_name, phase, epoch, body,
                          body_offset + body, sa});
      if (epoch < binding->epochs) ca = advance(ca, schedule);
    }
    body_offset += binding->schedule.body_count;
  }
  return segments;
}

std::size_t total_bodies(const MimicAutomaton& ma) {
  std::size_t total = 0;
  for (const StateId& state : upper_path(ma.upper)) {
    if (const DhrBinding* binding = ma.find_binding(state))
      total += binding->schedule.body_count;
  }
  return total;
}

namespace {

std::vector<Violation> validate_impl(const MimicAutomaton& ma) {
  std::vector<Violation> issues;
  auto add = [&](ErrorCode code, std::string msg) { issues.emplace_back(code, std::move(msg)); };

  for (const auto& v : validate(ma.upper)) add(ErrorCode::InvalidArgument, "upper " + v);
  if (ma.upper.kind != AutomatonKind::Fsa)
    add(ErrorCode::InvalidArgument, "upper automaton must be an fsa");

  std::vector<StateId> path;
  try {
    path = upper_path(ma.upper);
  } catch (const Error& e) {
    add(e.code(), e.what());
    return issues;
  }
  const std::unordered_set<std::string> on_path(path.begin(), path.end());

  std::unordered_set<std::string> bound_states;
  for (const auto& [state, binding] : ma.bindings) {
    if (!bound_states.insert(state).second)
      add(ErrorCode::InvalidArgument, "upper state '" + state + "' is bound twice");
    if (!ma.upper.has_state(state))
      add(ErrorCode::InvalidArgument, "binding references unknown upper state '" + state + "'");
    else if (!on_path.count(state))
      add(ErrorCode::InvalidArgument, "upper state '" + state + "' with a binding is unreachable");
  }
  for (const StateId& state : ma.upper.states) {
    if (!ma.upper.is_final(state) && !bound_states.count(state))
      add(ErrorCode::MissingBinding, "upper state '" + state + "' has no binding");
  }
  // The terminal phase may be a bare final state; anything else on the path
  // needs a binding to produce its segments.
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (ma.upper.is_final(path[i]) && !bound_states.count(path[i]))
      add(ErrorCode::MissingBinding, "upper state '" + path[i] + "' has no binding");
  }

  std::size_t total_epochs = 0;
  for (const auto& [state, binding] : ma.bindings) {
    const std::string who = "binding '" + binding.ca_name + "'";
    if (binding.ca_initial.cells.size() != binding.schedule.body_count) {
      add(ErrorCode::InvalidArgument,
          who + ": initial configuration length does not match the body count");
      continue;
    }
    std::size_t start_body = 0;
    try {
      start_body = active_body(binding.ca_initial);
    } catch (const Error& e) {
      add(e.code(), who + ": " + e.what());
      continue;
    }
    if (binding.epochs < 1) add(ErrorCode::InvalidArgument, who + " must cover at least one epoch");
    if (binding.schedule.variant == ScheduleVariant::Table) {
      const auto& table = binding.schedule.table;
      if (table.empty()) {
        add(ErrorCode::InvalidArgument, who + ": schedule table is empty");
        continue;
      }
      for (std::size_t entry : table)
        if (entry < 1 || entry > binding.schedule.body_count)
          add(ErrorCode::InvalidArgument,
              who + ": table entry " + std::to_string(entry) + " out of range");
      if (table[0] != start_body)
        add(ErrorCode::InvalidArgument,
            who + ": table starts at body " + std::to_string(table[0]) +
                " but the initial configuration activates body " + std::to_string(start_body));
      if (binding.epochs != table.size())
        add(ErrorCode::InvalidArgument, who + ": epochs must equal the table length");
    }
    if (on_path.count(state)) total_epochs += binding.epochs;

    std::unordered_set<std::size_t> keys;
    for (const auto& [key, sa] : binding.epoch_sas) {
      if (!keys.insert(key).second)
        add(ErrorCode::InvalidArgument,
            who + ": " + to_string(binding.key_mode) + " " + std::to_string(key) + " bound twice");
      for (const auto& v : validate(sa)) add(ErrorCode::InvalidArgument, v);
    }
    if (binding.key_mode == BindingKeyMode::ByEpoch) {
      for (std::size_t e = 1; e <= binding.epochs; ++e)
        if (!keys.count(e))
          add(ErrorCode::MissingBinding, who + ": epoch " + std::to_string(e) + " has no automaton");
      for (std::size_t key : keys)
        if (key < 1 || key > binding.epochs)
          add(ErrorCode::InvalidArgument,
              who + ": epoch " + std::to_string(key) + " is never scheduled");
    } else {
      const std::set<std::size_t> needed = reachable_bodies(binding);
      for (std::size_t body : needed)
        if (!keys.count(body))
          add(ErrorCode::MissingBinding, who + ": body " + std::to_string(body) + " has no automaton");
      for (std::size_t key : keys)
        if (key < 1 || key > binding.schedule.body_count)
          add(ErrorCode::InvalidArgument,
              who + ": body " + std::to_string(key) + " is out of range");
    }
  }

  if (ma.time_model.tau < 1) add(ErrorCode::InvalidArgument, "tau must be at least 1");
  for (std::uint64_t d : ma.time_model.durations)
    if (d < 1) add(ErrorCode::InvalidArgument, "epoch durations must be at least 1");
  const std::size_t n_durations = ma.time_model.durations.size();
  const bool durations_fit =
      total_epochs == 0 ? n_durations == 0
                        : (n_durations == total_epochs || n_durations + 1 == total_epochs);
  if (!durations_fit)
    add(ErrorCode::InvalidArgument,
        "time model lists " + std::to_string(n_durations) + " durations for " +
            std::to_string(total_epochs) + " epochs (need epochs or epochs-1)");

  const auto lowers = bound_automata(ma);
  if (ma.glue == GlueMode::StateIdentification) {
    for (const auto* sa : lowers) {
      if (sa->kind != lowers.front()->kind) {
        add(ErrorCode::GlueIncompatible,
            std::string("state identification requires same-kind automata ('") +
                lowers.front()->name + "' is " + to_string(lowers.front()->kind) + ", '" +
                sa->name + "' is " + to_string(sa->kind) + ")");
        break;
      }
    }
    if (total_epochs > 1) {
      for (const auto* sa : lowers)
        if (sa->finals.size() != 1)
          add(ErrorCode::GlueIncompatible,
              "state identification requires exactly one final state; '" + sa->name + "' has " +
                  std::to_string(sa->finals.size()));
    }
  } else {
    for (const auto* sa : lowers) {
      std::set<Symbol> mine(sa->input_alphabet.begin(), sa->input_alphabet.end());
      std::set<Symbol> ref(lowers.front()->input_alphabet.begin(),
                           lowers.front()->input_alphabet.end());
      if (mine != ref) {
        add(ErrorCode::AlphabetMismatch,
            "word handoff requires one shared input alphabet; '" + sa->name + "' and '" +
                lowers.front()->name + "' differ");
        break;
      }
    }
  }

  if (issues.empty()) {
    try {
      (void)plan(ma);
    } catch (const Error& e) {
      add(e.code(), e.what());
    }
  }
  return issues;
}

}  // namespace

std::vector<std::string> validate(const MimicAutomaton& ma) {
  std::vector<std::string> out;
  for (auto& [code, msg] : validate_impl(ma)) out.push_back(msg);
  return out;
}

MimicAutomaton build(SequentialAutomaton upper,
                     std::vector<std::pair<StateId, DhrBinding>> bindings, TimeModel time_model,
                     std::optional<GlueMode> glue) {
  MimicAutomaton ma;
  ma.upper = std::move(upper);
  ma.bindings = std::move(bindings);
  ma.time_model = std::move(time_model);
  if (glue) {
    ma.glue = *glue;
  } else {
    const auto lowers = bound_automata(ma);
    bool uniform = true;
    for (const auto* sa : lowers)
      if (sa->kind != lowers.front()->kind) uniform = false;
    ma.glue = uniform ? GlueMode::StateIdentification : GlueMode::WordHandoff;
  }
  const auto issues = validate_impl(ma);
  if (!issues.empty()) {
    std::string msg;
    for (std::size_t i = 0; i < issues.size(); ++i) {
      if (i > 0) msg += "; ";
      msg += issues[i].second;
    }
    raise(issues.front().first, msg);
  }
  return ma;
}

GranularityReport granularity(const MimicAutomaton& ma) {
  GranularityReport report;
  for (const StateId& state : upper_path(ma.upper)) {
    const DhrBinding* binding = ma.find_binding(state);
    if (!binding) continue;
    GranularityNode node;
    node.upper_state = state;
    node.ca_name = binding->ca_name;
    node.epochs = binding->epochs;
    ScheduleFunction schedule = binding->schedule;
    schedule.reset();
    CellularConfiguration ca = binding->ca_initial;
    for (std::size_t epoch = 1; epoch <= binding->epochs; ++epoch) {
      const std::size_t body = active_body(ca);
      const std::size_t key = binding->key_mode == BindingKeyMode::ByEpoch ? epoch : body;
      const SequentialAutomaton* sa = binding->find_sa(key);
      node.lower.push_back(sa ? sa->name : "?");
      if (epoch < binding->epochs) ca = advance(ca, schedule);
    }
    report.ca_count += 1;
    report.leaf_count += binding->epochs;
    report.nodes.push_back(std::move(node));
  }
  return report;
}

std::string to_string(const GranularityReport& report) {
  std::ostringstream os;
  os << "depth " << report.depth << "\n";
  os << "cellular automata " << report.ca_count << "\n";
  os << "lower automata " << report.leaf_count << "\n";
  for (const auto& node : report.nodes) {
    os << "- " << node.ca_name << " at " << node.upper_state << ": " << node.epochs << " epochs ->";
    for (const auto& sa : node.lower) os << " " << sa;
    os << "\n";
  }
  return os.str();
}

}  // namespace mimica

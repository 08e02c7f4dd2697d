#include "mimica/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace mimica {

namespace {

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += sep;
    out += xs[i];
  }
  return out;
}

std::string render_stack_string(const std::vector<Symbol>& s) {
  return s.empty() ? "-" : join(s, ",");
}

}  // namespace

const char* to_string(AutomatonKind kind) {
  switch (kind) {
    case AutomatonKind::Fsa: return "fsa";
    case AutomatonKind::Pda: return "pda";
    case AutomatonKind::Lba: return "lba";
    case AutomatonKind::Tm: return "tm";
  }
  return "?";
}

std::optional<AutomatonKind> automaton_kind_from(const std::string& text) {
  if (text == "fsa") return AutomatonKind::Fsa;
  if (text == "pda") return AutomatonKind::Pda;
  if (text == "lba") return AutomatonKind::Lba;
  if (text == "tm") return AutomatonKind::Tm;
  return std::nullopt;
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Accept: return "Accept";
    case Outcome::Reject: return "Reject";
    case Outcome::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

const StateId& transition_from(const Transition& t) {
  return std::visit([](const auto& arc) -> const StateId& { return arc.from; }, t);
}

const StateId& transition_to(const Transition& t) {
  return std::visit([](const auto& arc) -> const StateId& { return arc.to; }, t);
}

std::string transition_label(const Transition& t) {
  if (const auto* f = std::get_if<FsaArc>(&t)) return f->input;
  if (const auto* p = std::get_if<PdaArc>(&t)) {
    std::string in = p->input ? *p->input : "eps";
    return in + "[" + render_stack_string(p->pop) + "/" + render_stack_string(p->push) + "]";
  }
  const auto& a = std::get<TapeArc>(t);
  return a.read + "/" + a.write + "," + (a.move == HeadMove::Left ? "L" : "R");
}

bool SequentialAutomaton::has_state(const StateId& s) const { return contains(states, s); }
bool SequentialAutomaton::is_final(const StateId& s) const { return contains(finals, s); }
bool SequentialAutomaton::has_input_symbol(const Symbol& s) const {
  return contains(input_alphabet, s);
}

Word Configuration::remaining_input() const {
  return Word(input.begin() + static_cast<std::ptrdiff_t>(input_pos), input.end());
}

Word Configuration::consumed_input() const {
  return Word(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(input_pos));
}

std::string Configuration::key() const {
  std::string k = state;
  k += '\x1f';
  k += std::to_string(input_pos);
  k += '\x1f';
  k += join(stack, "\x1e");
  k += '\x1f';
  k += join(tape, "\x1e");
  k += '\x1f';
  k += std::to_string(head);
  return k;
}

std::vector<std::string> validate(const SequentialAutomaton& a) {
  std::vector<std::string> out;
  const std::string who = a.name.empty() ? std::string("automaton") : "'" + a.name + "'";

  if (a.states.empty()) out.push_back(who + " has no states");

  auto flag_duplicates = [&](const std::vector<std::string>& xs, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& x : xs) {
      if (!seen.insert(x).second) out.push_back(who + " declares duplicate " + what + " '" + x + "'");
    }
  };
  flag_duplicates(a.states, "state");
  flag_duplicates(a.input_alphabet, "input symbol");
  flag_duplicates(a.stack_alphabet, "stack symbol");
  flag_duplicates(a.tape_alphabet, "tape symbol");
  flag_duplicates(a.finals, "final state");

  auto reserved = [&](const std::vector<std::string>& xs, const char* where) {
    for (const auto& x : xs) {
      if (x == kLbaLeftMark || x == kLbaRightMark)
        out.push_back(who + " uses reserved marker '" + x + "' in its " + where);
    }
  };
  reserved(a.input_alphabet, "input alphabet");
  reserved(a.stack_alphabet, "stack alphabet");
  reserved(a.tape_alphabet, "tape alphabet");

  if (!a.has_state(a.initial))
    out.push_back(who + ": initial state '" + a.initial + "' is not in the state set");
  for (const auto& f : a.finals) {
    if (!a.has_state(f)) out.push_back(who + ": final state '" + f + "' is not in the state set");
  }

  const bool tape_kind = a.kind == AutomatonKind::Lba || a.kind == AutomatonKind::Tm;
  if (a.kind == AutomatonKind::Fsa || a.kind == AutomatonKind::Pda) {
    if (!a.tape_alphabet.empty()) out.push_back(who + " declares a tape alphabet but is not a tape machine");
    if (!a.blank.empty()) out.push_back(who + " declares a blank symbol but is not a tape machine");
  }
  if (a.kind != AutomatonKind::Pda && !a.stack_alphabet.empty())
    out.push_back(who + " declares a stack alphabet but is not a pda");
  if (tape_kind) {
    if (a.tape_alphabet.empty()) out.push_back(who + " needs a tape alphabet");
    if (a.kind == AutomatonKind::Tm && a.blank.empty()) out.push_back(who + " needs a blank symbol");
    if (!a.blank.empty() && !contains(a.tape_alphabet, a.blank))
      out.push_back(who + ": blank '" + a.blank + "' is not in the tape alphabet");
    if (!a.blank.empty() && contains(a.input_alphabet, a.blank))
      out.push_back(who + ": blank '" + a.blank + "' must not be an input symbol");
    for (const auto& s : a.input_alphabet) {
      if (!contains(a.tape_alphabet, s))
        out.push_back(who + ": input symbol '" + s + "' is not in the tape alphabet");
    }
  }

  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const Transition& t = a.transitions[i];
    const std::string where = who + ": transition #" + std::to_string(i + 1);

    const bool kind_matches =
        (a.kind == AutomatonKind::Fsa && std::holds_alternative<FsaArc>(t)) ||
        (a.kind == AutomatonKind::Pda && std::holds_alternative<PdaArc>(t)) ||
        (tape_kind && std::holds_alternative<TapeArc>(t));
    if (!kind_matches) {
      out.push_back(where + " does not match the automaton kind");
      continue;
    }
    if (!a.has_state(transition_from(t)))
      out.push_back(where + " leaves undeclared state '" + transition_from(t) + "'");
    if (!a.has_state(transition_to(t)))
      out.push_back(where + " enters undeclared state '" + transition_to(t) + "'");

    if (const auto* f = std::get_if<FsaArc>(&t)) {
      if (!a.has_input_symbol(f->input))
        out.push_back(where + " uses undeclared input symbol '" + f->input + "'");
    } else if (const auto* p = std::get_if<PdaArc>(&t)) {
      if (p->input && !a.has_input_symbol(*p->input))
        out.push_back(where + " uses undeclared input symbol '" + *p->input + "'");
      for (const auto& s : p->pop)
        if (!contains(a.stack_alphabet, s))
          out.push_back(where + " pops undeclared stack symbol '" + s + "'");
      for (const auto& s : p->push)
        if (!contains(a.stack_alphabet, s))
          out.push_back(where + " pushes undeclared stack symbol '" + s + "'");
    } else {
      const auto& arc = std::get<TapeArc>(t);
      const bool read_mark = arc.read == kLbaLeftMark || arc.read == kLbaRightMark;
      const bool write_mark = arc.write == kLbaLeftMark || arc.write == kLbaRightMark;
      if (a.kind == AutomatonKind::Tm) {
        if (read_mark || write_mark)
          out.push_back(where + " uses an end marker but the automaton is a tm");
        if (!read_mark && !contains(a.tape_alphabet, arc.read))
          out.push_back(where + " reads undeclared tape symbol '" + arc.read + "'");
        if (!write_mark && !contains(a.tape_alphabet, arc.write))
          out.push_back(where + " writes undeclared tape symbol '" + arc.write + "'");
      } else {
        // LBA: markers may only bounce -- same symbol back, head moving inward.
        if (!read_mark && !contains(a.tape_alphabet, arc.read))
          out.push_back(where + " reads undeclared tape symbol '" + arc.read + "'");
        if (write_mark && arc.read != arc.write)
          out.push_back(where + " rewrites an end marker");
        if (!write_mark && !contains(a.tape_alphabet, arc.write))
          out.push_back(where + " writes undeclared tape symbol '" + arc.write + "'");
        if (arc.read == kLbaLeftMark && (arc.write != kLbaLeftMark || arc.move != HeadMove::Right))
          out.push_back(where + " must keep '" + kLbaLeftMark + "' and move right");
        if (arc.read == kLbaRightMark && (arc.write != kLbaRightMark || arc.move != HeadMove::Left))
          out.push_back(where + " must keep '" + kLbaRightMark + "' and move left");
      }
    }
  }
  return out;
}

Configuration initial_configuration(const SequentialAutomaton& a, const Word& word) {
  for (const auto& s : word) {
    if (!a.has_input_symbol(s))
      raise(ErrorCode::UndeclaredSymbol,
            "word symbol '" + s + "' is not in the input alphabet of '" + a.name + "'");
  }
  Configuration c;
  c.kind = a.kind;
  c.state = a.initial;
  switch (a.kind) {
    case AutomatonKind::Fsa:
    case AutomatonKind::Pda:
      c.input = word;
      break;
    case AutomatonKind::Tm:
      c.tape = word.empty() ? std::vector<Symbol>{a.blank} : word;
      c.head = 0;
      break;
    case AutomatonKind::Lba:
      c.tape.reserve(word.size() + 2);
      c.tape.push_back(kLbaLeftMark);
      c.tape.insert(c.tape.end(), word.begin(), word.end());
      c.tape.push_back(kLbaRightMark);
      c.head = 1;
      break;
  }
  return c;
}

std::optional<Configuration> apply_transition(const SequentialAutomaton& a,
                                              const Configuration& c,
                                              const Transition& t) {
  if (transition_from(t) != c.state) return std::nullopt;

  if (const auto* f = std::get_if<FsaArc>(&t)) {
    if (c.input_pos >= c.input.size() || c.input[c.input_pos] != f->input) return std::nullopt;
    Configuration next = c;
    next.state = f->to;
    ++next.input_pos;
    return next;
  }

  if (const auto* p = std::get_if<PdaArc>(&t)) {
    if (p->input) {
      if (c.input_pos >= c.input.size() || c.input[c.input_pos] != *p->input) return std::nullopt;
    }
    if (p->pop.size() > c.stack.size()) return std::nullopt;
    for (std::size_t i = 0; i < p->pop.size(); ++i) {
      if (c.stack[c.stack.size() - 1 - i] != p->pop[i]) return std::nullopt;
    }
    Configuration next = c;
    next.state = p->to;
    if (p->input) ++next.input_pos;
    next.stack.resize(next.stack.size() - p->pop.size());
    for (auto it = p->push.rbegin(); it != p->push.rend(); ++it) next.stack.push_back(*it);
    return next;
  }

  const auto& arc = std::get<TapeArc>(t);
  if (c.head >= c.tape.size() || c.tape[c.head] != arc.read) return std::nullopt;
  Configuration next = c;
  next.state = arc.to;
  next.tape[next.head] = arc.write;
  if (arc.move == HeadMove::Left) {
    if (next.head == 0) {
      if (a.kind != AutomatonKind::Tm) return std::nullopt;  // LBA never runs off the tape
      next.tape.insert(next.tape.begin(), a.blank);          // head stays on the new blank
    } else {
      --next.head;
    }
  } else {
    ++next.head;
    if (next.head == next.tape.size()) {
      if (a.kind != AutomatonKind::Tm) return std::nullopt;
      next.tape.push_back(a.blank);
    }
  }
  return next;
}

std::vector<Configuration> step(const SequentialAutomaton& a, const Configuration& c) {
  if (c.kind != a.kind)
    raise(ErrorCode::ConfigurationMismatch,
          std::string("configuration kind ") + to_string(c.kind) +
              " does not match automaton kind " + to_string(a.kind));
  std::vector<Configuration> out;
  for (const auto& t : a.transitions) {
    if (auto next = apply_transition(a, c, t)) out.push_back(std::move(*next));
  }
  return out;
}

bool has_successor(const SequentialAutomaton& a, const Configuration& c) {
  for (const auto& t : a.transitions) {
    if (apply_transition(a, c, t)) return true;
  }
  return false;
}

bool is_halted(const SequentialAutomaton& a, const Configuration& c) {
  return !has_successor(a, c);
}

bool is_accepting(const SequentialAutomaton& a, const Configuration& c) {
  if (c.kind != a.kind)
    raise(ErrorCode::ConfigurationMismatch, "configuration does not belong to this automaton");
  if (!a.is_final(c.state)) return false;
  if ((a.kind == AutomatonKind::Fsa || a.kind == AutomatonKind::Pda) &&
      c.input_pos != c.input.size())
    return false;
  return is_halted(a, c);
}

SearchResult bounded_search(const SequentialAutomaton& a, const Configuration& start,
                            std::optional<std::uint64_t> depth_cap, std::uint64_t budget,
                            bool record_exploration) {
  struct Node {
    Configuration cfg;
    std::ptrdiff_t parent;
    std::size_t via;  // index into a.transitions
    std::uint64_t depth;
  };

  SearchResult result;
  std::vector<Node> nodes;
  nodes.push_back({start, -1, 0, 0});
  std::deque<std::size_t> frontier{0};
  std::unordered_set<std::string> visited{start.key()};
  std::ptrdiff_t truncated_at = -1;

  auto path_to = [&](std::ptrdiff_t idx) {
    std::vector<AppliedStep> path;
    for (std::ptrdiff_t i = idx; nodes[static_cast<std::size_t>(i)].parent >= 0;
         i = nodes[static_cast<std::size_t>(i)].parent) {
      const Node& n = nodes[static_cast<std::size_t>(i)];
      path.push_back({a.transitions[n.via], nodes[static_cast<std::size_t>(n.parent)].cfg, n.cfg});
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    const Configuration cfg = nodes[idx].cfg;
    const std::uint64_t depth = nodes[idx].depth;

    if (is_accepting(a, cfg)) {
      result.status = SearchResult::Status::Accepted;
      result.path = path_to(static_cast<std::ptrdiff_t>(idx));
      return result;
    }
    if (depth_cap && depth == *depth_cap) {
      // Tick budget for this epoch is spent; remember the first live frontier.
      if (truncated_at < 0) truncated_at = static_cast<std::ptrdiff_t>(idx);
      continue;
    }
    for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
      auto next = apply_transition(a, cfg, a.transitions[ti]);
      if (!next) continue;
      if (result.steps_used == budget) {
        result.status = SearchResult::Status::OutOfBudget;
        return result;
      }
      ++result.steps_used;
      if (record_exploration) result.explored.push_back({a.transitions[ti], cfg, *next});
      if (!visited.insert(next->key()).second) continue;
      nodes.push_back({std::move(*next), static_cast<std::ptrdiff_t>(idx), ti, depth + 1});
      frontier.push_back(nodes.size() - 1);
    }
  }

  if (truncated_at >= 0) {
    result.status = SearchResult::Status::Truncated;
    result.path = path_to(truncated_at);
  } else {
    result.status = SearchResult::Status::Rejected;
  }
  return result;
}

RunResult run(const SequentialAutomaton& a, const Word& word, std::uint64_t budget,
              const RunOptions& options) {
  if (budget < 1) raise(ErrorCode::InvalidArgument, "run budget must be at least 1");
  Configuration start = initial_configuration(a, word);
  SearchResult sr =
      bounded_search(a, start, std::nullopt, budget, options.record_exploration);
  RunResult result;
  result.steps_used = sr.steps_used;
  result.explored = std::move(sr.explored);
  switch (sr.status) {
    case SearchResult::Status::Accepted:
      result.outcome = Outcome::Accept;
      result.accepting_path = std::move(sr.path);
      break;
    case SearchResult::Status::Rejected:
      result.outcome = Outcome::Reject;
      break;
    case SearchResult::Status::OutOfBudget:
      result.outcome = Outcome::BudgetExhausted;
      break;
    case SearchResult::Status::Truncated:
      result.outcome = Outcome::Reject;  // unreachable without a depth cap
      break;
  }
  return result;
}

Word output_word(const SequentialAutomaton& a, const Configuration& final_config) {
  if (final_config.kind != a.kind)
    raise(ErrorCode::ConfigurationMismatch, "configuration does not belong to this automaton");
  if (has_successor(a, final_config))
    raise(ErrorCode::NotHalted, "configuration still has successors");
  if (a.kind == AutomatonKind::Fsa || a.kind == AutomatonKind::Pda)
    return final_config.consumed_input();
  Word out;
  for (const auto& cell : final_config.tape) {
    if (cell == a.blank || cell == kLbaLeftMark || cell == kLbaRightMark) continue;
    out.push_back(cell);
  }
  return out;
}

std::string serialize(const RunResult& result) {
  std::ostringstream os;
  os << "outcome " << to_string(result.outcome) << "\n";
  os << "steps " << result.steps_used << "\n";
  for (const auto& s : result.accepting_path) {
    os << "path " << s.before.state << " " << transition_label(s.transition) << " "
       << s.after.state << "\n";
  }
  for (const auto& s : result.explored) {
    os << "explored " << s.before.state << " " << transition_label(s.transition) << " "
       << s.after.state << "\n";
  }
  return os.str();
}

}  // namespace mimica

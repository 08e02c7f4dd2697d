#include "mimica/power.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mimica {

namespace {

std::string join_word(const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += " ";
    out += word[i];
  }
  return out.empty() ? "(empty)" : out;
}

std::vector<const SequentialAutomaton*> bound_automata(const MimicAutomaton& ma) {
  std::vector<const SequentialAutomaton*> out;
  for (const auto& [state, binding] : ma.bindings)
    for (const auto& [key, sa] : binding.epoch_sas) out.push_back(&sa);
  return out;
}

bool fsa_describable(const ScheduleFunction& s) {
  return (s.variant == ScheduleVariant::Table && !s.tm_generated) ||
         s.variant == ScheduleVariant::RoundRobin;
}

// Enumerates words over `alphabet` in shortlex order, shortest first.
class WordEnumerator {
 public:
  WordEnumerator(const std::vector<Symbol>& alphabet, std::size_t max_len)
      : alphabet_(alphabet), max_len_(max_len) {}

  std::optional<Word> next() {
    if (done_) return std::nullopt;
    Word out;
    out.reserve(indices_.size());
    for (std::size_t i : indices_) out.push_back(alphabet_[i]);
    bump();
    return out;
  }

 private:
  void bump() {
    for (std::size_t i = indices_.size(); i-- > 0;) {
      if (++indices_[i] < alphabet_.size()) return;
      indices_[i] = 0;
    }
    if (indices_.size() == max_len_ || alphabet_.empty()) {
      done_ = true;
    } else {
      indices_.assign(indices_.size() + 1, 0);
    }
  }

  const std::vector<Symbol>& alphabet_;
  std::size_t max_len_;
  std::vector<std::size_t> indices_;
  bool done_ = false;
};

void check_enumeration_size(const std::vector<Symbol>& alphabet, std::size_t max_len) {
  if (alphabet.empty()) return;  // only the empty word
  long double total = 0;
  long double pow = 1;
  for (std::size_t l = 0; l <= max_len; ++l) {
    total += pow;
    pow *= static_cast<long double>(alphabet.size());
    if (total > static_cast<long double>(kEnumerationGuard))
      raise(ErrorCode::EnumerationTooLarge,
            "word enumeration exceeds the guard of " + std::to_string(kEnumerationGuard));
  }
}

// All ways to cut `word` into `parts` consecutive (possibly empty) pieces.
bool splits_accept(const MimicAutomaton& ma, const std::vector<PlannedSegment>& segments,
                   const Word& word, std::uint64_t budget,
                   std::optional<std::uint64_t> seed_override, bool& saw_budget_exhausted) {
  const std::size_t parts = segments.size();
  std::vector<std::size_t> cuts(parts + 1, 0);
  cuts[parts] = word.size();

  // Odometer over cut positions: 0 <= cuts[1] <= ... <= cuts[parts-1] <= len.
  for (;;) {
    bool feasible = true;
    SegmentedInput input(parts);
    for (std::size_t i = 0; i < parts && feasible; ++i) {
      for (std::size_t j = cuts[i]; j < cuts[i + 1]; ++j) {
        if (!segments[i].sa->has_input_symbol(word[j])) {
          feasible = false;
          break;
        }
        input[i].push_back(word[j]);
      }
    }
    if (feasible) {
      const ExecutionTrace trace = execute(ma, input, budget, seed_override);
      if (trace.outcome == Outcome::Accept) return true;
      if (trace.outcome == Outcome::BudgetExhausted) saw_budget_exhausted = true;
    }

    std::size_t i = parts - 1;
    for (; i >= 1; --i) {
      if (cuts[i] < word.size()) {
        ++cuts[i];
        for (std::size_t j = i + 1; j < parts; ++j) cuts[j] = cuts[i];
        break;
      }
    }
    if (i == 0) return false;
  }
}

}  // namespace

const char* to_string(PowerClass value) {
  switch (value) {
    case PowerClass::Case1_TuringEquivalent: return "Case1_TuringEquivalent";
    case PowerClass::Case2_LBAonTMschedule: return "Case2_LBAonTMschedule";
    case PowerClass::Case3_LBAonRegularSchedule: return "Case3_LBAonRegularSchedule";
    case PowerClass::Case4_FSAonRegularSchedule: return "Case4_FSAonRegularSchedule";
    case PowerClass::Other: return "Other";
  }
  return "?";
}

PowerClass classify(const MimicAutomaton& ma) {
  const auto lowers = bound_automata(ma);
  if (lowers.empty()) return PowerClass::Other;

  const AutomatonKind kind = lowers.front()->kind;
  for (const auto* sa : lowers)
    if (sa->kind != kind) return PowerClass::Other;  // kind uniformity required

  const std::vector<PlannedSegment> segments = plan(ma);

  // Empty cellular dynamics: a single segment, no reconfiguration possible.
  if (segments.size() == 1 && kind == AutomatonKind::Tm)
    return PowerClass::Case1_TuringEquivalent;

  bool all_describable = true;
  bool any_tm_generated = false;
  for (const auto& [state, binding] : ma.bindings) {
    if (!fsa_describable(binding.schedule)) all_describable = false;
    if (binding.schedule.variant == ScheduleVariant::Table && binding.schedule.tm_generated)
      any_tm_generated = true;
    if (binding.schedule.variant == ScheduleVariant::SeededRandom) return PowerClass::Other;
  }

  if (kind == AutomatonKind::Lba && any_tm_generated) return PowerClass::Case2_LBAonTMschedule;
  if (kind == AutomatonKind::Lba && all_describable) return PowerClass::Case3_LBAonRegularSchedule;
  if (kind == AutomatonKind::Fsa && all_describable) return PowerClass::Case4_FSAonRegularSchedule;
  return PowerClass::Other;
}

SequentialAutomaton flatten_regular(const MimicAutomaton& ma) {
  if (classify(ma) != PowerClass::Case4_FSAonRegularSchedule)
    raise(ErrorCode::NotRegularCase, "flattening requires an all-FSA regular-schedule automaton");
  if (ma.glue != GlueMode::StateIdentification)
    raise(ErrorCode::NotRegularCase, "flattening requires state-identification glue");

  const std::vector<PlannedSegment> segments = plan(ma);

  // Segment instances get disjoint state names; prefix only when needed.
  bool collision = false;
  {
    std::unordered_map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < segments.size(); ++i)
      for (const StateId& s : segments[i].sa->states) {
        auto [it, inserted] = owner.try_emplace(s, i);
        if (!inserted && it->second != i) collision = true;
      }
  }
  auto instance_name = [&](std::size_t i, const StateId& s) {
    return collision ? "g" + std::to_string(i + 1) + "." + s : s;
  };

  // Union-find identifying the final state of segment i with the initial
  // state of segment i+1; the later name represents the merged class.
  std::unordered_map<std::string, std::string> parent;
  auto find = [&](std::string x) {
    while (true) {
      auto it = parent.find(x);
      if (it == parent.end()) return x;
      x = it->second;
    }
  };
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    const std::string from = find(instance_name(i, segments[i].sa->finals.front()));
    const std::string into = find(instance_name(i + 1, segments[i + 1].sa->initial));
    if (from != into) parent[from] = into;
  }

  SequentialAutomaton out;
  out.name = "flattened";
  out.kind = AutomatonKind::Fsa;

  auto add_unique = [](std::vector<std::string>& xs, const std::string& x) {
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  };
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (const StateId& s : segments[i].sa->states) add_unique(out.states, find(instance_name(i, s)));
    for (const Symbol& s : segments[i].sa->input_alphabet) add_unique(out.input_alphabet, s);
    for (const Transition& t : segments[i].sa->transitions) {
      const auto& arc = std::get<FsaArc>(t);
      FsaArc mapped{find(instance_name(i, arc.from)), arc.input, find(instance_name(i, arc.to))};
      Transition candidate = mapped;
      if (std::find(out.transitions.begin(), out.transitions.end(), candidate) ==
          out.transitions.end())
        out.transitions.push_back(candidate);
    }
  }
  out.initial = find(instance_name(0, segments.front().sa->initial));
  for (const StateId& f : segments.back().sa->finals)
    add_unique(out.finals, find(instance_name(segments.size() - 1, f)));
  return out;
}

LanguageSample language_sample(const SequentialAutomaton& a, const std::vector<Symbol>& alphabet,
                               std::size_t max_len, std::uint64_t budget) {
  check_enumeration_size(alphabet, max_len);
  LanguageSample sample{alphabet, max_len, budget, {}, {}};
  WordEnumerator words(alphabet, max_len);
  RunOptions options;
  options.record_exploration = false;
  while (auto word = words.next()) {
    bool in_alphabet = true;
    for (const auto& s : *word)
      if (!a.has_input_symbol(s)) in_alphabet = false;
    if (!in_alphabet) continue;
    const RunResult r = run(a, *word, budget, options);
    if (r.outcome == Outcome::Accept) sample.accepted.insert(*word);
    if (r.outcome == Outcome::BudgetExhausted) sample.budget_exhausted.insert(*word);
  }
  return sample;
}

LanguageSample language_sample(const MimicAutomaton& ma, const std::vector<Symbol>& alphabet,
                               std::size_t max_len, std::uint64_t budget,
                               std::optional<std::uint64_t> seed_override) {
  check_enumeration_size(alphabet, max_len);
  LanguageSample sample{alphabet, max_len, budget, {}, {}};
  const std::vector<PlannedSegment> segments = plan(ma, seed_override);
  WordEnumerator words(alphabet, max_len);
  while (auto word = words.next()) {
    bool exhausted = false;
    bool accepted = false;
    if (segments.empty()) {
      accepted = word->empty() && execute(ma, {}, budget, seed_override).outcome == Outcome::Accept;
    } else if (ma.glue == GlueMode::WordHandoff || segments.size() == 1) {
      bool feasible = true;
      for (const auto& s : *word)
        if (!segments.front().sa->has_input_symbol(s)) feasible = false;
      if (feasible) {
        const ExecutionTrace t = execute(ma, {*word}, budget, seed_override);
        accepted = t.outcome == Outcome::Accept;
        exhausted = t.outcome == Outcome::BudgetExhausted;
      }
    } else {
      accepted = splits_accept(ma, segments, *word, budget, seed_override, exhausted);
    }
    if (accepted)
      sample.accepted.insert(*word);
    else if (exhausted)
      sample.budget_exhausted.insert(*word);
  }
  return sample;
}

std::string to_string(const LanguageSample& sample) {
  std::ostringstream os;
  os << "alphabet";
  for (const auto& s : sample.alphabet) os << " " << s;
  os << "\nmax-len " << sample.max_len << "\nbudget " << sample.budget << "\n";
  os << "accepted " << sample.accepted.size() << "\n";
  for (const auto& w : sample.accepted) os << "  " << join_word(w) << "\n";
  os << "budget-exhausted " << sample.budget_exhausted.size() << "\n";
  for (const auto& w : sample.budget_exhausted) os << "  " << join_word(w) << "\n";
  return os.str();
}

EquivalenceEvidence equivalence_evidence(const MimicAutomaton& ma,
                                         const SequentialAutomaton& fsa,
                                         const std::vector<Symbol>& alphabet, std::size_t max_len,
                                         std::uint64_t budget) {
  const LanguageSample left = language_sample(ma, alphabet, max_len, budget);
  const LanguageSample right = language_sample(fsa, alphabet, max_len, budget);

  EquivalenceEvidence e;
  if (!left.budget_exhausted.empty() || !right.budget_exhausted.empty()) {
    e.equal = false;
    const auto& set = left.budget_exhausted.empty() ? right.budget_exhausted : left.budget_exhausted;
    e.counterexample = *set.begin();
    e.detail = "budget exhausted; evidence inconclusive";
    return e;
  }
  std::vector<Word> diff;
  std::set_symmetric_difference(left.accepted.begin(), left.accepted.end(),
                                right.accepted.begin(), right.accepted.end(),
                                std::back_inserter(diff));
  if (diff.empty()) {
    e.equal = true;
    e.detail = "languages agree on " + std::to_string(left.accepted.size()) + " accepted words";
  } else {
    e.equal = false;
    e.counterexample = diff.front();
    const bool ma_side = left.accepted.count(diff.front()) > 0;
    e.detail = std::string("accepted by ") + (ma_side ? "the mimic automaton" : "the flat fsa") +
               " only: " + join_word(diff.front());
  }
  return e;
}

SequentialAutomaton demo_turing_machine() {
  SequentialAutomaton m;
  m.name = "M_anbncn";
  m.kind = AutomatonKind::Tm;
  m.states = {"q0", "q1", "q2", "q3", "q4", "q5", "acc"};
  m.input_alphabet = {"a", "b", "c"};
  m.tape_alphabet = {"a", "b", "c", "X", "Y", "Z", "_"};
  m.blank = "_";
  m.initial = "q0";
  m.finals = {"acc"};
  auto arc = [](StateId from, Symbol read, Symbol write, HeadMove move, StateId to) {
    return Transition{TapeArc{std::move(from), std::move(read), std::move(write), move,
                              std::move(to)}};
  };
  m.transitions = {
      // mark one a, then the first b, then the first c, rewind, repeat
      arc("q0", "a", "X", HeadMove::Right, "q1"),
      arc("q0", "Y", "Y", HeadMove::Right, "q4"),
      arc("q1", "a", "a", HeadMove::Right, "q1"),
      arc("q1", "Y", "Y", HeadMove::Right, "q1"),
      arc("q1", "b", "Y", HeadMove::Right, "q2"),
      arc("q2", "b", "b", HeadMove::Right, "q2"),
      arc("q2", "Z", "Z", HeadMove::Right, "q2"),
      arc("q2", "c", "Z", HeadMove::Left, "q3"),
      arc("q3", "a", "a", HeadMove::Left, "q3"),
      arc("q3", "b", "b", HeadMove::Left, "q3"),
      arc("q3", "Y", "Y", HeadMove::Left, "q3"),
      arc("q3", "Z", "Z", HeadMove::Left, "q3"),
      arc("q3", "X", "X", HeadMove::Right, "q0"),
      // verify the tail is Y* Z* followed by blank
      arc("q4", "Y", "Y", HeadMove::Right, "q4"),
      arc("q4", "Z", "Z", HeadMove::Right, "q5"),
      arc("q5", "Z", "Z", HeadMove::Right, "q5"),
      arc("q5", "_", "_", HeadMove::Right, "acc"),
  };
  return m;
}

MimicAutomaton wrap_single(const SequentialAutomaton& sa) {
  DhrBinding binding;
  binding.ca_name = "C";
  binding.ca_initial = one_hot(1, 1);
  binding.schedule = ScheduleFunction::make_table({1}, 1);
  binding.epochs = 1;
  binding.key_mode = BindingKeyMode::ByEpoch;
  binding.epoch_sas.emplace_back(1, sa);

  SequentialAutomaton upper;
  upper.name = "A";
  upper.kind = AutomatonKind::Fsa;
  upper.states = {"P0"};
  upper.initial = "P0";
  upper.finals = {"P0"};

  return build(std::move(upper), {{StateId("P0"), std::move(binding)}}, TimeModel{{}, 1},
               GlueMode::StateIdentification);
}

LowerBoundReport turing_lower_bound_demo() {
  const SequentialAutomaton machine = demo_turing_machine();
  const MimicAutomaton ma = wrap_single(machine);
  constexpr std::uint64_t kBudget = 100000;
  const std::vector<Symbol> sigma = {"a", "b", "c"};

  LowerBoundReport report;
  auto outcome_of = [&](const Word& word) {
    return execute(ma, {word}, kBudget).outcome;
  };

  for (std::size_t n = 1; n <= 6; ++n) {
    Word word;
    for (std::size_t i = 0; i < n; ++i) word.push_back("a");
    for (std::size_t i = 0; i < n; ++i) word.push_back("b");
    for (std::size_t i = 0; i < n; ++i) word.push_back("c");

    ++report.accept_checks;
    const Outcome got = outcome_of(word);
    const bool ok = got == Outcome::Accept;
    if (!ok) ++report.failures;
    report.lines.push_back("n=" + std::to_string(n) + " " + join_word(word) + ": expected Accept, got " +
                           to_string(got) + (ok ? "" : "  <-- FAIL"));

    // Single edits of a^n b^n c^n: the length or the symbol counts break,
    // so every one of them lies outside the language.
    std::vector<Word> edits;
    for (std::size_t pos = 0; pos < word.size(); ++pos)
      for (const Symbol& s : sigma) {
        if (s == word[pos]) continue;
        Word w = word;
        w[pos] = s;
        edits.push_back(std::move(w));
      }
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
      Word w = word;
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(pos));
      edits.push_back(std::move(w));
    }
    for (std::size_t pos = 0; pos <= word.size(); ++pos)
      for (const Symbol& s : sigma) {
        Word w = word;
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), s);
        edits.push_back(std::move(w));
      }

    std::size_t taken = 0;
    std::size_t rejected_count = 0;
    for (const Word& w : edits) {
      if (taken == 20) break;
      ++taken;
      ++report.reject_checks;
      const Outcome o = outcome_of(w);
      if (o == Outcome::Reject) {
        ++rejected_count;
      } else {
        ++report.failures;
        report.lines.push_back("n=" + std::to_string(n) + " perturbation " + join_word(w) +
                               ": expected Reject, got " + std::string(to_string(o)) + "  <-- FAIL");
      }
    }
    report.lines.push_back("n=" + std::to_string(n) + ": " + std::to_string(rejected_count) + "/" +
                           std::to_string(taken) + " single-edit perturbations rejected");
  }
  report.all_passed = report.failures == 0;
  return report;
}

std::string to_string(const LowerBoundReport& report) {
  std::ostringstream os;
  os << "turing lower bound demo: " << (report.all_passed ? "PASS" : "FAIL") << "\n";
  os << "accept checks " << report.accept_checks << ", reject checks " << report.reject_checks
     << ", failures " << report.failures << "\n";
  for (const auto& line : report.lines) os << line << "\n";
  return os.str();
}

}  // namespace mimica

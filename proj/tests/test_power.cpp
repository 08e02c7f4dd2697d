#include <doctest.h>

#include <map>

#include "mimica/power.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mimica;
namespace ts = testsupport;

namespace {

MimicAutomaton fig4() { return ts::load_ma(std::string(MIMICA_DATA_DIR) + "/fig4.ma"); }

Word w(std::initializer_list<const char*> symbols) {
  Word out;
  for (const char* s : symbols) out.push_back(s);
  return out;
}

std::set<Word> words(std::initializer_list<Word> ws) { return std::set<Word>(ws); }

// Replaces every lower automaton with an LBA sharing the shape of a simple
// scanner, so schedule-variant classification can be exercised per kind.
SequentialAutomaton scanner_lba(const std::string& name) {
  SequentialAutomaton m;
  m.name = name;
  m.kind = AutomatonKind::Lba;
  m.states = {"r", "ok"};
  m.input_alphabet = {"a"};
  m.tape_alphabet = {"a"};
  m.initial = "r";
  m.finals = {"ok"};
  m.transitions = {
      TapeArc{"r", "a", "a", HeadMove::Right, "r"},
      TapeArc{"r", kLbaRightMark, kLbaRightMark, HeadMove::Left, "ok"},
  };
  return m;
}

MimicAutomaton uniform_ma(const SequentialAutomaton& sa, ScheduleFunction schedule,
                          std::size_t epochs, std::size_t start_body) {
  DhrBinding binding;
  binding.ca_name = "C";
  binding.ca_initial = one_hot(schedule.body_count, start_body);
  binding.schedule = std::move(schedule);
  binding.epochs = epochs;
  binding.key_mode = BindingKeyMode::ByBody;
  for (std::size_t b = 1; b <= binding.schedule.body_count; ++b)
    binding.epoch_sas.emplace_back(b, sa);

  SequentialAutomaton upper;
  upper.name = "U";
  upper.kind = AutomatonKind::Fsa;
  upper.states = {"P"};
  upper.initial = "P";
  upper.finals = {"P"};

  TimeModel tm;
  for (std::size_t i = 0; i + 1 < epochs; ++i) tm.durations.push_back(8);
  return build(upper, {{StateId("P"), binding}}, tm, GlueMode::StateIdentification);
}

}  // namespace

TEST_CASE("classification by component kinds") {
  CHECK(classify(wrap_single(demo_turing_machine())) == PowerClass::Case1_TuringEquivalent);
  CHECK(classify(fig4()) == PowerClass::Case4_FSAonRegularSchedule);

  const SequentialAutomaton lba = scanner_lba("L");
  CHECK(classify(uniform_ma(lba, ScheduleFunction::make_table({1, 2, 1}, 2), 3, 1)) ==
        PowerClass::Case3_LBAonRegularSchedule);
  CHECK(classify(uniform_ma(lba, ScheduleFunction::make_round_robin(2), 3, 1)) ==
        PowerClass::Case3_LBAonRegularSchedule);
  CHECK(classify(uniform_ma(lba, ScheduleFunction::make_table({1, 2, 1}, 2, true), 3, 1)) ==
        PowerClass::Case2_LBAonTMschedule);
  CHECK(classify(uniform_ma(lba, ScheduleFunction::make_seeded_random(2, 5), 2, 1)) ==
        PowerClass::Other);

  SUBCASE("all-fsa with round robin is case 4") {
    SequentialAutomaton fsa = ts::chain_fsa("F", "f", {"a"}, {"a"});
    CHECK(classify(uniform_ma(fsa, ScheduleFunction::make_round_robin(2), 4, 1)) ==
          PowerClass::Case4_FSAonRegularSchedule);
  }
  SUBCASE("a tm with live scheduling is outside the cases") {
    SequentialAutomaton tm = demo_turing_machine();
    MimicAutomaton ma = uniform_ma(tm, ScheduleFunction::make_round_robin(2), 2, 1);
    CHECK(classify(ma) == PowerClass::Other);
  }
}

TEST_CASE("classification is invariant under renaming") {
  MimicAutomaton ma = fig4();
  for (auto& [state, binding] : ma.bindings)
    for (auto& [key, sa] : binding.epoch_sas) {
      for (auto& s : sa.states) s = "renamed_" + s;
      sa.initial = "renamed_" + sa.initial;
      for (auto& f : sa.finals) f = "renamed_" + f;
      for (auto& t : sa.transitions) {
        auto& arc = std::get<FsaArc>(t);
        arc.from = "renamed_" + arc.from;
        arc.to = "renamed_" + arc.to;
      }
    }
  CHECK(classify(ma) == PowerClass::Case4_FSAonRegularSchedule);
}

TEST_CASE("flatten concatenates with final/initial identification") {
  const SequentialAutomaton flat = flatten_regular(fig4());
  CHECK(validate(flat).empty());

  // 16 stage states minus the three identified pairs
  CHECK(flat.states.size() == 13);
  CHECK(flat.initial == "s0");
  CHECK(flat.finals == std::vector<StateId>{"s15"});

  // shortest accepted joined word has length 6
  CHECK(run(flat, w({"a1", "a3", "b1", "b3", "c3", "d4"}), 1000).outcome == Outcome::Accept);
  const LanguageSample s =
      language_sample(flat, {"a1", "a3", "b1", "b3", "c3", "d4"}, 5, 1000);
  CHECK(s.accepted.empty());
}

TEST_CASE("flatten of a single segment is that automaton") {
  SequentialAutomaton fsa = ts::chain_fsa("F", "f", {"a", "b"}, {"a", "b"});
  const MimicAutomaton ma = wrap_single(fsa);
  REQUIRE(classify(ma) == PowerClass::Case4_FSAonRegularSchedule);
  const SequentialAutomaton flat = flatten_regular(ma);
  CHECK(flat.states == fsa.states);
  CHECK(flat.transitions == fsa.transitions);
  CHECK(flat.initial == fsa.initial);
  CHECK(flat.finals == fsa.finals);
}

TEST_CASE("flatten of two copies of one arc is a two-transition chain") {
  SequentialAutomaton arc = ts::chain_fsa("A", "", {"x"}, {"x"});  // states 0,1
  DhrBinding binding;
  binding.ca_name = "C";
  binding.ca_initial = one_hot(2, 1);
  binding.schedule = ScheduleFunction::make_table({1, 2}, 2);
  binding.epochs = 2;
  binding.epoch_sas = {{1, arc}, {2, arc}};

  SequentialAutomaton upper;
  upper.name = "U";
  upper.kind = AutomatonKind::Fsa;
  upper.states = {"P"};
  upper.initial = "P";
  upper.finals = {"P"};

  const MimicAutomaton ma =
      build(upper, {{StateId("P"), binding}}, TimeModel{{4}, 1}, GlueMode::StateIdentification);
  const SequentialAutomaton flat = flatten_regular(ma);
  CHECK(flat.states.size() == 3);
  CHECK(flat.transitions.size() == 2);
  CHECK(run(flat, w({"x", "x"}), 100).outcome == Outcome::Accept);
  CHECK(run(flat, w({"x"}), 100).outcome == Outcome::Reject);
}

TEST_CASE("flatten refuses non-regular automata") {
  try {
    (void)flatten_regular(wrap_single(demo_turing_machine()));
    FAIL("expected NotRegularCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRegularCase);
  }
}

TEST_CASE("language samples of the four stage automata match hand enumeration") {
  const auto doc = ts::parse_file(std::string(MIMICA_DATA_DIR) + "/fig4.ma");
  std::map<std::string, const SequentialAutomaton*> sa;
  for (const auto& d : doc.sas) sa[d.automaton.name] = &d.automaton;

  const LanguageSample s1 = language_sample(*sa["S_A1"], {"a1", "a2", "a3", "a4"}, 3, 1000);
  CHECK(s1.accepted == words({w({"a1", "a3"}), w({"a1", "a2", "a4"})}));

  const LanguageSample s2 = language_sample(*sa["S_A2"], {"b1", "b2", "b3", "b4"}, 3, 1000);
  CHECK(s2.accepted == words({w({"b1", "b3"}), w({"b1", "b2", "b4"})}));

  const LanguageSample s3 = language_sample(*sa["S_A3"], {"c1", "c2", "c3", "c4", "c5"}, 3, 1000);
  CHECK(s3.accepted == words({w({"c3"}), w({"c1", "c4"}), w({"c2", "c5"})}));

  const LanguageSample s4 = language_sample(*sa["S_A4"], {"d1", "d2", "d3", "d4"}, 3, 1000);
  CHECK(s4.accepted == words({w({"d4"}), w({"d1", "d2", "d3"})}));

  SUBCASE("the independent recursive oracle agrees") {
    for (const char* name : {"S_A1", "S_A2", "S_A3", "S_A4"}) {
      const SequentialAutomaton& a = *sa[name];
      const LanguageSample got = language_sample(a, a.input_alphabet, 3, 1000);
      std::set<Word> expect;
      for (const Word& word : ts::all_words(a.input_alphabet, 3))
        if (ts::naive_fsa_accepts(a, word)) expect.insert(word);
      CHECK(got.accepted == expect);
      CHECK(got.budget_exhausted.empty());
    }
  }
}

TEST_CASE("an automaton with no final states accepts nothing") {
  SequentialAutomaton a = ts::chain_fsa("E", "e", {"a"}, {"a"});
  a.finals.clear();
  CHECK(language_sample(a, {"a"}, 4, 100).accepted.empty());
}

TEST_CASE("tm language sample matches the counting oracle") {
  const LanguageSample s = language_sample(demo_turing_machine(), {"a", "b", "c"}, 6, 100000);
  CHECK(s.accepted == words({w({"a", "b", "c"}), w({"a", "a", "b", "b", "c", "c"})}));
  CHECK(s.budget_exhausted.empty());
  for (const Word& word : ts::all_words({"a", "b", "c"}, 6))
    CHECK(s.accepted.count(word) == (ts::anbncn_oracle(word) ? 1 : 0));
}

TEST_CASE("samples grow monotonically with the length bound") {
  const SequentialAutomaton tm = demo_turing_machine();
  const LanguageSample small = language_sample(tm, {"a", "b", "c"}, 3, 100000);
  const LanguageSample large = language_sample(tm, {"a", "b", "c"}, 4, 100000);
  for (const Word& word : small.accepted) CHECK(large.accepted.count(word) == 1);
}

TEST_CASE("budget-starved words are reported separately, never as rejected") {
  // a machine that walks right forever, growing the tape
  SequentialAutomaton loop;
  loop.name = "Loop";
  loop.kind = AutomatonKind::Tm;
  loop.states = {"s", "f"};
  loop.input_alphabet = {"a"};
  loop.tape_alphabet = {"a", "_"};
  loop.blank = "_";
  loop.initial = "s";
  loop.finals = {"f"};
  loop.transitions = {TapeArc{"s", "a", "a", HeadMove::Right, "s"},
                      TapeArc{"s", "_", "_", HeadMove::Right, "s"}};
  const LanguageSample s = language_sample(loop, {"a"}, 3, 50);
  CHECK(!s.budget_exhausted.empty());
  CHECK(s.accepted.empty());
  CHECK(to_string(s).find("budget-exhausted") != std::string::npos);
}

TEST_CASE("oversized enumerations are refused") {
  try {
    (void)language_sample(demo_turing_machine(), {"a", "b", "c"}, 20, 10);
    FAIL("expected EnumerationTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EnumerationTooLarge);
  }
}

TEST_CASE("the mimic automaton and its flattening accept the same words") {
  const MimicAutomaton ma = fig4();
  const SequentialAutomaton flat = flatten_regular(ma);
  // the full 17-symbol alphabet blows the enumeration guard at length 6;
  // this subset still reaches the shortest accepted joined word
  const std::vector<Symbol> sigma = {"a1", "a3", "b1", "b3", "c3", "d4"};

  const EquivalenceEvidence e = equivalence_evidence(ma, flat, sigma, 6, 10000);
  CHECK(e.equal);

  SUBCASE("a deleted transition is caught with a counterexample") {
    SequentialAutomaton broken = flat;
    broken.transitions.pop_back();
    const EquivalenceEvidence bad = equivalence_evidence(ma, broken, sigma, 6, 10000);
    CHECK(!bad.equal);
    REQUIRE(bad.counterexample.has_value());
    CHECK(run(flat, *bad.counterexample, 10000).outcome !=
          run(broken, *bad.counterexample, 10000).outcome);
  }
}

TEST_CASE("flattening equivalence holds over random all-fsa automata") {
  ts::Rng rng(2024);
  int passes = 0;
  for (int i = 0; i < 20; ++i) {
    const std::vector<Symbol> sigma = (i % 2 == 0) ? std::vector<Symbol>{"a", "b"}
                                                   : std::vector<Symbol>{"a", "b", "c"};
    const MimicAutomaton ma = ts::random_case4_ma(rng, sigma);
    const SequentialAutomaton flat = flatten_regular(ma);
    const EquivalenceEvidence e = equivalence_evidence(ma, flat, sigma, 8);
    CHECK_MESSAGE(e.equal, "case ", i, ": ", e.detail);
    if (e.equal) ++passes;
  }
  CHECK(passes == 20);
}

TEST_CASE("the lower-bound demonstration passes end to end") {
  const LowerBoundReport report = turing_lower_bound_demo();
  CHECK(report.all_passed);
  CHECK(report.accept_checks == 6);
  CHECK(report.reject_checks == 120);
  CHECK(report.failures == 0);
  CHECK(to_string(report).find("PASS") != std::string::npos);
}

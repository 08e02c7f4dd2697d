#include <doctest.h>

#include <set>

#include "mimica/hierarchy.hpp"
#include "mimica/power.hpp"
#include "support/oracles.hpp"

using namespace mimica;
namespace ts = testsupport;

namespace {

MimicAutomaton fig4() { return ts::load_ma(std::string(MIMICA_DATA_DIR) + "/fig4.ma"); }

}  // namespace

TEST_CASE("the published assembly builds and re-validates cleanly") {
  MimicAutomaton ma = fig4();
  CHECK(validate(ma).empty());

  // build Then validate is idempotent
  MimicAutomaton rebuilt = build(ma.upper, ma.bindings, ma.time_model, ma.glue);
  CHECK(validate(rebuilt).empty());
  CHECK(rebuilt == ma);
}

TEST_CASE("a missing binding is reported") {
  MimicAutomaton ma = fig4();
  ma.bindings.erase(ma.bindings.begin());  // S_A1 is a non-final macro phase
  const auto violations = validate(ma);
  REQUIRE(!violations.empty());
  CHECK(violations[0].find("'S_A1' has no binding") != std::string::npos);

  try {
    (void)build(ma.upper, ma.bindings, ma.time_model, ma.glue);
    FAIL("expected MissingBinding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingBinding);
  }
}

TEST_CASE("state identification between different kinds is incompatible") {
  MimicAutomaton ma = fig4();
  SequentialAutomaton pda;
  pda.name = "P";
  pda.kind = AutomatonKind::Pda;
  pda.states = {"p", "q"};
  pda.input_alphabet = {"b1"};
  pda.stack_alphabet = {"Z"};
  pda.initial = "p";
  pda.finals = {"q"};
  pda.transitions = {PdaArc{"p", Symbol("b1"), {}, {}, "q"}};
  ma.bindings[0].second.epoch_sas[1].second = pda;

  bool found = false;
  for (const auto& v : validate(ma))
    if (v.find("same-kind") != std::string::npos) found = true;
  CHECK(found);

  try {
    (void)build(ma.upper, ma.bindings, ma.time_model, GlueMode::StateIdentification);
    FAIL("expected GlueIncompatible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GlueIncompatible);
  }
}

TEST_CASE("plan lays out segments in the combined body space") {
  const auto segments = plan(fig4());
  REQUIRE(segments.size() == 4);
  CHECK(segments[0].sa->name == "S_A1");
  CHECK(segments[1].sa->name == "S_A2");
  CHECK(segments[2].sa->name == "S_A3");
  CHECK(segments[3].sa->name == "S_A4");
  CHECK(segments[0].body_global == 1);
  CHECK(segments[1].body_global == 2);
  CHECK(segments[2].body_global == 3);
  CHECK(segments[3].body_global == 4);
  CHECK(segments[2].upper_state == "S_A2");
  CHECK(segments[2].epoch == 1);
  CHECK(total_bodies(fig4()) == 4);
}

TEST_CASE("granularity reports the depth-2 shape") {
  const GranularityReport r = granularity(fig4());
  CHECK(r.depth == 2);
  CHECK(r.ca_count == 2);
  CHECK(r.leaf_count == 4);
  REQUIRE(r.nodes.size() == 2);
  CHECK(r.nodes[0].ca_name == "C1");
  CHECK(r.nodes[0].lower == std::vector<std::string>{"S_A1", "S_A2"});
  CHECK(r.nodes[1].lower == std::vector<std::string>{"S_A3", "S_A4"});

  SUBCASE("minimal automaton: one body, one machine") {
    const MimicAutomaton tiny = wrap_single(demo_turing_machine());
    const GranularityReport t = granularity(tiny);
    CHECK(t.depth == 2);
    CHECK(t.ca_count == 1);
    CHECK(t.leaf_count == 1);
  }

  SUBCASE("a binding with m epochs reports m scheduler states") {
    DhrBinding b;
    b.ca_name = "Cm";
    b.key_mode = BindingKeyMode::ByBody;
    b.ca_initial = one_hot(2, 1);
    b.schedule = ScheduleFunction::make_round_robin(2);
    b.epochs = 5;
    SequentialAutomaton sa = ts::load_ma(std::string(MIMICA_DATA_DIR) + "/example2.ma")
                                 .bindings[0]
                                 .second.epoch_sas[0]
                                 .second;
    b.epoch_sas.emplace_back(1, sa);
    b.epoch_sas.emplace_back(2, sa);

    SequentialAutomaton upper;
    upper.name = "U";
    upper.kind = AutomatonKind::Fsa;
    upper.states = {"P"};
    upper.initial = "P";
    upper.finals = {"P"};

    MimicAutomaton ma = build(upper, {{StateId("P"), b}}, TimeModel{{2, 2, 2, 2}, 1},
                              GlueMode::StateIdentification);
    CHECK(granularity(ma).nodes[0].epochs == 5);
    CHECK(granularity(ma).leaf_count == 5);
  }
}

TEST_CASE("every scheduled epoch resolves to exactly one automaton") {
  for (const char* file : {"/fig4.ma", "/case1.ma", "/example2.ma"}) {
    const MimicAutomaton ma = ts::load_ma(std::string(MIMICA_DATA_DIR) + file);
    const auto segments = plan(ma);
    std::set<std::pair<std::string, std::size_t>> pairs;
    for (const auto& seg : segments) {
      CHECK(seg.sa != nullptr);
      pairs.insert({seg.upper_state, seg.epoch});
    }
    CHECK(pairs.size() == segments.size());
    CHECK(granularity(ma).leaf_count == pairs.size());
  }
}

TEST_CASE("build rejects a branching upper automaton") {
  MimicAutomaton ma = fig4();
  ma.upper.states.push_back("S_A3x");
  ma.upper.transitions.push_back(FsaArc{"S_A1", "#", "S_A3x"});
  const auto violations = validate(ma);
  REQUIRE(!violations.empty());
  CHECK(violations[0].find("more than one outgoing") != std::string::npos);
}

TEST_CASE("default glue follows kind uniformity") {
  MimicAutomaton fig = fig4();
  MimicAutomaton rebuilt = build(fig.upper, fig.bindings, fig.time_model, std::nullopt);
  CHECK(rebuilt.glue == GlueMode::StateIdentification);
}

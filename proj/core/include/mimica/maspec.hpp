/* maspec.hpp -- the `.ma` textual specification format
 *
 * A document begins with the header line `ma-spec v1` and contains blocks:
 *
 *   sa NAME { kind / states / input / stack / tape / blank / initial /
 *             final / trans ... }
 *   ca NAME { bodies / start / schedule / epochs }
 *   time    { durations / tau }
 *   upper NAME { states / initial / final / trans FROM -> TO }
 *   bind STATE { ca NAME / by epoch|body / KEY -> SA_NAME ... }
 *   glue state-identification | word-handoff
 *
 * `#` starts a comment. Unknown keys are rejected. Every diagnostic carries
 * file:line:col and the list is deterministically ordered.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimica/hierarchy.hpp"

namespace mimica {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  std::string file;
  SourceLoc loc;
};

std::string to_string(const Diagnostic& d, bool color = false);
void sort_diagnostics(std::vector<Diagnostic>& diags);

struct SaDecl {
  SequentialAutomaton automaton;
  SourceLoc loc;
  bool operator==(const SaDecl& other) const { return automaton == other.automaton; }
};

struct CaDecl {
  std::string name;
  std::size_t bodies = 1;
  ScheduleVariant variant = ScheduleVariant::Table;
  std::vector<std::size_t> table;
  bool tm_generated = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> start;   // defaults: first table entry, else 1
  std::optional<std::size_t> epochs;  // defaults to the table length
  SourceLoc loc;
  bool operator==(const CaDecl& other) const {
    return name == other.name && bodies == other.bodies && variant == other.variant &&
           table == other.table && tm_generated == other.tm_generated && seed == other.seed &&
           start == other.start && epochs == other.epochs;
  }
};

struct BindDecl {
  StateId upper_state;
  std::string ca_name;
  BindingKeyMode key_mode = BindingKeyMode::ByEpoch;
  std::vector<std::pair<std::size_t, std::string>> entries;  // key -> sa name
  SourceLoc loc;
  bool operator==(const BindDecl& other) const {
    return upper_state == other.upper_state && ca_name == other.ca_name &&
           key_mode == other.key_mode && entries == other.entries;
  }
};

struct UpperDecl {
  SequentialAutomaton automaton;
  SourceLoc loc;
  bool operator==(const UpperDecl& other) const { return automaton == other.automaton; }
};

struct MaSpecDocument {
  std::vector<SaDecl> sas;
  std::vector<CaDecl> cas;
  std::optional<TimeModel> time;
  std::optional<UpperDecl> upper;
  std::vector<BindDecl> binds;
  std::optional<GlueMode> glue;

  bool operator==(const MaSpecDocument&) const = default;
};

struct ParseResult {
  std::optional<MaSpecDocument> document;  // set only when diagnostics is free of errors
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return document.has_value(); }
};

ParseResult parse(std::string_view text, const std::string& filename = "<memory>");

std::string serialize(const MaSpecDocument& doc);

struct LowerResult {
  std::optional<MimicAutomaton> automaton;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return automaton.has_value(); }
};

// Resolves names and assembles the MimicAutomaton; structural violations
// come back as diagnostics anchored at the offending block.
LowerResult lower(const MaSpecDocument& doc, const std::string& filename = "<memory>");

// Wraps a bare FSA into a single-body, single-epoch document (the output
// format of `flatten`).
MaSpecDocument wrap_document(const SequentialAutomaton& fsa);

}  // namespace mimica

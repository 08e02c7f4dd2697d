#include "mimica/maspec.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mimica {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

using TokenLine = std::vector<Token>;

std::vector<TokenLine> tokenize(std::string_view text) {
  std::vector<TokenLine> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    TokenLine tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      tokens.push_back({std::string(line.substr(start, i - start)), line_no,
                        static_cast<int>(start) + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

std::vector<Symbol> split_stack_string(const std::string& text) {
  std::vector<Symbol> out;
  if (text == "-") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::string join_stack_string(const std::vector<Symbol>& symbols) {
  if (symbols.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) out += ",";
    out += symbols[i];
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string filename)
      : lines_(tokenize(text)), filename_(std::move(filename)) {}

  ParseResult run() {
    parse_header();
    while (pos_ < lines_.size()) parse_item();
    finish();

    ParseResult result;
    sort_diagnostics(diags_);
    result.diagnostics = diags_;
    bool has_error = false;
    for (const auto& d : diags_)
      if (d.severity == Diagnostic::Severity::Error) has_error = true;
    if (!has_error) result.document = std::move(doc_);
    return result;
  }

 private:
  std::vector<TokenLine> lines_;
  std::string filename_;
  std::size_t pos_ = 0;
  MaSpecDocument doc_;
  std::vector<Diagnostic> diags_;

  void error(const Token& at, std::string message) {
    diags_.push_back({Diagnostic::Severity::Error, std::move(message), filename_,
                      {at.line, at.col}});
  }
  void error_at_end(std::string message) {
    const int line = lines_.empty() ? 1 : lines_.back().front().line;
    diags_.push_back({Diagnostic::Severity::Error, std::move(message), filename_, {line, 1}});
  }

  const TokenLine& current() const { return lines_[pos_]; }

  void parse_header() {
    if (lines_.empty()) {
      error_at_end("missing 'ma-spec v1' header");
      return;
    }
    const TokenLine& line = current();
    if (line.size() != 2 || line[0].text != "ma-spec" || line[1].text != "v1") {
      error(line[0], "first line must be 'ma-spec v1'");
      return;
    }
    ++pos_;
  }

  std::optional<std::size_t> parse_number(const Token& t) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      error(t, "expected a number, got '" + t.text + "'");
      return std::nullopt;
    }
    return value;
  }

  // Consumes `NAME {` and the following lines up to `}`; returns the body.
  std::optional<std::vector<TokenLine>> block_body(const char* what, Token& name_out) {
    const TokenLine& head = current();
    if (head.size() != 3 || head[2].text != "{") {
      error(head[0], std::string("expected '") + what + " NAME {'");
      skip_block_if_any();
      return std::nullopt;
    }
    name_out = head[1];
    ++pos_;
    std::vector<TokenLine> body;
    while (pos_ < lines_.size()) {
      if (current().size() == 1 && current()[0].text == "}") {
        ++pos_;
        return body;
      }
      body.push_back(current());
      ++pos_;
    }
    error_at_end(std::string("unterminated ") + what + " block");
    return std::nullopt;
  }

  void skip_block_if_any() {
    if (pos_ < lines_.size() && !current().empty() && current().back().text == "{") {
      ++pos_;
      while (pos_ < lines_.size()) {
        const bool close = current().size() == 1 && current()[0].text == "}";
        ++pos_;
        if (close) return;
      }
    } else {
      ++pos_;
    }
  }

  void parse_item() {
    const TokenLine& line = current();
    const std::string& head = line[0].text;
    if (head == "sa") {
      parse_sa(false);
    } else if (head == "upper") {
      parse_sa(true);
    } else if (head == "ca") {
      parse_ca();
    } else if (head == "time") {
      parse_time();
    } else if (head == "bind") {
      parse_bind();
    } else if (head == "glue") {
      parse_glue();
    } else {
      error(line[0], "unknown directive '" + head + "'");
      skip_block_if_any();
    }
  }

  void declare_states(SequentialAutomaton& a, const TokenLine& line,
                      std::unordered_set<std::string>& seen) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (!seen.insert(line[i].text).second) {
        error(line[i], "duplicate state '" + line[i].text + "'");
        continue;
      }
      a.states.push_back(line[i].text);
    }
  }

  void declare_symbols(std::vector<Symbol>& out, const TokenLine& line,
                       std::unordered_set<std::string>& seen, const char* what) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (!seen.insert(line[i].text).second) {
        error(line[i], std::string("duplicate ") + what + " symbol '" + line[i].text + "'");
        continue;
      }
      out.push_back(line[i].text);
    }
  }

  void parse_sa(bool is_upper) {
    Token name;
    auto body = block_body(is_upper ? "upper" : "sa", name);
    if (!body) return;

    SequentialAutomaton a;
    a.name = name.text;
    a.kind = AutomatonKind::Fsa;
    bool kind_seen = is_upper;
    std::unordered_set<std::string> keys_seen;
    std::unordered_set<std::string> state_names, input_syms, stack_syms, tape_syms;

    auto once = [&](const Token& key) {
      if (!keys_seen.insert(key.text).second) {
        error(key, "duplicate key '" + key.text + "'");
        return false;
      }
      return true;
    };

    for (const TokenLine& line : *body) {
      const std::string& key = line[0].text;
      if (key == "kind" && !is_upper) {
        if (!once(line[0])) continue;
        if (line.size() != 2) {
          error(line[0], "expected 'kind fsa|pda|lba|tm'");
          continue;
        }
        auto kind = automaton_kind_from(line[1].text);
        if (!kind) {
          error(line[1], "unknown kind '" + line[1].text + "'");
          continue;
        }
        a.kind = *kind;
        kind_seen = true;
      } else if (key == "states") {
        if (!once(line[0])) continue;
        declare_states(a, line, state_names);
      } else if (key == "input" && !is_upper) {
        if (!once(line[0])) continue;
        declare_symbols(a.input_alphabet, line, input_syms, "input");
      } else if (key == "stack" && !is_upper) {
        if (!once(line[0])) continue;
        declare_symbols(a.stack_alphabet, line, stack_syms, "stack");
      } else if (key == "tape" && !is_upper) {
        if (!once(line[0])) continue;
        declare_symbols(a.tape_alphabet, line, tape_syms, "tape");
      } else if (key == "blank" && !is_upper) {
        if (!once(line[0])) continue;
        if (line.size() != 2) {
          error(line[0], "expected 'blank SYMBOL'");
          continue;
        }
        a.blank = line[1].text;
      } else if (key == "initial") {
        if (!once(line[0])) continue;
        if (line.size() != 2) {
          error(line[0], "expected 'initial STATE'");
          continue;
        }
        a.initial = line[1].text;
      } else if (key == "final") {
        if (!once(line[0])) continue;
        for (std::size_t i = 1; i < line.size(); ++i) a.finals.push_back(line[i].text);
      } else if (key == "trans") {
        if (!kind_seen) {
          error(line[0], "kind must be declared before transitions");
          continue;
        }
        if (is_upper)
          parse_upper_transition(a, line);
        else
          parse_transition(a, line);
      } else {
        error(line[0], "unknown key '" + key + "' in " + (is_upper ? "upper" : "sa") + " block");
      }
    }

    if (is_upper) {
      if (!a.transitions.empty()) a.input_alphabet = {"#"};
      if (doc_.upper) {
        error(name, "duplicate upper block '" + name.text + "'");
        return;
      }
      doc_.upper = UpperDecl{std::move(a), {name.line, name.col}};
    } else {
      for (const auto& d : doc_.sas)
        if (d.automaton.name == name.text) {
          error(name, "duplicate sa '" + name.text + "'");
          return;
        }
      doc_.sas.push_back({std::move(a), {name.line, name.col}});
    }
  }

  void parse_upper_transition(SequentialAutomaton& a, const TokenLine& line) {
    // trans FROM -> TO
    if (line.size() != 4 || line[2].text != "->") {
      error(line[0], "expected 'trans FROM -> TO'");
      return;
    }
    a.transitions.push_back(FsaArc{line[1].text, "#", line[3].text});
  }

  void parse_transition(SequentialAutomaton& a, const TokenLine& line) {
    switch (a.kind) {
      case AutomatonKind::Fsa: {
        // trans FROM SYMBOL -> TO
        if (line.size() != 5 || line[3].text != "->") {
          error(line[0], "expected 'trans FROM SYMBOL -> TO'");
          return;
        }
        a.transitions.push_back(FsaArc{line[1].text, line[2].text, line[4].text});
        return;
      }
      case AutomatonKind::Pda: {
        // trans FROM SYMBOL|eps POP/PUSH -> TO
        if (line.size() != 6 || line[4].text != "->") {
          error(line[0], "expected 'trans FROM SYMBOL|eps POP/PUSH -> TO'");
          return;
        }
        const std::string& stack_op = line[3].text;
        const std::size_t slash = stack_op.find('/');
        if (slash == std::string::npos || stack_op.find('/', slash + 1) != std::string::npos) {
          error(line[3], "stack operation must be POP/PUSH (use '-' for none)");
          return;
        }
        PdaArc arc;
        arc.from = line[1].text;
        if (line[2].text != "eps") arc.input = line[2].text;
        arc.pop = split_stack_string(stack_op.substr(0, slash));
        arc.push = split_stack_string(stack_op.substr(slash + 1));
        arc.to = line[5].text;
        a.transitions.push_back(std::move(arc));
        return;
      }
      case AutomatonKind::Lba:
      case AutomatonKind::Tm: {
        // trans FROM READ/WRITE L|R -> TO
        if (line.size() != 6 || line[4].text != "->") {
          error(line[0], "expected 'trans FROM READ/WRITE L|R -> TO'");
          return;
        }
        const std::string& rw = line[2].text;
        const std::size_t slash = rw.find('/');
        if (slash == std::string::npos || rw.find('/', slash + 1) != std::string::npos) {
          error(line[2], "tape operation must be READ/WRITE");
          return;
        }
        if (line[3].text != "L" && line[3].text != "R") {
          error(line[3], "head move must be L or R");
          return;
        }
        a.transitions.push_back(TapeArc{line[1].text, rw.substr(0, slash), rw.substr(slash + 1),
                                        line[3].text == "L" ? HeadMove::Left : HeadMove::Right,
                                        line[5].text});
        return;
      }
    }
  }

  void parse_ca() {
    Token name;
    auto body = block_body("ca", name);
    if (!body) return;

    CaDecl ca;
    ca.name = name.text;
    ca.loc = {name.line, name.col};
    std::unordered_set<std::string> keys_seen;
    auto once = [&](const Token& key) {
      if (!keys_seen.insert(key.text).second) {
        error(key, "duplicate key '" + key.text + "'");
        return false;
      }
      return true;
    };

    for (const TokenLine& line : *body) {
      const std::string& key = line[0].text;
      if (key == "bodies") {
        if (!once(line[0]) || line.size() != 2) {
          if (line.size() != 2) error(line[0], "expected 'bodies N'");
          continue;
        }
        if (auto n = parse_number(line[1])) ca.bodies = *n;
      } else if (key == "start") {
        if (!once(line[0]) || line.size() != 2) {
          if (line.size() != 2) error(line[0], "expected 'start N'");
          continue;
        }
        if (auto n = parse_number(line[1])) ca.start = *n;
      } else if (key == "epochs") {
        if (!once(line[0]) || line.size() != 2) {
          if (line.size() != 2) error(line[0], "expected 'epochs N'");
          continue;
        }
        if (auto n = parse_number(line[1])) ca.epochs = *n;
      } else if (key == "schedule") {
        if (!once(line[0])) continue;
        if (line.size() < 2) {
          error(line[0], "expected 'schedule table|table-tm|round-robin|random ...'");
          continue;
        }
        const std::string& variant = line[1].text;
        if (variant == "table" || variant == "table-tm") {
          ca.variant = ScheduleVariant::Table;
          ca.tm_generated = variant == "table-tm";
          if (line.size() < 3) {
            error(line[1], "schedule table needs at least one entry");
            continue;
          }
          for (std::size_t i = 2; i < line.size(); ++i)
            if (auto n = parse_number(line[i])) ca.table.push_back(*n);
        } else if (variant == "round-robin") {
          ca.variant = ScheduleVariant::RoundRobin;
          if (line.size() != 2) error(line[1], "round-robin takes no arguments");
        } else if (variant == "random") {
          ca.variant = ScheduleVariant::SeededRandom;
          if (line.size() != 3) {
            error(line[1], "expected 'schedule random SEED'");
            continue;
          }
          if (auto n = parse_number(line[2])) ca.seed = static_cast<std::uint64_t>(*n);
        } else {
          error(line[1], "unknown schedule variant '" + variant + "'");
        }
      } else {
        error(line[0], "unknown key '" + key + "' in ca block");
      }
    }

    for (const auto& d : doc_.cas)
      if (d.name == ca.name) {
        error(name, "duplicate ca '" + ca.name + "'");
        return;
      }
    doc_.cas.push_back(std::move(ca));
  }

  void parse_time() {
    Token name;  // the time block is anonymous: `time {`
    const TokenLine& head = current();
    if (head.size() != 2 || head[1].text != "{") {
      error(head[0], "expected 'time {'");
      skip_block_if_any();
      return;
    }
    if (doc_.time) {
      error(head[0], "duplicate time block");
      skip_block_if_any();
      return;
    }
    ++pos_;
    TimeModel tm;
    std::unordered_set<std::string> keys_seen;
    while (pos_ < lines_.size()) {
      const TokenLine& line = current();
      if (line.size() == 1 && line[0].text == "}") {
        ++pos_;
        doc_.time = tm;
        return;
      }
      const std::string& key = line[0].text;
      if (!keys_seen.insert(key).second) {
        error(line[0], "duplicate key '" + key + "'");
      } else if (key == "durations") {
        for (std::size_t i = 1; i < line.size(); ++i)
          if (auto n = parse_number(line[i])) tm.durations.push_back(*n);
      } else if (key == "tau") {
        if (line.size() != 2) {
          error(line[0], "expected 'tau N'");
        } else if (auto n = parse_number(line[1])) {
          tm.tau = *n;
        }
      } else {
        error(line[0], "unknown key '" + key + "' in time block");
      }
      ++pos_;
    }
    error_at_end("unterminated time block");
  }

  void parse_bind() {
    Token name;
    auto body = block_body("bind", name);
    if (!body) return;

    BindDecl bind;
    bind.upper_state = name.text;
    bind.loc = {name.line, name.col};
    std::unordered_set<std::string> keys_seen;

    for (const TokenLine& line : *body) {
      const std::string& key = line[0].text;
      if (key == "ca") {
        if (!keys_seen.insert("ca").second) {
          error(line[0], "duplicate key 'ca'");
          continue;
        }
        if (line.size() != 2) {
          error(line[0], "expected 'ca NAME'");
          continue;
        }
        bind.ca_name = line[1].text;
      } else if (key == "by") {
        if (!keys_seen.insert("by").second) {
          error(line[0], "duplicate key 'by'");
          continue;
        }
        if (line.size() != 2 || (line[1].text != "epoch" && line[1].text != "body")) {
          error(line[0], "expected 'by epoch' or 'by body'");
          continue;
        }
        bind.key_mode = line[1].text == "epoch" ? BindingKeyMode::ByEpoch : BindingKeyMode::ByBody;
      } else if (line.size() == 3 && line[1].text == "->") {
        auto n = parse_number(line[0]);
        if (!n) continue;
        bind.entries.emplace_back(*n, line[2].text);
      } else {
        error(line[0], "unknown key '" + key + "' in bind block");
      }
    }

    for (const auto& d : doc_.binds)
      if (d.upper_state == bind.upper_state) {
        error(name, "duplicate bind for upper state '" + bind.upper_state + "'");
        return;
      }
    doc_.binds.push_back(std::move(bind));
  }

  void parse_glue() {
    const TokenLine& line = current();
    ++pos_;
    if (doc_.glue) {
      error(line[0], "duplicate glue directive");
      return;
    }
    if (line.size() != 2) {
      error(line[0], "expected 'glue state-identification|word-handoff'");
      return;
    }
    if (line[1].text == "state-identification") {
      doc_.glue = GlueMode::StateIdentification;
    } else if (line[1].text == "word-handoff") {
      doc_.glue = GlueMode::WordHandoff;
    } else {
      error(line[1], "unknown glue mode '" + line[1].text + "'");
    }
  }

  void finish() {
    if (!doc_.upper) error_at_end("missing upper automaton");
  }
};

}  // namespace

std::string to_string(const Diagnostic& d, bool color) {
  const char* severity = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  std::string tag = color ? (d.severity == Diagnostic::Severity::Error
                                 ? "\033[31m" + std::string(severity) + "\033[0m"
                                 : "\033[33m" + std::string(severity) + "\033[0m")
                          : std::string(severity);
  return d.file + ":" + std::to_string(d.loc.line) + ":" + std::to_string(d.loc.col) + ": " + tag +
         ": " + d.message;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.loc.line != b.loc.line) return a.loc.line < b.loc.line;
    if (a.loc.col != b.loc.col) return a.loc.col < b.loc.col;
    return a.message < b.message;
  });
}

ParseResult parse(std::string_view text, const std::string& filename) {
  Parser parser(text, filename);
  return parser.run();
}

namespace {

void serialize_sa(std::ostringstream& os, const SequentialAutomaton& a, bool is_upper) {
  os << (is_upper ? "upper " : "sa ") << a.name << " {\n";
  if (!is_upper) os << "  kind " << to_string(a.kind) << "\n";
  os << "  states";
  for (const auto& s : a.states) os << " " << s;
  os << "\n";
  if (!is_upper && !a.input_alphabet.empty()) {
    os << "  input";
    for (const auto& s : a.input_alphabet) os << " " << s;
    os << "\n";
  }
  if (!a.stack_alphabet.empty()) {
    os << "  stack";
    for (const auto& s : a.stack_alphabet) os << " " << s;
    os << "\n";
  }
  if (!a.tape_alphabet.empty()) {
    os << "  tape";
    for (const auto& s : a.tape_alphabet) os << " " << s;
    os << "\n";
  }
  if (!a.blank.empty()) os << "  blank " << a.blank << "\n";
  os << "  initial " << a.initial << "\n";
  if (!a.finals.empty()) {
    os << "  final";
    for (const auto& s : a.finals) os << " " << s;
    os << "\n";
  }
  for (const auto& t : a.transitions) {
    if (const auto* f = std::get_if<FsaArc>(&t)) {
      if (is_upper)
        os << "  trans " << f->from << " -> " << f->to << "\n";
      else
        os << "  trans " << f->from << " " << f->input << " -> " << f->to << "\n";
    } else if (const auto* p = std::get_if<PdaArc>(&t)) {
      os << "  trans " << p->from << " " << (p->input ? *p->input : "eps") << " "
         << join_stack_string(p->pop) << "/" << join_stack_string(p->push) << " -> " << p->to
         << "\n";
    } else {
      const auto& arc = std::get<TapeArc>(t);
      os << "  trans " << arc.from << " " << arc.read << "/" << arc.write << " "
         << (arc.move == HeadMove::Left ? "L" : "R") << " -> " << arc.to << "\n";
    }
  }
  os << "}\n";
}

}  // namespace

std::string serialize(const MaSpecDocument& doc) {
  std::ostringstream os;
  os << "ma-spec v1\n";
  for (const auto& d : doc.sas) {
    os << "\n";
    serialize_sa(os, d.automaton, false);
  }
  for (const auto& ca : doc.cas) {
    os << "\nca " << ca.name << " {\n";
    os << "  bodies " << ca.bodies << "\n";
    if (ca.start) os << "  start " << *ca.start << "\n";
    os << "  schedule ";
    switch (ca.variant) {
      case ScheduleVariant::Table:
        os << (ca.tm_generated ? "table-tm" : "table");
        for (std::size_t n : ca.table) os << " " << n;
        break;
      case ScheduleVariant::RoundRobin:
        os << "round-robin";
        break;
      case ScheduleVariant::SeededRandom:
        os << "random " << ca.seed;
        break;
    }
    os << "\n";
    if (ca.epochs) os << "  epochs " << *ca.epochs << "\n";
    os << "}\n";
  }
  if (doc.time) {
    os << "\ntime {\n";
    if (!doc.time->durations.empty()) {
      os << "  durations";
      for (std::uint64_t d : doc.time->durations) os << " " << d;
      os << "\n";
    }
    os << "  tau " << doc.time->tau << "\n";
    os << "}\n";
  }
  if (doc.upper) {
    os << "\n";
    serialize_sa(os, doc.upper->automaton, true);
  }
  for (const auto& bind : doc.binds) {
    os << "\nbind " << bind.upper_state << " {\n";
    os << "  ca " << bind.ca_name << "\n";
    os << "  by " << to_string(bind.key_mode) << "\n";
    for (const auto& [key, sa] : bind.entries) os << "  " << key << " -> " << sa << "\n";
    os << "}\n";
  }
  if (doc.glue) os << "\nglue " << to_string(*doc.glue) << "\n";
  return os.str();
}

LowerResult lower(const MaSpecDocument& doc, const std::string& filename) {
  LowerResult result;
  auto error = [&](SourceLoc loc, std::string message) {
    result.diagnostics.push_back(
        {Diagnostic::Severity::Error, std::move(message), filename, loc});
  };

  if (!doc.upper) {
    error({0, 0}, "missing upper automaton");
    sort_diagnostics(result.diagnostics);
    return result;
  }

  std::unordered_map<std::string, const SaDecl*> sa_by_name;
  for (const auto& d : doc.sas) sa_by_name[d.automaton.name] = &d;
  std::unordered_map<std::string, const CaDecl*> ca_by_name;
  for (const auto& d : doc.cas) ca_by_name[d.name] = &d;

  std::vector<std::pair<StateId, DhrBinding>> bindings;
  std::unordered_set<std::string> cas_used;
  for (const auto& bind : doc.binds) {
    if (bind.ca_name.empty()) {
      error(bind.loc, "bind block needs a 'ca NAME' line");
      continue;
    }
    auto ca_it = ca_by_name.find(bind.ca_name);
    if (ca_it == ca_by_name.end()) {
      error(bind.loc, "unknown ca '" + bind.ca_name + "'");
      continue;
    }
    const CaDecl& ca = *ca_it->second;
    cas_used.insert(ca.name);

    DhrBinding binding;
    binding.ca_name = ca.name;
    binding.key_mode = bind.key_mode;
    const std::size_t start =
        ca.start ? *ca.start
                 : (ca.variant == ScheduleVariant::Table && !ca.table.empty() ? ca.table[0] : 1);
    if (ca.bodies < 1 || start < 1 || start > ca.bodies) {
      error(ca.loc, "ca '" + ca.name + "': start body out of range");
      continue;
    }
    binding.ca_initial = one_hot(ca.bodies, start);
    switch (ca.variant) {
      case ScheduleVariant::Table:
        binding.schedule = ScheduleFunction::make_table(ca.table, ca.bodies, ca.tm_generated);
        break;
      case ScheduleVariant::RoundRobin:
        binding.schedule = ScheduleFunction::make_round_robin(ca.bodies);
        break;
      case ScheduleVariant::SeededRandom:
        binding.schedule = ScheduleFunction::make_seeded_random(ca.bodies, ca.seed);
        break;
    }
    if (ca.epochs) {
      binding.epochs = *ca.epochs;
    } else if (ca.variant == ScheduleVariant::Table) {
      binding.epochs = ca.table.size();
    } else {
      error(ca.loc, "ca '" + ca.name + "' needs an explicit 'epochs N'");
      continue;
    }
    for (const auto& [key, sa_name] : bind.entries) {
      auto sa_it = sa_by_name.find(sa_name);
      if (sa_it == sa_by_name.end()) {
        error(bind.loc, "unknown sa '" + sa_name + "'");
        continue;
      }
      binding.epoch_sas.emplace_back(key, sa_it->second->automaton);
    }
    bindings.emplace_back(bind.upper_state, std::move(binding));
  }
  for (const auto& d : doc.cas)
    if (!cas_used.count(d.name)) error(d.loc, "ca '" + d.name + "' is never bound");

  if (!result.diagnostics.empty()) {
    sort_diagnostics(result.diagnostics);
    return result;
  }

  MimicAutomaton ma;
  ma.upper = doc.upper->automaton;
  ma.bindings = std::move(bindings);
  ma.time_model = doc.time.value_or(TimeModel{{}, 1});
  if (doc.glue) {
    ma.glue = *doc.glue;
  } else {
    bool uniform = true;
    const SequentialAutomaton* first = nullptr;
    for (const auto& [state, binding] : ma.bindings)
      for (const auto& [key, sa] : binding.epoch_sas) {
        if (!first) first = &sa;
        if (sa.kind != first->kind) uniform = false;
      }
    ma.glue = uniform ? GlueMode::StateIdentification : GlueMode::WordHandoff;
  }

  for (const auto& violation : validate(ma)) error({0, 0}, violation);
  if (!result.diagnostics.empty()) {
    sort_diagnostics(result.diagnostics);
    return result;
  }
  result.automaton = std::move(ma);
  return result;
}

MaSpecDocument wrap_document(const SequentialAutomaton& fsa) {
  MaSpecDocument doc;
  doc.sas.push_back({fsa, {}});

  CaDecl ca;
  ca.name = "C";
  ca.bodies = 1;
  ca.variant = ScheduleVariant::Table;
  ca.table = {1};
  ca.start = 1;
  doc.cas.push_back(std::move(ca));

  doc.time = TimeModel{{}, 1};

  SequentialAutomaton upper;
  upper.name = "A";
  upper.kind = AutomatonKind::Fsa;
  upper.states = {"P0"};
  upper.initial = "P0";
  upper.finals = {"P0"};
  doc.upper = UpperDecl{std::move(upper), {}};

  BindDecl bind;
  bind.upper_state = "P0";
  bind.ca_name = "C";
  bind.key_mode = BindingKeyMode::ByEpoch;
  bind.entries.emplace_back(1, fsa.name);
  doc.binds.push_back(std::move(bind));

  doc.glue = GlueMode::StateIdentification;
  return doc;
}

}  // namespace mimica

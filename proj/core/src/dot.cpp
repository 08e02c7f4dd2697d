#include "mimica/dot.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>

namespace mimica {

namespace {

std::string graph_id(const std::string& name) {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "g_" + out;
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

void emit_sa(std::ostringstream& os, const SequentialAutomaton& a, const std::string& graph_name,
             bool upper) {
  os << "digraph " << graph_id(graph_name) << " {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  os << "  " << quoted("__start_" + a.name) << " [shape=point,label=\"\"];\n";
  for (const auto& s : a.states) {
    os << "  " << quoted(s);
    if (a.is_final(s)) os << " [shape=doublecircle]";
    os << ";\n";
  }
  os << "  " << quoted("__start_" + a.name) << " -> " << quoted(a.initial) << ";\n";
  for (const auto& t : a.transitions) {
    os << "  " << quoted(transition_from(t)) << " -> " << quoted(transition_to(t));
    if (!upper) os << " [label=" << quoted(transition_label(t)) << "]";
    os << ";\n";
  }
  os << "}\n";
}

}  // namespace

std::string export_dot(const SequentialAutomaton& a) {
  std::ostringstream os;
  emit_sa(os, a, "sa_" + a.name, false);
  return os.str();
}

std::string export_dot(const MimicAutomaton& ma) {
  std::ostringstream os;
  emit_sa(os, ma.upper, "upper_" + ma.upper.name, true);

  const std::vector<PlannedSegment> segments = plan(ma);

  for (const auto& [state, binding] : ma.bindings) {
    os << "\ndigraph " << graph_id("ca_" + binding.ca_name) << " {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box];\n";
    // One node per epoch configuration of this binding, edges labeled with
    // the global duration they consume.
    std::vector<const PlannedSegment*> mine;
    for (const auto& seg : segments)
      if (seg.ca_name == binding.ca_name && seg.upper_state == state) mine.push_back(&seg);
    for (std::size_t i = 0; i < mine.size(); ++i) {
      CellularConfiguration cfg = one_hot(binding.schedule.body_count, mine[i]->body);
      os << "  " << quoted("e" + std::to_string(i + 1) + " " + to_string(cfg)) << ";\n";
    }
    for (std::size_t i = 0; i + 1 < mine.size(); ++i) {
      CellularConfiguration from = one_hot(binding.schedule.body_count, mine[i]->body);
      CellularConfiguration to = one_hot(binding.schedule.body_count, mine[i + 1]->body);
      std::string label = "|T" + std::to_string(mine[i]->index) + "|+tau";
      os << "  " << quoted("e" + std::to_string(i + 1) + " " + to_string(from)) << " -> "
         << quoted("e" + std::to_string(i + 2) + " " + to_string(to)) << " [label=" << quoted(label)
         << "];\n";
    }
    os << "}\n";
  }

  std::unordered_set<std::string> emitted;
  for (const auto& [state, binding] : ma.bindings) {
    for (const auto& [key, sa] : binding.epoch_sas) {
      if (!emitted.insert(sa.name).second) continue;
      os << "\n";
      emit_sa(os, sa, "sa_" + sa.name, false);
    }
  }

  // Composition view: all lower automata plus the inter-segment glue.
  os << "\ndigraph composition {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const SequentialAutomaton& sa = *segments[i].sa;
    const std::string prefix = "s" + std::to_string(i + 1) + ":";
    for (const auto& s : sa.states) {
      os << "  " << quoted(prefix + s) << " [label=" << quoted(s);
      if (sa.is_final(s)) os << ",shape=doublecircle";
      os << "];\n";
    }
    for (const auto& t : sa.transitions) {
      os << "  " << quoted(prefix + transition_from(t)) << " -> "
         << quoted(prefix + transition_to(t)) << " [label=" << quoted(transition_label(t))
         << "];\n";
    }
  }
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    const std::string from_prefix = "s" + std::to_string(i + 1) + ":";
    const std::string to_prefix = "s" + std::to_string(i + 2) + ":";
    for (const auto& f : segments[i].sa->finals) {
      os << "  " << quoted(from_prefix + f) << " -> "
         << quoted(to_prefix + segments[i + 1].sa->initial)
         << " [style=dashed,label=" << quoted("\xce\xb5") << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace mimica

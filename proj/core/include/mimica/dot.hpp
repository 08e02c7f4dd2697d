/* dot.hpp -- Graphviz export of the component automata */

#pragma once

#include <string>

#include "mimica/hierarchy.hpp"

namespace mimica {

// One digraph per component: the upper automaton, every lower sequential
// automaton, every cellular automaton (one node per epoch configuration),
// and a composition graph with the glue rendered as dashed epsilon edges.
std::string export_dot(const MimicAutomaton& ma);

std::string export_dot(const SequentialAutomaton& a);

}  // namespace mimica

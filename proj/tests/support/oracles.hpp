/* Test-side oracles, independent of the library's execution paths. */

#pragma once

#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimica/automaton.hpp"
#include "mimica/maspec.hpp"

namespace testsupport {

// { a^n b^n c^n : n >= 1 } by direct counting: equal counts, ordered blocks.
inline bool anbncn_oracle(const mimica::Word& word) {
  if (word.empty() || word.size() % 3 != 0) return false;
  const std::size_t n = word.size() / 3;
  for (std::size_t i = 0; i < n; ++i)
    if (word[i] != "a") return false;
  for (std::size_t i = n; i < 2 * n; ++i)
    if (word[i] != "b") return false;
  for (std::size_t i = 2 * n; i < 3 * n; ++i)
    if (word[i] != "c") return false;
  return true;
}

// Naive recursive FSA acceptance, no frontier machinery.
inline bool naive_fsa_accepts(const mimica::SequentialAutomaton& a, const mimica::StateId& state,
                              const mimica::Word& word, std::size_t pos) {
  if (pos == word.size()) return a.is_final(state);
  for (const auto& t : a.transitions) {
    const auto& arc = std::get<mimica::FsaArc>(t);
    if (arc.from == state && arc.input == word[pos] &&
        naive_fsa_accepts(a, arc.to, word, pos + 1))
      return true;
  }
  return false;
}

inline bool naive_fsa_accepts(const mimica::SequentialAutomaton& a, const mimica::Word& word) {
  return naive_fsa_accepts(a, a.initial, word, 0);
}

// Every word over `alphabet` of length <= max_len, shortest first.
inline std::vector<mimica::Word> all_words(const std::vector<mimica::Symbol>& alphabet,
                                           std::size_t max_len) {
  std::vector<mimica::Word> out{mimica::Word{}};
  std::vector<mimica::Word> layer{mimica::Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<mimica::Word> next;
    for (const auto& w : layer) {
      for (const auto& s : alphabet) {
        mimica::Word grown = w;
        grown.push_back(s);
        next.push_back(grown);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline mimica::MaSpecDocument parse_file(const std::string& path) {
  auto parsed = mimica::parse(slurp(path), path);
  if (!parsed.ok()) {
    std::string msg = "parse of " + path + " failed:";
    for (const auto& d : parsed.diagnostics) msg += "\n  " + mimica::to_string(d);
    throw std::runtime_error(msg);
  }
  return *parsed.document;
}

inline mimica::MimicAutomaton load_ma(const std::string& path) {
  auto lowered = mimica::lower(parse_file(path), path);
  if (!lowered.ok()) {
    std::string msg = "lowering of " + path + " failed:";
    for (const auto& d : lowered.diagnostics) msg += "\n  " + mimica::to_string(d);
    throw std::runtime_error(msg);
  }
  return *lowered.automaton;
}

}  // namespace testsupport

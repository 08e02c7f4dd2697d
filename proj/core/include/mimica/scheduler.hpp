/* scheduler.hpp -- one-dimensional cellular configurations and schedules
 *
 * The cellular automaton here has no neighborhood rule: its transition
 * function IS the scheduling algorithm, a global function picking the next
 * active execution body. Configurations are one-hot bit vectors; the index of
 * the set cell is the active body.
 */

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mimica/error.hpp"

namespace mimica {

struct CellularConfiguration {
  std::vector<std::uint8_t> cells;  // each 0 or 1; exactly one 1 in DHR mode
  std::uint64_t time_index = 0;

  bool operator==(const CellularConfiguration&) const = default;
};

CellularConfiguration one_hot(std::size_t body_count, std::size_t active);

// 1-based index of the unique set cell; throws NotOneHot otherwise.
std::size_t active_body(const CellularConfiguration& c);

std::string to_string(const CellularConfiguration& c);

enum class ScheduleVariant { Table, RoundRobin, SeededRandom };

const char* to_string(ScheduleVariant v);

// The schedule carries its own run state (table cursor / generator state); a
// run owns its copy exclusively. reset() rewinds it to the declaration.
struct ScheduleFunction {
  ScheduleVariant variant = ScheduleVariant::Table;
  std::size_t body_count = 1;
  std::vector<std::size_t> table;  // successive active indices, first entry = initial
  bool tm_generated = false;       // table declared as produced by a Turing machine
  std::uint64_t seed = 0;

  std::size_t cursor = 1;
  std::mt19937_64 rng{0};

  static ScheduleFunction make_table(std::vector<std::size_t> entries, std::size_t body_count,
                                     bool tm_generated = false);
  static ScheduleFunction make_round_robin(std::size_t body_count);
  static ScheduleFunction make_seeded_random(std::size_t body_count, std::uint64_t seed);

  void reset();
  std::size_t next_index(std::size_t current);

  // Declaration equality; run state is not compared.
  bool operator==(const ScheduleFunction& other) const;
};

CellularConfiguration advance(const CellularConfiguration& c, ScheduleFunction& phi);

struct TimeModel {
  std::vector<std::uint64_t> durations;  // |T_i|, logical ticks per epoch
  std::uint64_t tau = 1;

  bool operator==(const TimeModel&) const = default;
};

// boundary_i = sum_{j<=i} (|T_j| + tau), for i = 1..epoch_count.
std::vector<std::uint64_t> epoch_boundaries(const TimeModel& tm, std::size_t epoch_count);

}  // namespace mimica

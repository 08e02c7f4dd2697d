#include "mimica/scheduler.hpp"

namespace mimica {

CellularConfiguration one_hot(std::size_t body_count, std::size_t active) {
  if (body_count < 1) raise(ErrorCode::InvalidArgument, "body count must be at least 1");
  if (active < 1 || active > body_count)
    raise(ErrorCode::InvalidArgument,
          "active body " + std::to_string(active) + " out of range 1.." + std::to_string(body_count));
  CellularConfiguration c;
  c.cells.assign(body_count, 0);
  c.cells[active - 1] = 1;
  return c;
}

std::size_t active_body(const CellularConfiguration& c) {
  std::size_t found = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (c.cells[i] != 0) {
      found = i + 1;
      ++count;
    }
  }
  if (count != 1)
    raise(ErrorCode::NotOneHot,
          "configuration has " + std::to_string(count) + " active cells, expected exactly 1");
  return found;
}

std::string to_string(const CellularConfiguration& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (i > 0) out += ",";
    out += c.cells[i] ? "1" : "0";
  }
  out += ")";
  return out;
}

const char* to_string(ScheduleVariant v) {
  switch (v) {
    case ScheduleVariant::Table: return "table";
    case ScheduleVariant::RoundRobin: return "round-robin";
    case ScheduleVariant::SeededRandom: return "random";
  }
  return "?";
}

ScheduleFunction ScheduleFunction::make_table(std::vector<std::size_t> entries,
                                              std::size_t body_count, bool tm_generated) {
  ScheduleFunction s;
  s.variant = ScheduleVariant::Table;
  s.body_count = body_count;
  s.table = std::move(entries);
  s.tm_generated = tm_generated;
  s.reset();
  return s;
}

ScheduleFunction ScheduleFunction::make_round_robin(std::size_t body_count) {
  ScheduleFunction s;
  s.variant = ScheduleVariant::RoundRobin;
  s.body_count = body_count;
  s.reset();
  return s;
}

ScheduleFunction ScheduleFunction::make_seeded_random(std::size_t body_count,
                                                      std::uint64_t seed) {
  ScheduleFunction s;
  s.variant = ScheduleVariant::SeededRandom;
  s.body_count = body_count;
  s.seed = seed;
  s.reset();
  return s;
}

void ScheduleFunction::reset() {
  cursor = 1;
  rng.seed(seed);
}

std::size_t ScheduleFunction::next_index(std::size_t current) {
  switch (variant) {
    case ScheduleVariant::Table:
      if (cursor >= table.size())
        raise(ErrorCode::TableExhausted, "schedule table has no further entries");
      return table[cursor++];
    case ScheduleVariant::RoundRobin:
      return current % body_count + 1;
    case ScheduleVariant::SeededRandom:
      // mt19937_64 reduced mod n: bit-stable across platforms, which the
      // golden traces rely on. Uniform over 1..n up to the (tiny) mod bias.
      return 1 + static_cast<std::size_t>(rng() % body_count);
  }
  raise(ErrorCode::InvalidArgument, "unknown schedule variant");
}

bool ScheduleFunction::operator==(const ScheduleFunction& other) const {
  return variant == other.variant && body_count == other.body_count && table == other.table &&
         tm_generated == other.tm_generated && seed == other.seed;
}

CellularConfiguration advance(const CellularConfiguration& c, ScheduleFunction& phi) {
  if (phi.body_count != c.cells.size())
    raise(ErrorCode::InvalidArgument,
          "schedule body count " + std::to_string(phi.body_count) +
              " does not match configuration length " + std::to_string(c.cells.size()));
  const std::size_t current = active_body(c);
  const std::size_t next = phi.next_index(current);
  if (next < 1 || next > phi.body_count)
    raise(ErrorCode::InvalidArgument,
          "schedule produced body " + std::to_string(next) + " out of range");
  CellularConfiguration out = one_hot(c.cells.size(), next);
  out.time_index = c.time_index + 1;
  return out;
}

std::vector<std::uint64_t> epoch_boundaries(const TimeModel& tm, std::size_t epoch_count) {
  if (tm.durations.size() < epoch_count)
    raise(ErrorCode::InvalidArgument,
          "time model covers " + std::to_string(tm.durations.size()) + " epochs, need " +
              std::to_string(epoch_count));
  std::vector<std::uint64_t> out;
  out.reserve(epoch_count);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < epoch_count; ++i) {
    acc += tm.durations[i] + tm.tau;
    out.push_back(acc);
  }
  return out;
}

}  // namespace mimica

#ifndef CATFIN_PATHLAB_HPP
#define CATFIN_PATHLAB_HPP

// Brute-force path enumeration. These are the oracles that the closed forms in
// reflection.hpp are checked against, so they stay exhaustive: every complete
// path is re-validated step by step before it is counted.

#include "catfin/exactnum.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catfin {

/// A distance bound; std::nullopt means unbounded.
using Bound = std::optional<int>;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t size, std::uint64_t limit)
      : std::runtime_error(what + ": size " + std::to_string(size) + " exceeds budget " +
                           std::to_string(limit)),
        size_(size),
        limit_(limit) {}
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t size_;
  std::uint64_t limit_;
};

struct EnumBudget {
  std::uint64_t max_states = 10'000'000;
};

/// N/E paths from (0,0) to (n,n) confined to -s <= y - x <= m.
struct BoundSpec {
  int n = 0;
  Bound m;      // upper distance, y - x <= m
  Bound s = 0;  // lower shift, x - y <= s; 0 is the classic Dyck condition
};

/// How generalized paths may meet a bound line.
enum class ContactPolicy {
  weak,         // vertices anywhere in -s <= y - x <= m
  edge_strict,  // as weak, but no (1,1) step may run along a bound line
  strict,       // as edge_strict, and no interior vertex on the lower line
};

inline std::string_view to_string(ContactPolicy p) {
  switch (p) {
    case ContactPolicy::weak: return "weak";
    case ContactPolicy::edge_strict: return "edge-strict";
    case ContactPolicy::strict: return "strict";
  }
  return "?";
}

inline ContactPolicy parse_contact_policy(std::string_view s) {
  if (s == "weak") return ContactPolicy::weak;
  if (s == "edge-strict" || s == "edge_strict") return ContactPolicy::edge_strict;
  if (s == "strict") return ContactPolicy::strict;
  throw std::invalid_argument("unknown contact policy: " + std::string(s));
}

/// Paths from (0,0) to (n,n) with steps (0,2), (1,1), (2,0), kept in
/// -s <= y - x <= m under the given contact policy. Leaving both bounds unset
/// admits every step sequence.
struct GenPathSpec {
  int n = 0;
  Bound m;
  ContactPolicy policy = ContactPolicy::weak;
  Bound s = 0;
};

namespace detail {

// Displacements in (x, y).
struct Step {
  int dx;
  int dy;
};

inline constexpr Step kNorth{0, 1};
inline constexpr Step kEast{1, 0};
inline constexpr Step kUp2{0, 2};
inline constexpr Step kFlat{1, 1};
inline constexpr Step kRight2{2, 0};

class StateCounter {
 public:
  StateCounter(const char* what, EnumBudget budget) : what_(what), budget_(budget) {}
  void visit() {
    if (++visited_ > budget_.max_states) throw BudgetExceeded(what_, visited_, budget_.max_states);
  }

 private:
  const char* what_;
  EnumBudget budget_;
  std::uint64_t visited_ = 0;
};

inline bool within(int h, const BoundSpec& spec) {
  if (spec.m && h > *spec.m) return false;
  if (spec.s && -h > *spec.s) return false;
  return true;
}

// Independent re-check of a finished N/E path.
inline bool lattice_path_valid(const std::vector<Step>& path, const BoundSpec& spec) {
  int x = 0;
  int y = 0;
  if (!within(0, spec)) return false;
  for (const auto& st : path) {
    if (!((st.dx == 1 && st.dy == 0) || (st.dx == 0 && st.dy == 1))) return false;
    x += st.dx;
    y += st.dy;
    if (x > spec.n || y > spec.n || !within(y - x, spec)) return false;
  }
  return x == spec.n && y == spec.n;
}

inline void enumerate_lattice(const BoundSpec& spec, std::vector<Step>& path, int x, int y,
                              StateCounter& states, std::uint64_t& count) {
  states.visit();
  if (x == spec.n && y == spec.n) {
    if (!lattice_path_valid(path, spec)) throw std::logic_error("enumerator produced an invalid path");
    ++count;
    return;
  }
  for (const Step& st : {kNorth, kEast}) {
    const int nx = x + st.dx;
    const int ny = y + st.dy;
    if (nx > spec.n || ny > spec.n || !within(ny - nx, spec)) continue;
    path.push_back(st);
    enumerate_lattice(spec, path, nx, ny, states, count);
    path.pop_back();
  }
}

inline bool gen_step_allowed(int h_from, int h_to, bool interior_target, const GenPathSpec& spec) {
  if ((spec.s && h_to < -*spec.s) || (spec.m && h_to > *spec.m)) return false;
  if (spec.policy == ContactPolicy::weak) return true;
  const bool on_line = (spec.s && h_from == -*spec.s) || (spec.m && h_from == *spec.m);
  if (h_from == h_to && on_line) return false;
  if (spec.policy == ContactPolicy::strict && interior_target && spec.s && h_to == -*spec.s) return false;
  return true;
}

inline bool gen_path_valid(const std::vector<Step>& path, const GenPathSpec& spec) {
  int x = 0;
  int y = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& st = path[i];
    if (st.dx + st.dy != 2 || st.dx < 0 || st.dy < 0) return false;
    const int h0 = y - x;
    x += st.dx;
    y += st.dy;
    if (!gen_step_allowed(h0, y - x, i + 1 < path.size(), spec)) return false;
  }
  return x == spec.n && y == spec.n;
}

inline void enumerate_generalized(const GenPathSpec& spec, std::vector<Step>& path, int x, int y,
                                  StateCounter& states, std::uint64_t& count) {
  states.visit();
  if (x == spec.n && y == spec.n) {
    if (!gen_path_valid(path, spec)) throw std::logic_error("enumerator produced an invalid path");
    ++count;
    return;
  }
  for (const Step& st : {kUp2, kFlat, kRight2}) {
    const int nx = x + st.dx;
    const int ny = y + st.dy;
    if (nx > spec.n || ny > spec.n) continue;
    const bool interior = !(nx == spec.n && ny == spec.n);
    if (!gen_step_allowed(y - x, ny - nx, interior, spec)) continue;
    path.push_back(st);
    enumerate_generalized(spec, path, nx, ny, states, count);
    path.pop_back();
  }
}

}  // namespace detail

inline Integer count_bounded_enum(const BoundSpec& spec, EnumBudget budget = {}) {
  if (spec.n < 0) throw std::invalid_argument("count_bounded_enum: n must be non-negative");
  if ((spec.m && *spec.m < 0) || (spec.s && *spec.s < 0))
    throw std::invalid_argument("count_bounded_enum: bounds must be non-negative");
  detail::StateCounter states("path enumeration", budget);
  std::vector<detail::Step> path;
  std::uint64_t count = 0;
  detail::enumerate_lattice(spec, path, 0, 0, states, count);
  return count;
}

inline Integer count_all_paths_enum(int n, EnumBudget budget = {}) {
  return count_bounded_enum({n, std::nullopt, std::nullopt}, budget);
}

inline Integer count_dyck_enum(int n, EnumBudget budget = {}) {
  return count_bounded_enum({n, std::nullopt, 0}, budget);
}

inline Integer count_generalized_enum(const GenPathSpec& spec, EnumBudget budget = {}) {
  if (spec.n < 0) throw std::invalid_argument("count_generalized_enum: n must be non-negative");
  if ((spec.m && *spec.m < 0) || (spec.s && *spec.s < 0))
    throw std::invalid_argument("count_generalized_enum: bounds must be non-negative");
  detail::StateCounter states("generalized path enumeration", budget);
  std::vector<detail::Step> path;
  std::uint64_t count = 0;
  detail::enumerate_generalized(spec, path, 0, 0, states, count);
  return count;
}

}  // namespace catfin

#endif  // CATFIN_PATHLAB_HPP

#pragma once

#include <optional>

#include "dagmc/instance.hpp"

namespace dagmc {

// Size of a minimum X-Y separator. Infinite covers both "a direct X->Y arc
// exists" and "larger than the cap the caller asked for"; only comparisons
// against the budget matter to the solver.
class SepSize {
 public:
  static SepSize finite(int value) { return SepSize(value); }
  static SepSize infinite() { return SepSize(); }

  bool is_infinite() const { return !value_.has_value(); }
  int value() const {
    if (is_infinite()) {
      throw Error(ErrorCode::InternalError, "SepSize: infinite has no value");
    }
    return *value_;
  }

  bool operator==(const SepSize& other) const = default;
  // Infinite compares greater than every finite size.
  bool operator<(const SepSize& other) const {
    if (is_infinite()) return false;
    if (other.is_infinite()) return true;
    return *value_ < *other.value_;
  }
  bool operator>(const SepSize& other) const { return other < *this; }

 private:
  SepSize() = default;
  explicit SepSize(int value) : value_(value) {}
  std::optional<int> value_;
};

struct SeparatorReport {
  SepSize size = SepSize::infinite();
  VertexSet closest_to_x;  // source-side minimum cut
  VertexSet closest_to_y;  // sink-side minimum cut = the unique minimum
                           // important X-Y separator
};

// Minimum X-Y vertex separator via unit-capacity vertex splitting; terminals
// and members of X and Y are undeletable. Reports infinite when the true size
// exceeds `cap` or no separator exists at all (e.g. a direct X->Y arc).
SeparatorReport min_separator(const DagInstance& inst, const VertexSet& x,
                              const VertexSet& y, int cap);
// Cap defaults to the instance budget.
SeparatorReport min_separator(const DagInstance& inst, const VertexSet& x,
                              const VertexSet& y);

// Brute-force importance test: Z must separate X from Y; true iff Z is
// minimal and no other separator of at most the same size is behind it.
// Intended for small instances only.
bool is_important_separator(const DagInstance& inst, const VertexSet& x,
                            const VertexSet& y, const VertexSet& z);

// (r+1)p - sum of per-pair cut sizes; nullopt when some pair's cut exceeds
// the budget or is infinite (the instance is then a NO instance).
std::optional<int> potential(const DagInstance& inst);

}  // namespace dagmc

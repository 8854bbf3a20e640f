#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace topos::detail {

// Backtracking enumeration of assignments var -> [0, domain[var]) under
// functional constraints: assigning `value` to `var` forces other variables to
// fixed values. `implications(var, value, out)` appends (var', value') pairs.
// Variables are chosen in index order; solutions are visited in lexicographic
// order. `visit` returns false to stop the search.
class FunctionalSearch {
 public:
  using Value = std::uint32_t;
  static constexpr Value kUnset = ~Value{0};

  explicit FunctionalSearch(std::vector<std::size_t> domains)
      : domains_(std::move(domains)), assignment_(domains_.size(), kUnset) {}

  template <class Implications, class Visit>
  void run(Implications&& implications, Visit&& visit) {
    stopped_ = false;
    search(0, implications, visit);
  }

 private:
  template <class Implications>
  bool assign(std::size_t var, Value value, Implications& implications) {
    if (assignment_[var] != kUnset) return assignment_[var] == value;
    if (value >= domains_[var]) return false;
    assignment_[var] = value;
    trail_.push_back(var);
    std::vector<std::pair<std::size_t, Value>> forced;
    implications(var, value, forced);
    for (auto [w, v] : forced)
      if (!assign(w, v, implications)) return false;
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      assignment_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  template <class Implications, class Visit>
  void search(std::size_t from, Implications& implications, Visit& visit) {
    std::size_t var = from;
    while (var < assignment_.size() && assignment_[var] != kUnset) ++var;
    if (var == assignment_.size()) {
      if (!visit(std::span<const Value>(assignment_))) stopped_ = true;
      return;
    }
    for (Value v = 0; v < domains_[var] && !stopped_; ++v) {
      const std::size_t mark = trail_.size();
      if (assign(var, v, implications)) search(var + 1, implications, visit);
      undo(mark);
    }
  }

  std::vector<std::size_t> domains_;
  std::vector<Value> assignment_;
  std::vector<std::size_t> trail_;
  bool stopped_ = false;
};

}  // namespace topos::detail

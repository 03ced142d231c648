#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrw/errors.hpp"

namespace rrw {

// Dense state index.  Labels are interned once by state_space; everything
// downstream works on indices.
using state = int;

// Reserved boundary symbol used by the transition-matrix estimator for the
// leftover mass of never-visited rows.  Never a user label.
inline constexpr const char* kBoundaryLabel = "∂";

class state_space {
 public:
  state_space() = default;  // empty placeholder, filled before use
  explicit state_space(std::vector<std::string> labels);

  // labels "0", "1", ..., "n-1"
  static state_space integers(int n);

  // copy with the boundary symbol appended as the last state; the only way
  // the reserved label enters a space
  state_space with_boundary() const;

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(state s) const;
  state index_of(const std::string& label) const;  // input_error when unknown
  bool contains(const std::string& label) const;
  bool has_boundary() const { return has_boundary_; }
  state boundary() const;  // index of the boundary symbol; input_error without one

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, state> index_;
  bool has_boundary_ = false;
};

// A finite walk: start state plus the successive steps.  steps may be empty.
struct path {
  state x0 = 0;
  std::vector<state> steps;

  int length() const { return static_cast<int>(steps.size()); }
  state last() const { return steps.empty() ? x0 : steps.back(); }
  // element at time t, 0 <= t <= length()
  state at(int t) const { return t == 0 ? x0 : steps[static_cast<std::size_t>(t) - 1]; }

  bool operator==(const path& o) const { return x0 == o.x0 && steps == o.steps; }
};

std::string render_path(const state_space& sp, const path& p);
std::string render_steps(const state_space& sp, const std::vector<state>& steps);

// Transition-count table of a walk, kept dense (desk-scale spaces).  Supports
// incremental push/undo so enumeration loops stay O(1) per move.
class transition_counts {
 public:
  transition_counts(int n_states, state start);

  int n_states() const { return n_; }
  state start() const { return start_; }
  state last() const { return last_; }

  void add(state next);               // record transition last() -> next
  void remove_last(state prev_last);  // undo the latest add; caller supplies the element before it

  std::uint32_t at(state i, state j) const { return t_[idx(i, j)]; }
  std::uint64_t row_total(state i) const { return row_[static_cast<std::size_t>(i)]; }
  std::uint64_t col_total(state j) const { return col_[static_cast<std::size_t>(j)]; }
  std::uint64_t total() const { return total_; }

  const std::vector<std::uint32_t>& table() const { return t_; }

  bool same_counts(const transition_counts& o) const {
    return n_ == o.n_ && start_ == o.start_ && t_ == o.t_;
  }

 private:
  std::size_t idx(state i, state j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_;
  state start_, last_;
  std::vector<std::uint32_t> t_;
  std::vector<std::uint64_t> row_, col_;
  std::uint64_t total_ = 0;
};

transition_counts count_transitions(int n_states, const path& p);

// Same start and identical transition counts.  This is the equivalence whose
// invariance defines Markov exchangeability.
bool is_equivalent(int n_states, const path& a, const path& b);

struct path_class {
  std::vector<std::uint32_t> key;           // dense count table
  std::vector<std::vector<state>> members;  // step strings, lexicographic
};

inline constexpr std::uint64_t kDefaultEnumBudget = 2'000'000;

// All length-len step strings from x0, grouped by transition counts.
// Classes appear in order of their lexicographically smallest member.
// Throws resource_error naming |S|^len when it exceeds the budget.
std::vector<path_class> enumerate_equivalence_classes(int n_states, state x0, int len,
                                                      std::uint64_t budget = kDefaultEnumBudget);

// |S|^len, saturating at uint64 max / flagged through ok=false when huge.
std::uint64_t string_count(int n_states, int len, bool& exact);

// Successor bookkeeping: rows[i] lists the states that followed each visit to
// i in time order; visit_times[i] lists every time i was occupied (including
// a final visit that has no successor yet, which therefore has no row entry).
struct successor_matrix {
  std::vector<std::vector<state>> rows;
  std::vector<std::vector<int>> visit_times;
};

successor_matrix successor_rows(int n_states, const path& p);

// Rebuilds the step string from successor rows (row cursors consumed in time
// order).  Used as the reconstruction check.
path reconstruct_from_successors(int n_states, state x0, const successor_matrix& m, int len);

// Pattern pair y = (u, w, i, v, w, i), y' = (v, w, i, u, w, i) where the
// element sets {u}, {v}, {w}, {i} are pairwise disjoint.  Exchanging the u and
// v excursions preserves transition counts, so a scheme treating them
// differently cannot be Markov exchangeable.
struct b_pattern {
  std::vector<state> u, v, w;
  state i = 0;

  std::vector<state> y() const;        // u w i v w i
  std::vector<state> y_swapped() const;  // v w i u w i

  // 0: one of u,v empty and w empty; 1: both nonempty, w empty; 2: w nonempty
  int kind() const;
};

struct b_budget {
  int max_u = 2;
  int max_v = 2;
  int max_w = 1;
};

// Every ordered (u, v, w) instance within the length budget, i fixed, skipping
// the trivial u = v = empty case.  Deterministic enumeration order.
std::vector<b_pattern> condition_b_pairs(int n_states, state i, const b_budget& budget = {});

}  // namespace rrw

#include "rrw/core.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace rrw {

state_space::state_space(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw input_error("state space needs at least two states");
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    const std::string& l = labels_[k];
    if (l.empty()) throw input_error("empty state label");
    if (l == kBoundaryLabel) throw input_error("the boundary symbol is reserved");
    if (!index_.emplace(l, static_cast<state>(k)).second)
      throw input_error("duplicate state label '" + l + "'");
  }
}

state_space state_space::integers(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  return state_space(std::move(labels));
}

state_space state_space::with_boundary() const {
  if (has_boundary_) return *this;
  state_space out = *this;
  out.index_.emplace(kBoundaryLabel, out.size());
  out.labels_.push_back(kBoundaryLabel);
  out.has_boundary_ = true;
  return out;
}

state state_space::boundary() const {
  if (!has_boundary_) throw input_error("space has no boundary symbol");
  return size() - 1;
}

const std::string& state_space::label(state s) const {
  if (s < 0 || s >= size()) throw input_error("state index out of range");
  return labels_[static_cast<std::size_t>(s)];
}

state state_space::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw input_error("unknown state label '" + label + "'");
  return it->second;
}

bool state_space::contains(const std::string& label) const { return index_.count(label) > 0; }

std::string render_path(const state_space& sp, const path& p) {
  std::string out = "(" + sp.label(p.x0);
  for (state s : p.steps) out += ", " + sp.label(s);
  return out + ")";
}

std::string render_steps(const state_space& sp, const std::vector<state>& steps) {
  std::string out = "(";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (k) out += ", ";
    out += sp.label(steps[k]);
  }
  return out + ")";
}

transition_counts::transition_counts(int n_states, state start)
    : n_(n_states),
      start_(start),
      last_(start),
      t_(static_cast<std::size_t>(n_states) * static_cast<std::size_t>(n_states), 0),
      row_(static_cast<std::size_t>(n_states), 0),
      col_(static_cast<std::size_t>(n_states), 0) {
  if (n_states < 1) throw input_error("transition table needs a positive state count");
  if (start < 0 || start >= n_states) throw input_error("start state out of range");
}

void transition_counts::add(state next) {
  if (next < 0 || next >= n_) throw input_error("transition target out of range");
  ++t_[idx(last_, next)];
  ++row_[static_cast<std::size_t>(last_)];
  ++col_[static_cast<std::size_t>(next)];
  ++total_;
  last_ = next;
}

void transition_counts::remove_last(state prev_last) {
  if (total_ == 0) throw input_error("no transition to undo");
  std::size_t k = idx(prev_last, last_);
  if (t_[k] == 0) throw input_error("undo does not match the recorded transitions");
  --t_[k];
  --row_[static_cast<std::size_t>(prev_last)];
  --col_[static_cast<std::size_t>(last_)];
  --total_;
  last_ = prev_last;
}

transition_counts count_transitions(int n_states, const path& p) {
  transition_counts t(n_states, p.x0);
  for (state s : p.steps) t.add(s);
  return t;
}

bool is_equivalent(int n_states, const path& a, const path& b) {
  if (a.x0 != b.x0 || a.steps.size() != b.steps.size()) return false;
  return count_transitions(n_states, a).same_counts(count_transitions(n_states, b));
}

std::uint64_t string_count(int n_states, int len, bool& exact) {
  exact = true;
  std::uint64_t v = 1;
  for (int k = 0; k < len; ++k) {
    if (v > UINT64_MAX / static_cast<std::uint64_t>(n_states)) {
      exact = false;
      return UINT64_MAX;
    }
    v *= static_cast<std::uint64_t>(n_states);
  }
  return v;
}

std::vector<path_class> enumerate_equivalence_classes(int n_states, state x0, int len,
                                                      std::uint64_t budget) {
  if (len < 0) throw input_error("negative string length");
  if (x0 < 0 || x0 >= n_states) throw input_error("start state out of range");
  bool exact = true;
  std::uint64_t count = string_count(n_states, len, exact);
  if (!exact || count > budget)
    throw resource_error("|S|^n = " + (exact ? std::to_string(count) : std::string("> 2^64")) +
                         " length-" + std::to_string(len) + " strings exceed the budget of " +
                         std::to_string(budget));

  std::vector<path_class> classes;
  std::map<std::vector<std::uint32_t>, std::size_t> where;

  std::vector<state> s(static_cast<std::size_t>(len), 0);
  for (std::uint64_t it = 0; it < count; ++it) {
    path p{x0, s};
    auto key = count_transitions(n_states, p).table();
    auto found = where.find(key);
    if (found == where.end()) {
      where.emplace(std::move(key), classes.size());
      classes.push_back(path_class{count_transitions(n_states, p).table(), {s}});
    } else {
      classes[found->second].members.push_back(s);
    }
    // lexicographic odometer
    for (int k = len - 1; k >= 0; --k) {
      if (++s[static_cast<std::size_t>(k)] < n_states) break;
      s[static_cast<std::size_t>(k)] = 0;
    }
  }
  return classes;
}

successor_matrix successor_rows(int n_states, const path& p) {
  successor_matrix m;
  m.rows.resize(static_cast<std::size_t>(n_states));
  m.visit_times.resize(static_cast<std::size_t>(n_states));
  for (int t = 0; t <= p.length(); ++t) {
    state here = p.at(t);
    m.visit_times[static_cast<std::size_t>(here)].push_back(t);
    if (t < p.length()) m.rows[static_cast<std::size_t>(here)].push_back(p.at(t + 1));
  }
  return m;
}

path reconstruct_from_successors(int n_states, state x0, const successor_matrix& m, int len) {
  path p{x0, {}};
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n_states), 0);
  state here = x0;
  for (int t = 0; t < len; ++t) {
    const auto& row = m.rows[static_cast<std::size_t>(here)];
    std::size_t& c = cursor[static_cast<std::size_t>(here)];
    if (c >= row.size()) throw input_error("successor rows exhausted before the requested length");
    here = row[c++];
    p.steps.push_back(here);
  }
  return p;
}

std::vector<state> b_pattern::y() const {
  std::vector<state> out;
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), w.begin(), w.end());
  out.push_back(i);
  out.insert(out.end(), v.begin(), v.end());
  out.insert(out.end(), w.begin(), w.end());
  out.push_back(i);
  return out;
}

std::vector<state> b_pattern::y_swapped() const {
  b_pattern sw{v, u, w, i};
  return sw.y();
}

int b_pattern::kind() const {
  if (!w.empty()) return 2;
  if (!u.empty() && !v.empty()) return 1;
  return 0;
}

namespace {

// all strings over `alphabet` of length 0..max_len, lexicographic within each length
void all_strings(const std::vector<state>& alphabet, int max_len,
                 std::vector<std::vector<state>>& out) {
  out.push_back({});
  std::vector<std::vector<state>> frontier = {{}};
  for (int l = 1; l <= max_len; ++l) {
    std::vector<std::vector<state>> next;
    for (const auto& s : frontier)
      for (state a : alphabet) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    for (const auto& s : next) out.push_back(s);
    frontier = std::move(next);
  }
}

bool disjoint_elements(const std::vector<state>& a, const std::vector<state>& b) {
  for (state x : a)
    for (state y : b)
      if (x == y) return false;
  return true;
}

}  // namespace

std::vector<b_pattern> condition_b_pairs(int n_states, state i, const b_budget& budget) {
  if (i < 0 || i >= n_states) throw input_error("pattern anchor state out of range");
  std::vector<state> others;
  for (state s = 0; s < n_states; ++s)
    if (s != i) others.push_back(s);

  std::vector<std::vector<state>> us, vs, ws;
  all_strings(others, budget.max_u, us);
  all_strings(others, budget.max_v, vs);
  all_strings(others, budget.max_w, ws);

  std::vector<b_pattern> out;
  for (const auto& u : us)
    for (const auto& v : vs) {
      if (u.empty() && v.empty()) continue;
      if (!disjoint_elements(u, v)) continue;
      for (const auto& w : ws) {
        if (!disjoint_elements(u, w) || !disjoint_elements(v, w)) continue;
        out.push_back(b_pattern{u, v, w, i});
      }
    }
  return out;
}

}  // namespace rrw

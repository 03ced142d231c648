#include "rrw/check.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace rrw {

const char* verdict_name(verdict v) {
  switch (v) {
    case verdict::holds: return "holds";
    case verdict::violated: return "violated";
    case verdict::inconclusive_budget: return "inconclusive";
  }
  return "?";
}

namespace {

template <class Num>
struct num_ops {
  static bool close(const Num& a, const Num& b) { return a == b; }
  static bool positive(const Num& a) { return a > 0; }
  static rat to_rat(const Num& a) { return a; }
  static std::string show(const Num& a) { return format_rational(a); }
};

template <>
struct num_ops<double> {
  static bool close(double a, double b) {
    double m = std::max(std::abs(a), std::abs(b));
    if (m <= 1e-12) return true;
    return std::abs(a - b) <= 1e-9 * m;
  }
  static bool positive(double a) { return a > 0.0; }
  static rat to_rat(double a) { return rat(a); }
  static std::string show(double a) { return std::to_string(a); }
};

template <class Num>
Num path_prob(const scheme& s, const path& p, std::uint64_t& evals) {
  walker w(s.space().size(), p.x0);
  std::vector<Num> dist;
  Num prob(1);
  for (state next : p.steps) {
    scheme_next<Num>(s, w.view(), dist);
    ++evals;
    const Num& f = dist[static_cast<std::size_t>(next)];
    if (!num_ops<Num>::positive(f)) return Num(0);
    prob *= f;
    w.push(next);
  }
  return prob;
}

// probability of extending the walker's current history by y; walker restored
template <class Num>
Num ext_probability(const scheme& s, walker& w, const std::vector<state>& y, std::uint64_t& evals) {
  std::vector<Num> dist;
  Num prob(1);
  int pushed = 0;
  for (state st : y) {
    scheme_next<Num>(s, w.view(), dist);
    ++evals;
    const Num& f = dist[static_cast<std::size_t>(st)];
    if (!num_ops<Num>::positive(f)) {
      prob = Num(0);
      break;
    }
    prob *= f;
    w.push(st);
    ++pushed;
  }
  while (pushed-- > 0) w.pop();
  return prob;
}

// true when the cumulative string count for lengths 1..max_len stays within
// budget; on failure fills note
bool within_budget(int n_states, int max_len, std::uint64_t budget, std::string& note) {
  std::uint64_t used = 0;
  for (int n = 1; n <= max_len; ++n) {
    bool exact;
    std::uint64_t cnt = string_count(n_states, n, exact);
    if (!exact || used + cnt > budget || used + cnt < used) {
      note = "string budget " + std::to_string(budget) + " exceeded at length " +
             std::to_string(n);
      return false;
    }
    used += cnt;
  }
  return true;
}

std::string pattern_kind_name(int k) {
  switch (k) {
    case 0: return "pattern-bi";
    case 1: return "pattern-bii";
    default: return "pattern-biii";
  }
}

// depth-first sweep over positive-probability histories (the empty history
// included); visit(walker) is called at every node
template <class Num, class Visit>
void dfs_positive(const scheme& s, walker& w, int depth_left, Visit&& visit) {
  visit(w);
  if (depth_left == 0) return;
  std::vector<Num> dist;
  scheme_next<Num>(s, w.view(), dist);
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (!num_ops<Num>::positive(dist[j])) continue;
    w.push(static_cast<state>(j));
    dfs_positive<Num>(s, w, depth_left - 1, visit);
    w.pop();
  }
}

template <class Num>
check_report brute_impl(const scheme& s, state x0, const check_options& opt) {
  check_report rep;
  rep.numeric = std::is_same_v<Num, double>;
  rep.max_len = opt.max_len;
  const int K = s.space().size();

  std::uint64_t used = 0;
  for (int n = 1; n <= opt.max_len; ++n) {
    bool exact;
    std::uint64_t cnt = string_count(K, n, exact);
    if (!exact || used + cnt > opt.budget) {
      rep.v = rep.witnesses.empty() ? verdict::inconclusive_budget : verdict::violated;
      rep.note = "string budget " + std::to_string(opt.budget) + " exceeded at length " +
                 std::to_string(n);
      return rep;
    }
    used += cnt;

    auto classes = enumerate_equivalence_classes(K, x0, n, opt.budget);
    for (const auto& cl : classes) {
      ++rep.cov.classes;
      bool have_rep = false;
      Num p0{};
      const std::vector<state>* rep_member = nullptr;
      for (const auto& mem : cl.members) {
        ++rep.cov.histories;
        path pm{x0, mem};
        Num pv = path_prob<Num>(s, pm, rep.cov.evaluations);
        if (!have_rep) {
          have_rep = true;
          p0 = pv;
          rep_member = &mem;
          continue;
        }
        ++rep.cov.pairs;
        if (!num_ops<Num>::close(p0, pv) &&
            static_cast<int>(rep.witnesses.size()) < opt.witness_cap) {
          witness wit;
          wit.kind = "class-pair";
          wit.a = path{x0, *rep_member};
          wit.b = pm;
          wit.lhs = num_ops<Num>::to_rat(p0);
          wit.rhs = num_ops<Num>::to_rat(pv);
          wit.text = "p" + render_path(s.space(), wit.a) + " = " + num_ops<Num>::show(p0) +
                     " differs from p" + render_path(s.space(), wit.b) + " = " +
                     num_ops<Num>::show(pv) + " within one equivalence class";
          rep.witnesses.push_back(std::move(wit));
        }
      }
    }
  }
  rep.v = rep.witnesses.empty() ? verdict::holds : verdict::violated;
  return rep;
}

template <class Num>
check_report condition_a_impl(const scheme& s, state x0, const check_options& opt) {
  check_report rep;
  rep.numeric = std::is_same_v<Num, double>;
  rep.max_len = opt.max_len;
  const int K = s.space().size();

  if (!within_budget(K, opt.max_len, opt.budget, rep.note)) {
    rep.v = verdict::inconclusive_budget;
    return rep;
  }

  std::vector<Num> dist_rep, dist_mem;
  for (int n = 1; n <= opt.max_len; ++n) {
    auto classes = enumerate_equivalence_classes(K, x0, n, opt.budget);
    for (const auto& cl : classes) {
      if (cl.members.size() < 2) {
        rep.cov.histories += cl.members.size();
        ++rep.cov.classes;
        continue;
      }
      ++rep.cov.classes;
      bool have_rep = false;
      path rep_path;
      for (const auto& mem : cl.members) {
        ++rep.cov.histories;
        path pm{x0, mem};
        Num pv = path_prob<Num>(s, pm, rep.cov.evaluations);
        if (!num_ops<Num>::positive(pv)) continue;  // unreachable histories carry no constraint
        walker w(K, x0);
        for (state st : mem) w.push(st);
        if (!have_rep) {
          have_rep = true;
          rep_path = pm;
          scheme_next<Num>(s, w.view(), dist_rep);
          ++rep.cov.evaluations;
          continue;
        }
        ++rep.cov.pairs;
        scheme_next<Num>(s, w.view(), dist_mem);
        ++rep.cov.evaluations;
        for (int j = 0; j < K; ++j) {
          if (num_ops<Num>::close(dist_rep[static_cast<std::size_t>(j)],
                                  dist_mem[static_cast<std::size_t>(j)]))
            continue;
          if (static_cast<int>(rep.witnesses.size()) < opt.witness_cap) {
            witness wit;
            wit.kind = "one-step";
            wit.a = rep_path;
            wit.b = pm;
            wit.ext_a = {static_cast<state>(j)};
            wit.ext_b = {static_cast<state>(j)};
            wit.lhs = num_ops<Num>::to_rat(dist_rep[static_cast<std::size_t>(j)]);
            wit.rhs = num_ops<Num>::to_rat(dist_mem[static_cast<std::size_t>(j)]);
            wit.text = "p(" + s.space().label(static_cast<state>(j)) + " | " +
                       render_path(s.space(), rep_path) + ") = " +
                       num_ops<Num>::show(dist_rep[static_cast<std::size_t>(j)]) + " vs p(" +
                       s.space().label(static_cast<state>(j)) + " | " +
                       render_path(s.space(), pm) + ") = " +
                       num_ops<Num>::show(dist_mem[static_cast<std::size_t>(j)]);
            rep.witnesses.push_back(std::move(wit));
          }
          break;  // first differing coordinate of this pair is enough
        }
      }
    }
  }
  rep.v = rep.witnesses.empty() ? verdict::holds : verdict::violated;
  return rep;
}

template <class Num>
check_report condition_b_impl(const scheme& s, state x0, const check_options& opt) {
  check_report rep;
  rep.numeric = std::is_same_v<Num, double>;
  rep.max_len = opt.max_len;
  const int K = s.space().size();

  if (!within_budget(K, opt.max_len, opt.budget, rep.note)) {
    rep.v = verdict::inconclusive_budget;
    return rep;
  }

  // pattern lists per anchor state, built lazily
  std::vector<std::vector<b_pattern>> patterns(static_cast<std::size_t>(K));
  std::vector<bool> have_patterns(static_cast<std::size_t>(K), false);
  std::uint64_t checked_by_kind[3] = {0, 0, 0};

  walker w(K, x0);
  dfs_positive<Num>(s, w, opt.max_len, [&](walker& cur) {
    ++rep.cov.histories;
    state i = cur.counts().last();
    auto ii = static_cast<std::size_t>(i);
    if (!have_patterns[ii]) {
      patterns[ii] = condition_b_pairs(K, i, opt.patterns);
      have_patterns[ii] = true;
    }
    for (const b_pattern& pat : patterns[ii]) {
      ++rep.cov.patterns;
      ++checked_by_kind[pat.kind()];
      Num py = ext_probability<Num>(s, cur, pat.y(), rep.cov.evaluations);
      Num pyp = ext_probability<Num>(s, cur, pat.y_swapped(), rep.cov.evaluations);
      if (num_ops<Num>::close(py, pyp)) continue;
      if (static_cast<int>(rep.witnesses.size()) < opt.witness_cap) {
        witness wit;
        wit.kind = pattern_kind_name(pat.kind());
        wit.a = cur.current();
        wit.b = cur.current();
        wit.ext_a = pat.y();
        wit.ext_b = pat.y_swapped();
        wit.lhs = num_ops<Num>::to_rat(py);
        wit.rhs = num_ops<Num>::to_rat(pyp);
        wit.text = "after " + render_path(s.space(), cur.current()) + ": p of extension " +
                   render_steps(s.space(), wit.ext_a) + " = " + num_ops<Num>::show(py) +
                   " vs swapped " + render_steps(s.space(), wit.ext_b) + " = " +
                   num_ops<Num>::show(pyp);
        rep.witnesses.push_back(std::move(wit));
      }
    }
  });

  rep.note = "bi " + std::to_string(checked_by_kind[0]) + ", bii " +
             std::to_string(checked_by_kind[1]) + ", biii " + std::to_string(checked_by_kind[2]) +
             " pattern checks";
  rep.v = rep.witnesses.empty() ? verdict::holds : verdict::violated;
  return rep;
}

template <class Num>
check_report k_step_impl(const scheme& s, state x0, const check_options& opt) {
  check_report rep;
  rep.numeric = std::is_same_v<Num, double>;
  rep.max_len = opt.max_len;
  const int K = s.space().size();

  if (!within_budget(K, opt.max_len, opt.budget, rep.note)) {
    rep.v = verdict::inconclusive_budget;
    return rep;
  }

  // all extension strings of length k, lexicographic
  std::vector<std::vector<state>> exts;
  {
    std::vector<state> cur(static_cast<std::size_t>(opt.k_steps), 0);
    bool exact;
    std::uint64_t cnt = string_count(K, opt.k_steps, exact);
    for (std::uint64_t it = 0; exact && it < cnt; ++it) {
      exts.push_back(cur);
      for (int k = opt.k_steps - 1; k >= 0; --k) {
        if (++cur[static_cast<std::size_t>(k)] < K) break;
        cur[static_cast<std::size_t>(k)] = 0;
      }
    }
  }

  for (int n = 1; n <= opt.max_len; ++n) {
    auto classes = enumerate_equivalence_classes(K, x0, n, opt.budget);
    for (const auto& cl : classes) {
      ++rep.cov.classes;
      if (cl.members.size() < 2) {
        rep.cov.histories += cl.members.size();
        continue;
      }
      bool have_rep = false;
      path rep_path;
      for (const auto& mem : cl.members) {
        ++rep.cov.histories;
        path pm{x0, mem};
        Num pv = path_prob<Num>(s, pm, rep.cov.evaluations);
        if (!num_ops<Num>::positive(pv)) continue;
        if (!have_rep) {
          have_rep = true;
          rep_path = pm;
          continue;
        }
        ++rep.cov.pairs;
        walker wa(K, x0), wb(K, x0);
        for (state st : rep_path.steps) wa.push(st);
        for (state st : pm.steps) wb.push(st);
        for (const auto& y : exts) {
          ++rep.cov.patterns;
          Num pa = ext_probability<Num>(s, wa, y, rep.cov.evaluations);
          Num pb = ext_probability<Num>(s, wb, y, rep.cov.evaluations);
          if (num_ops<Num>::close(pa, pb)) continue;
          if (static_cast<int>(rep.witnesses.size()) < opt.witness_cap) {
            witness wit;
            wit.kind = "k-step";
            wit.a = rep_path;
            wit.b = pm;
            wit.ext_a = y;
            wit.ext_b = y;
            wit.lhs = num_ops<Num>::to_rat(pa);
            wit.rhs = num_ops<Num>::to_rat(pb);
            wit.text = "joint p of " + render_steps(s.space(), y) + " after " +
                       render_path(s.space(), rep_path) + " = " + num_ops<Num>::show(pa) +
                       " vs after " + render_path(s.space(), pm) + " = " +
                       num_ops<Num>::show(pb);
            rep.witnesses.push_back(std::move(wit));
          }
        }
      }
    }
  }
  rep.v = rep.witnesses.empty() ? verdict::holds : verdict::violated;
  return rep;
}

}  // namespace

check_report brute_force_markov_exchangeable(const scheme& s, state x0,
                                             const check_options& opt) {
  return opt.numeric ? brute_impl<double>(s, x0, opt) : brute_impl<rat>(s, x0, opt);
}

check_report check_condition_a(const scheme& s, state x0, const check_options& opt) {
  return opt.numeric ? condition_a_impl<double>(s, x0, opt) : condition_a_impl<rat>(s, x0, opt);
}

check_report check_condition_b(const scheme& s, state x0, const check_options& opt) {
  check_report pre = check_condition_a(s, x0, opt);
  if (pre.v == verdict::violated)
    throw input_error(
        "one-step sufficiency fails, so the excursion-swap reduction does not apply: " +
        (pre.witnesses.empty() ? std::string("(no witness)") : pre.witnesses.front().text));
  if (pre.v == verdict::inconclusive_budget) return pre;
  return opt.numeric ? condition_b_impl<double>(s, x0, opt) : condition_b_impl<rat>(s, x0, opt);
}

check_report check_one_step_vs_full_sufficiency(const scheme& s, state x0,
                                                const check_options& opt) {
  return opt.numeric ? k_step_impl<double>(s, x0, opt) : k_step_impl<rat>(s, x0, opt);
}

check_report check_linear_condition(const linear_predictive& pi, int n_states,
                                    const check_options& opt) {
  check_report rep;
  rep.max_len = opt.probe_max;
  const int K = n_states;
  std::vector<std::uint32_t> row(static_cast<std::size_t>(K), 0);
  const std::uint32_t top = static_cast<std::uint32_t>(opt.probe_max);

  for (;;) {
    ++rep.cov.histories;
    for (state i = 0; i < K; ++i) {
      for (state u = 0; u < K; ++u) {
        for (state v = u + 1; v < K; ++v) {
          ++rep.cov.patterns;
          std::vector<std::uint32_t> row_u = row, row_v = row;
          ++row_u[static_cast<std::size_t>(u)];
          ++row_v[static_cast<std::size_t>(v)];
          rat lhs = pi(u, row, i) * pi(v, row_u, i);
          rat rhs = pi(v, row, i) * pi(u, row_v, i);
          rep.cov.evaluations += 4;
          if (lhs == rhs) continue;
          if (static_cast<int>(rep.witnesses.size()) < opt.witness_cap) {
            witness wit;
            wit.kind = "linear";
            wit.a = path{i, {}};
            wit.ext_a = {u};
            wit.ext_b = {v};
            wit.row = row;
            wit.lhs = lhs;
            wit.rhs = rhs;
            std::string r = "[";
            for (std::size_t k = 0; k < row.size(); ++k)
              r += (k ? "," : "") + std::to_string(row[k]);
            r += "]";
            wit.text = "row " + r + " at state " + std::to_string(i) + ": draw order " +
                       std::to_string(u) + "," + std::to_string(v) + " gives " +
                       format_rational(lhs) + " but " + std::to_string(v) + "," +
                       std::to_string(u) + " gives " + format_rational(rhs);
            rep.witnesses.push_back(std::move(wit));
          }
        }
      }
    }
    int k = K - 1;
    for (; k >= 0; --k) {
      if (++row[static_cast<std::size_t>(k)] <= top) break;
      row[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  rep.v = rep.witnesses.empty() ? verdict::holds : verdict::violated;
  return rep;
}

namespace {

template <class Num>
check_report colored_impl(const colored_scheme& cs, state x0, const check_options& opt) {
  const colored_graph& g = cs.graph();
  check_report rep;
  rep.numeric = std::is_same_v<Num, double>;
  rep.max_len = opt.max_len;
  const int K = g.sp.size();

  if (!within_budget(K, opt.max_len, opt.budget, rep.note)) {
    rep.v = verdict::inconclusive_budget;
    return rep;
  }

  // alpha_{C(base)} + color counts of the string so far, as the number type
  auto factor = [&](const transition_counts& t, state base) -> Num {
    std::uint64_t cnt = 0;
    for (int c : g.c_of[static_cast<std::size_t>(base)])
      for (std::size_t e : g.e_c[static_cast<std::size_t>(c)])
        cnt += t.at(g.edges[e].from, g.edges[e].to);
    Num out;
    if constexpr (std::is_same_v<Num, rat>) {
      out = g.alpha_row[static_cast<std::size_t>(base)];
    } else {
      out = to_double(g.alpha_row[static_cast<std::size_t>(base)]);
    }
    return out + static_cast<Num>(cnt);
  };

  auto realizable = [&](state from, const std::vector<state>& y) {
    state cur = from;
    for (state st : y) {
      if (g.edge_between(cur, st) == colored_graph::npos) return false;
      cur = st;
    }
    return true;
  };

  // product over l = 2..m of factor(counts after y_1..y_{l-1}, y_{l-1})
  auto product = [&](walker& w, const std::vector<state>& y) -> Num {
    Num prod(1);
    int pushed = 0;
    for (std::size_t l = 0; l < y.size(); ++l) {
      w.push(y[l]);
      ++pushed;
      if (l + 1 < y.size()) prod *= factor(w.counts(), y[l]);
    }
    while (pushed-- > 0) w.pop();
    return prod;
  };

  std::vector<std::vector<b_pattern>> patterns(static_cast<std::size_t>(K));
  std::vector<bool> have_patterns(static_cast<std::size_t>(K), false);

  walker w(K, x0);
  dfs_positive<Num>(cs, w, opt.max_len, [&](walker& cur) {
    ++rep.cov.histories;
    state i = cur.counts().last();
    auto ii = static_cast<std::size_t>(i);
    if (!have_patterns[ii]) {
      patterns[ii] = condition_b_pairs(K, i, opt.patterns);
      have_patterns[ii] = true;
    }
    for (const b_pattern& pat : patterns[ii]) {
      auto y = pat.y();
      if (!realizable(i, y)) continue;  // both orders traverse the same edges
      ++rep.cov.patterns;
      auto yp = pat.y_swapped();
      Num py = product(cur, y);
      Num pyp = product(cur, yp);
      rep.cov.evaluations += 2;
      if (num_ops<Num>::close(py, pyp)) continue;
      if (static_cast<int>(rep.witnesses.size()) < opt.witness_cap) {
        witness wit;
        wit.kind = "color-product";
        wit.a = cur.current();
        wit.b = cur.current();
        wit.ext_a = y;
        wit.ext_b = yp;
        wit.lhs = num_ops<Num>::to_rat(py);
        wit.rhs = num_ops<Num>::to_rat(pyp);
        wit.text = "after " + render_path(g.sp, cur.current()) + ": color-count product along " +
                   render_steps(g.sp, y) + " = " + num_ops<Num>::show(py) + " vs along " +
                   render_steps(g.sp, yp) + " = " + num_ops<Num>::show(pyp);
        rep.witnesses.push_back(std::move(wit));
      }
    }
  });

  rep.v = rep.witnesses.empty() ? verdict::holds : verdict::violated;
  return rep;
}

}  // namespace

check_report check_colored_condition(const colored_graph& g, state x0,
                                     const check_options& opt) {
  colored_scheme cs(g);
  return opt.numeric ? colored_impl<double>(cs, x0, opt) : colored_impl<rat>(cs, x0, opt);
}

}  // namespace rrw

#include "rrw/dummy.hpp"

#include <algorithm>

#include "rrw/errors.hpp"
#include "rrw/rng.hpp"
#include "rrw/scheme.hpp"

namespace rrw {

namespace {

int find_or_add_color(colored_graph& g, const std::string& name, const rat& alpha) {
  for (std::size_t c = 0; c < g.color_names.size(); ++c)
    if (g.color_names[c] == name) return static_cast<int>(c);
  if (!(alpha > 0)) throw input_error("color " + name + " needs positive weight");
  g.color_names.push_back(name);
  g.alpha.push_back(alpha);
  return static_cast<int>(g.color_names.size()) - 1;
}

bigint factorial(std::uint32_t n) {
  bigint f = 1;
  for (std::uint32_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// binomial(n + k, k) as uint64 with saturation guard; class-space gate only
bigint compositions_up_to(std::uint32_t total, std::size_t k) {
  bigint num = 1, den = 1;
  for (std::size_t r = 1; r <= k; ++r) {
    num *= static_cast<std::uint32_t>(total + r);
    den *= static_cast<std::uint32_t>(r);
  }
  return num / den;
}

}  // namespace

augmented_graph augment(const colored_graph& base,
                        const std::vector<dummy_placement>& placements,
                        bool require_partitioned) {
  augmented_graph aug;
  aug.base = base;
  aug.n_base = base.sp.size();
  aug.dummies_on_edge.assign(base.edges.size(), {});

  colored_graph star = base;
  std::vector<std::string> labels;
  for (state i = 0; i < base.sp.size(); ++i) labels.push_back(base.sp.label(i));

  std::vector<bool> placed(base.edges.size(), false);
  for (const auto& pl : placements) {
    state from = base.sp.index_of(pl.from);
    state to = base.sp.index_of(pl.to);
    std::size_t e = base.edge_between(from, to);
    if (e == colored_graph::npos)
      throw input_error("dummy placement on missing edge (" + pl.from + ", " + pl.to + ")");
    if (placed[e])
      throw input_error("two placements on edge (" + pl.from + ", " + pl.to + ")");
    placed[e] = true;
    if (pl.count < 1) throw input_error("dummy placement needs count >= 1");
    if (!(pl.in_beta > 0) || !(pl.out_beta > 0))
      throw input_error("dummy edge weights must be positive");

    int cin = find_or_add_color(star, pl.in_color, pl.in_alpha);
    int cout = find_or_add_color(star, pl.out_color, pl.out_alpha);
    for (int k = 0; k < pl.count; ++k) {
      std::string label = pl.from + "*" + pl.to;
      if (pl.count > 1) label += "#" + std::to_string(k + 1);
      state d = static_cast<state>(labels.size());
      labels.push_back(label);
      star.edges.push_back(colored_edge{from, d, cin, pl.in_beta});
      star.edges.push_back(colored_edge{d, to, cout, pl.out_beta});
      aug.dummies_on_edge[e].push_back(d);
      aug.dummy_base_edge.push_back(e);
    }
    aug.carrying_edges.push_back(e);
  }

  star.sp = state_space(labels);  // rejects label collisions with dummy names
  star.finalize();
  if (require_partitioned && !is_partitioned_colors(star))
    throw model_error("augmented graph does not have partitioned colors");
  aug.star = std::move(star);
  return aug;
}

completion_slots find_slots(const augmented_graph& aug, const path& x) {
  completion_slots sl;
  for (int t = 0; t < x.length(); ++t) {
    state from = x.at(t);
    state to = x.steps[static_cast<std::size_t>(t)];
    if (from >= aug.n_base || to >= aug.n_base)
      throw input_error("observed walk visits a dummy state");
    std::size_t e = aug.base.edge_between(from, to);
    if (e == colored_graph::npos || aug.dummies_on_edge[e].empty()) continue;
    sl.slot_time.push_back(t);
    sl.slot_edge.push_back(e);
  }
  return sl;
}

bigint completion_count(const augmented_graph& aug, const path& x) {
  completion_slots sl = find_slots(aug, x);
  bigint total = 1;
  for (std::size_t e : sl.slot_edge)
    total *= static_cast<std::uint32_t>(1 + aug.dummies_on_edge[e].size());
  return total;
}

path complete(const augmented_graph& aug, const path& x, const std::vector<int>& choices) {
  completion_slots sl = find_slots(aug, x);
  if (choices.size() != sl.slot_time.size())
    throw input_error("completion needs " + std::to_string(sl.slot_time.size()) +
                      " choices, got " + std::to_string(choices.size()));
  path out{x.x0, {}};
  std::size_t s = 0;
  for (int t = 0; t < x.length(); ++t) {
    state to = x.steps[static_cast<std::size_t>(t)];
    if (s < sl.slot_time.size() && sl.slot_time[s] == t) {
      const auto& ds = aug.dummies_on_edge[sl.slot_edge[s]];
      int c = choices[s];
      if (c < 0 || c > static_cast<int>(ds.size()))
        throw input_error("completion choice out of range at slot " + std::to_string(s));
      if (c > 0) out.steps.push_back(ds[static_cast<std::size_t>(c) - 1]);
      ++s;
    }
    out.steps.push_back(to);
  }
  return out;
}

std::vector<path> consistent_strings(const augmented_graph& aug, const path& x,
                                     std::uint64_t budget) {
  bigint total = completion_count(aug, x);
  if (total > budget)
    throw resource_error("completion set has " + total.str() + " elements, budget " +
                         std::to_string(budget));
  completion_slots sl = find_slots(aug, x);
  std::vector<int> choices(sl.slot_time.size(), 0);
  std::vector<path> out;
  out.reserve(static_cast<std::size_t>(total));
  for (;;) {
    out.push_back(complete(aug, x, choices));
    int s = static_cast<int>(choices.size()) - 1;
    for (; s >= 0; --s) {
      auto limit = static_cast<int>(aug.dummies_on_edge[sl.slot_edge[static_cast<std::size_t>(s)]].size());
      if (++choices[static_cast<std::size_t>(s)] <= limit) break;
      choices[static_cast<std::size_t>(s)] = 0;
    }
    if (s < 0) break;
  }
  return out;
}

bigint class_size(const augmented_graph& aug, const path& x,
                  const std::vector<std::uint32_t>& m) {
  if (static_cast<int>(m.size()) != aug.n_dummies())
    throw input_error("visit counts must cover every dummy state");
  transition_counts t = count_transitions(aug.n_base, x);
  bigint size = 1;
  for (std::size_t e : aug.carrying_edges) {
    const colored_edge& ed = aug.base.edges[e];
    std::uint32_t traversals = t.at(ed.from, ed.to);
    std::uint64_t on_dummies = 0;
    bigint denom = 1;
    for (state d : aug.dummies_on_edge[e]) {
      std::uint32_t md = m[static_cast<std::size_t>(d - aug.n_base)];
      on_dummies += md;
      denom *= factorial(md);
    }
    if (on_dummies > traversals)
      throw input_error("visit counts place " + std::to_string(on_dummies) +
                        " detours on an edge traversed " + std::to_string(traversals) +
                        " times");
    denom *= factorial(traversals - static_cast<std::uint32_t>(on_dummies));
    size *= factorial(traversals) / denom;
  }
  return size;
}

std::vector<completion_class> completion_classes(const augmented_graph& aug, const path& x,
                                                 std::uint64_t budget) {
  transition_counts t = count_transitions(aug.n_base, x);
  completion_slots sl = find_slots(aug, x);

  // class-space size gate, per-edge composition counts multiplied
  bigint n_classes = 1;
  for (std::size_t e : aug.carrying_edges) {
    const colored_edge& ed = aug.base.edges[e];
    n_classes *= compositions_up_to(t.at(ed.from, ed.to), aug.dummies_on_edge[e].size());
  }
  if (n_classes > budget)
    throw resource_error("class space has " + n_classes.str() + " elements, budget " +
                         std::to_string(budget));

  const int nd = aug.n_dummies();
  std::vector<std::uint32_t> m(static_cast<std::size_t>(nd), 0);
  std::vector<completion_class> out;

  // greedy representative: direct while the tail can still absorb the detours
  auto representative = [&]() {
    std::vector<std::uint32_t> need(m);
    std::vector<std::uint32_t> slots_left(aug.base.edges.size(), 0);
    for (std::size_t e : sl.slot_edge) ++slots_left[e];
    std::vector<int> choices(sl.slot_time.size(), 0);
    for (std::size_t s = 0; s < sl.slot_time.size(); ++s) {
      std::size_t e = sl.slot_edge[s];
      const auto& ds = aug.dummies_on_edge[e];
      std::uint64_t pending = 0;
      for (state d : ds) pending += need[static_cast<std::size_t>(d - aug.n_base)];
      if (pending < slots_left[e]) {
        choices[s] = 0;
      } else {
        for (std::size_t k = 0; k < ds.size(); ++k) {
          auto& nd_ref = need[static_cast<std::size_t>(ds[k] - aug.n_base)];
          if (nd_ref > 0) {
            choices[s] = static_cast<int>(k) + 1;
            --nd_ref;
            break;
          }
        }
      }
      --slots_left[e];
    }
    return complete(aug, x, choices);
  };

  // odometer over per-dummy counts, constrained per edge
  auto feasible = [&]() {
    for (std::size_t e : aug.carrying_edges) {
      const colored_edge& ed = aug.base.edges[e];
      std::uint64_t sum = 0;
      for (state d : aug.dummies_on_edge[e]) sum += m[static_cast<std::size_t>(d - aug.n_base)];
      if (sum > t.at(ed.from, ed.to)) return false;
    }
    return true;
  };

  for (;;) {
    if (feasible()) {
      completion_class cc;
      cc.m = m;
      cc.representative = representative();
      cc.size = class_size(aug, x, m);
      out.push_back(std::move(cc));
    }
    int d = nd - 1;
    for (; d >= 0; --d) {
      std::size_t e = aug.dummy_base_edge[static_cast<std::size_t>(d)];
      const colored_edge& ed = aug.base.edges[e];
      if (++m[static_cast<std::size_t>(d)] <= t.at(ed.from, ed.to)) break;
      m[static_cast<std::size_t>(d)] = 0;
    }
    if (d < 0) break;
  }
  return out;
}

rat marginal_probability(const augmented_graph& aug, const path& x, std::uint64_t budget) {
  colored_scheme cs(aug.star);
  rat total = 0;
  for (const auto& cc : completion_classes(aug, x, budget))
    total += rat(cc.size) * path_probability(cs, cc.representative);
  return total;
}

rat marginal_probability_enumerated(const augmented_graph& aug, const path& x,
                                    std::uint64_t budget) {
  colored_scheme cs(aug.star);
  rat total = 0;
  for (const path& comp : consistent_strings(aug, x, budget))
    total += path_probability(cs, comp);
  return total;
}

std::vector<std::vector<double>> induced_transition(
    const augmented_graph& aug, const std::vector<std::vector<double>>& star_rows) {
  const auto ks = static_cast<std::size_t>(aug.star.sp.size());
  if (star_rows.size() != ks) throw input_error("row count does not match the augmented graph");
  for (const auto& row : star_rows)
    if (row.size() != ks) throw input_error("row width does not match the augmented graph");

  const auto kb = static_cast<std::size_t>(aug.n_base);
  std::vector<std::vector<double>> out(kb, std::vector<double>(kb, 0.0));
  for (std::size_t i = 0; i < kb; ++i) {
    for (std::size_t j = 0; j < kb; ++j) {
      double mass = star_rows[i][j];
      std::size_t e = aug.base.edge_between(static_cast<state>(i), static_cast<state>(j));
      if (e != colored_graph::npos)
        for (state d : aug.dummies_on_edge[e])
          mass += star_rows[i][static_cast<std::size_t>(d)];
      out[i][j] = mass;
    }
  }
  return out;
}

namespace {

// incremental transition counts plus per-color totals on the star graph
struct gibbs_counts {
  const colored_graph* g;
  std::vector<std::uint32_t> tbl;
  std::vector<std::uint64_t> color_total;

  explicit gibbs_counts(const colored_graph& graph)
      : g(&graph),
        tbl(static_cast<std::size_t>(graph.sp.size()) * static_cast<std::size_t>(graph.sp.size()), 0),
        color_total(graph.color_names.size(), 0) {}

  std::size_t idx(state i, state j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(g->sp.size()) +
           static_cast<std::size_t>(j);
  }
  std::uint32_t at(state i, state j) const { return tbl[idx(i, j)]; }

  void inc(state i, state j) {
    std::size_t e = g->edge_between(i, j);
    if (e == colored_graph::npos)
      throw input_error("walk uses pair (" + g->sp.label(i) + ", " + g->sp.label(j) +
                        ") with no edge");
    ++tbl[idx(i, j)];
    ++color_total[static_cast<std::size_t>(g->edges[e].color)];
  }
  void dec(state i, state j) {
    std::size_t e = g->edge_between(i, j);
    --tbl[idx(i, j)];
    --color_total[static_cast<std::size_t>(g->edges[e].color)];
  }
};

}  // namespace

gibbs_result gibbs_successors(const augmented_graph& aug, const path& x, int sweeps,
                              std::uint64_t seed, int burn_in) {
  if (sweeps < 1) throw input_error("gibbs needs at least one sweep");
  gibbs_result res;
  res.slots = find_slots(aug, x);
  const std::size_t ns = res.slots.slot_time.size();
  res.burn_in = burn_in >= 0 ? burn_in : static_cast<int>(10 * ns);

  const colored_graph& g = aug.star;
  gibbs_counts counts(g);
  std::vector<int> choices(ns, 0);
  {
    path full = complete(aug, x, choices);
    for (int t = 0; t < full.length(); ++t)
      counts.inc(full.at(t), full.steps[static_cast<std::size_t>(t)]);
  }

  // beta_{i, E_c} totals looked up from the star row groups
  auto row_group_of = [&](state i, int color) -> const colored_graph::row_group& {
    for (const auto& grp : g.rows[static_cast<std::size_t>(i)])
      if (grp.color == color) return grp;
    throw model_error("state " + g.sp.label(i) + " has no color " +
                      g.color_names[static_cast<std::size_t>(color)]);
  };

  // predictive mass of candidate successor k from i given all other successors
  auto weight = [&](state i, state k, const rat& denom_color) {
    std::size_t e = g.edge_between(i, k);
    const colored_edge& ed = g.edges[e];
    const auto& grp = row_group_of(i, ed.color);
    std::uint64_t row_color_cnt = 0;
    for (std::size_t eid : grp.edge_ids) row_color_cnt += counts.at(g.edges[eid].from, g.edges[eid].to);
    rat cfac = (g.alpha[static_cast<std::size_t>(ed.color)] +
                counts.color_total[static_cast<std::size_t>(ed.color)]) /
               denom_color;
    rat efac = (ed.beta + counts.at(i, k)) / (grp.beta_sum + row_color_cnt);
    return cfac * efac;
  };

  rng64 r(seed);
  std::vector<double> w;
  std::vector<state> cands;
  const int total_sweeps = res.burn_in + sweeps;
  for (int sweep = 0; sweep < total_sweeps; ++sweep) {
    for (std::size_t s = 0; s < ns; ++s) {
      int t = res.slots.slot_time[s];
      state i = x.at(t);
      state j = x.steps[static_cast<std::size_t>(t)];
      const auto& ds = aug.dummies_on_edge[res.slots.slot_edge[s]];

      // remove this slot's contribution so counts cover the other successors
      if (choices[s] == 0) {
        counts.dec(i, j);
      } else {
        state d = ds[static_cast<std::size_t>(choices[s]) - 1];
        counts.dec(i, d);
        counts.dec(d, j);
      }

      rat denom_color = g.alpha_row[static_cast<std::size_t>(i)];
      {
        std::uint64_t ci = 0;
        for (int c : g.c_of[static_cast<std::size_t>(i)])
          ci += counts.color_total[static_cast<std::size_t>(c)];
        denom_color += ci;
      }

      cands.clear();
      cands.push_back(j);
      for (state d : ds) cands.push_back(d);
      w.resize(cands.size());
      for (std::size_t k = 0; k < cands.size(); ++k)
        w[k] = to_double(weight(i, cands[k], denom_color));

      auto pick = static_cast<int>(r.next_index(w));
      choices[s] = pick;
      if (pick == 0) {
        counts.inc(i, j);
      } else {
        state d = ds[static_cast<std::size_t>(pick) - 1];
        counts.inc(i, d);
        counts.inc(d, j);
      }
    }
    if (sweep >= res.burn_in) {
      ++res.visits[choices];
      ++res.recorded;
    }
  }
  return res;
}

}  // namespace rrw

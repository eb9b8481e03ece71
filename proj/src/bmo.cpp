#include "disclab/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "disclab/discrepancy.hpp"
#include "disclab/errors.hpp"
#include "disclab/kahan.hpp"
#include "disclab/mincut.hpp"
#include "disclab/parallel.hpp"

namespace disclab {

std::string to_string(BmoCandidate::Kind kind) {
  switch (kind) {
    case BmoCandidate::Kind::FullCube: return "full-cube";
    case BmoCandidate::Kind::DyadicBox: return "dyadic-box";
    case BmoCandidate::Kind::CellUnion: return "cell-union";
  }
  throw DomainViolation("unknown candidate kind");
}

double bmo_initial(int dim) { return std::sqrt(initial_extreme_sq(dim)); }

double bmo_global(const PointSet& ps, int max_order) {
  return truncated_energy(ps, max_order, false);
}

double box_energy(const PointSet& ps, const DyadicIndex& box, int max_order) {
  validate_index(box);
  int d = ps.dim();
  if (box.levels.size() != static_cast<std::size_t>(d)) {
    throw DomainViolation("box dimension does not match the point set");
  }
  for (int u : box.levels) {
    if (u < 0) throw DomainViolation("box levels must be >= 0");
  }
  int base = index_order(box);
  if (max_order < base) {
    throw DomainViolation("truncation order is below the box order");
  }
  // Levels dominating the box with total order <= max_order are exactly the
  // box levels plus a nonnegative shift of order <= max_order - base.
  auto shifts = enumerate_levels(d, max_order - base, false);
  std::vector<int> j(static_cast<std::size_t>(d));
  KahanSum total;
  for (const auto& e : shifts) {
    for (int k = 0; k < d; ++k) {
      j[static_cast<std::size_t>(k)] = box.levels[static_cast<std::size_t>(k)] +
                                       e[static_cast<std::size_t>(k)];
    }
    total += level_sum_in_box(ps, j, box);
  }
  return total.value();
}

double bmo_dyadic_box(const PointSet& ps, const DyadicIndex& box, int max_order) {
  double energy = box_energy(ps, box, max_order);
  return std::ldexp(energy, index_order(box));
}

namespace {

// Cell grid bookkeeping for the union search.  A cell id packs the level-L
// digits of each coordinate, first coordinate most significant, L bits each.
struct SearchData {
  int dim = 0;
  int cell_level = 0;
  int grid_order = 0;  // dim * cell_level
  std::size_t cells_total = 0;
  std::vector<double> w_deep;  // energy of intervals at or below cell size
  // Coarser intervals grouped by the set of cells they span; the set is a
  // dyadic sub-grid box, stored as its ascending cell-id list.
  std::vector<double> group_weight;
  std::vector<std::vector<std::uint32_t>> group_cells;
};

double cell_volume(const SearchData& sd) { return std::ldexp(1.0, -sd.grid_order); }

// Energy and volume of a union, re-evaluated directly from the aggregated
// weights; every ratio the search reports comes from this function (or from
// the shared full-cube series), never from flow values.
struct UnionValue {
  double energy = 0.0;
  double volume = 0.0;
  std::size_t count = 0;
};

UnionValue evaluate_union(const SearchData& sd, const std::vector<char>& selected) {
  KahanSum energy;
  std::size_t count = 0;
  for (std::size_t c = 0; c < sd.cells_total; ++c) {
    if (!selected[c]) continue;
    energy += sd.w_deep[c];
    ++count;
  }
  for (std::size_t g = 0; g < sd.group_weight.size(); ++g) {
    bool inside = true;
    for (std::uint32_t c : sd.group_cells[g]) {
      if (!selected[c]) {
        inside = false;
        break;
      }
    }
    if (inside) energy += sd.group_weight[g];
  }
  UnionValue out;
  out.energy = energy.value();
  out.count = count;
  out.volume = static_cast<double>(count) * cell_volume(sd);
  return out;
}

void fill_deep_weights(const PointSet& ps, SearchData& sd, int max_order) {
  sd.w_deep.assign(sd.cells_total, 0.0);
  if (max_order < sd.grid_order) return;  // no interval fits inside a cell

  int d = sd.dim;
  int L = sd.cell_level;
  auto shifts = enumerate_levels(d, max_order - sd.grid_order, false);

  double work = static_cast<double>(sd.cells_total) * static_cast<double>(shifts.size());
  if (work > 2e8) {
    throw SizeGuardError(
        "per-cell energy workload exceeds the size guard; lower the search "
        "level or the truncation order");
  }

  parallel_for(sd.cells_total, [&](std::size_t c) {
    DyadicIndex cell;
    cell.levels.assign(static_cast<std::size_t>(d), L);
    cell.positions.resize(static_cast<std::size_t>(d));
    std::uint64_t rest = c;
    for (int k = d - 1; k >= 0; --k) {
      cell.positions[static_cast<std::size_t>(k)] =
          static_cast<std::int64_t>(rest & ((std::uint64_t{1} << L) - 1));
      rest >>= L;
    }
    std::vector<int> j(static_cast<std::size_t>(d));
    KahanSum total;
    for (const auto& e : shifts) {
      for (int k = 0; k < d; ++k) j[static_cast<std::size_t>(k)] = L + e[static_cast<std::size_t>(k)];
      total += level_sum_in_box(ps, j, cell);
    }
    sd.w_deep[c] = total.value();
  });
}

// Aggregates every interval coarser than the cell grid into a group keyed by
// the sub-grid box of cells it spans.  Mirrors the per-box arithmetic of the
// level sums: occupied boxes contribute 2^order (a - b)^2, empty ones
// 2^order b^2.
void fill_coarse_groups(const PointSet& ps, SearchData& sd, int max_order) {
  int d = sd.dim;
  int L = sd.cell_level;
  auto levels = enumerate_levels(d, max_order, false);

  std::unordered_map<std::uint64_t, std::size_t> group_of;
  std::uint64_t span_radix = static_cast<std::uint64_t>(L) + 1;

  struct Hit {
    std::uint64_t key;
    std::uint32_t gidx;
    double prod;
  };
  std::vector<Hit> hits;

  for (const auto& lv : levels) {
    bool coarse = false;
    for (int j : lv) {
      if (j < L) {
        coarse = true;
        break;
      }
    }
    if (!coarse) continue;

    int order = level_order(lv);
    double b = 1.0;
    for (int j : lv) b *= volume_factor(j);
    double w_empty = std::ldexp(b * b, order);

    int gbits_total = 0;
    int boxes_per_group_log = 0;
    for (int j : lv) {
      gbits_total += std::min(j, L);
      boxes_per_group_log += std::max(j - L, 0);
    }
    std::size_t group_count = std::size_t{1} << gbits_total;
    double group_size = std::ldexp(1.0, boxes_per_group_log);

    std::vector<double> occupied_weight(group_count, 0.0);
    std::vector<std::uint32_t> occupied_boxes(group_count, 0);

    hits.clear();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto p = ps.point(i);
      std::uint64_t key = 0;
      std::uint64_t gidx = 0;
      double prod = 1.0;
      for (int k = 0; k < d; ++k) {
        int j = lv[static_cast<std::size_t>(k)];
        double x = p[static_cast<std::size_t>(k)];
        double t = std::ldexp(x, j);
        double fl = std::floor(t);
        auto m = static_cast<std::int64_t>(fl);
        key = (key << j) | static_cast<std::uint64_t>(m);
        std::uint64_t gdigit =
            j >= L ? static_cast<std::uint64_t>(m >> (j - L)) : static_cast<std::uint64_t>(m);
        gidx = (gidx << std::min(j, L)) | gdigit;
        double frac = t - fl;
        double dist = std::min(frac, 1.0 - frac);
        if (dist == 0.0) {
          prod = 0.0;
          break;
        }
        prod *= -std::ldexp(dist, -j);
      }
      if (prod != 0.0) hits.push_back({key, static_cast<std::uint32_t>(gidx), prod});
    }
    std::sort(hits.begin(), hits.end(),
              [](const Hit& l, const Hit& r) { return l.key < r.key; });

    double inv_n = ps.empty() ? 0.0 : 1.0 / static_cast<double>(ps.size());
    std::size_t i = 0;
    while (i < hits.size()) {
      std::uint64_t key = hits[i].key;
      std::uint32_t gidx = hits[i].gidx;
      KahanSum run;
      while (i < hits.size() && hits[i].key == key) {
        run += hits[i].prod;
        ++i;
      }
      double a = run.value() * inv_n;
      occupied_weight[gidx] += std::ldexp((a - b) * (a - b), order);
      occupied_boxes[gidx] += 1;
    }

    // Emit or merge the level's groups in ascending digit order.
    for (std::size_t g = 0; g < group_count; ++g) {
      double weight = occupied_weight[g] +
                      (group_size - static_cast<double>(occupied_boxes[g])) * w_empty;

      // Decode group digits (least significant coordinate last).
      std::uint64_t rest = g;
      std::uint64_t lo_id = 0;
      std::uint64_t span_code = 0;
      std::vector<std::uint64_t> lo(static_cast<std::size_t>(d));
      std::vector<int> span_bits(static_cast<std::size_t>(d));
      for (int k = d - 1; k >= 0; --k) {
        int rb = std::min(lv[static_cast<std::size_t>(k)], L);
        std::uint64_t digit = rest & ((std::uint64_t{1} << rb) - 1);
        rest >>= rb;
        int sb = std::max(L - lv[static_cast<std::size_t>(k)], 0);
        lo[static_cast<std::size_t>(k)] = digit << sb;
        span_bits[static_cast<std::size_t>(k)] = sb;
      }
      for (int k = 0; k < d; ++k) {
        lo_id = (lo_id << L) | lo[static_cast<std::size_t>(k)];
        span_code = span_code * span_radix +
                    static_cast<std::uint64_t>(span_bits[static_cast<std::size_t>(k)]);
      }
      std::uint64_t dedupe_key = lo_id;
      for (int k = 0; k < d; ++k) dedupe_key *= span_radix;
      dedupe_key += span_code;

      auto it = group_of.find(dedupe_key);
      if (it != group_of.end()) {
        sd.group_weight[it->second] += weight;
        continue;
      }

      // Enumerate the spanned cells in ascending id order.
      std::vector<std::uint32_t> cells;
      cells.reserve(std::size_t{1} << (sd.grid_order - gbits_total));
      std::vector<std::uint64_t> offs(static_cast<std::size_t>(d), 0);
      while (true) {
        std::uint64_t id = 0;
        for (int k = 0; k < d; ++k) {
          id = (id << L) | (lo[static_cast<std::size_t>(k)] + offs[static_cast<std::size_t>(k)]);
        }
        cells.push_back(static_cast<std::uint32_t>(id));
        int k = d - 1;
        while (k >= 0) {
          if (++offs[static_cast<std::size_t>(k)] <
              (std::uint64_t{1} << span_bits[static_cast<std::size_t>(k)])) {
            break;
          }
          offs[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }

      group_of.emplace(dedupe_key, sd.group_weight.size());
      sd.group_weight.push_back(weight);
      sd.group_cells.push_back(std::move(cells));
    }
  }
}

std::vector<char> run_min_cut(const SearchData& sd, double lambda) {
  std::size_t cells = sd.cells_total;
  std::size_t groups = sd.group_weight.size();
  MaxFlowGraph graph(2 + cells + groups);
  std::size_t source = 0;
  std::size_t sink = 1;
  double vol = cell_volume(sd);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t node = 2 + c;
    if (sd.w_deep[c] > 0.0) graph.add_edge(source, node, sd.w_deep[c]);
    graph.add_edge(node, sink, lambda * vol);
  }
  for (std::size_t g = 0; g < groups; ++g) {
    std::size_t node = 2 + cells + g;
    if (sd.group_weight[g] > 0.0) graph.add_edge(source, node, sd.group_weight[g]);
    for (std::uint32_t c : sd.group_cells[g]) {
      graph.add_edge(node, 2 + static_cast<std::size_t>(c), MaxFlowGraph::kInf);
    }
  }
  graph.max_flow(source, sink);
  auto mark = graph.source_side(source);
  std::vector<char> selected(cells, 0);
  for (std::size_t c = 0; c < cells; ++c) selected[c] = mark[2 + c] ? 1 : 0;
  return selected;
}

std::vector<std::uint64_t> selected_ids(const std::vector<char>& selected) {
  std::vector<std::uint64_t> ids;
  for (std::size_t c = 0; c < selected.size(); ++c) {
    if (selected[c]) ids.push_back(static_cast<std::uint64_t>(c));
  }
  return ids;
}

// Greedy fallback when the group graph would be too large: scan density
// prefixes of the per-cell weights.  Prefix energies omit the coarse mass, so
// they stay certified lower bounds; the full cube uses the complete series.
UnionSearchResult greedy_union(const PointSet& ps, const SearchData& sd, int max_order) {
  UnionSearchResult out;
  out.used_fallback = true;

  double best = bmo_global(ps, max_order);
  std::size_t best_prefix = 0;  // zero means the full cube

  std::vector<std::uint32_t> order(sd.cells_total);
  for (std::size_t c = 0; c < sd.cells_total; ++c) order[c] = static_cast<std::uint32_t>(c);
  std::sort(order.begin(), order.end(), [&](std::uint32_t l, std::uint32_t r) {
    if (sd.w_deep[l] != sd.w_deep[r]) return sd.w_deep[l] > sd.w_deep[r];
    return l < r;
  });

  double vol = cell_volume(sd);
  KahanSum acc;
  for (std::size_t k = 1; k <= sd.cells_total; ++k) {
    acc += sd.w_deep[order[k - 1]];
    double ratio = acc.value() / (static_cast<double>(k) * vol);
    if (ratio > best) {
      best = ratio;
      best_prefix = k;
    }
  }

  out.squared = best;
  if (best_prefix == 0) {
    out.cells.resize(sd.cells_total);
    for (std::size_t c = 0; c < sd.cells_total; ++c) out.cells[c] = c;
  } else {
    out.cells.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
    std::sort(out.cells.begin(), out.cells.end());
  }
  return out;
}

}  // namespace

UnionSearchResult bmo_union_search(const PointSet& ps, int cell_level, int max_order) {
  int d = ps.dim();
  if (cell_level < 0) throw DomainViolation("the search level must be nonnegative");
  if (max_order < 0) throw DomainViolation("the truncation order must be nonnegative");
  if (max_order > kMaxTotalOrder) {
    throw SizeGuardError("truncation order exceeds the 64-bit position-key guard");
  }
  if (d * cell_level > 20) {
    throw SizeGuardError("cell grid exceeds the 2^20 guard; lower the search level");
  }

  SearchData sd;
  sd.dim = d;
  sd.cell_level = cell_level;
  sd.grid_order = d * cell_level;
  sd.cells_total = std::size_t{1} << sd.grid_order;

  fill_deep_weights(ps, sd, max_order);

  // Every coarse level contributes exactly one cell endpoint per grid cell
  // after grouping, so the graph size estimate is levels * cells.
  double coarse_levels = 0.0;
  for (const auto& lv : enumerate_levels(d, max_order, false)) {
    for (int j : lv) {
      if (j < cell_level) {
        coarse_levels += 1.0;
        break;
      }
    }
  }
  if (coarse_levels * static_cast<double>(sd.cells_total) > 8e6) {
    return greedy_union(ps, sd, max_order);
  }

  fill_coarse_groups(ps, sd, max_order);

  UnionSearchResult out;

  // Seed with the full cube and the densest single cell, then raise the
  // ratio: each min cut finds the union maximizing energy - lambda volume,
  // and a positive maximum yields a strictly better ratio.
  std::vector<char> best_sel(sd.cells_total, 1);
  double lambda = evaluate_union(sd, best_sel).energy;
  for (std::size_t c = 0; c < sd.cells_total; ++c) {
    double ratio = std::ldexp(sd.w_deep[c], sd.grid_order);
    if (ratio > lambda) {
      lambda = ratio;
      std::fill(best_sel.begin(), best_sel.end(), 0);
      best_sel[c] = 1;
    }
  }

  for (int round = 0; round < 60; ++round) {
    auto selected = run_min_cut(sd, lambda);
    bool any = false;
    for (char s : selected) {
      if (s) {
        any = true;
        break;
      }
    }
    if (!any) break;
    auto value = evaluate_union(sd, selected);
    ++out.iterations;
    if (value.volume <= 0.0) break;
    double ratio = value.energy / value.volume;
    if (!(ratio > lambda * (1.0 + 1e-13))) break;
    lambda = ratio;
    best_sel = std::move(selected);
  }

  out.squared = lambda;
  out.cells = selected_ids(best_sel);
  return out;
}

BmoEstimate bmo_discrepancy(const PointSet& ps, int max_order, int cell_level) {
  int d = ps.dim();
  if (max_order < 0) throw DomainViolation("the truncation order must be nonnegative");
  if (cell_level < 0) throw DomainViolation("the search level must be nonnegative");
  if (cell_level > max_order) {
    throw DomainViolation("the search level cannot exceed the truncation order");
  }

  BmoEstimate est;
  est.truncation_order = max_order;
  est.search_level = cell_level;

  double global = bmo_global(ps, max_order);
  est.global_term_squared = global;

  double best = global;
  BmoCandidate cand;

  // Dyadic boxes with every coordinate level in [0, cell_level]: exactly the
  // boxes expressible as unions of search cells.  Order-major, then levels
  // and positions lexicographic; ties keep the earlier candidate.  A work
  // budget bounds the pass in high dimension; the ratio search still covers
  // the skipped boxes, only the candidate attribution coarsens.
  std::vector<std::vector<int>> box_levels;
  {
    std::vector<int> u(static_cast<std::size_t>(d), 0);
    while (true) {
      box_levels.push_back(u);
      int k = d - 1;
      while (k >= 0) {
        if (++u[static_cast<std::size_t>(k)] <= cell_level) break;
        u[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
    std::stable_sort(box_levels.begin(), box_levels.end(),
                     [](const std::vector<int>& l, const std::vector<int>& r) {
                       return level_order(l) < level_order(r);
                     });
  }

  double work_budget = 2e6;  // projected level-sum evaluations
  double work_done = 0.0;
  DyadicIndex box;
  for (const auto& lv : box_levels) {
    int order = level_order(lv);
    if (order == 0) continue;  // that box is the full cube, seeded above
    if (order > max_order) continue;  // no interval of admissible order fits
    double shifts = 1.0;
    for (int k = 1; k <= d; ++k) {
      shifts *= static_cast<double>(max_order - order + k) / static_cast<double>(k);
    }
    double work = std::ldexp(shifts, order);
    if (work_done + work > work_budget) break;
    work_done += work;
    box.levels = lv;
    box.positions.assign(static_cast<std::size_t>(d), 0);
    while (true) {
      double val = bmo_dyadic_box(ps, box, max_order);
      if (val > best) {
        best = val;
        cand.kind = BmoCandidate::Kind::DyadicBox;
        cand.box = box;
        cand.cells.clear();
      }
      int k = d - 1;
      while (k >= 0) {
        if (++box.positions[static_cast<std::size_t>(k)] <
            (std::int64_t{1} << lv[static_cast<std::size_t>(k)])) {
          break;
        }
        box.positions[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }

  auto un = bmo_union_search(ps, cell_level, max_order);
  if (un.squared > best) {
    best = un.squared;
    cand.kind = BmoCandidate::Kind::CellUnion;
    cand.box = DyadicIndex{};
    cand.cells = un.cells;
  }

  est.squared = best;
  est.value = std::sqrt(best);
  est.candidate = std::move(cand);
  est.tail_bound = tail_bound(ps, max_order);
  return est;
}

}  // namespace disclab

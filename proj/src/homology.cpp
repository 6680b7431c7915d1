#include <atlas/homology.hpp>

#include <atlas/error.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>

namespace atlas::homology {

namespace {

using Entry = std::pair<std::uint32_t, std::int64_t>;  // (row, coefficient), rows ascending
using Column = std::vector<Entry>;

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

// col -= mult * p
void axpy(Column& col, std::int64_t mult, const Column& p, Column& scratch) {
  scratch.clear();
  std::size_t a = 0, b = 0;
  while (a < col.size() || b < p.size()) {
    if (b == p.size() || (a < col.size() && col[a].first < p[b].first)) {
      scratch.push_back(col[a++]);
    } else if (a == col.size() || p[b].first < col[a].first) {
      scratch.emplace_back(p[b].first, checked_sub(0, checked_mul(mult, p[b].second)));
      ++b;
    } else {
      const std::int64_t v = checked_sub(col[a].second, checked_mul(mult, p[b].second));
      if (v != 0) scratch.emplace_back(col[a].first, v);
      ++a;
      ++b;
    }
  }
  col.swap(scratch);
}

bool is_unit(std::int64_t v) { return v == 1 || v == -1; }

struct Nondegenerate {
  std::vector<std::vector<std::int64_t>> index;  // cell -> position, -1 if degenerate
  std::vector<std::vector<simplicial::Cell>> cells;
};

Nondegenerate nondegenerate(const simplicial::TruncatedSSet& s, std::size_t top) {
  Nondegenerate nd;
  nd.index.resize(top + 1);
  nd.cells.resize(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    nd.index[n].assign(s.count(n), -1);
    for (simplicial::Cell x = 0; x < s.count(n); ++x)
      if (!s.is_degenerate(n, x)) {
        nd.index[n][x] = static_cast<std::int64_t>(nd.cells[n].size());
        nd.cells[n].push_back(x);
      }
  }
  return nd;
}

Column boundary(const simplicial::TruncatedSSet& s, const Nondegenerate& nd, std::size_t n, simplicial::Cell x) {
  Column col;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::int64_t row = nd.index[n - 1][s.face(n, i, x)];
    if (row < 0) continue;
    col.emplace_back(static_cast<std::uint32_t>(row), (i % 2 == 0) ? 1 : -1);
  }
  std::sort(col.begin(), col.end());
  Column merged;
  for (const auto& e : col) {
    if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
    else merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  return merged;
}

struct Rank {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

Rank dense_rank(const std::vector<Column>& cols, std::size_t rows) {
  std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) m[r][c] = v;
  Rank out;
  for (auto& f : invariant_factors(std::move(m))) {
    ++out.rank;
    if (f != 1) out.torsion.push_back(std::move(f));
  }
  return out;
}

// Rank and torsion of the boundary out of level n. `kernel` is the rank of
// the cycles in level n - 1: once unit pivots alone span that many
// dimensions, their span is saturated and equals the cycles, so the image is
// the whole kernel and the quotient is free of torsion.
Rank sparse_rank(const simplicial::TruncatedSSet& s, const Nondegenerate& nd, std::size_t n, std::size_t kernel) {
  Rank out;
  if (kernel == 0) return out;
  const std::size_t rows = nd.cells[n - 1].size();
  std::vector<std::int64_t> pivot_of(rows, -1);
  std::vector<Column> store;
  std::vector<Column> hard;
  Column scratch;

  const auto reduce_low = [&](Column& col) {
    while (!col.empty()) {
      const std::int64_t p = pivot_of[col.back().first];
      if (p < 0) return;
      const Column& pc = store[static_cast<std::size_t>(p)];
      axpy(col, checked_mul(col.back().second, pc.back().second), pc, scratch);
    }
  };
  const auto add_pivot = [&](Column col) {
    pivot_of[col.back().first] = static_cast<std::int64_t>(store.size());
    store.push_back(std::move(col));
  };

  for (simplicial::Cell x : nd.cells[n]) {
    Column col = boundary(s, nd, n, x);
    reduce_low(col);
    if (col.empty()) continue;
    if (!is_unit(col.back().second)) {
      hard.push_back(std::move(col));
      continue;
    }
    add_pivot(std::move(col));
    if (store.size() == kernel) {
      out.rank = kernel;
      return out;
    }
  }

  // Columns set aside may reduce further against later pivots.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& col : hard) {
      if (col.empty()) continue;
      reduce_low(col);
      if (!col.empty() && is_unit(col.back().second)) {
        add_pivot(std::move(col));
        col.clear();
        changed = true;
      }
    }
  }
  std::erase_if(hard, [](const Column& c) { return c.empty(); });

  // Clear every pivot row from the remaining columns; what is left lives on
  // non-pivot rows and contributes its own Smith form.
  for (auto& col : hard)
    for (;;) {
      auto it = std::find_if(col.rbegin(), col.rend(), [&](const Entry& e) { return pivot_of[e.first] >= 0; });
      if (it == col.rend()) break;
      const Column& pc = store[static_cast<std::size_t>(pivot_of[it->first])];
      axpy(col, checked_mul(it->second, pc.back().second), pc, scratch);
    }
  std::vector<std::uint32_t> used;
  for (const auto& col : hard)
    for (const auto& e : col) used.push_back(e.first);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& col : hard)
    for (auto& e : col)
      e.first = static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), e.first) - used.begin());
  Rank rest = dense_rank(hard, used.size());
  out.rank = store.size() + rest.rank;
  out.torsion = std::move(rest.torsion);
  return out;
}

Rank boundary_rank(const simplicial::TruncatedSSet& s, const Nondegenerate& nd, std::size_t n, std::size_t kernel) {
  try {
    return sparse_rank(s, nd, n, kernel);
  } catch (const Overflow&) {
    std::vector<Column> cols;
    for (simplicial::Cell x : nd.cells[n]) cols.push_back(boundary(s, nd, n, x));
    return dense_rank(cols, nd.cells[n - 1].size());
  }
}

}  // namespace

std::vector<Integer> invariant_factors(std::vector<std::vector<Integer>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {i, j};
      if (!best) return diag;
      std::swap(a[t], a[best->first]);
      for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][best->second]);

      bool remainder = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        remainder = remainder || a[i][t] != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        remainder = remainder || a[t][j] != 0;
      }
      if (remainder) continue;
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < rows && !bad; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[*bad][j];
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

std::vector<Group> homology(const simplicial::TruncatedSSet& s, std::size_t maxdeg) {
  if (maxdeg + 1 > s.truncation())
    throw InvalidInput("homology: degree " + std::to_string(maxdeg) + " needs truncation at least " +
                       std::to_string(maxdeg + 1));
  const Nondegenerate nd = nondegenerate(s, maxdeg + 1);
  std::vector<Group> out;
  std::size_t rank_in = 0;  // rank of the boundary into the current degree's source
  for (std::size_t k = 0; k <= maxdeg; ++k) {
    const std::size_t cycles = nd.cells[k].size() - rank_in;
    Rank next = boundary_rank(s, nd, k + 1, cycles);
    out.push_back({cycles - next.rank, std::move(next.torsion)});
    rank_in = next.rank;
  }
  return out;
}

}  // namespace atlas::homology

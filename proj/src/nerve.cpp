#include <atlas/nerve.hpp>

#include <algorithm>
#include <functional>

namespace atlas::nerve {

namespace {

// Coface delta_i on subset masks of [n-1] -> [n]: insert a gap at bit i.
std::uint32_t coface(std::uint32_t m, std::size_t i) {
  const std::uint32_t low = m & ((std::uint32_t{1} << i) - 1);
  return low | ((m >> i) << (i + 1));
}

// Codegeneracy sigma_j on subset masks of [n+1] -> [n]: merge bits j, j+1.
std::uint32_t codegeneracy(std::uint32_t m, std::size_t j) {
  const std::uint32_t low = m & ((std::uint32_t{1} << (j + 1)) - 1);
  return low | ((m >> (j + 1)) << j);
}

}  // namespace

TruncatedNerve::TruncatedNerve(order::FinitePoset index, std::size_t truncation) : index_(std::move(index)) {
  if (index_.size() > 64) throw InvalidInput("nerve: index posets are limited to 64 elements");
  if (truncation > 6) throw InvalidInput("nerve: truncation above 6 is not supported");
  values_.resize(truncation + 1);
  std::vector<std::size_t> counts(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    const auto source = simplicial::simplex_subposet(n).poset();
    const std::vector<std::size_t> free(source.size(), order::kUnassigned);
    auto& out = values_[n];
    order::for_each_monotone_map(source, index_, free, [&](std::span<const std::size_t> v) {
      for (std::size_t a : v) out.push_back(static_cast<std::uint8_t>(a));
      return true;
    });
    counts[n] = out.size() / width(n);
  }

  std::vector<simplicial::Level> levels(truncation + 1);
  std::vector<std::uint8_t> key;
  for (std::size_t n = 0; n <= truncation; ++n) {
    auto& lv = levels[n];
    lv.count = counts[n];
    const std::size_t w = width(n);
    if (n > 0) {
      const std::size_t wl = width(n - 1);
      key.resize(wl);
      lv.faces.assign(n + 1, std::vector<Cell>(counts[n]));
      for (std::size_t i = 0; i <= n; ++i)
        for (Cell x = 0; x < counts[n]; ++x) {
          const std::uint8_t* v = values_[n].data() + x * w;
          for (std::size_t k = 0; k < wl; ++k) key[k] = v[w - coface(static_cast<std::uint32_t>(wl - k), i)];
          const auto y = find(n - 1, key);
          if (!y) throw InvariantViolation("nerve: face of a simplex is missing from the level below");
          lv.faces[i][x] = *y;
        }
    }
    if (n < truncation) {
      const std::size_t wu = width(n + 1);
      key.resize(wu);
      lv.degeneracies.assign(n + 1, std::vector<Cell>(counts[n]));
      for (std::size_t j = 0; j <= n; ++j)
        for (Cell x = 0; x < counts[n]; ++x) {
          const std::uint8_t* v = values_[n].data() + x * w;
          for (std::size_t k = 0; k < wu; ++k) key[k] = v[w - codegeneracy(static_cast<std::uint32_t>(wu - k), j)];
          const auto y = find(n + 1, key);
          if (!y) throw InvariantViolation("nerve: degeneracy of a simplex is missing from the level above");
          lv.degeneracies[j][x] = *y;
        }
    }
  }
  sset_ = simplicial::TruncatedSSet(truncation, std::move(levels));
}

std::optional<Cell> TruncatedNerve::find(std::size_t n, std::span<const std::uint8_t> key) const {
  const std::size_t w = width(n);
  if (key.size() != w) return std::nullopt;
  std::size_t lo = 0, hi = values_[n].size() / w;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const std::uint8_t* v = values_[n].data() + mid * w;
    if (std::lexicographical_compare(v, v + w, key.begin(), key.end())) lo = mid + 1;
    else hi = mid;
  }
  if (lo * w < values_[n].size() && std::equal(key.begin(), key.end(), values_[n].begin() + static_cast<std::ptrdiff_t>(lo * w)))
    return static_cast<Cell>(lo);
  return std::nullopt;
}

std::string TruncatedNerve::describe(std::size_t n, Cell x) const {
  const auto v = values(n, x);
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += simplicial::subset_name(static_cast<std::uint32_t>(width(n) - k)) + "=" + index_.id(v[k]);
  }
  return out;
}

TruncatedNerve nerve_truncated(const order::FinitePoset& index, std::size_t truncation) {
  return TruncatedNerve(index, truncation);
}

std::size_t counit_eval(const TruncatedNerve& nerve, std::size_t n, Cell x) { return nerve.counit(n, x); }

hypercover::LabeledSSet refine_diagram(const lifting::OpenDiagram& d, const TruncatedNerve& nerve) {
  if (!(nerve.index() == d.index())) throw InvalidInput("refinement: nerve built over a different index");
  std::vector<std::vector<PointSet>> labels(nerve.truncation() + 1);
  for (std::size_t n = 0; n <= nerve.truncation(); ++n) {
    labels[n].resize(nerve.sset().count(n));
    for (Cell x = 0; x < labels[n].size(); ++x) labels[n][x] = d.u(nerve.counit(n, x));
  }
  return hypercover::LabeledSSet(d.frame(), nerve.sset(), std::move(labels), d.target());
}

hypercover::LabeledSSet refine_diagram(const lifting::OpenDiagram& d, std::size_t truncation) {
  return refine_diagram(d, TruncatedNerve(d.index(), truncation));
}

// --- transpose ---------------------------------------------------------------

namespace {

std::vector<std::size_t> level_offsets(const simplicial::TruncatedSSet& k) {
  std::vector<std::size_t> off(k.truncation() + 2, 0);
  for (std::size_t n = 0; n <= k.truncation(); ++n) off[n + 1] = off[n] + k.count(n);
  return off;
}

// Pairs (a, b) with b = d_i a or b = s_j a, on flattened cells.
std::vector<std::pair<std::size_t, std::size_t>> generating_pairs(const simplicial::TruncatedSSet& k,
                                                                  const std::vector<std::size_t>& off) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t n = 0; n <= k.truncation(); ++n)
    for (Cell x = 0; x < k.count(n); ++x) {
      for (std::size_t i = 0; n > 0 && i <= n; ++i) pairs.emplace_back(off[n] + x, off[n - 1] + k.face(n, i, x));
      for (std::size_t j = 0; n < k.truncation() && j <= n; ++j)
        pairs.emplace_back(off[n] + x, off[n + 1] + k.degeneracy(n, j, x));
    }
  return pairs;
}

void check_fits(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve) {
  if (k.truncation() > nerve.truncation()) throw InvalidInput("transpose: K is truncated above the nerve");
}

}  // namespace

order::FinitePreorder simplex_preorder(const simplicial::TruncatedSSet& k) {
  const auto off = level_offsets(k);
  std::vector<std::string> ids;
  for (std::size_t n = 0; n <= k.truncation(); ++n)
    for (Cell x = 0; x < k.count(n); ++x) ids.push_back(std::to_string(n) + ":" + std::to_string(x));
  const auto pairs = generating_pairs(k, off);
  return order::FinitePreorder::generated(std::move(ids), pairs);
}

Assignment transpose_to_assignment(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve,
                                   const SimplicialMap& map) {
  check_fits(k, nerve);
  const auto& s = nerve.sset();
  if (map.size() != k.truncation() + 1) throw InvalidInput("transpose: map has the wrong number of levels");
  for (std::size_t n = 0; n <= k.truncation(); ++n) {
    if (map[n].size() != k.count(n)) throw InvalidInput("transpose: map is not total");
    for (Cell y : map[n])
      if (y >= s.count(n)) throw InvalidInput("transpose: map value out of range");
  }
  Assignment out(k.truncation() + 1);
  for (std::size_t n = 0; n <= k.truncation(); ++n)
    for (Cell x = 0; x < k.count(n); ++x) {
      for (std::size_t i = 0; n > 0 && i <= n; ++i)
        if (map[n - 1][k.face(n, i, x)] != s.face(n, i, map[n][x]))
          throw InvalidInput("transpose: map does not commute with faces");
      for (std::size_t j = 0; n < k.truncation() && j <= n; ++j)
        if (map[n + 1][k.degeneracy(n, j, x)] != s.degeneracy(n, j, map[n][x]))
          throw InvalidInput("transpose: map does not commute with degeneracies");
      out[n].push_back(nerve.counit(n, map[n][x]));
    }
  return out;
}

SimplicialMap transpose_to_map(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve,
                               const Assignment& assignment) {
  check_fits(k, nerve);
  const auto& index = nerve.index();
  if (assignment.size() != k.truncation() + 1) throw InvalidInput("transpose: assignment has the wrong number of levels");
  for (std::size_t n = 0; n <= k.truncation(); ++n) {
    if (assignment[n].size() != k.count(n)) throw InvalidInput("transpose: assignment is not total");
    for (std::size_t v : assignment[n])
      if (v >= index.size()) throw InvalidInput("transpose: assignment value out of range");
  }
  const auto off = level_offsets(k);
  std::vector<std::size_t> flat;
  for (const auto& lv : assignment) flat.insert(flat.end(), lv.begin(), lv.end());
  for (const auto& [a, b] : generating_pairs(k, off))
    if (!index.leq(flat[a], flat[b])) throw InvalidInput("transpose: assignment is not monotone");

  SimplicialMap out(k.truncation() + 1);
  std::vector<std::uint8_t> key;
  for (std::size_t n = 0; n <= k.truncation(); ++n) {
    const std::size_t w = TruncatedNerve::width(n);
    key.resize(w);
    for (Cell x = 0; x < k.count(n); ++x) {
      for (std::size_t e = 0; e < w; ++e) {
        const auto t = static_cast<std::uint32_t>(w - e);
        // The T-face of x: delete the vertices outside T, largest first.
        Cell y = x;
        std::size_t level = n;
        for (std::size_t v = n + 1; v-- > 0;)
          if (!((t >> v) & 1U)) y = k.face(level--, v, y);
        key[e] = static_cast<std::uint8_t>(assignment[level][y]);
      }
      const auto c = nerve.find(n, key);
      if (!c) throw InvariantViolation("transpose: monotone assignment produced a non-simplex");
      out[n].push_back(*c);
    }
  }
  return out;
}

std::vector<Assignment> monotone_assignments(const simplicial::TruncatedSSet& k, const order::FinitePoset& index) {
  const auto pre = simplex_preorder(k);
  const auto off = level_offsets(k);
  std::vector<Assignment> out;
  const std::vector<std::size_t> free(pre.size(), order::kUnassigned);
  order::for_each_monotone_map(pre, index, free, [&](std::span<const std::size_t> flat) {
    Assignment a(k.truncation() + 1);
    for (std::size_t n = 0; n <= k.truncation(); ++n)
      a[n].assign(flat.begin() + static_cast<std::ptrdiff_t>(off[n]), flat.begin() + static_cast<std::ptrdiff_t>(off[n + 1]));
    out.push_back(std::move(a));
    return true;
  });
  return out;
}

std::vector<SimplicialMap> simplicial_maps(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve) {
  check_fits(k, nerve);
  const auto& s = nerve.sset();
  // Degeneracy constraints: x = s_j z forces map(x) = s_j map(z).
  std::vector<std::vector<std::vector<std::pair<Cell, std::size_t>>>> sources(k.truncation() + 1);
  for (std::size_t n = 0; n <= k.truncation(); ++n) sources[n].resize(k.count(n));
  for (std::size_t n = 0; n < k.truncation(); ++n)
    for (Cell z = 0; z < k.count(n); ++z)
      for (std::size_t j = 0; j <= n; ++j) sources[n + 1][k.degeneracy(n, j, z)].emplace_back(z, j);

  std::vector<SimplicialMap> out;
  SimplicialMap cur(k.truncation() + 1);
  for (std::size_t n = 0; n <= k.truncation(); ++n) cur[n].assign(k.count(n), 0);
  std::function<void(std::size_t, Cell)> rec = [&](std::size_t n, Cell x) {
    if (n > k.truncation()) {
      out.push_back(cur);
      return;
    }
    if (x == k.count(n)) {
      rec(n + 1, 0);
      return;
    }
    for (Cell y = 0; y < s.count(n); ++y) {
      bool ok = true;
      for (std::size_t i = 0; n > 0 && i <= n && ok; ++i) ok = s.face(n, i, y) == cur[n - 1][k.face(n, i, x)];
      for (const auto& [z, j] : sources[n][x])
        if (ok) ok = s.degeneracy(n - 1, j, cur[n - 1][z]) == y;
      if (!ok) continue;
      cur[n][x] = y;
      rec(n, x + 1);
    }
  };
  rec(0, 0);
  return out;
}

// --- slices ---------------------------------------------------------------------

order::FinitePoset under(const order::FinitePoset& index, std::size_t i) {
  if (i >= index.size()) throw InvalidInput("under: element out of range");
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < index.size(); ++j)
    if (index.leq(i, j)) keep.push_back(j);
  std::vector<std::string> ids;
  for (std::size_t j : keep) ids.push_back(index.id(j));
  return order::FinitePoset(std::move(ids), [&](std::size_t a, std::size_t b) { return index.leq(keep[a], keep[b]); });
}

bool slice_refinement_check(std::size_t i, const order::FinitePoset& index, std::size_t truncation) {
  return slice_refinement_check(i, TruncatedNerve(index, truncation));
}

bool slice_refinement_check(std::size_t i, const TruncatedNerve& big) {
  const auto& index = big.index();
  const std::size_t truncation = big.truncation();
  if (i >= index.size()) throw InvalidInput("slice: element out of range");
  const auto slice = under(index, i);
  const TruncatedNerve small(slice, truncation);
  std::vector<std::size_t> emb;
  for (std::size_t a = 0; a < slice.size(); ++a) emb.push_back(index.index_of(slice.id(a)));

  std::vector<std::vector<Cell>> image(truncation + 1);
  std::vector<std::uint8_t> key;
  for (std::size_t n = 0; n <= truncation; ++n) {
    const std::size_t w = TruncatedNerve::width(n);
    key.resize(w);
    std::vector<std::uint8_t> hit(big.sset().count(n), 0);
    for (Cell y = 0; y < small.sset().count(n); ++y) {
      const auto v = small.values(n, y);
      for (std::size_t e = 0; e < w; ++e) key[e] = static_cast<std::uint8_t>(emb[v[e]]);
      const auto x = big.find(n, key);
      if (!x || hit[*x] || emb[small.counit(n, y)] != big.counit(n, *x)) return false;
      hit[*x] = 1;
      image[n].push_back(*x);
    }
    for (Cell x = 0; x < big.sset().count(n); ++x)
      if ((hit[x] != 0) != index.leq(i, big.counit(n, x))) return false;
  }
  for (std::size_t n = 0; n <= truncation; ++n)
    for (Cell y = 0; y < small.sset().count(n); ++y) {
      for (std::size_t f = 0; n > 0 && f <= n; ++f)
        if (image[n - 1][small.sset().face(n, f, y)] != big.sset().face(n, f, image[n][y])) return false;
      for (std::size_t j = 0; n < truncation && j <= n; ++j)
        if (image[n + 1][small.sset().degeneracy(n, j, y)] != big.sset().degeneracy(n, j, image[n][y])) return false;
    }
  return true;
}

}  // namespace atlas::nerve

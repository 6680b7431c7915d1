#include <atlas/simplicial.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

namespace atlas::simplicial {

namespace {

void check_shapes(std::size_t truncation, const std::vector<Level>& levels, bool with_degeneracies) {
  if (levels.size() != truncation + 1) throw InvalidInput("expected one level per dimension 0..N");
  for (std::size_t n = 0; n <= truncation; ++n) {
    const Level& lv = levels[n];
    if (!lv.names.empty() && lv.names.size() != lv.count)
      throw InvalidInput("level " + std::to_string(n) + ": name list has the wrong length");
    if (!lv.names.empty()) {
      std::vector<std::string> sorted = lv.names;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidInput("level " + std::to_string(n) + ": duplicate cell name");
    }
    const std::size_t expected_faces = n == 0 ? 0 : n + 1;
    if (lv.faces.size() != expected_faces)
      throw InvalidInput("level " + std::to_string(n) + ": expected " + std::to_string(expected_faces) + " face maps");
    for (const auto& f : lv.faces) {
      if (f.size() != lv.count) throw InvalidInput("level " + std::to_string(n) + ": face map is not total");
      for (Cell c : f)
        if (c >= levels[n - 1].count) throw InvalidInput("level " + std::to_string(n) + ": face out of range");
    }
    const std::size_t expected_degs = (with_degeneracies && n < truncation) ? n + 1 : 0;
    if (lv.degeneracies.size() != expected_degs)
      throw InvalidInput("level " + std::to_string(n) + ": expected " + std::to_string(expected_degs) +
                         " degeneracy maps");
    for (const auto& s : lv.degeneracies) {
      if (s.size() != lv.count) throw InvalidInput("level " + std::to_string(n) + ": degeneracy map is not total");
      for (Cell c : s)
        if (c >= levels[n + 1].count) throw InvalidInput("level " + std::to_string(n) + ": degeneracy out of range");
    }
  }
}

void check_face_identities(std::size_t truncation, const std::vector<Level>& levels) {
  for (std::size_t n = 2; n <= truncation; ++n)
    for (Cell x = 0; x < levels[n].count; ++x)
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          Cell lhs = levels[n - 1].faces[i][levels[n].faces[j][x]];
          Cell rhs = levels[n - 1].faces[j - 1][levels[n].faces[i][x]];
          if (lhs != rhs)
            throw InvalidInput("simplicial identity d_i d_j = d_{j-1} d_i fails at level " + std::to_string(n));
        }
}

std::string default_name(std::size_t n, Cell x) { return std::to_string(n) + ":" + std::to_string(x); }

}  // namespace

// --- TruncatedSSet ------------------------------------------------------------

TruncatedSSet::TruncatedSSet(std::size_t truncation, std::vector<Level> levels)
    : truncation_(truncation), levels_(std::move(levels)) {
  check_shapes(truncation_, levels_, true);
  validate();
  degenerate_.resize(truncation_ + 1);
  for (std::size_t n = 0; n <= truncation_; ++n) degenerate_[n].assign(levels_[n].count, 0);
  for (std::size_t n = 0; n < truncation_; ++n)
    for (const auto& s : levels_[n].degeneracies)
      for (Cell c : s) degenerate_[n + 1][c] = 1;
}

void TruncatedSSet::validate() const {
  check_face_identities(truncation_, levels_);
  const auto fail = [](const std::string& what, std::size_t n) {
    throw InvalidInput("simplicial identity " + what + " fails at level " + std::to_string(n));
  };
  for (std::size_t n = 0; n < truncation_; ++n) {
    const Level& lv = levels_[n];
    const Level& up = levels_[n + 1];
    for (Cell y = 0; y < lv.count; ++y)
      for (std::size_t j = 0; j <= n; ++j) {
        const Cell sy = lv.degeneracies[j][y];
        if (up.faces[j][sy] != y || up.faces[j + 1][sy] != y) fail("d_j s_j = d_{j+1} s_j = id", n + 1);
        for (std::size_t i = 0; i < j; ++i)
          if (up.faces[i][sy] != levels_[n - 1].degeneracies[j - 1][lv.faces[i][y]]) fail("d_i s_j = s_{j-1} d_i", n + 1);
        for (std::size_t i = j + 2; i <= n + 1; ++i)
          if (up.faces[i][sy] != levels_[n - 1].degeneracies[j][lv.faces[i - 1][y]]) fail("d_i s_j = s_j d_{i-1}", n + 1);
        if (n + 1 < truncation_)
          for (std::size_t i = 0; i <= j; ++i)
            if (up.degeneracies[i][sy] != up.degeneracies[j + 1][lv.degeneracies[i][y]])
              fail("s_i s_j = s_{j+1} s_i", n + 2);
      }
  }
}

std::size_t TruncatedSSet::total_cells() const {
  std::size_t total = 0;
  for (const auto& lv : levels_) total += lv.count;
  return total;
}

std::string TruncatedSSet::name(std::size_t n, Cell x) const {
  const auto& names = levels_[n].names;
  return names.empty() ? default_name(n, x) : names[x];
}

Cell TruncatedSSet::apply(std::size_t n, Cell x, std::span<const std::size_t> theta) const {
  const std::size_t m = theta.size() - 1;
  if (m > truncation_) throw InvalidInput("operator leaves the truncation");
  auto [iota, sigma] = image_factorization(theta);
  for (std::size_t v : theta)
    if (v > n) throw InvalidInput("operator does not land in [n]");
  // iota^*: delete missing vertices from the top down.
  Cell y = x;
  std::size_t level = n;
  for (std::size_t i = n + 1; i-- > 0;)
    if (!std::binary_search(iota.begin(), iota.end(), i)) y = face(level--, i, y);
  // sigma^*: peel off codegeneracies.
  std::function<Cell(Operator)> degenerate = [&](Operator s) -> Cell {
    for (std::size_t t = s.size() - 1; t-- > 0;)
      if (s[t] == s[t + 1]) {
        Operator rest = s;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t) + 1);
        const std::size_t below = rest.size() - 1;
        return degeneracy(below, t, degenerate(std::move(rest)));
      }
    return y;
  };
  return degenerate(std::move(sigma));
}

// --- TruncatedSemiSSet ----------------------------------------------------------

TruncatedSemiSSet::TruncatedSemiSSet(std::size_t truncation, std::vector<Level> levels)
    : truncation_(truncation), levels_(std::move(levels)) {
  check_shapes(truncation_, levels_, false);
  check_face_identities(truncation_, levels_);
}

std::string TruncatedSemiSSet::name(std::size_t n, Cell x) const {
  const auto& names = levels_[n].names;
  return names.empty() ? default_name(n, x) : names[x];
}

Cell TruncatedSemiSSet::apply_injective(std::size_t n, Cell x, std::span<const std::size_t> iota) const {
  if (!is_injective(iota)) throw InvalidInput("semisimplicial sets only act by injective operators");
  Cell y = x;
  std::size_t level = n;
  for (std::size_t i = n + 1; i-- > 0;)
    if (std::find(iota.begin(), iota.end(), i) == iota.end()) y = face(level--, i, y);
  return y;
}

// --- Eilenberg-Zilber -----------------------------------------------------------

EzDecomposition ez_decompose(const TruncatedSSet& s, std::size_t n, Cell x) {
  if (n > s.truncation() || x >= s.count(n)) throw InvalidInput("simplex out of range");
  std::optional<EzDecomposition> found;
  for (std::size_t j = 0; j + 1 <= n; ++j) {
    const Cell y = s.face(n, j, x);
    if (s.degeneracy(n - 1, j, y) != x) continue;
    EzDecomposition inner = ez_decompose(s, n - 1, y);
    // x = s_j y = (eta . sigma_j)^* core
    Operator surj(n + 1);
    for (std::size_t u = 0; u <= n; ++u) surj[u] = inner.surjection[u <= j ? u : u - 1];
    EzDecomposition candidate{inner.level, inner.core, std::move(surj)};
    if (found && !(*found == candidate))
      throw InvariantViolation("degenerate simplex " + s.name(n, x) + " has two distinct Eilenberg-Zilber decompositions");
    found = std::move(candidate);
  }
  if (found) return *found;
  if (s.is_degenerate(n, x))
    throw InvariantViolation("simplex " + s.name(n, x) + " is a degeneracy but no s_j d_j recovers it");
  Operator id(n + 1);
  for (std::size_t u = 0; u <= n; ++u) id[u] = u;
  return {n, x, std::move(id)};
}

// --- subset posets --------------------------------------------------------------

std::string subset_name(std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t b = mask; b != 0; b &= b - 1) {
    if (!first) out += ',';
    out += std::to_string(std::countr_zero(b));
    first = false;
  }
  return out + "}";
}

order::FinitePoset SubsetPosetModel::poset() const {
  std::vector<std::string> ids;
  for (std::uint32_t s : subsets) ids.push_back(subset_name(s));
  return order::FinitePoset(std::move(ids), [this](std::size_t a, std::size_t b) {
    return (subsets[a] & subsets[b]) == subsets[b];
  });
}

std::vector<std::size_t> SubsetPosetModel::facet_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < facet.size(); ++i)
    if (facet[i]) out.push_back(i);
  return out;
}

namespace {
SubsetPosetModel subsets_of(std::size_t n, bool proper) {
  if (n > 20) throw InvalidInput("simplex dimension too large");
  SubsetPosetModel model;
  model.n = n;
  const std::uint32_t full = (std::uint32_t{1} << (n + 1)) - 1;
  for (std::uint32_t m = full; m >= 1; --m) {
    if (proper && m == full) continue;
    model.subsets.push_back(m);
    model.facet.push_back(static_cast<std::size_t>(std::popcount(m)) == n);
  }
  return model;
}
}  // namespace

SubsetPosetModel simplex_subposet(std::size_t n) { return subsets_of(n, false); }
SubsetPosetModel boundary_subposet(std::size_t n) { return subsets_of(n, true); }

// --- boundary tuples ------------------------------------------------------------

bool for_each_boundary_tuple(const TruncatedSSet& s, std::size_t n,
                             const std::function<bool(std::span<const Cell>)>& visit) {
  if (n == 0) return visit({});
  if (n > s.truncation()) throw InvalidInput("boundary tuples requested above the truncation");
  const std::size_t lower = n - 1;
  const std::size_t count = s.count(lower);
  std::vector<std::vector<Cell>> by_d0;
  if (lower >= 1) {
    by_d0.resize(s.count(lower - 1));
    for (Cell c = 0; c < count; ++c) by_d0[s.face(lower, 0, c)].push_back(c);
  }
  std::vector<Cell> tuple(n + 1);
  std::vector<Cell> everything(count);
  for (Cell c = 0; c < count; ++c) everything[c] = c;

  std::function<bool(std::size_t)> extend = [&](std::size_t j) -> bool {
    if (j == n + 1) return visit(tuple);
    const std::vector<Cell>& pool = (j == 0 || lower == 0) ? everything : by_d0[s.face(lower, j - 1, tuple[0])];
    for (Cell c : pool) {
      bool ok = true;
      if (lower >= 1)
        for (std::size_t i = 0; i < j && ok; ++i) ok = s.face(lower, i, c) == s.face(lower, j - 1, tuple[i]);
      if (!ok) continue;
      tuple[j] = c;
      if (!extend(j + 1)) return false;
    }
    return true;
  };
  return extend(0);
}

std::vector<std::vector<Cell>> boundary_tuples(const TruncatedSSet& s, std::size_t n) {
  std::vector<std::vector<Cell>> out;
  for_each_boundary_tuple(s, n, [&](std::span<const Cell> t) {
    out.emplace_back(t.begin(), t.end());
    return true;
  });
  return out;
}

// --- operators ------------------------------------------------------------------

std::vector<Operator> monotone_operators(std::size_t m, std::size_t n) {
  std::vector<Operator> out;
  Operator cur(m + 1, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t lo) {
    if (pos == m + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = lo; v <= n; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

bool is_injective(std::span<const std::size_t> theta) {
  for (std::size_t u = 0; u + 1 < theta.size(); ++u)
    if (theta[u] == theta[u + 1]) return false;
  return true;
}

bool is_surjective(std::span<const std::size_t> theta, std::size_t n) {
  if (theta.empty() || theta.front() != 0 || theta.back() != n) return false;
  for (std::size_t u = 0; u + 1 < theta.size(); ++u)
    if (theta[u + 1] > theta[u] + 1) return false;
  return true;
}

std::vector<Operator> surjections(std::size_t m, std::size_t k) {
  std::vector<Operator> out;
  for (auto& op : monotone_operators(m, k))
    if (is_surjective(op, k)) out.push_back(std::move(op));
  return out;
}

std::pair<Operator, Operator> image_factorization(std::span<const std::size_t> theta) {
  Operator iota(theta.begin(), theta.end());
  iota.erase(std::unique(iota.begin(), iota.end()), iota.end());
  Operator sigma(theta.size());
  for (std::size_t u = 0; u < theta.size(); ++u)
    sigma[u] = static_cast<std::size_t>(std::lower_bound(iota.begin(), iota.end(), theta[u]) - iota.begin());
  return {std::move(iota), std::move(sigma)};
}

Operator compose(std::span<const std::size_t> outer, std::span<const std::size_t> inner) {
  Operator out(inner.size());
  for (std::size_t u = 0; u < inner.size(); ++u) out[u] = outer[inner[u]];
  return out;
}

std::string operator_name(std::span<const std::size_t> theta) {
  const bool wide = std::any_of(theta.begin(), theta.end(), [](std::size_t v) { return v >= 10; });
  std::string out;
  for (std::size_t u = 0; u < theta.size(); ++u) {
    if (wide && u > 0) out += ',';
    out += std::to_string(theta[u]);
  }
  return out;
}

// --- standard shapes --------------------------------------------------------------

namespace {

TruncatedSSet simplex_like(std::size_t n, std::size_t truncation, bool boundary) {
  std::vector<std::vector<Operator>> cells(truncation + 1);
  std::vector<std::map<Operator, Cell>> index(truncation + 1);
  for (std::size_t k = 0; k <= truncation; ++k)
    for (auto& op : monotone_operators(k, n)) {
      if (boundary && is_surjective(op, n)) continue;
      index[k].emplace(op, static_cast<Cell>(cells[k].size()));
      cells[k].push_back(std::move(op));
    }
  std::vector<Level> levels(truncation + 1);
  for (std::size_t k = 0; k <= truncation; ++k) {
    Level& lv = levels[k];
    lv.count = cells[k].size();
    for (const auto& op : cells[k]) lv.names.push_back(operator_name(op));
    if (k > 0)
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<Cell> f;
        for (const auto& op : cells[k]) {
          Operator face = op;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          f.push_back(index[k - 1].at(face));
        }
        lv.faces.push_back(std::move(f));
      }
    if (k < truncation)
      for (std::size_t j = 0; j <= k; ++j) {
        std::vector<Cell> s;
        for (const auto& op : cells[k]) {
          Operator deg = op;
          deg.insert(deg.begin() + static_cast<std::ptrdiff_t>(j), op[j]);
          s.push_back(index[k + 1].at(deg));
        }
        lv.degeneracies.push_back(std::move(s));
      }
  }
  return TruncatedSSet(truncation, std::move(levels));
}

TruncatedSemiSSet semi_like(std::size_t n, bool boundary) {
  if (boundary && n == 0) {
    std::vector<Level> levels(1);
    return TruncatedSemiSSet(0, std::move(levels));
  }
  const std::size_t top = boundary ? n - 1 : n;
  std::vector<std::vector<Operator>> cells(top + 1);
  std::vector<std::map<Operator, Cell>> index(top + 1);
  for (std::size_t k = 0; k <= top; ++k)
    for (auto& op : monotone_operators(k, n))
      if (is_injective(op)) {
        index[k].emplace(op, static_cast<Cell>(cells[k].size()));
        cells[k].push_back(std::move(op));
      }
  std::vector<Level> levels(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    Level& lv = levels[k];
    lv.count = cells[k].size();
    for (const auto& op : cells[k]) lv.names.push_back(operator_name(op));
    if (k > 0)
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<Cell> f;
        for (const auto& op : cells[k]) {
          Operator face = op;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          f.push_back(index[k - 1].at(face));
        }
        lv.faces.push_back(std::move(f));
      }
  }
  return TruncatedSemiSSet(top, std::move(levels));
}

}  // namespace

TruncatedSSet standard_simplex(std::size_t n, std::size_t truncation) { return simplex_like(n, truncation, false); }
TruncatedSSet simplex_boundary(std::size_t n, std::size_t truncation) { return simplex_like(n, truncation, true); }
TruncatedSemiSSet semi_simplex(std::size_t n) { return semi_like(n, false); }
TruncatedSemiSSet semi_boundary(std::size_t n) { return semi_like(n, true); }

// --- envelope -----------------------------------------------------------------

TruncatedSSet simplicial_envelope(const TruncatedSemiSSet& g, std::size_t truncation) {
  using Key = std::tuple<std::size_t, Cell, Operator>;
  std::vector<std::vector<Key>> cells(truncation + 1);
  std::vector<std::map<Key, Cell>> index(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n)
    for (std::size_t k = 0; k <= std::min(n, g.truncation()); ++k) {
      const auto surjs = surjections(n, k);
      for (Cell y = 0; y < g.count(k); ++y)
        for (const auto& s : surjs) {
          Key key{k, y, s};
          index[n].emplace(key, static_cast<Cell>(cells[n].size()));
          cells[n].push_back(std::move(key));
        }
    }
  std::vector<Level> levels(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    Level& lv = levels[n];
    lv.count = cells[n].size();
    for (const auto& [k, y, s] : cells[n]) {
      const bool identity = k == n;
      lv.names.push_back(identity ? g.name(k, y) : g.name(k, y) + "." + operator_name(s));
    }
    if (n > 0)
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<Cell> f;
        for (const auto& [k, y, s] : cells[n]) {
          Operator theta = s;
          theta.erase(theta.begin() + static_cast<std::ptrdiff_t>(i));
          auto [iota, sigma] = image_factorization(theta);
          const Cell z = g.apply_injective(k, y, iota);
          f.push_back(index[n - 1].at(Key{iota.size() - 1, z, sigma}));
        }
        lv.faces.push_back(std::move(f));
      }
    if (n < truncation)
      for (std::size_t j = 0; j <= n; ++j) {
        std::vector<Cell> d;
        for (const auto& [k, y, s] : cells[n]) {
          Operator theta = s;
          theta.insert(theta.begin() + static_cast<std::ptrdiff_t>(j), s[j]);
          d.push_back(index[n + 1].at(Key{k, y, theta}));
        }
        lv.degeneracies.push_back(std::move(d));
      }
  }
  return TruncatedSSet(truncation, std::move(levels));
}

// --- h_0 of simplex categories ------------------------------------------------------

order::FinitePreorder simplices_preorder(std::size_t n, std::size_t truncation, bool boundary_only) {
  std::vector<Operator> elements;
  for (std::size_t k = 0; k <= truncation; ++k)
    for (auto& op : monotone_operators(k, n))
      if (!boundary_only || !is_surjective(op, n)) elements.push_back(std::move(op));
  std::vector<std::vector<std::vector<Operator>>> thetas(truncation + 1,
                                                         std::vector<std::vector<Operator>>(truncation + 1));
  for (std::size_t m = 0; m <= truncation; ++m)
    for (std::size_t k = 0; k <= truncation; ++k) thetas[m][k] = monotone_operators(m, k);
  std::vector<std::string> ids;
  for (const auto& e : elements) ids.push_back(operator_name(e));
  // A morphism alpha -> beta in the category of simplices is theta with beta = alpha . theta.
  return order::FinitePreorder(std::move(ids), [&](std::size_t a, std::size_t b) {
    const Operator& alpha = elements[a];
    const Operator& beta = elements[b];
    for (const auto& theta : thetas[beta.size() - 1][alpha.size() - 1])
      if (compose(alpha, theta) == beta) return true;
    return false;
  });
}

}  // namespace atlas::simplicial

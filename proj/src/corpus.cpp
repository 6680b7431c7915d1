#include <atlas/corpus.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace atlas::corpus {

namespace {

using order::FinitePoset;
using order::FinitePreorder;
using simplicial::Cell;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Sorted (up, down) cardinalities; equal for isomorphic preorders.
std::vector<std::pair<int, int>> signature(const FinitePreorder& p) {
  std::vector<std::pair<int, int>> sig;
  for (std::size_t x = 0; x < p.size(); ++x)
    sig.emplace_back(std::popcount(p.up_mask(x)), std::popcount(p.down_mask(x)));
  std::sort(sig.begin(), sig.end());
  return sig;
}

// Keeps the first member of each isomorphism class.
template <typename P>
class IsoClasses {
 public:
  bool insert(const P& p) {
    auto& bucket = buckets_[{p.size(), signature(p)}];
    for (std::size_t k : bucket)
      if (order::find_isomorphism(reps_[k], p)) return false;
    bucket.push_back(reps_.size());
    reps_.push_back(p);
    return true;
  }
  std::vector<P> take() { return std::move(reps_); }

 private:
  std::map<std::pair<std::size_t, std::vector<std::pair<int, int>>>, std::vector<std::size_t>> buckets_;
  std::vector<P> reps_;
};

std::vector<PointSet> inhabited_opens(const order::FiniteFrame& frame) {
  std::vector<PointSet> out;
  for (PointSet o : frame.opens())
    if (!o.empty()) out.push_back(o);
  return out;
}

std::vector<PointSet> principal_upsets(const FinitePreorder& p) {
  std::vector<PointSet> out;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const PointSet u(p.up_mask(x));
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  }
  return out;
}

// Closure under inhabited pairwise intersections, deduplicated.
std::vector<PointSet> intersection_closure(std::vector<PointSet> family) {
  std::set<PointSet> seen(family.begin(), family.end());
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      const PointSet m = family[a] & family[b];
      if (!m.empty() && seen.insert(m).second) family.push_back(m);
    }
  return {seen.begin(), seen.end()};
}

PointSet union_of(const std::vector<PointSet>& family) {
  PointSet u;
  for (PointSet o : family) u |= o;
  return u;
}

}  // namespace

std::vector<std::string> point_names(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
  return ids;
}

std::vector<FinitePreorder> labeled_preorders(std::size_t n) {
  if (n > 5) throw InvalidInput("labeled preorders: at most 5 points");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::vector<FinitePreorder> out;
  std::vector<std::uint8_t> rel(n * n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::fill(rel.begin(), rel.end(), 0);
    for (std::size_t a = 0; a < n; ++a) rel[a * n + a] = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) rel[pairs[k].first * n + pairs[k].second] = 1;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        if (rel[a * n + b])
          for (std::size_t c = 0; c < n; ++c)
            if (rel[b * n + c] && !rel[a * n + c]) {
              transitive = false;
              break;
            }
    if (transitive) out.emplace_back(point_names(n), [&](std::size_t a, std::size_t b) { return rel[a * n + b] != 0; });
  }
  return out;
}

std::vector<FinitePreorder> preorders_up_to_iso(std::size_t n) {
  IsoClasses<FinitePreorder> classes;
  for (std::size_t k = 0; k <= n; ++k)
    for (auto& p : labeled_preorders(k)) classes.insert(p);
  return classes.take();
}

order::FinitePreorder specialization(const order::FiniteFrame& frame) {
  return FinitePreorder(frame.points(), [&](std::size_t x, std::size_t y) {
    return std::all_of(frame.opens().begin(), frame.opens().end(),
                       [&](PointSet o) { return !o.contains(x) || o.contains(y); });
  });
}

std::size_t upset_count(const FinitePreorder& p) {
  if (p.size() > 24) throw InvalidInput("up-set count: at most 24 elements");
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << p.size()); ++s) {
    bool closed = true;
    for (std::uint64_t b = s; b != 0 && closed; b &= b - 1)
      closed = (p.up_mask(static_cast<std::size_t>(std::countr_zero(b))) & ~s) == 0;
    count += closed;
  }
  return count;
}

std::vector<FinitePoset> posets_up_to_iso(std::size_t n, std::optional<std::size_t> max_upsets) {
  // Every poset arises by adding a maximal element above a down-set.
  std::vector<FinitePoset> all{FinitePoset::discrete(0)};
  std::vector<FinitePoset> frontier = all;
  for (std::size_t k = 0; k < n && !frontier.empty(); ++k) {
    IsoClasses<FinitePoset> next;
    for (const auto& p : frontier)
      for (std::uint64_t d = 0; d < (std::uint64_t{1} << k); ++d) {
        bool down_closed = true;
        for (std::uint64_t b = d; b != 0 && down_closed; b &= b - 1)
          down_closed = (p.down_mask(static_cast<std::size_t>(std::countr_zero(b))) & ~d) == 0;
        if (!down_closed) continue;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i <= k; ++i) ids.push_back(std::to_string(i));
        FinitePoset q(std::move(ids), [&](std::size_t a, std::size_t b) {
          if (b == k) return a == k || ((d >> a) & 1U) != 0;
          return a != k && p.leq(a, b);
        });
        if (max_upsets && upset_count(q) > *max_upsets) continue;
        next.insert(q);
      }
    frontier = next.take();
    all.insert(all.end(), frontier.begin(), frontier.end());
  }
  return all;
}

lifting::OpenDiagram inclusion_diagram(const order::FiniteFrame& frame, const std::vector<PointSet>& opens,
                                       std::optional<PointSet> target) {
  std::vector<PointSet> distinct;
  for (PointSet o : opens)
    if (std::find(distinct.begin(), distinct.end(), o) == distinct.end()) distinct.push_back(o);
  std::vector<std::string> ids;
  for (PointSet o : distinct) ids.push_back(frame.describe(o));
  FinitePoset index(std::move(ids), [&](std::size_t a, std::size_t b) { return distinct[a].subset_of(distinct[b]); });
  return lifting::OpenDiagram(frame, std::move(index), std::move(distinct), target);
}

namespace {

// First pair of distinct proper opens with union the top, if any.
std::optional<std::pair<PointSet, PointSet>> two_cover(const order::FiniteFrame& frame) {
  const auto& opens = frame.opens();
  for (std::size_t a = 0; a < opens.size(); ++a)
    for (std::size_t b = a + 1; b < opens.size(); ++b)
      if (opens[a] != frame.top() && opens[b] != frame.top() && (opens[a] | opens[b]) == frame.top())
        return std::make_pair(opens[a], opens[b]);
  return std::nullopt;
}

lifting::OpenDiagram cone_two_cover(const order::FiniteFrame& frame, PointSet u, PointSet v) {
  const std::pair<std::size_t, std::size_t> rel[] = {{0, 1}, {0, 2}};
  auto index = FinitePoset::generated({"W", "U", "V"}, rel);
  return lifting::OpenDiagram(frame, std::move(index), {u & v, u, v});
}

}  // namespace

std::vector<lifting::OpenDiagram> standard_diagrams(const FinitePreorder& p) {
  const auto frame = order::alexandrov_frame(p);
  std::vector<lifting::OpenDiagram> out;
  const auto basis = principal_upsets(p);
  out.push_back(inclusion_diagram(frame, basis));
  std::vector<std::string> ids;
  for (PointSet o : basis) ids.push_back(frame.describe(o));
  out.emplace_back(frame, FinitePoset::discrete(std::move(ids)), basis);
  if (auto c = two_cover(frame)) {
    out.emplace_back(frame, FinitePoset::discrete({"U", "V"}), std::vector<PointSet>{c->first, c->second});
    out.push_back(cone_two_cover(frame, c->first, c->second));
  }
  return out;
}

std::vector<lifting::OpenDiagram> standard_atlases(const FinitePreorder& p, Rng& rng) {
  const auto frame = order::alexandrov_frame(p);
  std::vector<lifting::OpenDiagram> out;
  out.push_back(inclusion_diagram(frame, principal_upsets(p)));
  out.push_back(inclusion_diagram(frame, inhabited_opens(frame)));
  if (auto c = two_cover(frame)) out.push_back(cone_two_cover(frame, c->first, c->second));
  const auto opens = inhabited_opens(frame);
  for (int round = 0; round < 2 && !opens.empty(); ++round) {
    std::vector<PointSet> family;
    for (PointSet o : opens)
      if (coin(rng, 0.3)) family.push_back(o);
    for (PointSet u : principal_upsets(p))
      if (!u.subset_of(union_of(family))) family.push_back(u);
    out.push_back(inclusion_diagram(frame, intersection_closure(std::move(family))));
  }
  return out;
}

FinitePreorder random_preorder(Rng& rng, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && coin(rng, 0.25)) pairs.emplace_back(a, b);
  return FinitePreorder::generated(point_names(n), pairs);
}

FinitePoset random_poset(Rng& rng, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng, 0.35)) pairs.emplace_back(a, b);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return FinitePoset::generated(std::move(ids), pairs);
}

lifting::OpenDiagram random_diagram(Rng& rng, std::size_t max_index, std::size_t max_points) {
  const auto space = random_preorder(rng, uniform(rng, 1, max_points));
  const auto frame = order::alexandrov_frame(space);
  const auto opens = inhabited_opens(frame);
  const auto pick = [&](const std::vector<PointSet>& from) { return from[uniform(rng, 0, from.size() - 1)]; };

  switch (uniform(rng, 0, 2)) {
    case 0: {
      // Elements are numbered along a linear extension, so lower ones are set first.
      auto index = random_poset(rng, uniform(rng, 1, max_index));
      std::vector<PointSet> u(index.size());
      for (std::size_t j = 0; j < index.size(); ++j) {
        PointSet need;
        for (std::size_t i = 0; i < j; ++i)
          if (index.leq(i, j)) need |= u[i];
        std::vector<PointSet> above;
        for (PointSet o : frame.opens())
          if (need.subset_of(o)) above.push_back(o);
        u[j] = pick(above);
      }
      const PointSet target = coin(rng, 0.5) ? frame.top() : union_of(u);
      return lifting::OpenDiagram(frame, std::move(index), std::move(u), target);
    }
    case 1: {
      std::vector<PointSet> family;
      for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<PointSet> seed;
        for (std::size_t k = uniform(rng, 1, std::min<std::size_t>(3, max_index)); k > 0; --k) seed.push_back(pick(opens));
        family = intersection_closure(seed);
        if (family.size() <= max_index) break;
        family.resize(max_index);
      }
      // Dropping a member usually breaks the intersection condition.
      if (family.size() > 1 && coin(rng, 0.3)) family.erase(family.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, family.size() - 1)));
      return inclusion_diagram(frame, family, union_of(family));
    }
    default: {
      std::vector<PointSet> family;
      for (std::size_t k = uniform(rng, 1, max_index); k > 0; --k) family.push_back(pick(opens));
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < family.size(); ++i) ids.push_back("U" + std::to_string(i));
      const PointSet target = union_of(family);
      return lifting::OpenDiagram(frame, FinitePoset::discrete(std::move(ids)), std::move(family), target);
    }
  }
}

hypercover::LabeledSSet random_labeled(Rng& rng, std::size_t truncation, std::size_t max_cells) {
  const auto space = random_preorder(rng, uniform(rng, 1, 4));
  const auto frame = order::alexandrov_frame(space);
  const auto opens = inhabited_opens(frame);

  // Largest cover size c with c + c^2 + ... + c^(T+1) <= max_cells.
  std::size_t cmax = 1;
  for (std::size_t c = 2; c <= 4; ++c) {
    std::size_t total = 0, power = 1;
    for (std::size_t n = 0; n <= truncation; ++n) total += (power *= c);
    if (total <= max_cells) cmax = c;
  }
  std::vector<PointSet> cover;
  for (std::size_t k = uniform(rng, 1, cmax); k > 0; --k) cover.push_back(opens[uniform(rng, 0, opens.size() - 1)]);
  const PointSet target = union_of(cover);
  const auto cech = hypercover::cech_nerve(frame, cover, target, truncation);
  const auto& s = cech.shape();

  // Random seeds, then closure under faces and degeneracies.
  std::vector<std::vector<std::uint8_t>> keep(truncation + 1);
  const bool everything = coin(rng, 0.25);
  const double density = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
  std::vector<std::pair<std::size_t, Cell>> work;
  for (std::size_t n = 0; n <= truncation; ++n) {
    keep[n].assign(s.count(n), 0);
    for (Cell x = 0; x < s.count(n); ++x)
      if (everything || coin(rng, density)) work.emplace_back(n, x);
  }
  while (!work.empty()) {
    const auto [n, x] = work.back();
    work.pop_back();
    if (keep[n][x]) continue;
    keep[n][x] = 1;
    if (n > 0)
      for (std::size_t i = 0; i <= n; ++i) work.emplace_back(n - 1, s.face(n, i, x));
    if (n < truncation)
      for (std::size_t j = 0; j <= n; ++j) work.emplace_back(n + 1, s.degeneracy(n, j, x));
  }

  std::vector<std::vector<Cell>> renumber(truncation + 1);
  std::vector<std::vector<Cell>> kept(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    renumber[n].assign(s.count(n), 0);
    for (Cell x = 0; x < s.count(n); ++x)
      if (keep[n][x]) {
        renumber[n][x] = static_cast<Cell>(kept[n].size());
        kept[n].push_back(x);
      }
  }
  std::vector<simplicial::Level> levels(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    auto& level = levels[n];
    level.count = kept[n].size();
    if (n > 0) level.faces.assign(n + 1, {});
    if (n < truncation) level.degeneracies.assign(n + 1, {});
    for (Cell x : kept[n]) {
      level.names.push_back(s.name(n, x));
      if (n > 0)
        for (std::size_t i = 0; i <= n; ++i) level.faces[i].push_back(renumber[n - 1][s.face(n, i, x)]);
      if (n < truncation)
        for (std::size_t j = 0; j <= n; ++j) level.degeneracies[j].push_back(renumber[n + 1][s.degeneracy(n, j, x)]);
    }
  }
  simplicial::TruncatedSSet shape(truncation, std::move(levels));

  // Nondegenerate simplices shrink inside the meet of their faces' labels;
  // degenerate ones copy the label of their core.
  std::vector<std::vector<PointSet>> labels(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n)
    for (Cell x = 0; x < shape.count(n); ++x) {
      if (shape.is_degenerate(n, x)) {
        const auto ez = simplicial::ez_decompose(shape, n, x);
        labels[n].push_back(labels[ez.level][ez.core]);
        continue;
      }
      PointSet bound = cech.label(n, kept[n][x]);
      if (n > 0)
        for (std::size_t i = 0; i <= n; ++i) bound &= labels[n - 1][shape.face(n, i, x)];
      if (coin(rng, 0.3)) {
        std::vector<PointSet> inside;
        for (PointSet o : frame.opens())
          if (o.subset_of(bound)) inside.push_back(o);
        bound = inside[uniform(rng, 0, inside.size() - 1)];
      }
      labels[n].push_back(bound);
    }
  return hypercover::LabeledSSet(frame, std::move(shape), std::move(labels), target);
}

std::vector<Bundle> bundles_over(const FinitePreorder& p, Rng& rng, std::size_t random) {
  std::vector<Bundle> out;
  {
    std::vector<std::size_t> id(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) id[x] = x;
    out.push_back({"identity", p, id});
  }
  const auto build = [&](std::string name, const std::vector<std::size_t>& fiber, const auto& related) {
    std::vector<std::string> ids;
    std::vector<std::size_t> proj;
    std::vector<std::size_t> copy;
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t c = 0; c < fiber[x]; ++c) {
        ids.push_back(p.id(x) + "#" + std::to_string(c));
        proj.push_back(x);
        copy.push_back(c);
      }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t e = 0; e < ids.size(); ++e)
      for (std::size_t f = 0; f < ids.size(); ++f)
        if (e != f && p.leq(proj[e], proj[f]) && related(copy[e], copy[f])) pairs.emplace_back(e, f);
    out.push_back({std::move(name), FinitePreorder::generated(std::move(ids), pairs), std::move(proj)});
  };
  build("fold", std::vector<std::size_t>(p.size(), 2), [](std::size_t c, std::size_t d) { return c == d; });
  for (std::size_t r = 0; r < random; ++r) {
    std::vector<std::size_t> fiber(p.size());
    for (auto& f : fiber) f = uniform(rng, 1, 2);
    build("random" + std::to_string(r), fiber, [&](std::size_t, std::size_t) { return coin(rng, 0.5); });
  }
  return out;
}

}  // namespace atlas::corpus

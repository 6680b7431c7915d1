#include <atlas/semirep.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace atlas::semirep {

void IndexedFamily::validate(const order::FiniteFrame& frame) const {
  if (index.size() != member.size()) throw InvalidInput("indexed family: index and member lists differ in length");
  std::set<std::string> seen;
  for (std::size_t s = 0; s < index.size(); ++s) {
    if (!seen.insert(index[s]).second) throw InvalidInput("indexed family: duplicate index '" + index[s] + "'");
    if (!frame.is_open(member[s])) throw InvalidInput("indexed family: member of '" + index[s] + "' is not open");
  }
}

FamilyMorphism::FamilyMorphism(IndexedFamily source, IndexedFamily target, std::vector<std::size_t> reindex)
    : source_(std::move(source)), target_(std::move(target)), reindex_(std::move(reindex)) {
  if (reindex_.size() != source_.size()) throw InvalidInput("family morphism: reindexing is not total");
  for (std::size_t s = 0; s < reindex_.size(); ++s) {
    if (reindex_[s] >= target_.size()) throw InvalidInput("family morphism: reindexing out of range");
    if (!source_.member[s].subset_of(target_.member[reindex_[s]]))
      throw InvalidInput("family morphism: member of '" + source_.index[s] + "' is not inside its image");
  }
}

bool FamilyMorphism::is_local_isomorphism() const {
  for (std::size_t s = 0; s < reindex_.size(); ++s)
    if (source_.member[s] != target_.member[reindex_[s]]) return false;
  return true;
}

FamilyMorphism identity(const IndexedFamily& a) {
  std::vector<std::size_t> id(a.size());
  for (std::size_t s = 0; s < id.size(); ++s) id[s] = s;
  return FamilyMorphism(a, a, std::move(id));
}

FamilyMorphism compose(const FamilyMorphism& g, const FamilyMorphism& f) {
  if (!(f.target() == g.source())) throw InvalidInput("family morphisms are not composable");
  std::vector<std::size_t> r(f.reindex().size());
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = g.reindex()[f.reindex()[s]];
  return FamilyMorphism(f.source(), g.target(), std::move(r));
}

namespace {
std::vector<std::vector<std::size_t>> admissible(const IndexedFamily& a, const IndexedFamily& b) {
  std::vector<std::vector<std::size_t>> out(a.size());
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < b.size(); ++t)
      if (a.member[s].subset_of(b.member[t])) out[s].push_back(t);
  return out;
}
}  // namespace

std::vector<FamilyMorphism> hom_families(const IndexedFamily& a, const IndexedFamily& b) {
  const auto choices = admissible(a, b);
  std::vector<FamilyMorphism> out;
  std::vector<std::size_t> cur(a.size());
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == a.size()) {
      out.emplace_back(a, b, cur);
      return;
    }
    for (std::size_t t : choices[s]) {
      cur[s] = t;
      rec(s + 1);
    }
  };
  rec(0);
  return out;
}

std::size_t hom_count(const IndexedFamily& a, const IndexedFamily& b) {
  std::size_t n = 1;
  for (const auto& c : admissible(a, b)) n *= c.size();
  return n;
}

LocalIsoFactorization factor_local_iso(const FamilyMorphism& m) {
  IndexedFamily pulled;
  pulled.index = m.source().index;
  for (std::size_t s = 0; s < m.source().size(); ++s) pulled.member.push_back(m.target().member[m.reindex()[s]]);
  std::vector<std::size_t> id(pulled.size());
  for (std::size_t s = 0; s < id.size(); ++s) id[s] = s;
  FamilyMorphism fixed(m.source(), pulled, std::move(id));
  FamilyMorphism iso(pulled, m.target(), m.reindex());
  return {std::move(fixed), std::move(iso)};
}

// --- presheaves -------------------------------------------------------------

std::vector<std::pair<std::size_t, std::size_t>> open_covers(const order::FiniteFrame& frame) {
  const auto& opens = frame.opens();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t w = 0; w < opens.size(); ++w)
    for (std::size_t v = 0; v < opens.size(); ++v) {
      if (v == w || !opens[v].subset_of(opens[w])) continue;
      bool between = false;
      for (std::size_t u = 0; u < opens.size() && !between; ++u)
        between = u != v && u != w && opens[v].subset_of(opens[u]) && opens[u].subset_of(opens[w]);
      if (!between) out.emplace_back(w, v);
    }
  return out;
}

SetPresheaf::SetPresheaf(order::FiniteFrame frame, std::vector<std::vector<std::string>> elements,
                         const Restriction& restrict)
    : frame_(std::move(frame)), elements_(std::move(elements)) {
  const std::size_t m = frame_.open_count();
  if (elements_.size() != m) throw InvalidInput("presheaf: expected one set per open");
  table_.resize(m * m);
  const auto& opens = frame_.opens();
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t v = 0; v < m; ++v) {
      if (!opens[v].subset_of(opens[w])) continue;
      auto& t = table_[w * m + v];
      for (std::size_t x = 0; x < elements_[w].size(); ++x) {
        const std::size_t y = restrict(w, v, x);
        if (y >= elements_[v].size())
          throw InvalidInput("presheaf: restriction " + frame_.describe(opens[w]) + " -> " +
                             frame_.describe(opens[v]) + " out of range");
        t.push_back(y);
      }
    }
  validate();
}

void SetPresheaf::validate() const {
  const std::size_t m = frame_.open_count();
  const auto& opens = frame_.opens();
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t x = 0; x < elements_[w].size(); ++x)
      if (restrict(w, w, x) != x)
        throw InvalidInput("presheaf: restriction to " + frame_.describe(opens[w]) + " itself is not the identity");
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t v = 0; v < m; ++v) {
      if (!opens[v].subset_of(opens[w])) continue;
      for (std::size_t u = 0; u < m; ++u) {
        if (!opens[u].subset_of(opens[v])) continue;
        for (std::size_t x = 0; x < elements_[w].size(); ++x)
          if (restrict(v, u, restrict(w, v, x)) != restrict(w, u, x))
            throw InvalidInput("presheaf: restrictions " + frame_.describe(opens[w]) + " -> " +
                               frame_.describe(opens[v]) + " -> " + frame_.describe(opens[u]) + " do not compose");
      }
    }
}

SetPresheaf SetPresheaf::from_covers(
    order::FiniteFrame frame, std::vector<std::vector<std::string>> elements,
    const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>& maps) {
  const std::size_t m = frame.open_count();
  if (elements.size() != m) throw InvalidInput("presheaf: expected one set per open");
  const auto covers = open_covers(frame);
  for (const auto& c : covers) {
    auto it = maps.find(c);
    if (it == maps.end())
      throw InvalidInput("presheaf: missing restriction " + frame.describe(frame.opens()[c.first]) + " -> " +
                         frame.describe(frame.opens()[c.second]));
    if (it->second.size() != elements[c.first].size())
      throw InvalidInput("presheaf: restriction " + frame.describe(frame.opens()[c.first]) + " -> " +
                         frame.describe(frame.opens()[c.second]) + " is not total");
    for (std::size_t y : it->second)
      if (y >= elements[c.second].size())
        throw InvalidInput("presheaf: restriction " + frame.describe(frame.opens()[c.first]) + " -> " +
                           frame.describe(frame.opens()[c.second]) + " out of range");
  }
  for (const auto& [key, _] : maps)
    if (std::find(covers.begin(), covers.end(), key) == covers.end())
      throw InvalidInput("presheaf: restriction given along a non-covering pair");
  // Opens are sorted by size, so every path from w passes only through
  // earlier opens; fill table[w][v] by first stepping along one cover.
  const auto& opens = frame.opens();
  std::vector<std::vector<std::vector<std::size_t>>> table(m, std::vector<std::vector<std::size_t>>(m));
  for (std::size_t w = 0; w < m; ++w) {
    table[w][w].resize(elements[w].size());
    for (std::size_t x = 0; x < elements[w].size(); ++x) table[w][w][x] = x;
    for (std::size_t v = 0; v < w; ++v) {
      if (v == w || !opens[v].subset_of(opens[w])) continue;
      for (const auto& [a, c] : covers) {
        if (a != w || !opens[v].subset_of(opens[c])) continue;
        const auto& step = maps.at({w, c});
        for (std::size_t x = 0; x < elements[w].size(); ++x) table[w][v].push_back(table[c][v][step[x]]);
        break;
      }
    }
  }
  return SetPresheaf(std::move(frame), std::move(elements),
                     [&table](std::size_t w, std::size_t v, std::size_t x) { return table[w][v][x]; });
}

SetPresheaf totalize(const order::FiniteFrame& frame, const IndexedFamily& a) {
  a.validate(frame);
  const auto& opens = frame.opens();
  std::vector<std::vector<std::string>> elements(opens.size());
  std::vector<std::vector<std::size_t>> summands(opens.size());
  for (std::size_t w = 0; w < opens.size(); ++w)
    for (std::size_t s = 0; s < a.size(); ++s)
      if (opens[w].subset_of(a.member[s])) {
        elements[w].push_back(a.index[s]);
        summands[w].push_back(s);
      }
  return SetPresheaf(frame, std::move(elements), [&](std::size_t w, std::size_t v, std::size_t x) {
    const std::size_t s = summands[w][x];
    return static_cast<std::size_t>(std::find(summands[v].begin(), summands[v].end(), s) - summands[v].begin());
  });
}

// --- diagrams ----------------------------------------------------------------

void SetDiagram::validate() const {
  if (maps.size() != arrows.size()) throw InvalidInput("set diagram: one map per arrow expected");
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto [s, t] = arrows[a];
    if (s >= sets.size() || t >= sets.size()) throw InvalidInput("set diagram: arrow endpoint out of range");
    if (maps[a].size() != sets[s].size()) throw InvalidInput("set diagram: map is not total");
    for (std::size_t y : maps[a])
      if (y >= sets[t].size()) throw InvalidInput("set diagram: map value out of range");
  }
}

void FamilyDiagram::validate() const {
  if (maps.size() != arrows.size()) throw InvalidInput("family diagram: one morphism per arrow expected");
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto [s, t] = arrows[a];
    if (s >= objects.size() || t >= objects.size()) throw InvalidInput("family diagram: arrow endpoint out of range");
    if (!(maps[a].source() == objects[s]) || !(maps[a].target() == objects[t]))
      throw InvalidInput("family diagram: morphism does not match its arrow");
  }
}

FamilyDiagram tensor_family(const SetDiagram& f, const FamilyDiagram& d) {
  f.validate();
  d.validate();
  if (f.sets.size() != d.objects.size() || !(f.arrows == d.arrows))
    throw InvalidInput("tensor: set diagram and family diagram have different shapes");
  FamilyDiagram out;
  out.arrows = d.arrows;
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    IndexedFamily fam;
    for (const auto& a : f.sets[k])
      for (std::size_t s = 0; s < d.objects[k].size(); ++s) {
        fam.index.push_back(a + "|" + d.objects[k].index[s]);
        fam.member.push_back(d.objects[k].member[s]);
      }
    out.objects.push_back(std::move(fam));
  }
  for (std::size_t a = 0; a < d.arrows.size(); ++a) {
    const auto [s, t] = d.arrows[a];
    const std::size_t inner = d.objects[s].size();
    const std::size_t inner_t = d.objects[t].size();
    std::vector<std::size_t> r;
    for (std::size_t x = 0; x < f.sets[s].size(); ++x)
      for (std::size_t y = 0; y < inner; ++y) r.push_back(f.maps[a][x] * inner_t + d.maps[a].reindex()[y]);
    out.maps.emplace_back(out.objects[s], out.objects[t], std::move(r));
  }
  return out;
}

}  // namespace atlas::semirep

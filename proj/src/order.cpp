#include <atlas/order.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace atlas::order {

namespace {

std::vector<std::uint8_t> tabulate(std::size_t n, const LeqFn& leq) {
  std::vector<std::uint8_t> rel(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) rel[a * n + b] = leq(a, b) ? 1 : 0;
  return rel;
}

void transitive_closure(std::size_t n, std::vector<std::uint8_t>& rel) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (rel[a * n + k])
        for (std::size_t b = 0; b < n; ++b)
          if (rel[k * n + b]) rel[a * n + b] = 1;
}

void check_preorder(std::size_t n, const std::vector<std::uint8_t>& rel) {
  for (std::size_t a = 0; a < n; ++a)
    if (!rel[a * n + a]) throw InvalidInput("order relation is not reflexive");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rel[a * n + b])
        for (std::size_t c = 0; c < n; ++c)
          if (rel[b * n + c] && !rel[a * n + c])
            throw InvalidInput("order relation is not transitive");
}

void check_antisymmetric(const FinitePreorder& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p.leq(a, b) && p.leq(b, a))
        throw InvalidInput("order relation is not antisymmetric: " + p.id(a) + " and " + p.id(b));
}

}  // namespace

// --- FinitePreorder -----------------------------------------------------------

FinitePreorder::FinitePreorder(std::vector<std::string> ids, std::vector<std::uint8_t> rel)
    : ids_(std::move(ids)), rel_(std::move(rel)) {
  index_and_mask();
}

FinitePreorder::FinitePreorder(std::vector<std::string> ids, const LeqFn& leq) {
  rel_ = tabulate(ids.size(), leq);
  ids_ = std::move(ids);
  check_preorder(ids_.size(), rel_);
  index_and_mask();
}

FinitePreorder FinitePreorder::generated(std::vector<std::string> ids,
                                         std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  const std::size_t n = ids.size();
  std::vector<std::uint8_t> rel(n * n);
  for (std::size_t a = 0; a < n; ++a) rel[a * n + a] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw InvalidInput("relation refers to an unknown element");
    rel[a * n + b] = 1;
  }
  transitive_closure(n, rel);
  return FinitePreorder(std::move(ids), std::move(rel));
}

void FinitePreorder::index_and_mask() {
  index_.clear();
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (!index_.emplace(ids_[i], i).second)
      throw InvalidInput("duplicate element identifier: " + ids_[i]);
  up_.clear();
  down_.clear();
  const std::size_t n = ids_.size();
  if (n == 0 || n > 64) return;
  up_.assign(n, 0);
  down_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rel_[a * n + b]) {
        up_[a] |= std::uint64_t{1} << b;
        down_[b] |= std::uint64_t{1} << a;
      }
}

std::optional<std::size_t> FinitePreorder::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinitePreorder::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw InvalidInput("unknown element identifier: " + std::string(id));
}

// --- FinitePoset --------------------------------------------------------------

FinitePoset::FinitePoset(FinitePreorder checked) : FinitePreorder(std::move(checked)) {
  check_antisymmetric(*this);
}

FinitePoset::FinitePoset(std::vector<std::string> ids, const LeqFn& leq)
    : FinitePoset(FinitePreorder(std::move(ids), leq)) {}

FinitePoset FinitePoset::generated(std::vector<std::string> ids,
                                   std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  return FinitePoset(FinitePreorder::generated(std::move(ids), pairs));
}

FinitePoset FinitePoset::discrete(std::vector<std::string> ids) {
  return generated(std::move(ids), {});
}

FinitePoset FinitePoset::discrete(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return discrete(std::move(ids));
}

std::vector<std::size_t> FinitePoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a) {
    bool minimal = true;
    for (std::size_t b = 0; b < size() && minimal; ++b)
      if (b != a && leq(b, a)) minimal = false;
    if (minimal) out.push_back(a);
  }
  return out;
}

// --- MonotoneMap --------------------------------------------------------------

bool is_monotone(const FinitePreorder& source, const FinitePreorder& target,
                 std::span<const std::size_t> assignment) {
  if (assignment.size() != source.size()) return false;
  for (std::size_t v : assignment)
    if (v >= target.size()) return false;
  for (std::size_t a = 0; a < source.size(); ++a)
    for (std::size_t b = 0; b < source.size(); ++b)
      if (source.leq(a, b) && !target.leq(assignment[a], assignment[b])) return false;
  return true;
}

MonotoneMap::MonotoneMap(FinitePoset source, FinitePoset target, std::vector<std::size_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size()) throw InvalidInput("monotone map is not total");
  for (std::size_t v : assignment_)
    if (v >= target_.size()) throw InvalidInput("monotone map lands outside its target");
  if (!is_monotone(source_, target_, assignment_)) throw InvalidInput("map is not monotone");
}

// --- FiniteFrame --------------------------------------------------------------

FiniteFrame::FiniteFrame(std::vector<std::string> points, std::vector<PointSet> opens)
    : points_(std::move(points)), opens_(std::move(opens)) {
  if (points_.size() > PointSet::kMaxPoints) throw InvalidInput("frames support at most 64 points");
  {
    std::unordered_set<std::string> seen;
    for (const auto& p : points_)
      if (!seen.insert(p).second) throw InvalidInput("duplicate point identifier: " + p);
  }
  const PointSet top = PointSet::all(points_.size());
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  for (std::size_t i = 0; i < opens_.size(); ++i) {
    if (!opens_[i].subset_of(top)) throw InvalidInput("open set mentions an unknown point");
    lookup_.emplace(opens_[i].bits(), i);
  }
  if (!is_open(top) || !is_open(PointSet{})) throw InvalidInput("frame must contain top and bottom");
  for (PointSet a : opens_)
    for (PointSet b : opens_)
      if (!is_open(a | b) || !is_open(a & b))
        throw InvalidInput("opens are not closed under union and intersection");
}

FiniteFrame FiniteFrame::from_generators(std::vector<std::string> points,
                                         std::span<const PointSet> generators) {
  if (points.size() > PointSet::kMaxPoints) throw InvalidInput("frames support at most 64 points");
  const PointSet top = PointSet::all(points.size());
  std::set<std::uint64_t> found{0, top.bits()};
  for (PointSet g : generators) {
    if (!g.subset_of(top)) throw InvalidInput("generator mentions an unknown point");
    found.insert(g.bits());
  }
  std::vector<std::uint64_t> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    std::vector<std::uint64_t> current(found.begin(), found.end());
    for (std::uint64_t a : frontier)
      for (std::uint64_t b : current)
        for (std::uint64_t c : {a | b, a & b})
          if (found.insert(c).second) next.push_back(c);
    frontier = std::move(next);
  }
  std::vector<PointSet> opens;
  for (std::uint64_t b : found) opens.emplace_back(b);
  return FiniteFrame(std::move(points), std::move(opens));
}

std::size_t FiniteFrame::index_of(PointSet s) const {
  auto it = lookup_.find(s.bits());
  if (it == lookup_.end()) throw InvalidInput("not an open of the frame: " + describe(s));
  return it->second;
}

PointSet FiniteFrame::parse(std::span<const std::string> point_ids) const {
  PointSet out;
  for (const auto& id : point_ids) {
    auto it = std::find(points_.begin(), points_.end(), id);
    if (it == points_.end()) throw InvalidInput("unknown point identifier: " + id);
    out |= PointSet::single(static_cast<std::size_t>(it - points_.begin()));
  }
  return out;
}

std::vector<std::string> FiniteFrame::point_names(PointSet s) const {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) {
    out.push_back(i < points_.size() ? points_[i] : "#" + std::to_string(i));
  });
  return out;
}

std::string FiniteFrame::describe(PointSet s) const {
  std::string out = "{";
  bool first = true;
  for (const auto& name : point_names(s)) {
    if (!first) out += ',';
    out += name;
    first = false;
  }
  return out + "}";
}

FinitePoset FiniteFrame::as_poset() const {
  std::vector<std::string> ids;
  for (PointSet o : opens_) ids.push_back(describe(o));
  return FinitePoset(std::move(ids),
                     [this](std::size_t a, std::size_t b) { return opens_[a].subset_of(opens_[b]); });
}

// --- operations ---------------------------------------------------------------

FinitePoset left_cone(const FinitePoset& p) {
  if (p.find(kConePoint)) throw InvalidInput("cone point identifier already in use: " + std::string(kConePoint));
  std::vector<std::string> ids = p.ids();
  ids.emplace_back(kConePoint);
  const std::size_t e = p.size();
  return FinitePoset(std::move(ids), [&](std::size_t a, std::size_t b) {
    if (a == e) return true;
    if (b == e) return false;
    return p.leq(a, b);
  });
}

bool is_zero_coinitial(const FinitePoset& p, std::span<const std::size_t> subset) {
  for (std::size_t s : subset)
    if (s >= p.size()) throw InvalidInput("coinitial candidate refers to an unknown element");
  for (std::size_t x = 0; x < p.size(); ++x) {
    bool bounded = std::any_of(subset.begin(), subset.end(), [&](std::size_t s) { return p.leq(s, x); });
    if (!bounded) return false;
  }
  return true;
}

bool is_zero_coinitial(const FinitePoset& p, std::span<const std::string> subset) {
  std::vector<std::size_t> idx;
  for (const auto& id : subset) idx.push_back(p.index_of(id));
  return is_zero_coinitial(p, idx);
}

Pushout poset_pushout(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(f.source() == g.source())) throw InvalidInput("pushout legs must share their source");
  const FinitePoset& p = f.target();
  const FinitePoset& q = g.target();
  const std::size_t np = p.size(), n = p.size() + q.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < np; ++b)
      if (a != b && p.leq(a, b)) pairs.emplace_back(a, b);
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = 0; b < q.size(); ++b)
      if (a != b && q.leq(a, b)) pairs.emplace_back(np + a, np + b);
  for (std::size_t r = 0; r < f.source().size(); ++r) {
    pairs.emplace_back(f(r), np + g(r));
    pairs.emplace_back(np + g(r), f(r));
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  FinitePreorder glued = FinitePreorder::generated(std::move(ids), pairs);
  PosetQuotient quotient = preorder_to_poset(glued);

  // Name classes after their first member, disambiguating clashes between P and Q ids.
  std::vector<std::string> names;
  std::unordered_set<std::string> used;
  for (std::size_t c = 0; c < quotient.poset.size(); ++c) {
    std::size_t first = static_cast<std::size_t>(
        std::find(quotient.projection.begin(), quotient.projection.end(), c) - quotient.projection.begin());
    std::string name = first < np ? p.id(first) : q.id(first - np);
    while (!used.insert(name).second) name += '\'';
    names.push_back(name);
  }
  const FinitePoset& shape = quotient.poset;
  FinitePoset result(names, [&](std::size_t a, std::size_t b) { return shape.leq(a, b); });

  Pushout out{std::move(result), p, q, {}, {}};
  for (std::size_t a = 0; a < np; ++a) out.from_left.push_back(quotient.projection[a]);
  for (std::size_t a = 0; a < q.size(); ++a) out.from_right.push_back(quotient.projection[np + a]);
  return out;
}

PointSet meet_over(PointSet top, std::span<const PointSet> u, std::span<const std::size_t> alpha) {
  PointSet out = top;
  for (std::size_t k : alpha) out &= u[k];
  return out;
}

PointSet meet_over(const FiniteFrame& frame, const MonotoneMap& u, const MonotoneMap& alpha) {
  if (!(alpha.target() == u.source())) throw InvalidInput("alpha must land in the index of U");
  const auto& opens = frame.opens();
  if (u.target().size() != opens.size()) throw InvalidInput("U must land in the frame's poset of opens");
  std::vector<PointSet> values;
  for (std::size_t i = 0; i < u.source().size(); ++i) values.push_back(opens[u(i)]);
  return meet_over(frame.top(), values, alpha.assignment());
}

bool covers(const FiniteFrame& frame, std::span<const PointSet> family, PointSet v) {
  PointSet joined;
  for (PointSet w : family) {
    if (!w.subset_of(v))
      throw InvalidInput("covering candidate " + frame.describe(w) + " is not contained in " + frame.describe(v));
    joined |= w;
  }
  return joined == v;
}

PosetQuotient preorder_to_poset(const FinitePreorder& q) {
  const std::size_t n = q.size();
  std::vector<std::size_t> projection(n, kUnassigned);
  std::vector<std::size_t> representative;
  for (std::size_t a = 0; a < n; ++a) {
    if (projection[a] != kUnassigned) continue;
    const std::size_t cls = representative.size();
    representative.push_back(a);
    for (std::size_t b = a; b < n; ++b)
      if (q.leq(a, b) && q.leq(b, a)) projection[b] = cls;
  }
  std::vector<std::string> ids;
  for (std::size_t r : representative) ids.push_back(q.id(r));
  FinitePoset poset(std::move(ids), [&](std::size_t a, std::size_t b) {
    return q.leq(representative[a], representative[b]);
  });
  return {std::move(poset), std::move(projection)};
}

FiniteFrame alexandrov_frame(const FinitePreorder& p) {
  if (p.size() > PointSet::kMaxPoints) throw InvalidInput("frames support at most 64 points");
  std::vector<PointSet> principal;
  for (std::size_t a = 0; a < p.size(); ++a) {
    PointSet up;
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(a, b)) up |= PointSet::single(b);
    principal.push_back(up);
  }
  return FiniteFrame::from_generators(p.ids(), principal);
}

std::optional<std::vector<std::size_t>> find_isomorphism(const FinitePreorder& a, const FinitePreorder& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  auto signature = [](const FinitePreorder& p, std::size_t x) {
    std::size_t up = 0, down = 0;
    for (std::size_t y = 0; y < p.size(); ++y) {
      up += p.leq(x, y);
      down += p.leq(y, x);
    }
    return std::pair{up, down};
  };
  std::vector<std::pair<std::size_t, std::size_t>> sig_a(n), sig_b(n);
  for (std::size_t x = 0; x < n; ++x) {
    sig_a[x] = signature(a, x);
    sig_b[x] = signature(b, x);
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<std::size_t> image(n, kUnassigned);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t x) {
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || sig_a[x] != sig_b[y]) continue;
      bool ok = true;
      for (std::size_t z = 0; z < x && ok; ++z)
        ok = a.leq(x, z) == b.leq(y, image[z]) && a.leq(z, x) == b.leq(image[z], y);
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (extend(x + 1)) return true;
      used[y] = false;
    }
    image[x] = kUnassigned;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

namespace detail {

MonotonePlan plan_monotone(const FinitePreorder& source, const FinitePreorder& target,
                           std::span<const std::size_t> fixed) {
  if (fixed.size() != source.size()) throw InvalidInput("partial assignment has the wrong length");
  if (!target.has_masks()) throw InvalidInput("monotone enumeration supports targets of at most 64 elements");
  MonotonePlan plan;
  std::vector<std::size_t> assigned;
  for (std::size_t p = 0; p < source.size(); ++p) {
    if (fixed[p] == kUnassigned) continue;
    if (fixed[p] >= target.size()) throw InvalidInput("partial assignment lands outside the target");
    for (std::size_t q : assigned) {
      if (source.leq(q, p) && !target.leq(fixed[q], fixed[p])) plan.consistent = false;
      if (source.leq(p, q) && !target.leq(fixed[p], fixed[q])) plan.consistent = false;
    }
    assigned.push_back(p);
  }
  if (target.size() == 0) {
    // Only the empty source admits a map into the empty poset.
    if (source.size() != 0) plan.consistent = false;
    return plan;
  }
  for (std::size_t p = 0; p < source.size(); ++p) {
    if (fixed[p] != kUnassigned) continue;
    std::vector<std::pair<std::size_t, bool>> cons;
    for (std::size_t q : assigned) {
      // Equivalent elements need both masks.
      if (source.leq(q, p)) cons.emplace_back(q, true);
      if (source.leq(p, q)) cons.emplace_back(q, false);
    }
    plan.free.push_back(p);
    plan.constraints.push_back(std::move(cons));
    assigned.push_back(p);
  }
  return plan;
}

}  // namespace detail

}  // namespace atlas::order

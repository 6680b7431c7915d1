#include <atlas/corpus.hpp>
#include <atlas/order.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace atlas;
using order::FinitePoset;
using order::FinitePreorder;

namespace {

FinitePoset chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(i - 1, i);
  }
  return FinitePoset::generated(ids, rel);
}

// Oracle: all maps source -> target by odometer, filtered for monotonicity.
std::vector<std::vector<std::size_t>> all_monotone(const FinitePreorder& s, const FinitePreorder& t) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(s.size(), 0);
  if (t.size() == 0) {
    if (s.size() == 0) out.push_back({});
    return out;
  }
  for (;;) {
    bool ok = true;
    for (std::size_t a = 0; a < s.size() && ok; ++a)
      for (std::size_t b = 0; b < s.size() && ok; ++b)
        if (s.leq(a, b)) ok = t.leq(f[a], f[b]);
    if (ok) out.push_back(f);
    std::size_t k = s.size();
    while (k > 0 && ++f[k - 1] == t.size()) f[--k] = 0;
    if (k == 0) return out;
  }
}

// Oracle: up-closed subsets by brute force over all subsets.
std::size_t count_upsets(const FinitePreorder& p) {
  std::size_t c = 0;
  for (std::uint64_t s = 0; s < (1ULL << p.size()); ++s) {
    bool ok = true;
    for (std::size_t a = 0; a < p.size() && ok; ++a)
      for (std::size_t b = 0; b < p.size() && ok; ++b)
        if (p.leq(a, b) && ((s >> a) & 1) && !((s >> b) & 1)) ok = false;
    c += ok;
  }
  return c;
}

}  // namespace

TEST_SUITE("order") {

TEST_CASE("generated preorder is the reflexive transitive closure") {
  const std::pair<std::size_t, std::size_t> rel[] = {{0, 1}, {1, 2}};
  const auto p = FinitePreorder::generated({"a", "b", "c"}, rel);
  CHECK(p.leq(0, 2));
  CHECK(p.leq(1, 1));
  CHECK_FALSE(p.leq(2, 0));
  CHECK(p.index_of("c") == 2);
  CHECK_THROWS_AS(p.index_of("d"), InvalidInput);
}

TEST_CASE("constructor rejects non-transitive relations and duplicate ids") {
  CHECK_THROWS_AS(FinitePreorder({"a", "b", "c"}, [](std::size_t x, std::size_t y) {
                    return x == y || (x == 0 && y == 1) || (x == 1 && y == 2);
                  }),
                  InvalidInput);
  CHECK_THROWS_AS(FinitePreorder({"a", "a"}, [](std::size_t x, std::size_t y) { return x == y; }), InvalidInput);
}

TEST_CASE("poset closure with a cycle is rejected") {
  const std::pair<std::size_t, std::size_t> rel[] = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(FinitePoset::generated({"a", "b"}, rel), InvalidInput);
  CHECK_NOTHROW(FinitePreorder::generated({"a", "b"}, rel));
}

TEST_CASE("monotone map validation") {
  const auto c2 = chain(2);
  CHECK_NOTHROW(order::MonotoneMap(c2, c2, {0, 1}));
  CHECK_THROWS_AS(order::MonotoneMap(c2, c2, {1, 0}), InvalidInput);
  CHECK_THROWS_AS(order::MonotoneMap(c2, c2, {0}), InvalidInput);
}

TEST_CASE("frames close generators under union and intersection") {
  const auto pts = corpus::point_names(3);
  const PointSet gens[] = {PointSet(0b001), PointSet(0b010)};
  const auto f = order::FiniteFrame::from_generators(pts, gens);
  // {}, {a}, {b}, {a,b}, {a,b,c}
  CHECK(f.open_count() == 5);
  CHECK(f.opens().front() == PointSet{});
  CHECK(f.opens().back() == f.top());
  CHECK(f.describe(PointSet(0b011)) == "{a,b}");
  CHECK_THROWS_AS(f.index_of(PointSet(0b100)), InvalidInput);
  CHECK_THROWS_AS(order::FiniteFrame(pts, {PointSet{}, PointSet(0b001), PointSet(0b010), PointSet(0b111)}), InvalidInput);
}

TEST_CASE("alexandrov frame has one open per up-set") {
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& p : corpus::labeled_preorders(n)) {
      const auto f = order::alexandrov_frame(p);
      CHECK(f.open_count() == count_upsets(p));
      for (std::size_t x = 0; x < p.size(); ++x) CHECK(f.is_open(PointSet(p.up_mask(x))));
    }
}

TEST_CASE("monotone enumeration matches the odometer oracle in order") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 40; ++round) {
    const auto s = corpus::random_poset(rng, 1 + round % 4);
    const auto t = corpus::random_preorder(rng, 1 + round % 3);
    std::vector<std::vector<std::size_t>> seen;
    const std::vector<std::size_t> fixed(s.size(), order::kUnassigned);
    order::for_each_monotone_map(s, t, fixed, [&](std::span<const std::size_t> f) {
      seen.emplace_back(f.begin(), f.end());
      return true;
    });
    CHECK(seen == all_monotone(s, t));
  }
}

TEST_CASE("monotone enumeration from preorders with equivalent elements") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    const auto s = corpus::random_preorder(rng, 2 + round % 3);
    const auto t = corpus::random_poset(rng, 1 + round % 3);
    std::vector<std::vector<std::size_t>> seen;
    const std::vector<std::size_t> fixed(s.size(), order::kUnassigned);
    order::for_each_monotone_map(s, t, fixed, [&](std::span<const std::size_t> f) {
      seen.emplace_back(f.begin(), f.end());
      return true;
    });
    CHECK(seen == all_monotone(s, t));
  }
}

TEST_CASE("monotone enumeration respects fixed values and early stop") {
  const auto c3 = chain(3);
  std::vector<std::size_t> fixed{order::kUnassigned, 1, order::kUnassigned};
  std::size_t n = 0;
  order::for_each_monotone_map(c3, c3, fixed, [&](std::span<const std::size_t> f) {
    CHECK(f[1] == 1);
    ++n;
    return true;
  });
  CHECK(n == 4);  // f0 in {0,1}, f2 in {1,2}
  const bool finished = order::for_each_monotone_map(c3, c3, std::vector<std::size_t>(3, order::kUnassigned),
                                                     [](std::span<const std::size_t>) { return false; });
  CHECK_FALSE(finished);
}

TEST_CASE("left cone adds a least element at the end") {
  const auto c = order::left_cone(FinitePoset::discrete(2));
  REQUIRE(c.size() == 3);
  CHECK(c.id(2) == std::string(order::kConePoint));
  CHECK(c.leq(2, 0));
  CHECK(c.leq(2, 1));
  CHECK_FALSE(c.leq(0, 1));
}

TEST_CASE("zero-coinitial subsets") {
  const std::pair<std::size_t, std::size_t> rel[] = {{0, 2}, {1, 2}};
  const auto v = FinitePoset::generated({"a", "b", "t"}, rel);
  CHECK(order::is_zero_coinitial(v, std::vector<std::size_t>{0, 1}));
  CHECK_FALSE(order::is_zero_coinitial(v, std::vector<std::size_t>{0, 2}));
  CHECK_FALSE(order::is_zero_coinitial(v, std::vector<std::size_t>{}));
  CHECK(order::is_zero_coinitial(FinitePoset::discrete(0), std::vector<std::size_t>{}));
}

TEST_CASE("pushout of a cone along a coinitial inclusion is the cone") {
  const auto k = chain(3);
  const auto k0 = FinitePoset::generated({"0"}, {});
  const auto po = order::poset_pushout(order::MonotoneMap(k0, order::left_cone(k0), {0}),
                                       order::MonotoneMap(k0, k, {0}));
  CHECK(po.poset.size() == 4);
  CHECK(order::find_isomorphism(po.poset, order::left_cone(k)).has_value());
  // Gluing two chains at their bottoms gives a V, not a chain.
  const auto v = order::poset_pushout(order::MonotoneMap(k0, chain(2), {0}), order::MonotoneMap(k0, chain(2), {0}));
  CHECK(v.poset.size() == 3);
  CHECK_FALSE(order::find_isomorphism(v.poset, chain(3)).has_value());
}

TEST_CASE("preorder quotient identifies equivalent elements") {
  const std::pair<std::size_t, std::size_t> rel[] = {{0, 1}, {1, 0}, {1, 2}};
  const auto q = order::preorder_to_poset(FinitePreorder::generated({"a", "b", "c"}, rel));
  CHECK(q.poset.size() == 2);
  CHECK(q.projection == std::vector<std::size_t>{0, 0, 1});
  CHECK(q.poset.leq(0, 1));
}

TEST_CASE("meets and covers") {
  const auto pts = corpus::point_names(3);
  const PointSet gens[] = {PointSet(0b011), PointSet(0b110)};
  const auto f = order::FiniteFrame::from_generators(pts, gens);
  const std::vector<PointSet> u{PointSet(0b011), PointSet(0b110)};
  CHECK(order::meet_over(f.top(), u, std::vector<std::size_t>{0, 1}) == PointSet(0b010));
  CHECK(order::meet_over(f.top(), u, std::vector<std::size_t>{}) == f.top());
  CHECK(order::covers(f, u, f.top()));
  CHECK_FALSE(order::covers(f, std::vector<PointSet>{PointSet(0b010)}, PointSet(0b011)));
  CHECK_THROWS_AS(order::covers(f, u, PointSet(0b011)), InvalidInput);
}

TEST_CASE("isomorphism search") {
  CHECK(order::find_isomorphism(chain(3), chain(3)).has_value());
  CHECK_FALSE(order::find_isomorphism(chain(3), FinitePoset::discrete(3)).has_value());
  const auto iso = order::find_isomorphism(chain(2), FinitePoset::generated({"x", "y"}, std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}}));
  REQUIRE(iso.has_value());
  CHECK(*iso == std::vector<std::size_t>{1, 0});
}

}  // TEST_SUITE

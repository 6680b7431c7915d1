#include <atlas/corpus.hpp>

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace atlas;
using order::FinitePreorder;

namespace {

// Oracle: canonical form is the lexicographically least relation matrix over
// all relabelings.
std::vector<bool> canonical(const FinitePreorder& p) {
  std::vector<std::size_t> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best;
  do {
    std::vector<bool> m;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) m.push_back(p.leq(perm[a], perm[b]));
    if (best.empty() || m < best) best = m;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool antisymmetric(const FinitePreorder& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b) && p.leq(b, a)) return false;
  return true;
}

std::map<std::size_t, std::size_t> by_size(const auto& orders) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& p : orders) ++out[p.size()];
  return out;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("labeled preorders") {
  const std::size_t expected[] = {1, 1, 4, 29, 355};
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto all = corpus::labeled_preorders(n);
    CHECK(all.size() == expected[n]);
    std::set<std::vector<bool>> relations;
    for (const auto& p : all) {
      std::vector<bool> m;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m.push_back(p.leq(a, b));
      relations.insert(m);
    }
    CHECK(relations.size() == all.size());
  }
  CHECK(corpus::labeled_preorders(5).size() == 6942);
  CHECK_THROWS_AS(corpus::labeled_preorders(6), InvalidInput);
}

TEST_CASE("isomorphism classes match the canonical-form oracle") {
  std::map<std::size_t, std::size_t> pre_oracle, poset_oracle;
  for (std::size_t n = 0; n <= 4; ++n) {
    std::set<std::vector<bool>> pre, pos;
    for (const auto& p : corpus::labeled_preorders(n)) {
      pre.insert(canonical(p));
      if (antisymmetric(p)) pos.insert(canonical(p));
    }
    pre_oracle[n] = pre.size();
    poset_oracle[n] = pos.size();
  }
  CHECK(by_size(corpus::preorders_up_to_iso(4)) == pre_oracle);
  CHECK(pre_oracle == std::map<std::size_t, std::size_t>{{0, 1}, {1, 1}, {2, 3}, {3, 9}, {4, 33}});
  const auto posets = corpus::posets_up_to_iso(5);
  auto sizes = by_size(posets);
  CHECK(sizes[5] == 63);
  sizes.erase(5);
  CHECK(sizes == poset_oracle);
  CHECK(posets.size() == 88);
  // No two representatives are isomorphic.
  std::set<std::vector<bool>> seen;
  for (const auto& p : posets) CHECK(seen.insert(canonical(p)).second);
}

TEST_CASE("small distributive lattices") {
  std::map<std::size_t, std::size_t> sizes;
  for (const auto& p : corpus::posets_up_to_iso(7, 8)) {
    const auto frame = order::alexandrov_frame(p);
    CHECK(frame.open_count() == corpus::upset_count(p));
    ++sizes[frame.open_count()];
  }
  CHECK(sizes == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 3}, {6, 5}, {7, 8}, {8, 15}});
}

TEST_CASE("specialization recovers the preorder") {
  for (const auto& p : corpus::preorders_up_to_iso(4)) {
    const auto frame = order::alexandrov_frame(p);
    const auto q = corpus::specialization(frame);
    CHECK(order::alexandrov_frame(q) == frame);
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) CHECK(q.leq(a, b) == p.leq(a, b));
  }
}

TEST_CASE("generators are deterministic per seed") {
  corpus::Rng r1(99), r2(99);
  for (int round = 0; round < 30; ++round) {
    const auto a = corpus::random_diagram(r1, 5, 4);
    const auto b = corpus::random_diagram(r2, 5, 4);
    CHECK(a.u() == b.u());
    CHECK(a.index().ids() == b.index().ids());
    CHECK(a.frame() == b.frame());
    CHECK(a.index().size() <= 5);
    CHECK(a.frame().point_count() <= 4);
  }
  for (int round = 0; round < 30; ++round) {
    const auto a = corpus::random_labeled(r1, 3, 200);
    const auto b = corpus::random_labeled(r2, 3, 200);
    CHECK(a.shape().total_cells() == b.shape().total_cells());
    CHECK(a.shape().total_cells() <= 200);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(a.labels(n) == b.labels(n));
  }
}

TEST_CASE("standard atlases are atlases") {
  corpus::Rng rng(3);
  for (const auto& p : corpus::preorders_up_to_iso(4))
    for (const auto& d : corpus::standard_atlases(p, rng))
      CHECK(lifting::check_atlas(d, lifting::AtlasMode::basic()).pass);
}

TEST_CASE("bundles project monotonically") {
  corpus::Rng rng(4);
  for (const auto& p : corpus::preorders_up_to_iso(3))
    for (const auto& b : corpus::bundles_over(p, rng, 3)) {
      REQUIRE(b.projection.size() == b.total.size());
      for (std::size_t a = 0; a < b.total.size(); ++a)
        for (std::size_t c = 0; c < b.total.size(); ++c)
          if (b.total.leq(a, c)) CHECK(p.leq(b.projection[a], b.projection[c]));
    }
}

}  // TEST_SUITE

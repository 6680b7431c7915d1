#include <atlas/corpus.hpp>
#include <atlas/nerve.hpp>

#include <doctest.h>

using namespace atlas;
using namespace atlas::nerve;
using order::FinitePoset;

namespace {

FinitePoset poset(std::vector<std::string> ids, std::vector<std::pair<std::size_t, std::size_t>> rel) {
  return FinitePoset::generated(std::move(ids), rel);
}

// Oracle: every map from the inhabited subsets of {0..n} to I, kept when a
// larger subset never gets a larger value.
std::size_t brute_nerve(const FinitePoset& index, std::size_t n) {
  const std::uint32_t full = (1U << (n + 1)) - 1;
  std::vector<std::size_t> f(full + 1, 0);
  std::size_t c = 0;
  for (;;) {
    bool ok = true;
    for (std::uint32_t a = 1; a <= full && ok; ++a)
      for (std::uint32_t b = 1; b <= full && ok; ++b)
        if ((a & b) == b) ok = index.leq(f[a], f[b]);
    c += ok;
    std::uint32_t k = 1;
    while (k <= full && ++f[k] == index.size()) f[k++] = 0;
    if (k > full) return c;
  }
}

}  // namespace

TEST_SUITE("nerve") {

TEST_CASE("level sizes match the brute-force oracle and frozen values") {
  const auto chain = poset({"0", "1"}, {{0, 1}});
  const auto vee = poset({"a", "b", "t"}, {{0, 2}, {1, 2}});
  const auto circle = poset({"A", "B", "U", "V"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const struct {
    FinitePoset index;
    std::vector<std::size_t> expected;
  } cases[] = {
      {chain, {2, 5, 19}},
      {vee, {3, 9, 37}},
      {FinitePoset::discrete(2), {2, 2, 2}},
      {circle, {4, 20}},
  };
  for (const auto& c : cases) {
    const auto nerve = nerve_truncated(c.index, c.expected.size() - 1);
    for (std::size_t n = 0; n < c.expected.size(); ++n) {
      CHECK(nerve.sset().count(n) == c.expected[n]);
      CHECK(brute_nerve(c.index, n) == c.expected[n]);
    }
  }
}

TEST_CASE("counit is the value at the full subset and lookup inverts storage") {
  const auto vee = poset({"a", "b", "t"}, {{0, 2}, {1, 2}});
  const auto nerve = nerve_truncated(vee, 2);
  for (std::size_t n = 0; n <= 2; ++n)
    for (Cell x = 0; x < nerve.sset().count(n); ++x) {
      const std::uint32_t full = (1U << (n + 1)) - 1;
      CHECK(nerve.counit(n, x) == nerve.value_at(n, x, full));
      CHECK(counit_eval(nerve, n, x) == nerve.counit(n, x));
      CHECK(nerve.find(n, nerve.values(n, x)) == x);
      // The counit is least among the values.
      for (std::uint32_t t = 1; t <= full; ++t) CHECK(vee.leq(nerve.counit(n, x), nerve.value_at(n, x, t)));
    }
  CHECK(nerve.describe(0, 0) == "{0}=a");
}

TEST_CASE("construction limits") {
  CHECK_THROWS_AS(nerve_truncated(FinitePoset::discrete(65), 1), InvalidInput);
  CHECK_THROWS_AS(nerve_truncated(FinitePoset::discrete(2), 7), InvalidInput);
}

TEST_CASE("refinement labels each simplex by its counit's open") {
  corpus::Rng rng(3);
  for (int round = 0; round < 20; ++round) {
    const auto d = corpus::random_diagram(rng, 4, 3);
    const auto nerve = nerve_truncated(d.index(), 2);
    const auto h = refine_diagram(d, nerve);
    for (std::size_t n = 0; n <= 2; ++n)
      for (Cell x = 0; x < nerve.sset().count(n); ++x) CHECK(h.label(n, x) == d.u(nerve.counit(n, x)));
    CHECK(h.target() == d.target());
  }
}

TEST_CASE("simplicial maps and monotone assignments correspond") {
  const auto chain = poset({"0", "1"}, {{0, 1}});
  const auto vee = poset({"a", "b", "t"}, {{0, 2}, {1, 2}});
  for (const auto& index : {chain, vee}) {
    const auto nerve = nerve_truncated(index, 2);
    for (const auto& k : {simplicial::standard_simplex(1, 2), simplicial::simplex_boundary(2, 2)}) {
      const auto maps = simplicial_maps(k, nerve);
      const auto assignments = monotone_assignments(k, index);
      CHECK(maps.size() == assignments.size());
      for (const auto& m : maps) CHECK(transpose_to_map(k, nerve, transpose_to_assignment(k, nerve, m)) == m);
      for (const auto& a : assignments) CHECK(transpose_to_assignment(k, nerve, transpose_to_map(k, nerve, a)) == a);
    }
  }
}

TEST_CASE("transposition rejects non-monotone assignments") {
  const auto chain = poset({"0", "1"}, {{0, 1}});
  const auto nerve = nerve_truncated(chain, 1);
  const auto k = simplicial::standard_simplex(0, 1);
  // The only vertex is below its degenerate edge, so 1 then 0 is not monotone.
  CHECK_THROWS_AS(transpose_to_map(k, nerve, Assignment{{1}, {0}}), InvalidInput);
  CHECK_NOTHROW(transpose_to_map(k, nerve, Assignment{{0}, {0}}));
}

TEST_CASE("simplex preorder has one element per simplex") {
  const auto k = simplicial::standard_simplex(1, 2);
  const auto p = simplex_preorder(k);
  CHECK(p.size() == k.total_cells());
  CHECK(p.id(0) == "0:0");
}

TEST_CASE("slices") {
  const auto vee = poset({"a", "b", "t"}, {{0, 2}, {1, 2}});
  const auto s = under(vee, 0);
  CHECK(s.ids() == std::vector<std::string>{"a", "t"});
  CHECK(s.leq(0, 1));
  for (const auto& index : corpus::posets_up_to_iso(4)) {
    const auto nerve = nerve_truncated(index, 2);
    for (std::size_t i = 0; i < index.size(); ++i) CHECK(slice_refinement_check(i, nerve));
  }
  CHECK_THROWS_AS(under(vee, 3), InvalidInput);
}

}  // TEST_SUITE

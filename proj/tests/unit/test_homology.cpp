#include <atlas/homology.hpp>
#include <atlas/nerve.hpp>

#include <doctest.h>

using namespace atlas;
using namespace atlas::homology;
using simplicial::Level;

namespace {

std::vector<std::size_t> betti(const std::vector<Group>& g) {
  std::vector<std::size_t> out;
  for (const auto& x : g) out.push_back(x.betti);
  return out;
}

}  // namespace

TEST_SUITE("homology") {

TEST_CASE("invariant factors of small integer matrices") {
  // d1 = gcd of entries = 2 and d1 * d2 = |det| = 8.
  std::vector<std::vector<Integer>> m{{2, 4}, {6, 8}};
  CHECK(invariant_factors(m) == std::vector<Integer>{2, 4});
  CHECK(invariant_factors({{0, 0}, {0, 0}}).empty());
  CHECK(invariant_factors({{3}}) == std::vector<Integer>{3});
  CHECK(invariant_factors({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == std::vector<Integer>{1, 3});
  CHECK(invariant_factors({{6, 0}, {0, 4}}) == std::vector<Integer>{2, 12});
}

TEST_CASE("simplices are acyclic and boundaries are spheres") {
  CHECK(betti(homology::homology(simplicial::standard_simplex(2, 3), 2)) == std::vector<std::size_t>{1, 0, 0});
  CHECK(betti(homology::homology(simplicial::simplex_boundary(2, 2), 1)) == std::vector<std::size_t>{1, 1});
  CHECK(betti(homology::homology(simplicial::simplex_boundary(3, 3), 2)) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("nerves of posets") {
  const std::pair<std::size_t, std::size_t> rel[] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  const auto circle = order::FinitePoset::generated({"A", "B", "U", "V"}, rel);
  const auto g = homology::homology(nerve::nerve_truncated(circle, 3).sset(), 2);
  CHECK(betti(g) == std::vector<std::size_t>{1, 1, 0});
  CHECK(g[1].torsion.empty());
  CHECK(betti(homology::homology(nerve::nerve_truncated(order::FinitePoset::discrete(3), 2).sset(), 1)) ==
        std::vector<std::size_t>{3, 0});
}

TEST_CASE("torsion from a two-cell complex") {
  // One vertex, edges a and b, 2-simplices with boundaries 2a - b and b:
  // the cokernel of [[2, 0], [-1, 1]] is Z/2.
  std::vector<Level> levels(3);
  levels[0].count = 1;
  levels[1].count = 2;
  levels[1].faces = {{0, 0}, {0, 0}};
  levels[2].count = 2;
  levels[2].faces = {{0, 1}, {1, 1}, {0, 1}};
  const simplicial::TruncatedSemiSSet g(2, levels);
  const auto s = simplicial::simplicial_envelope(g, 3);
  const auto h = homology::homology(s, 2);
  CHECK(betti(h) == std::vector<std::size_t>{1, 0, 0});
  CHECK(h[1].torsion == std::vector<Integer>{2});
  CHECK(h[2].torsion.empty());
}

TEST_CASE("degree must stay below the truncation") {
  CHECK_THROWS_AS(homology::homology(simplicial::standard_simplex(1, 2), 2), InvalidInput);
}

}  // TEST_SUITE

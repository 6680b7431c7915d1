#include <atlas/corpus.hpp>
#include <atlas/semirep.hpp>

#include <doctest.h>

using namespace atlas;
using namespace atlas::semirep;

namespace {

order::FiniteFrame two_points() {
  const PointSet gens[] = {PointSet(0b01), PointSet(0b10)};
  return order::FiniteFrame::from_generators({"p", "q"}, gens);
}

IndexedFamily family(const std::vector<PointSet>& members) {
  IndexedFamily f;
  for (std::size_t s = 0; s < members.size(); ++s) f.index.push_back("s" + std::to_string(s));
  f.member = members;
  return f;
}

// Oracle: every reindexing map, kept when each member lands inside its image.
std::size_t brute_hom(const IndexedFamily& a, const IndexedFamily& b) {
  if (a.size() == 0) return 1;
  if (b.size() == 0) return 0;
  std::size_t c = 0;
  std::vector<std::size_t> r(a.size(), 0);
  for (;;) {
    bool ok = true;
    for (std::size_t s = 0; s < a.size() && ok; ++s) ok = a.member[s].subset_of(b.member[r[s]]);
    c += ok;
    std::size_t k = r.size();
    while (k > 0 && ++r[k - 1] == b.size()) r[--k] = 0;
    if (k == 0) return c;
  }
}

}  // namespace

TEST_SUITE("semirep") {

TEST_CASE("family validation") {
  const auto f = two_points();
  CHECK_NOTHROW(family({PointSet(0b01), PointSet(0b11)}).validate(f));
  auto dup = family({PointSet(0b01), PointSet(0b10)});
  dup.index[1] = "s0";
  CHECK_THROWS_AS(dup.validate(f), InvalidInput);
  const PointSet gens[] = {PointSet(0b01)};
  const auto sierpinski = order::FiniteFrame::from_generators({"p", "q"}, gens);
  CHECK_THROWS_AS(family({PointSet(0b10)}).validate(sierpinski), InvalidInput);
}

TEST_CASE("morphisms require pointwise inclusion") {
  const auto a = family({PointSet(0b01)});
  const auto b = family({PointSet(0b10), PointSet(0b11)});
  CHECK_NOTHROW(FamilyMorphism(a, b, {1}));
  CHECK_THROWS_AS(FamilyMorphism(a, b, {0}), InvalidInput);
  CHECK_THROWS_AS(FamilyMorphism(a, b, {2}), InvalidInput);
}

TEST_CASE("hom-set sizes agree with the reindexing oracle") {
  const auto frame = two_points();
  std::vector<IndexedFamily> fams;
  for (const auto& o1 : frame.opens()) {
    fams.push_back(family({o1}));
    for (const auto& o2 : frame.opens()) fams.push_back(family({o1, o2}));
  }
  fams.push_back(family({}));
  for (const auto& a : fams)
    for (const auto& b : fams) {
      const auto homs = hom_families(a, b);
      CHECK(homs.size() == brute_hom(a, b));
      CHECK(hom_count(a, b) == homs.size());
      for (std::size_t k = 1; k < homs.size(); ++k) CHECK(homs[k - 1].reindex() < homs[k].reindex());
    }
}

TEST_CASE("identity and composition laws") {
  const auto a = family({PointSet(0b01)});
  const auto b = family({PointSet(0b01), PointSet(0b11)});
  const auto c = family({PointSet(0b11)});
  const FamilyMorphism f(a, b, {0});
  const FamilyMorphism g(b, c, {0, 0});
  CHECK(compose(identity(b), f) == f);
  CHECK(compose(f, identity(a)) == f);
  CHECK(compose(g, f).reindex() == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(compose(f, g), InvalidInput);
}

TEST_CASE("every morphism factors as an inclusion then a local isomorphism") {
  const auto frame = two_points();
  std::vector<IndexedFamily> fams;
  for (const auto& o1 : frame.opens())
    for (const auto& o2 : frame.opens()) fams.push_back(family({o1, o2}));
  for (const auto& a : fams)
    for (const auto& b : fams)
      for (const auto& m : hom_families(a, b)) {
        const auto fac = factor_local_iso(m);
        CHECK(fac.local_iso.is_local_isomorphism());
        CHECK(fac.fixed_index.source() == a);
        for (std::size_t s = 0; s < a.size(); ++s) CHECK(fac.fixed_index.reindex()[s] == s);
        CHECK(compose(fac.local_iso, fac.fixed_index) == m);
      }
}

TEST_CASE("totalization lists the summands containing each open") {
  const auto frame = two_points();
  const auto a = family({PointSet(0b01), PointSet(0b11), PointSet(0b11)});
  const auto t = totalize(frame, a);
  const auto top = frame.index_of(PointSet(0b11));
  const auto p = frame.index_of(PointSet(0b01));
  const auto bottom = frame.index_of(PointSet{});
  CHECK(t.size(top) == 2);
  CHECK(t.size(p) == 3);
  CHECK(t.size(bottom) == 3);
  CHECK(t.size(frame.index_of(PointSet(0b10))) == 2);
  // Restriction keeps the summand.
  for (std::size_t x = 0; x < t.size(top); ++x) CHECK(t.element(p, t.restrict(top, p, x)) == t.element(top, x));
}

TEST_CASE("presheaves from covering restrictions reject disagreeing paths") {
  const auto frame = two_points();
  const auto e = frame.index_of(PointSet{});
  const auto p = frame.index_of(PointSet(0b01));
  const auto q = frame.index_of(PointSet(0b10));
  const auto x = frame.index_of(PointSet(0b11));
  std::vector<std::vector<std::string>> el(4);
  el[e] = {"e0", "e1"};
  el[p] = {"a0", "a1"};
  el[q] = {"b"};
  el[x] = {"x0", "x1"};
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> maps{
      {{x, p}, {0, 1}}, {{x, q}, {0, 0}}, {{p, e}, {0, 1}}, {{q, e}, {0}}};
  CHECK_THROWS_AS(SetPresheaf::from_covers(frame, el, maps), InvalidInput);
  el[e] = {"e"};
  maps[{p, e}] = {0, 0};
  const auto f = SetPresheaf::from_covers(frame, el, maps);
  CHECK(f.restrict(x, e, 1) == 0);
  maps.erase({q, e});
  CHECK_THROWS_AS(SetPresheaf::from_covers(frame, el, maps), InvalidInput);
}

TEST_CASE("open covers of the lattice") {
  const auto covers = open_covers(two_points());
  CHECK(covers.size() == 4);
}

TEST_CASE("tensor of a set diagram with a family diagram") {
  SetDiagram f;
  f.sets = {{"0", "1"}, {"*"}};
  f.arrows = {{0, 1}};
  f.maps = {{0, 0}};
  const auto a = family({PointSet(0b01)});
  const auto b = family({PointSet(0b11)});
  FamilyDiagram d;
  d.objects = {a, b};
  d.arrows = {{0, 1}};
  d.maps = {FamilyMorphism(a, b, {0})};
  const auto t = tensor_family(f, d);
  REQUIRE(t.objects.size() == 2);
  CHECK(t.objects[0].index == std::vector<std::string>{"0|s0", "1|s0"});
  CHECK(t.objects[1].index == std::vector<std::string>{"*|s0"});
  CHECK(t.maps[0].reindex() == std::vector<std::size_t>{0, 0});
}

}  // TEST_SUITE

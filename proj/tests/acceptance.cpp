// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <atlas/corpus.hpp>
#include <atlas/descent.hpp>
#include <atlas/homology.hpp>
#include <atlas/hypercover.hpp>
#include <atlas/lifting.hpp>
#include <atlas/nerve.hpp>
#include <atlas/semirep.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

using namespace atlas;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kTruncation = 3;
constexpr std::size_t kNmax = 3;
constexpr std::size_t kRandomDiagrams = 500;
constexpr std::size_t kRandomLabeled = 200;

struct Line {
  bool pass = true;
  std::string detail;
};

void report(int n, const char* name, const Line& line, double seconds) {
  std::printf("criterion %d %s: %s (%s; %.1fs)\n", n, name, line.pass ? "PASS" : "FAIL", line.detail.c_str(), seconds);
  std::fflush(stdout);
}

template <typename F>
bool timed(int n, const char* name, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  Line line;
  try {
    line = f();
  } catch (const std::exception& e) {
    line = {false, std::string("exception: ") + e.what()};
  }
  report(n, name, line, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return line.pass;
}

// Nerves are shared between diagrams with equal index posets.
class NerveCache {
 public:
  const nerve::TruncatedNerve& get(const order::FinitePoset& index) {
    for (const auto& [p, n] : entries_)
      if (p == index) return *n;
    entries_.emplace_back(index, std::make_unique<nerve::TruncatedNerve>(index, kTruncation));
    return *entries_.back().second;
  }

 private:
  std::vector<std::pair<order::FinitePoset, std::unique_ptr<nerve::TruncatedNerve>>> entries_;
};

// Exhaustive part: every labeled preorder on at most 4 points with its
// standard diagrams. Random part: seeded diagrams with |I| <= 5.
std::vector<lifting::OpenDiagram> diagram_corpus(std::size_t& exhaustive) {
  std::vector<lifting::OpenDiagram> out;
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& p : corpus::labeled_preorders(n))
      for (auto& d : corpus::standard_diagrams(p)) out.push_back(std::move(d));
  exhaustive = out.size();
  corpus::Rng rng(kSeed);
  for (std::size_t k = 0; k < kRandomDiagrams; ++k) out.push_back(corpus::random_diagram(rng, 5, 4));
  return out;
}

std::string count(const char* what, std::size_t n) { return std::string(what) + "=" + std::to_string(n); }

// Natural transformations between two presheaves on the same frame,
// counted by backtracking over (open, element) from the largest open down.
std::size_t count_natural(const semirep::SetPresheaf& a, const semirep::SetPresheaf& b) {
  const auto& opens = a.frame().opens();
  const std::size_t m = opens.size();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t w = m; w-- > 0;)
    for (std::size_t x = 0; x < a.size(w); ++x) slots.emplace_back(w, x);
  std::vector<std::vector<std::size_t>> eta(m);
  for (std::size_t w = 0; w < m; ++w) eta[w].assign(a.size(w), SIZE_MAX);
  std::size_t total = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == slots.size()) {
      ++total;
      return;
    }
    const auto [w, x] = slots[k];
    for (std::size_t y = 0; y < b.size(w); ++y) {
      bool ok = true;
      // Larger opens are already assigned: eta_w(a|w) must equal eta_big(x')|w.
      for (std::size_t big = w + 1; big < m && ok; ++big) {
        if (!opens[w].subset_of(opens[big])) continue;
        for (std::size_t xb = 0; xb < a.size(big) && ok; ++xb)
          if (a.restrict(big, w, xb) == x) ok = b.restrict(big, w, eta[big][xb]) == y;
      }
      if (!ok) continue;
      eta[w][x] = y;
      rec(k + 1);
    }
    eta[w][x] = SIZE_MAX;
  };
  rec(0);
  return total;
}

std::vector<semirep::IndexedFamily> families_up_to(const order::FiniteFrame& frame, std::size_t max) {
  std::vector<semirep::IndexedFamily> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    semirep::IndexedFamily f;
    for (std::size_t s = 0; s < pick.size(); ++s) {
      f.index.push_back("s" + std::to_string(s));
      f.member.push_back(frame.opens()[pick[s]]);
    }
    out.push_back(std::move(f));
    if (pick.size() == max) return;
    for (std::size_t o = from; o < frame.open_count(); ++o) {
      pick.push_back(o);
      rec(o);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

int main() {
  std::size_t exhaustive = 0;
  const auto diagrams = diagram_corpus(exhaustive);
  NerveCache nerves;
  std::vector<hypercover::LabeledSSet> refinements;
  bool all = true;

  all &= timed(1, "atlas-criteria equivalence", [&] {
    const auto shapes = lifting::report_shapes(kNmax);
    std::size_t bad = 0, atlases = 0;
    for (const auto& d : diagrams) {
      const auto rep = lifting::equivalence_report(d, shapes);
      bad += !rep.agree();
      atlases += rep.conditions[0].pass;
    }
    return Line{bad == 0, count("diagrams", diagrams.size()) + " " + count("exhaustive", exhaustive) + " " +
                              count("atlases", atlases) + " " + count("disagreements", bad)};
  });

  all &= timed(2, "nerve theorem", [&] {
    std::size_t bad = 0;
    for (const auto& d : diagrams) {
      auto h = nerve::refine_diagram(d, nerves.get(d.index()));
      bad += lifting::check_atlas(d, lifting::AtlasMode::basic()).pass !=
             hypercover::check_hypercover(h, kTruncation).pass;
      refinements.push_back(std::move(h));
    }
    return Line{bad == 0, count("diagrams", diagrams.size()) + " " + count("disagreements", bad)};
  });

  all &= timed(3, "fill-condition equivalence", [&] {
    std::size_t bad = 0, passing = 0, total = 0;
    const auto agree = [&](const hypercover::LabeledSSet& h, std::size_t nmax) {
      const bool direct = hypercover::check_hypercover(h, nmax).pass;
      bad += direct != hypercover::check_hypercover_dhi(h, nmax).pass;
      passing += direct;
      ++total;
    };
    for (const auto& h : refinements) agree(h, kTruncation);
    std::size_t cech = 0;
    for (const auto& d : diagrams) {
      PointSet target;
      for (PointSet u : d.u()) target |= u;
      agree(hypercover::cech_nerve(d.frame(), d.u(), target, kTruncation), kTruncation);
      ++cech;
    }
    corpus::Rng rng(kSeed + 1);
    const std::size_t before = passing;
    for (std::size_t k = 0; k < kRandomLabeled; ++k) {
      const std::size_t t = 1 + k % 3;
      const auto h = corpus::random_labeled(rng, t, 200);
      if (h.shape().total_cells() > 200) return Line{false, "random labeled object above 200 simplices"};
      agree(h, t);
    }
    const std::size_t random_passing = passing - before;
    return Line{bad == 0, count("objects", total) + " " + count("refinements", refinements.size()) + " " +
                              count("cech", cech) + " " + count("random", kRandomLabeled) + " " +
                              count("random passing", random_passing) + " " +
                              count("passing", passing) + " " + count("disagreements", bad)};
  });
  refinements.clear();

  all &= timed(4, "descent along atlases", [&] {
    std::size_t violations = 0, checks = 0;
    corpus::Rng rng(kSeed + 2);
    const auto run = [&](const order::FinitePreorder& space, const lifting::OpenDiagram& d) {
      for (const auto& b : corpus::bundles_over(space, rng, 2)) {
        const auto f = descent::sections_sheaf(b.total, space, b.projection);
        violations += !descent::check_descent(f, d).pass;
        ++checks;
      }
    };
    for (const auto& d : diagrams)
      if (lifting::check_atlas(d, lifting::AtlasMode::basic()).pass) run(corpus::specialization(d.frame()), d);
    for (const auto& p : corpus::preorders_up_to_iso(5))
      for (const auto& d : corpus::standard_atlases(p, rng)) {
        if (!lifting::check_atlas(d, lifting::AtlasMode::basic()).pass) return Line{false, "generated atlas is not an atlas"};
        run(p, d);
      }

    // The line space x <= y >= z covered by {x,y} and {y,z} without their
    // intersection: the fold bundle has 2 global sections but 4 families.
    const std::pair<std::size_t, std::size_t> rel[] = {{0, 1}, {2, 1}};
    const auto line = order::FinitePreorder::generated({"x", "y", "z"}, rel);
    const auto frame = order::alexandrov_frame(line);
    const lifting::OpenDiagram d(frame, order::FinitePoset::discrete({"U", "V"}),
                                 {frame.parse(std::vector<std::string>{"x", "y"}), frame.parse(std::vector<std::string>{"y", "z"})});
    const auto fold = corpus::bundles_over(line, rng, 0)[1];
    const auto f = descent::sections_sheaf(fold.total, line, fold.projection);
    const auto v = descent::check_descent(f, d);
    const bool counter = !v.pass && v.limit == 4 && v.sections == 2 &&
                         v.failure == descent::DescentVerdict::Failure::not_surjective && descent::revalidate(f, d, v);
    return Line{violations == 0 && counter, count("checks", checks) + " " + count("violations", violations) +
                                                " counterexample limit=" + std::to_string(v.limit) +
                                                " sections=" + std::to_string(v.sections)};
  });

  all &= timed(5, "cofinality evidence", [&] {
    std::size_t bad = 0, pairs = 0;
    std::vector<std::pair<order::FinitePoset, bool>> seen;  // slice class -> contractible in degrees <= 2
    const auto contractible = [&](const order::FinitePoset& slice) {
      for (const auto& [p, ok] : seen)
        if (p.size() == slice.size() && order::find_isomorphism(p, slice)) return ok;
      const auto groups = homology::homology(nerve::nerve_truncated(slice, kTruncation).sset(), 2);
      const bool ok = groups.size() == 3 && groups[0] == homology::Group{1, {}} && groups[1] == homology::Group{0, {}} &&
                      groups[2] == homology::Group{0, {}};
      seen.emplace_back(slice, ok);
      return ok;
    };
    const auto posets = corpus::posets_up_to_iso(5);
    for (const auto& index : posets) {
      const nerve::TruncatedNerve n(index, kTruncation);
      for (std::size_t i = 0; i < index.size(); ++i) {
        ++pairs;
        bad += !contractible(nerve::under(index, i)) || !nerve::slice_refinement_check(i, n);
      }
    }
    return Line{bad == 0, count("posets", posets.size()) + " " + count("pairs", pairs) + " " +
                              count("slice classes", seen.size()) + " " + count("violations", bad)};
  });

  all &= timed(6, "circle example", [&] {
    const std::pair<std::size_t, std::size_t> rel[] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    const auto index = order::FinitePoset::generated({"A", "B", "U", "V"}, rel);
    const auto groups = homology::homology(nerve::nerve_truncated(index, kTruncation).sset(), 2);
    const bool ok = groups[0].betti == 1 && groups[1].betti == 1 && groups[0].torsion.empty() && groups[1].torsion.empty();
    return Line{ok, "betti0=" + std::to_string(groups[0].betti) + " betti1=" + std::to_string(groups[1].betti) +
                        " betti2=" + std::to_string(groups[2].betti)};
  });

  all &= timed(7, "semi-representable equivalence", [&] {
    std::size_t bad = 0, pairs = 0, frames = 0;
    for (const auto& p : corpus::posets_up_to_iso(7, 8)) {
      const auto frame = order::alexandrov_frame(p);
      ++frames;
      const auto fams = families_up_to(frame, 3);
      std::vector<semirep::SetPresheaf> total;
      for (const auto& a : fams) total.push_back(semirep::totalize(frame, a));
      for (std::size_t a = 0; a < fams.size(); ++a)
        for (std::size_t b = 0; b < fams.size(); ++b) {
          ++pairs;
          const std::size_t listed = semirep::hom_families(fams[a], fams[b]).size();
          bad += listed != count_natural(total[a], total[b]) || listed != semirep::hom_count(fams[a], fams[b]);
        }
    }
    return Line{bad == 0, count("frames", frames) + " " + count("pairs", pairs) + " " + count("disagreements", bad)};
  });

  all &= timed(8, "cone-pushout lemma", [&] {
    std::size_t bad = 0, cases = 0;
    for (const auto& k : corpus::posets_up_to_iso(5))
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k.size()); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t x = 0; x < k.size(); ++x)
          if ((mask >> x) & 1U) sub.push_back(x);
        if (!order::is_zero_coinitial(k, sub)) continue;
        ++cases;
        std::vector<std::string> ids;
        for (std::size_t x : sub) ids.push_back(k.id(x));
        const order::FinitePoset k0(ids, [&](std::size_t a, std::size_t b) { return k.leq(sub[a], sub[b]); });
        const auto cone0 = order::left_cone(k0);
        std::vector<std::size_t> into_cone(sub.size());
        for (std::size_t a = 0; a < sub.size(); ++a) into_cone[a] = a;
        const auto po = order::poset_pushout(order::MonotoneMap(k0, cone0, into_cone), order::MonotoneMap(k0, k, sub));
        bad += !order::find_isomorphism(po.poset, order::left_cone(k)).has_value();
      }
    return Line{bad == 0, count("cases", cases) + " " + count("failures", bad)};
  });

  return all ? 0 : 1;
}

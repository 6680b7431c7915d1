#pragma once

// Exhaustive and seeded random generators for small orders, frames, diagrams,
// labeled simplicial sets and bundles.

#include <atlas/hypercover.hpp>
#include <atlas/lifting.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace atlas::corpus {

using Rng = std::mt19937_64;

/// Point names "a", "b", ... used by every generator.
std::vector<std::string> point_names(std::size_t n);

/// Every preorder on the points point_names(n), up to equality (not up to
/// isomorphism): 1, 1, 4, 29, 355 for n = 0..4.
std::vector<order::FinitePreorder> labeled_preorders(std::size_t n);

/// Preorders on at most n points, one per isomorphism class.
std::vector<order::FinitePreorder> preorders_up_to_iso(std::size_t n);

/// Posets on at most n points, one per isomorphism class (88 for n = 5).
/// With max_upsets set, only posets having at most that many up-sets; these
/// give every finite distributive lattice of that size as alexandrov_frame.
std::vector<order::FinitePoset> posets_up_to_iso(std::size_t n, std::optional<std::size_t> max_upsets = std::nullopt);

/// x <= y iff every open containing x contains y. Finite topologies are
/// Alexandrov, so alexandrov_frame of the result gives back the frame.
order::FinitePreorder specialization(const order::FiniteFrame& frame);

/// Number of up-sets of p.
std::size_t upset_count(const order::FinitePreorder& p);

/// Opens indexed by the poset they form under inclusion; ids are describe().
lifting::OpenDiagram inclusion_diagram(const order::FiniteFrame& frame, const std::vector<PointSet>& opens,
                                       std::optional<PointSet> target = std::nullopt);

/// Fixed diagrams over the Alexandrov frame of p: principal up-sets by
/// inclusion, the same opens indexed discretely, a two-set cover with
/// discrete index, and that cover together with its intersection.
std::vector<lifting::OpenDiagram> standard_diagrams(const order::FinitePreorder& p);

/// Diagrams that are atlases by construction: the principal up-set basis, all
/// inhabited opens, and intersection closures of a few seeded covers.
std::vector<lifting::OpenDiagram> standard_atlases(const order::FinitePreorder& p, Rng& rng);

/// Random preorder on n points: random relation pairs, then closure.
order::FinitePreorder random_preorder(Rng& rng, std::size_t n);
/// Random poset on n elements "0".."n-1": random pairs i < j, then closure.
order::FinitePoset random_poset(Rng& rng, std::size_t n);

/// A random diagram with |I| <= max_index over the Alexandrov frame of a
/// random preorder on at most max_points points. Mixes plain monotone
/// diagrams, intersection-closed families and discrete covers.
lifting::OpenDiagram random_diagram(Rng& rng, std::size_t max_index, std::size_t max_points);

/// A face- and degeneracy-closed piece of a random Cech nerve with labels
/// shrunk at random, at most max_cells simplices in total.
hypercover::LabeledSSet random_labeled(Rng& rng, std::size_t truncation, std::size_t max_cells);

struct Bundle {
  std::string name;
  order::FinitePreorder total;
  std::vector<std::size_t> projection;
};

/// The identity, the fold of two copies, and `random` seeded bundles with
/// fibers of size 1 or 2 over p.
std::vector<Bundle> bundles_over(const order::FinitePreorder& p, Rng& rng, std::size_t random);

}  // namespace atlas::corpus

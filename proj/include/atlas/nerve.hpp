#pragma once

// The tautological nerve of a finite poset: n-simplices are monotone maps from
// the inhabited subsets of {0..n}, ordered by reverse inclusion, to I. Larger
// subsets therefore carry smaller values, and the full subset carries the
// least one (the counit).

#include <atlas/hypercover.hpp>
#include <atlas/lifting.hpp>
#include <atlas/simplicial.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace atlas::nerve {

using simplicial::Cell;

class TruncatedNerve {
 public:
  /// At most 64 elements in I.
  TruncatedNerve(order::FinitePoset index, std::size_t truncation);

  const order::FinitePoset& index() const { return index_; }
  std::size_t truncation() const { return sset_.truncation(); }
  const simplicial::TruncatedSSet& sset() const { return sset_; }

  /// Number of inhabited subsets of {0..n}.
  static std::size_t width(std::size_t n) { return (std::size_t{1} << (n + 1)) - 1; }
  /// Values in simplex_subposet(n) order: entry k belongs to subset full - k.
  std::span<const std::uint8_t> values(std::size_t n, Cell x) const {
    return {values_[n].data() + x * width(n), width(n)};
  }
  std::size_t value_at(std::size_t n, Cell x, std::uint32_t subset) const {
    return values_[n][x * width(n) + (width(n) - subset)];
  }
  /// Value at the full subset.
  std::size_t counit(std::size_t n, Cell x) const { return values_[n][x * width(n)]; }
  std::optional<Cell> find(std::size_t n, std::span<const std::uint8_t> values) const;
  /// "{0,1}=w {0}=u {1}=v"
  std::string describe(std::size_t n, Cell x) const;

 private:
  order::FinitePoset index_;
  std::vector<std::vector<std::uint8_t>> values_;
  simplicial::TruncatedSSet sset_;
};

TruncatedNerve nerve_truncated(const order::FinitePoset& index, std::size_t truncation);
std::size_t counit_eval(const TruncatedNerve& nerve, std::size_t n, Cell x);

/// The nerve of D's index, each simplex labeled by U at its counit.
hypercover::LabeledSSet refine_diagram(const lifting::OpenDiagram& d, const TruncatedNerve& nerve);
hypercover::LabeledSSet refine_diagram(const lifting::OpenDiagram& d, std::size_t truncation);

/// Per level, a cell of K to a cell of the nerve.
using SimplicialMap = std::vector<std::vector<Cell>>;
/// Per level, a cell of K to an element of I.
using Assignment = std::vector<std::vector<std::size_t>>;

/// x below theta^*(x) for every operator theta; ids are "n:x".
order::FinitePreorder simplex_preorder(const simplicial::TruncatedSSet& k);

/// f(x) = counit of the image of x. Throws InvalidInput if the map is not
/// simplicial.
Assignment transpose_to_assignment(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve,
                                   const SimplicialMap& map);
/// x goes to the simplex T |-> f(T-face of x). Throws InvalidInput if f is not
/// monotone for simplex_preorder(k).
SimplicialMap transpose_to_map(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve,
                               const Assignment& assignment);

/// Monotone assignments, in lexicographic order of the flattened cells.
std::vector<Assignment> monotone_assignments(const simplicial::TruncatedSSet& k, const order::FinitePoset& index);
/// Simplicial maps K -> nerve by backtracking over cells level by level.
std::vector<SimplicialMap> simplicial_maps(const simplicial::TruncatedSSet& k, const TruncatedNerve& nerve);

/// The slice i | I as a subposet, ids kept.
order::FinitePoset under(const order::FinitePoset& index, std::size_t i);

/// The nerve of i | I embeds into the nerve of I compatibly with faces,
/// degeneracies and counits, with image exactly the simplices whose counit
/// lies above i.
bool slice_refinement_check(std::size_t i, const order::FinitePoset& index, std::size_t truncation);
bool slice_refinement_check(std::size_t i, const TruncatedNerve& nerve);

}  // namespace atlas::nerve

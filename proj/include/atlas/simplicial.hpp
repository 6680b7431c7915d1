#pragma once

// Truncated simplicial and semisimplicial sets, simplex-category
// combinatorics and Eilenberg-Zilber decomposition.
//
// A monotone map theta: [m] -> [n] is written as the vector of its values
// (theta[0], ..., theta[m]). For a simplex x at level n, theta^*(x) lives at
// level m. Faces d_i correspond to the coface [n-1] -> [n] skipping i, and
// degeneracies s_j to the codegeneracy [n+1] -> [n] hitting j twice.

#include <atlas/order.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace atlas::simplicial {

using Cell = std::uint32_t;
using Operator = std::vector<std::size_t>;

/// Data of one level of a truncated (semi)simplicial set.
struct Level {
  std::size_t count = 0;
  /// faces[i][x] = d_i x, for 0 <= i <= n. Empty at level 0.
  std::vector<std::vector<Cell>> faces;
  /// degeneracies[j][x] = s_j x, for 0 <= j <= n. Empty at the top level.
  std::vector<std::vector<Cell>> degeneracies;
  /// Optional cell names; generated on demand when empty.
  std::vector<std::string> names;
};

class TruncatedSSet {
 public:
  TruncatedSSet() = default;
  /// Validates array shapes and every simplicial identity that is defined
  /// within the truncation. Throws InvalidInput on failure.
  TruncatedSSet(std::size_t truncation, std::vector<Level> levels);

  std::size_t truncation() const { return truncation_; }
  std::size_t count(std::size_t n) const { return levels_[n].count; }
  std::size_t total_cells() const;

  Cell face(std::size_t n, std::size_t i, Cell x) const { return levels_[n].faces[i][x]; }
  /// s_j at level n; requires n < truncation().
  Cell degeneracy(std::size_t n, std::size_t j, Cell x) const { return levels_[n].degeneracies[j][x]; }
  bool is_degenerate(std::size_t n, Cell x) const { return degenerate_[n][x] != 0; }
  std::string name(std::size_t n, Cell x) const;
  const Level& level(std::size_t n) const { return levels_[n]; }

  /// theta^*(x) for theta: [m] -> [n] monotone and x at level n.
  Cell apply(std::size_t n, Cell x, std::span<const std::size_t> theta) const;

 private:
  void validate() const;

  std::size_t truncation_ = 0;
  std::vector<Level> levels_;
  std::vector<std::vector<std::uint8_t>> degenerate_;
};

class TruncatedSemiSSet {
 public:
  TruncatedSemiSSet() = default;
  /// Validates d_i d_j = d_{j-1} d_i for i < j. Degeneracy arrays must be empty.
  TruncatedSemiSSet(std::size_t truncation, std::vector<Level> levels);

  std::size_t truncation() const { return truncation_; }
  std::size_t count(std::size_t n) const { return levels_[n].count; }
  Cell face(std::size_t n, std::size_t i, Cell x) const { return levels_[n].faces[i][x]; }
  std::string name(std::size_t n, Cell x) const;
  /// iota^*(x) for an injective monotone iota: [m] -> [n].
  Cell apply_injective(std::size_t n, Cell x, std::span<const std::size_t> iota) const;

 private:
  std::size_t truncation_ = 0;
  std::vector<Level> levels_;
};

struct EzDecomposition {
  std::size_t level = 0;  // dimension k of the core
  Cell core = 0;
  Operator surjection;    // [n] ->> [k]
  bool operator==(const EzDecomposition&) const = default;
};

/// x = surjection^*(core) with core nondegenerate. Every degeneracy path is
/// followed; disagreement between paths throws InvariantViolation.
EzDecomposition ez_decompose(const TruncatedSSet& s, std::size_t n, Cell x);

/// Inhabited subsets of {0..n} as bitmasks, ordered by reverse inclusion
/// (T <= T' iff T contains T'). Elements are listed by decreasing mask, so
/// the full subset (when present) comes first.
struct SubsetPosetModel {
  std::size_t n = 0;
  std::vector<std::uint32_t> subsets;
  std::vector<bool> facet;  // |T| == n

  order::FinitePoset poset() const;
  std::vector<std::size_t> facet_indices() const;
};

SubsetPosetModel simplex_subposet(std::size_t n);
/// Proper inhabited subsets; empty for n = 0.
SubsetPosetModel boundary_subposet(std::size_t n);
/// "{0,2}" style rendering.
std::string subset_name(std::uint32_t mask);

/// Calls visit(std::span<const Cell>) for each tuple (x_0..x_n) of
/// (n-1)-simplices with d_i x_j = d_{j-1} x_i for i < j, in lexicographic
/// order. For n = 0 there is exactly one, empty, tuple. visit returns false
/// to stop. Returns false iff stopped.
bool for_each_boundary_tuple(const TruncatedSSet& s, std::size_t n,
                             const std::function<bool(std::span<const Cell>)>& visit);
std::vector<std::vector<Cell>> boundary_tuples(const TruncatedSSet& s, std::size_t n);

/// All monotone maps [m] -> [n], lexicographic.
std::vector<Operator> monotone_operators(std::size_t m, std::size_t n);
std::vector<Operator> surjections(std::size_t m, std::size_t k);
bool is_injective(std::span<const std::size_t> theta);
bool is_surjective(std::span<const std::size_t> theta, std::size_t n);
/// theta = iota . sigma with sigma surjective onto the image of theta.
std::pair<Operator, Operator> image_factorization(std::span<const std::size_t> theta);
Operator compose(std::span<const std::size_t> outer, std::span<const std::size_t> inner);
std::string operator_name(std::span<const std::size_t> theta);

/// Delta^n truncated at level N; k-simplices are monotone maps [k] -> [n].
TruncatedSSet standard_simplex(std::size_t n, std::size_t truncation);
/// Non-surjective simplices of Delta^n.
TruncatedSSet simplex_boundary(std::size_t n, std::size_t truncation);
/// The semisimplicial simplex: injective maps, levels 0..n.
TruncatedSemiSSet semi_simplex(std::size_t n);
TruncatedSemiSSet semi_boundary(std::size_t n);

/// Left Kan extension along Delta_+ -> Delta, truncated: n-simplices are
/// pairs (nondegenerate k-simplex y, surjection [n] ->> [k]).
TruncatedSSet simplicial_envelope(const TruncatedSemiSSet& g, std::size_t truncation);

/// h_0 of the truncated category of simplices of Delta^n (or of its boundary):
/// elements are monotone maps alpha: [k] -> [n], k <= truncation, with
/// alpha <= beta iff beta = alpha . theta for some theta.
order::FinitePreorder simplices_preorder(std::size_t n, std::size_t truncation, bool boundary_only);

}  // namespace atlas::simplicial

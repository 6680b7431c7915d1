#pragma once

// Integral homology of the normalized chain complex of a truncated simplicial
// set (free on nondegenerate simplices).

#include <atlas/simplicial.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace atlas::homology {

using Integer = boost::multiprecision::cpp_int;

struct Group {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, ascending by divisibility
  bool operator==(const Group&) const = default;
};

/// H_0 .. H_maxdeg. Requires maxdeg < truncation so that every boundary out of
/// degree maxdeg + 1 is known; throws InvalidInput otherwise.
std::vector<Group> homology(const simplicial::TruncatedSSet& s, std::size_t maxdeg);

/// Nonzero diagonal of the Smith normal form, each dividing the next.
std::vector<Integer> invariant_factors(std::vector<std::vector<Integer>> m);

}  // namespace atlas::homology

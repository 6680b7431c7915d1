#pragma once

// Set-indexed families of opens (coproducts of representables), set-valued
// presheaves on a finite frame, and diagrams of families.

#include <atlas/order.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace atlas::semirep {

/// index[s] names a summand, member[s] is its open.
struct IndexedFamily {
  std::vector<std::string> index;
  std::vector<PointSet> member;

  std::size_t size() const { return index.size(); }
  /// Lengths agree, ids distinct, members open in `frame`.
  void validate(const order::FiniteFrame& frame) const;
  bool operator==(const IndexedFamily&) const = default;
};

class FamilyMorphism {
 public:
  /// Requires source.member[s] within target.member[reindex[s]].
  FamilyMorphism(IndexedFamily source, IndexedFamily target, std::vector<std::size_t> reindex);

  const IndexedFamily& source() const { return source_; }
  const IndexedFamily& target() const { return target_; }
  const std::vector<std::size_t>& reindex() const { return reindex_; }
  /// Every member equals its image member.
  bool is_local_isomorphism() const;
  bool operator==(const FamilyMorphism&) const = default;

 private:
  IndexedFamily source_;
  IndexedFamily target_;
  std::vector<std::size_t> reindex_;
};

FamilyMorphism identity(const IndexedFamily& a);
/// g after f; throws InvalidInput when f's target is not g's source.
FamilyMorphism compose(const FamilyMorphism& g, const FamilyMorphism& f);

/// All morphisms A -> B in lexicographic order of reindexings.
std::vector<FamilyMorphism> hom_families(const IndexedFamily& a, const IndexedFamily& b);
/// Product over s of the number of admissible targets; no enumeration.
std::size_t hom_count(const IndexedFamily& a, const IndexedFamily& b);

struct LocalIsoFactorization {
  FamilyMorphism fixed_index;  // identity reindexing, pointwise inclusions
  FamilyMorphism local_iso;    // pointwise equalities
};
LocalIsoFactorization factor_local_iso(const FamilyMorphism& m);

/// Finite sets F(W) for every open W of a frame with restriction maps along
/// every inclusion. Functoriality is validated on construction.
class SetPresheaf {
 public:
  using Restriction = std::function<std::size_t(std::size_t w, std::size_t v, std::size_t x)>;

  SetPresheaf() = default;
  /// elements[w] lists F(opens[w]); restrict(w, v, x) is defined whenever
  /// opens[v] is inside opens[w].
  SetPresheaf(order::FiniteFrame frame, std::vector<std::vector<std::string>> elements, const Restriction& restrict);

  /// Restrictions given only along covering pairs (w, v) of the open lattice,
  /// composed along paths. Path disagreement is rejected.
  static SetPresheaf from_covers(order::FiniteFrame frame, std::vector<std::vector<std::string>> elements,
                                 const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>& maps);

  const order::FiniteFrame& frame() const { return frame_; }
  std::size_t size(std::size_t w) const { return elements_[w].size(); }
  const std::string& element(std::size_t w, std::size_t x) const { return elements_[w][x]; }
  const std::vector<std::string>& elements(std::size_t w) const { return elements_[w]; }
  std::size_t restrict(std::size_t w, std::size_t v, std::size_t x) const {
    return table_[w * frame_.open_count() + v][x];
  }

 private:
  void validate() const;

  order::FiniteFrame frame_;
  std::vector<std::vector<std::string>> elements_;
  std::vector<std::vector<std::size_t>> table_;  // [w * opens + v], empty unless v inside w
};

/// Covering pairs (w, v): opens[v] strictly inside opens[w], nothing between.
std::vector<std::pair<std::size_t, std::size_t>> open_covers(const order::FiniteFrame& frame);

/// F(W) = summands whose member contains W; restrictions are inclusions.
SetPresheaf totalize(const order::FiniteFrame& frame, const IndexedFamily& a);

/// A small index shape given by objects and generating arrows.
struct Arrow {
  std::size_t source = 0;
  std::size_t target = 0;
  bool operator==(const Arrow&) const = default;
};

struct SetDiagram {
  std::vector<std::vector<std::string>> sets;
  std::vector<Arrow> arrows;
  std::vector<std::vector<std::size_t>> maps;  // maps[a]: sets[source] -> sets[target]
  void validate() const;
};

struct FamilyDiagram {
  std::vector<IndexedFamily> objects;
  std::vector<Arrow> arrows;
  std::vector<FamilyMorphism> maps;
  void validate() const;
};

/// At each object k the family F(k) x D(k), members inherited from D; arrows
/// act componentwise. Summand ids are "a|s".
FamilyDiagram tensor_family(const SetDiagram& f, const FamilyDiagram& d);

}  // namespace atlas::semirep

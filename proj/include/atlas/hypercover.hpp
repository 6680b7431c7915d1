#pragma once

// Labeled truncated simplicial sets (index diagrams) and hypercover checks.
// Labels shrink along faces: label(d_i x) contains label(x), and degeneracies
// keep labels unchanged.

#include <atlas/order.hpp>
#include <atlas/semirep.hpp>
#include <atlas/simplicial.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace atlas::hypercover {

using simplicial::Cell;

class LabeledSSet {
 public:
  LabeledSSet() = default;
  /// Throws InvalidInput if a label is not open, leaves the target, grows
  /// along a face or changes along a degeneracy.
  LabeledSSet(order::FiniteFrame frame, simplicial::TruncatedSSet shape, std::vector<std::vector<PointSet>> labels,
              std::optional<PointSet> target = std::nullopt);

  const order::FiniteFrame& frame() const { return frame_; }
  const simplicial::TruncatedSSet& shape() const { return shape_; }
  PointSet label(std::size_t n, Cell x) const { return labels_[n][x]; }
  const std::vector<PointSet>& labels(std::size_t n) const { return labels_[n]; }
  PointSet target() const { return target_; }

 private:
  order::FiniteFrame frame_;
  simplicial::TruncatedSSet shape_;
  std::vector<std::vector<PointSet>> labels_;
  PointSet target_;
};

struct FillVerdict {
  bool pass = true;
  std::size_t tuples = 0;  // boundary tuples examined
  // Witness, meaningful when pass is false.
  std::size_t level = 0;
  std::vector<Cell> tuple;
  PointSet region;    // meet of the tuple's labels; the target at level 0
  PointSet achieved;  // what the fillers (or good opens) reach
  PointSet residue;   // region minus achieved, nonempty on failure
  std::vector<Cell> fillers;
};

struct FillOptions {
  /// Drop degenerate fillers and skip tuples that bound a degenerate simplex.
  bool nondegenerate_only = false;
};

/// Fillers of a boundary tuple are the level-n simplices with exactly that
/// boundary; their labels must cover the tuple's region, for n <= nmax.
FillVerdict check_hypercover(const LabeledSSet& h, std::size_t nmax, FillOptions options = {});

/// The same condition phrased through maps of tensor-representable objects:
/// an open W inside the region is good when some simplex, seen as a map from
/// Delta^n tensor W, restricts on the boundary to the tuple. The good opens
/// must cover the region.
FillVerdict check_hypercover_dhi(const LabeledSSet& h, std::size_t nmax);

/// Recomputes the failing tuple's fillers by a full scan of its level.
bool revalidate(const LabeledSSet& h, const FillVerdict& v);

/// Level n: (n+1)-tuples of cover indices labeled by the meet of their members.
/// Throws InvalidInput unless the cover consists of opens inside v with union v.
LabeledSSet cech_nerve(const order::FiniteFrame& frame, std::span<const PointSet> cover, PointSet v,
                       std::size_t truncation);

/// One simplex per level, labeled v.
LabeledSSet constant_object(const order::FiniteFrame& frame, PointSet v, std::size_t truncation);

/// K tensor W: every simplex of k labeled w.
LabeledSSet tensor_representable(const order::FiniteFrame& frame, simplicial::TruncatedSSet k, PointSet w,
                                 std::optional<PointSet> target = std::nullopt);

/// Level-wise indexed families with one family morphism per face and
/// degeneracy map; faces[n][i] goes from level n to n-1.
struct LabeledFamilies {
  std::vector<semirep::IndexedFamily> levels;
  std::vector<std::vector<semirep::FamilyMorphism>> faces;
  std::vector<std::vector<semirep::FamilyMorphism>> degeneracies;
};

LabeledFamilies labeled_to_families(const LabeledSSet& h);
LabeledSSet families_to_labeled(const order::FiniteFrame& frame, const LabeledFamilies& f, PointSet target);

}  // namespace atlas::hypercover

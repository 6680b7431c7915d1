#pragma once

// Finite posets, preorders, monotone maps, cones, pushouts and finite frames
// of open sets.

#include <atlas/error.hpp>
#include <atlas/point_set.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace atlas::order {

/// Identifiers starting with this character are reserved for generated
/// elements (cone points).
inline constexpr char kReservedPrefix = '@';
inline constexpr std::string_view kConePoint = "@cone";

/// Marks a free position in a partial assignment.
inline constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

using LeqFn = std::function<bool(std::size_t, std::size_t)>;

/// Reflexive, transitive relation on a finite list of named elements.
class FinitePreorder {
 public:
  FinitePreorder() = default;
  /// Validates reflexivity, transitivity and identifier uniqueness.
  FinitePreorder(std::vector<std::string> ids, const LeqFn& leq);

  /// Reflexive-transitive closure of the given pairs (a, b) meaning a <= b.
  static FinitePreorder generated(std::vector<std::string> ids,
                                  std::span<const std::pair<std::size_t, std::size_t>> pairs);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws InvalidInput for unknown identifiers.
  std::size_t index_of(std::string_view id) const;

  bool leq(std::size_t a, std::size_t b) const { return rel_[a * ids_.size() + b] != 0; }

  /// Bitmask views; only available for at most 64 elements.
  bool has_masks() const { return !up_.empty() || ids_.empty(); }
  std::uint64_t up_mask(std::size_t a) const { return up_[a]; }
  std::uint64_t down_mask(std::size_t a) const { return down_[a]; }
  std::uint64_t all_mask() const {
    return ids_.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ids_.size()) - 1;
  }

  bool operator==(const FinitePreorder& o) const { return ids_ == o.ids_ && rel_ == o.rel_; }

 protected:
  FinitePreorder(std::vector<std::string> ids, std::vector<std::uint8_t> rel);
  void index_and_mask();

  std::vector<std::string> ids_;
  std::vector<std::uint8_t> rel_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
};

/// Antisymmetric preorder.
class FinitePoset : public FinitePreorder {
 public:
  FinitePoset() = default;
  FinitePoset(std::vector<std::string> ids, const LeqFn& leq);

  /// Closure of covering pairs; throws InvalidInput if the closure has a cycle.
  static FinitePoset generated(std::vector<std::string> ids,
                               std::span<const std::pair<std::size_t, std::size_t>> pairs);
  static FinitePoset discrete(std::vector<std::string> ids);
  /// Elements "0", "1", ... with no relations.
  static FinitePoset discrete(std::size_t n);

  /// Elements with no strictly smaller element.
  std::vector<std::size_t> minimal_elements() const;

 private:
  friend class FinitePreorder;
  explicit FinitePoset(FinitePreorder checked);
};

class MonotoneMap {
 public:
  /// Validates totality and monotonicity.
  MonotoneMap(FinitePoset source, FinitePoset target, std::vector<std::size_t> assignment);

  const FinitePoset& source() const { return source_; }
  const FinitePoset& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t operator()(std::size_t x) const { return assignment_[x]; }

 private:
  FinitePoset source_;
  FinitePoset target_;
  std::vector<std::size_t> assignment_;
};

bool is_monotone(const FinitePreorder& source, const FinitePreorder& target,
                 std::span<const std::size_t> assignment);

/// Lattice of opens of a finite space, represented extensionally. Opens are
/// kept sorted by (cardinality, bits): bottom first, top last.
class FiniteFrame {
 public:
  FiniteFrame() = default;
  /// Validates closure under pairwise union/intersection and presence of
  /// top and bottom.
  FiniteFrame(std::vector<std::string> points, std::vector<PointSet> opens);

  /// Closes the generators (plus top and bottom) under union and intersection.
  static FiniteFrame from_generators(std::vector<std::string> points,
                                     std::span<const PointSet> generators);

  std::size_t point_count() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<PointSet>& opens() const { return opens_; }
  std::size_t open_count() const { return opens_.size(); }
  PointSet top() const { return PointSet::all(points_.size()); }
  PointSet bottom() const { return PointSet{}; }

  bool is_open(PointSet s) const { return lookup_.contains(s.bits()); }
  /// Position of an open in opens(); throws InvalidInput if not open.
  std::size_t index_of(PointSet s) const;
  /// Point set from point identifiers; throws InvalidInput on unknown ids.
  PointSet parse(std::span<const std::string> point_ids) const;
  std::vector<std::string> point_names(PointSet s) const;
  /// "{a,b}" style rendering.
  std::string describe(PointSet s) const;

  /// Opens ordered by inclusion; element ids are describe(open).
  FinitePoset as_poset() const;

  bool operator==(const FiniteFrame& o) const { return points_ == o.points_ && opens_ == o.opens_; }

 private:
  std::vector<std::string> points_;
  std::vector<PointSet> opens_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

/// P with a fresh minimum kConePoint appended as the last element.
FinitePoset left_cone(const FinitePoset& p);

/// True iff every element of p is bounded below by an element of `subset`.
bool is_zero_coinitial(const FinitePoset& p, std::span<const std::size_t> subset);
bool is_zero_coinitial(const FinitePoset& p, std::span<const std::string> subset);

struct Pushout {
  FinitePoset poset;
  FinitePoset left;                     // P
  FinitePoset right;                    // Q
  std::vector<std::size_t> from_left;   // P -> pushout
  std::vector<std::size_t> from_right;  // Q -> pushout

  MonotoneMap left_map() const { return MonotoneMap(left, poset, from_left); }
  MonotoneMap right_map() const { return MonotoneMap(right, poset, from_right); }
};

/// Pushout of f: R -> P and g: R -> Q in posets: the glued preorder, closed
/// transitively, then quotiented to a poset.
Pushout poset_pushout(const MonotoneMap& f, const MonotoneMap& g);

/// Intersection of u(alpha(k)) over k, or `top` for empty alpha.
PointSet meet_over(PointSet top, std::span<const PointSet> u, std::span<const std::size_t> alpha);
/// U: I -> frame.as_poset(), alpha: K -> I. Empty K gives the frame's top.
PointSet meet_over(const FiniteFrame& frame, const MonotoneMap& u, const MonotoneMap& alpha);

/// Union of family equals v. Throws InvalidInput if a member is not inside v.
bool covers(const FiniteFrame& frame, std::span<const PointSet> family, PointSet v);

struct PosetQuotient {
  FinitePoset poset;
  std::vector<std::size_t> projection;
};

/// Identifies x and y whenever x <= y <= x. Classes are ordered by their
/// first member and named after it.
PosetQuotient preorder_to_poset(const FinitePreorder& q);

/// Up-closed subsets of p.
FiniteFrame alexandrov_frame(const FinitePreorder& p);

/// Order isomorphism a -> b if one exists (exhaustive search).
std::optional<std::vector<std::size_t>> find_isomorphism(const FinitePreorder& a,
                                                         const FinitePreorder& b);

/// Enumerates monotone maps source -> target that agree with `fixed`
/// (kUnassigned entries are free) in lexicographic order of the free values.
/// `visit(std::span<const std::size_t>)` returns false to stop early; the
/// function returns false iff it was stopped. Target must have <= 64 elements.
template <typename Visit>
bool for_each_monotone_map(const FinitePreorder& source, const FinitePreorder& target,
                           std::span<const std::size_t> fixed, Visit&& visit);

// ---------------------------------------------------------------------------

namespace detail {

struct MonotonePlan {
  std::vector<std::size_t> free;
  // For free[k]: (position, true if position <= free[k], i.e. use up mask).
  std::vector<std::vector<std::pair<std::size_t, bool>>> constraints;
  bool consistent = true;
};

MonotonePlan plan_monotone(const FinitePreorder& source, const FinitePreorder& target,
                           std::span<const std::size_t> fixed);

template <typename Visit>
bool run_monotone(const MonotonePlan& plan, const FinitePreorder& target,
                  std::vector<std::size_t>& values, std::size_t k, Visit& visit) {
  if (k == plan.free.size()) return visit(std::span<const std::size_t>(values));
  std::uint64_t cand = target.all_mask();
  for (const auto& [q, below] : plan.constraints[k])
    cand &= below ? target.up_mask(values[q]) : target.down_mask(values[q]);
  const std::size_t p = plan.free[k];
  for (; cand != 0; cand &= cand - 1) {
    values[p] = static_cast<std::size_t>(std::countr_zero(cand));
    if (!run_monotone(plan, target, values, k + 1, visit)) return false;
  }
  values[p] = kUnassigned;
  return true;
}

}  // namespace detail

template <typename Visit>
bool for_each_monotone_map(const FinitePreorder& source, const FinitePreorder& target,
                           std::span<const std::size_t> fixed, Visit&& visit) {
  detail::MonotonePlan plan = detail::plan_monotone(source, target, fixed);
  if (!plan.consistent) return true;
  std::vector<std::size_t> values(fixed.begin(), fixed.end());
  return detail::run_monotone(plan, target, values, 0, visit);
}

}  // namespace atlas::order

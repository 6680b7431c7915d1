#pragma once

// Local lifting problems for diagrams of opens, and the atlas criteria built
// on them.
//
// A diagram U: I -> O(X) is monotone: i <= j gives U_i inside U_j. A lifting
// problem is an embedding K -> L of finite posets with sigma: K -> I; it is
// solved when the regions U_tau of all fillers tau: L -> I extending sigma
// cover U_sigma, the meet of U over sigma (the target V when K is empty).

#include <atlas/order.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace atlas::lifting {

class OpenDiagram {
 public:
  OpenDiagram() = default;
  /// Validates that each u[i] is open, U is monotone and lands inside the
  /// target (the frame's top when omitted).
  OpenDiagram(order::FiniteFrame frame, order::FinitePoset index, std::vector<PointSet> u,
              std::optional<PointSet> target = std::nullopt);

  const order::FiniteFrame& frame() const { return frame_; }
  const order::FinitePoset& index() const { return index_; }
  const std::vector<PointSet>& u() const { return u_; }
  PointSet u(std::size_t i) const { return u_[i]; }
  PointSet target() const { return target_; }

 private:
  order::FiniteFrame frame_;
  order::FinitePoset index_;
  std::vector<PointSet> u_;
  PointSet target_;
};

/// K embedded in L; the embedding must be injective and order-reflecting.
class LiftingShape {
 public:
  LiftingShape(std::string name, order::FinitePoset small, order::FinitePoset big, std::vector<std::size_t> embedding);

  const std::string& name() const { return name_; }
  const order::FinitePoset& small() const { return small_; }
  const order::FinitePoset& big() const { return big_; }
  const std::vector<std::size_t>& embedding() const { return embedding_; }

 private:
  std::string name_;
  order::FinitePoset small_;
  order::FinitePoset big_;
  std::vector<std::size_t> embedding_;
};

/// K inside its left cone; the cone point is the last element of L.
LiftingShape cone_shape(const order::FinitePoset& k, std::string name);
/// Discrete K on k points inside its cone.
LiftingShape discrete_cone_shape(std::size_t k);
/// Proper inhabited subsets of {0..n} inside all inhabited subsets.
LiftingShape subset_shape(std::size_t n);
/// Posetal quotients of h_0 of the categories of simplices of the boundary
/// of Delta^n inside that of Delta^n, simplices of dimension <= truncation.
LiftingShape simplicial_shape(std::size_t n, std::size_t truncation);

struct LiftingOutcome {
  bool pass = true;
  std::string shape;
  std::vector<std::size_t> sigma;  // sigma[k] in I
  PointSet region;                 // U_sigma
  PointSet achieved;               // union of filler regions
  PointSet residue;                // region minus achieved
  /// Fillers found, in lexicographic order; complete whenever pass is false.
  std::vector<std::vector<std::size_t>> fillers;
  std::vector<PointSet> filler_regions;
};

/// Throws InvalidInput when sigma is not a monotone map K -> I.
LiftingOutcome local_lifting_check(const OpenDiagram& d, const LiftingShape& shape, std::span<const std::size_t> sigma);

struct Verdict {
  bool pass = true;
  std::size_t problems = 0;                // lifting problems examined
  std::optional<LiftingOutcome> witness;   // lexicographically first failure
};

/// All monotone sigma: K -> I, stopping at the first failure.
Verdict check_shape(const OpenDiagram& d, const LiftingShape& shape);

struct AtlasMode {
  enum class Kind { basic, finite_sets, subsets };
  Kind kind = Kind::basic;
  std::size_t bound = 0;  // kmax or nmax

  static AtlasMode basic() { return {Kind::basic, 0}; }
  static AtlasMode finite_sets(std::size_t kmax) { return {Kind::finite_sets, kmax}; }
  static AtlasMode subsets(std::size_t nmax) { return {Kind::subsets, nmax}; }
};

/// basic: the U_i cover the target and each U_i & U_j is the union of the
/// U_k with k below both. Evaluated directly, without the lifting engine.
Verdict check_atlas(const OpenDiagram& d, AtlasMode mode);

/// Shapes for the six conditions, built once and reused across diagrams.
struct ReportShapes {
  std::size_t nmax = 0;
  std::vector<LiftingShape> discrete;    // k = 0 .. nmax + 1
  std::vector<LiftingShape> subsets;     // n = 0 .. nmax
  std::vector<LiftingShape> simplicial;  // n = 0 .. nmax
};
ReportShapes report_shapes(std::size_t nmax);

struct EquivalenceReport {
  static constexpr std::array<const char*, 6> kNames = {
      "cone K for K empty or {0,1}",
      "cone K for finite sets K, |K| <= kmax",
      "subset boundary, n in {0,1}",
      "subset boundary, n <= nmax",
      "simplicial boundary, n in {0,1}",
      "simplicial boundary, n <= nmax",
  };
  std::size_t nmax = 0;
  std::array<Verdict, 6> conditions;

  bool agree() const;
};

EquivalenceReport equivalence_report(const OpenDiagram& d, const ReportShapes& shapes);
EquivalenceReport equivalence_report(const OpenDiagram& d, std::size_t nmax);

struct TransferReport {
  bool reduced_pass = false;  // K0 inside its cone, sigma restricted to K0
  bool full_pass = false;     // K inside its cone
  /// reduced_pass implies full_pass.
  bool consistent() const { return !reduced_pass || full_pass; }
};

/// Throws InvalidInput if k0 is not 0-coinitial in k.
TransferReport pushout_transfer_check(const OpenDiagram& d, const order::FinitePoset& k,
                                      std::span<const std::size_t> sigma, std::span<const std::size_t> k0);

/// Re-derives a failure by brute force over all assignments of L's free
/// elements: true iff the outcome is a genuine failure with the stated data.
bool revalidate(const OpenDiagram& d, const LiftingShape& shape, const LiftingOutcome& outcome);

}  // namespace atlas::lifting

#pragma once

// Set-valued sheaves on finite frames and descent along diagrams of opens.
//
// Orientation: a diagram U is monotone, so i <= j gives U_i inside U_j and a
// compatible family restricts downward: s_j restricted to U_i equals s_i.

#include <atlas/lifting.hpp>
#include <atlas/semirep.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace atlas::descent {

using semirep::SetPresheaf;

struct SheafViolation {
  std::size_t open = 0;             // index of V in the frame
  std::vector<std::size_t> family;  // covering antichain of opens strictly below V
  std::size_t sections = 0;         // |F(V)|
  std::size_t compatible = 0;       // compatible tuples over the family
  bool injective = true;
};

/// First violation over all opens V and all antichains of opens strictly
/// below V whose union is V. Antichains suffice: a family and the maximal
/// members of the sieve it generates impose the same condition. The empty
/// family covers the empty open, so F of it must be a singleton.
std::optional<SheafViolation> sheaf_violation(const SetPresheaf& f);
bool is_sheaf(const SetPresheaf& f);

class SetSheaf {
 public:
  /// Throws InvalidInput if f is not a sheaf.
  explicit SetSheaf(SetPresheaf f);
  const SetPresheaf& presheaf() const { return f_; }
  bool sheaf_checked() const { return true; }

 private:
  SetPresheaf f_;
};

/// Sections of a monotone map p: E -> X of finite preorders (continuous for
/// the Alexandrov topologies) over the up-sets of X. Throws InvalidInput if p
/// is not monotone.
SetPresheaf sections_sheaf(const order::FinitePreorder& total, const order::FinitePreorder& base,
                           std::span<const std::size_t> projection);

struct Limit {
  /// families[f][i] is an element of F(U_i); lexicographic order.
  std::vector<std::vector<std::size_t>> families;
  /// comparison[x] = position of the family restricted from x in F(target).
  std::vector<std::size_t> comparison;
};

Limit limit_over_diagram(const SetPresheaf& f, const lifting::OpenDiagram& d);

struct DescentVerdict {
  enum class Failure { none, not_injective, not_surjective };
  bool pass = true;
  Failure failure = Failure::none;
  std::size_t sections = 0;  // |F(target)|
  std::size_t limit = 0;     // number of compatible families
  std::vector<std::size_t> colliding;  // two elements of F(target) with equal restrictions
  std::vector<std::size_t> family;     // a compatible family outside the image
};

DescentVerdict check_descent(const SetPresheaf& f, const lifting::OpenDiagram& d);
DescentVerdict check_descent(const SetSheaf& f, const lifting::OpenDiagram& d);

/// Recomputes restrictions directly to confirm a failing verdict.
bool revalidate(const SetPresheaf& f, const lifting::OpenDiagram& d, const DescentVerdict& v);

std::string failure_name(DescentVerdict::Failure f);

}  // namespace atlas::descent

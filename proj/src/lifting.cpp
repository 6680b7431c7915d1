#include <atlas/lifting.hpp>

#include <atlas/simplicial.hpp>

#include <algorithm>
#include <functional>

namespace atlas::lifting {

OpenDiagram::OpenDiagram(order::FiniteFrame frame, order::FinitePoset index, std::vector<PointSet> u,
                         std::optional<PointSet> target)
    : frame_(std::move(frame)), index_(std::move(index)), u_(std::move(u)) {
  target_ = target.value_or(frame_.top());
  if (!frame_.is_open(target_)) throw InvalidInput("diagram target " + frame_.describe(target_) + " is not open");
  if (u_.size() != index_.size()) throw InvalidInput("diagram assigns no open to some index element");
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!frame_.is_open(u_[i]))
      throw InvalidInput("diagram value at '" + index_.id(i) + "' is not open: " + frame_.describe(u_[i]));
    if (!u_[i].subset_of(target_))
      throw InvalidInput("diagram value at '" + index_.id(i) + "' leaves the target");
  }
  for (std::size_t i = 0; i < u_.size(); ++i)
    for (std::size_t j = 0; j < u_.size(); ++j)
      if (index_.leq(i, j) && !u_[i].subset_of(u_[j]))
        throw InvalidInput("diagram is not monotone: '" + index_.id(i) + "' <= '" + index_.id(j) +
                           "' but the opens are not nested");
}

LiftingShape::LiftingShape(std::string name, order::FinitePoset small, order::FinitePoset big,
                           std::vector<std::size_t> embedding)
    : name_(std::move(name)), small_(std::move(small)), big_(std::move(big)), embedding_(std::move(embedding)) {
  if (embedding_.size() != small_.size()) throw InvalidInput("shape embedding is not total");
  for (std::size_t a = 0; a < embedding_.size(); ++a) {
    if (embedding_[a] >= big_.size()) throw InvalidInput("shape embedding out of range");
    for (std::size_t b = 0; b < embedding_.size(); ++b) {
      if (a != b && embedding_[a] == embedding_[b]) throw InvalidInput("shape embedding is not injective");
      if (small_.leq(a, b) != big_.leq(embedding_[a], embedding_[b]))
        throw InvalidInput("shape embedding does not preserve and reflect the order");
    }
  }
}

LiftingShape cone_shape(const order::FinitePoset& k, std::string name) {
  std::vector<std::size_t> emb(k.size());
  for (std::size_t a = 0; a < k.size(); ++a) emb[a] = a;
  return LiftingShape(std::move(name), k, order::left_cone(k), std::move(emb));
}

LiftingShape discrete_cone_shape(std::size_t k) {
  return cone_shape(order::FinitePoset::discrete(k), "cone over discrete " + std::to_string(k));
}

LiftingShape subset_shape(std::size_t n) {
  const auto big = simplicial::simplex_subposet(n);
  const auto small = simplicial::boundary_subposet(n);
  // The full subset heads big's list; the rest align with small's.
  std::vector<std::size_t> emb(small.subsets.size());
  for (std::size_t a = 0; a < emb.size(); ++a) emb[a] = a + 1;
  return LiftingShape("subset boundary " + std::to_string(n), small.poset(), big.poset(), std::move(emb));
}

LiftingShape simplicial_shape(std::size_t n, std::size_t truncation) {
  if (truncation < n) throw InvalidInput("simplicial shape needs truncation >= n");
  const auto big_pre = simplicial::simplices_preorder(n, truncation, false);
  const auto small_pre = simplicial::simplices_preorder(n, truncation, true);
  auto big = order::preorder_to_poset(big_pre);
  auto small = order::preorder_to_poset(small_pre);
  std::vector<std::size_t> emb(small.poset.size(), order::kUnassigned);
  for (std::size_t a = 0; a < small_pre.size(); ++a)
    emb[small.projection[a]] = big.projection[big_pre.index_of(small_pre.id(a))];
  return LiftingShape("simplicial boundary " + std::to_string(n), std::move(small.poset), std::move(big.poset),
                      std::move(emb));
}

LiftingOutcome local_lifting_check(const OpenDiagram& d, const LiftingShape& shape, std::span<const std::size_t> sigma) {
  const auto& index = d.index();
  if (sigma.size() != shape.small().size()) throw InvalidInput("sigma is not total on K");
  for (std::size_t v : sigma)
    if (v >= index.size()) throw InvalidInput("sigma leaves the index poset");
  if (!order::is_monotone(shape.small(), index, sigma)) throw InvalidInput("sigma is not monotone");

  LiftingOutcome out;
  out.shape = shape.name();
  out.sigma.assign(sigma.begin(), sigma.end());
  out.region = order::meet_over(d.target(), d.u(), sigma);

  std::vector<std::size_t> fixed(shape.big().size(), order::kUnassigned);
  for (std::size_t k = 0; k < sigma.size(); ++k) fixed[shape.embedding()[k]] = sigma[k];
  order::for_each_monotone_map(shape.big(), index, fixed, [&](std::span<const std::size_t> tau) {
    const PointSet r = order::meet_over(d.target(), d.u(), tau);
    out.fillers.emplace_back(tau.begin(), tau.end());
    out.filler_regions.push_back(r);
    out.achieved |= r;
    return !out.region.subset_of(out.achieved);
  });
  out.residue = out.region - out.achieved;
  out.pass = out.residue.empty();
  return out;
}

Verdict check_shape(const OpenDiagram& d, const LiftingShape& shape) {
  Verdict v;
  const std::vector<std::size_t> free(shape.small().size(), order::kUnassigned);
  order::for_each_monotone_map(shape.small(), d.index(), free, [&](std::span<const std::size_t> sigma) {
    ++v.problems;
    LiftingOutcome o = local_lifting_check(d, shape, sigma);
    if (o.pass) return true;
    v.pass = false;
    v.witness = std::move(o);
    return false;
  });
  return v;
}

namespace {

Verdict merge(std::initializer_list<const LiftingShape*> shapes, const OpenDiagram& d) {
  Verdict total;
  for (const LiftingShape* s : shapes) {
    Verdict v = check_shape(d, *s);
    total.problems += v.problems;
    if (!v.pass) {
      total.pass = false;
      total.witness = std::move(v.witness);
      return total;
    }
  }
  return total;
}

Verdict merge(const std::vector<LiftingShape>& shapes, std::size_t upto, const OpenDiagram& d) {
  Verdict total;
  for (std::size_t i = 0; i <= upto && i < shapes.size(); ++i) {
    Verdict v = check_shape(d, shapes[i]);
    total.problems += v.problems;
    if (!v.pass) {
      total.pass = false;
      total.witness = std::move(v.witness);
      return total;
    }
  }
  return total;
}

Verdict check_basic(const OpenDiagram& d) {
  Verdict v;
  const auto& index = d.index();
  const auto fail = [&](std::string shape, std::vector<std::size_t> sigma, PointSet region, PointSet achieved,
                        std::vector<std::vector<std::size_t>> fillers, std::vector<PointSet> regions) {
    LiftingOutcome o;
    o.pass = false;
    o.shape = std::move(shape);
    o.sigma = std::move(sigma);
    o.region = region;
    o.achieved = achieved;
    o.residue = region - achieved;
    o.fillers = std::move(fillers);
    o.filler_regions = std::move(regions);
    v.pass = false;
    v.witness = std::move(o);
  };

  ++v.problems;
  PointSet all;
  std::vector<std::vector<std::size_t>> singles;
  for (std::size_t i = 0; i < index.size(); ++i) {
    all |= d.u(i);
    singles.push_back({i});
  }
  if (all != d.target()) {
    fail("cone over discrete 0", {}, d.target(), all, std::move(singles), d.u());
    return v;
  }
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = 0; j < index.size(); ++j) {
      ++v.problems;
      const PointSet region = d.u(i) & d.u(j);
      PointSet below;
      std::vector<std::vector<std::size_t>> fillers;
      std::vector<PointSet> regions;
      for (std::size_t k = 0; k < index.size(); ++k)
        if (index.leq(k, i) && index.leq(k, j)) {
          below |= d.u(k);
          fillers.push_back({i, j, k});
          regions.push_back(d.u(k));
        }
      if (below != region) {
        fail("cone over discrete 2", {i, j}, region, below, std::move(fillers), std::move(regions));
        return v;
      }
    }
  return v;
}

}  // namespace

Verdict check_atlas(const OpenDiagram& d, AtlasMode mode) {
  switch (mode.kind) {
    case AtlasMode::Kind::basic:
      return check_basic(d);
    case AtlasMode::Kind::finite_sets: {
      std::vector<LiftingShape> shapes;
      for (std::size_t k = 0; k <= mode.bound; ++k) shapes.push_back(discrete_cone_shape(k));
      return merge(shapes, mode.bound, d);
    }
    case AtlasMode::Kind::subsets: {
      std::vector<LiftingShape> shapes;
      for (std::size_t n = 0; n <= mode.bound; ++n) shapes.push_back(subset_shape(n));
      return merge(shapes, mode.bound, d);
    }
  }
  throw InvariantViolation("unknown atlas mode");
}

ReportShapes report_shapes(std::size_t nmax) {
  if (nmax < 1) throw InvalidInput("equivalence report needs nmax >= 1");
  ReportShapes s;
  s.nmax = nmax;
  for (std::size_t k = 0; k <= nmax + 1; ++k) s.discrete.push_back(discrete_cone_shape(k));
  for (std::size_t n = 0; n <= nmax; ++n) {
    s.subsets.push_back(subset_shape(n));
    // One level above n so that degenerate simplices actually get collapsed.
    s.simplicial.push_back(simplicial_shape(n, n + 1));
  }
  return s;
}

bool EquivalenceReport::agree() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [&](const Verdict& v) { return v.pass == conditions[0].pass; });
}

EquivalenceReport equivalence_report(const OpenDiagram& d, const ReportShapes& shapes) {
  EquivalenceReport r;
  r.nmax = shapes.nmax;
  r.conditions[0] = merge({&shapes.discrete[0], &shapes.discrete[2]}, d);
  r.conditions[1] = merge(shapes.discrete, shapes.nmax + 1, d);
  r.conditions[2] = merge(shapes.subsets, 1, d);
  r.conditions[3] = merge(shapes.subsets, shapes.nmax, d);
  r.conditions[4] = merge(shapes.simplicial, 1, d);
  r.conditions[5] = merge(shapes.simplicial, shapes.nmax, d);
  return r;
}

EquivalenceReport equivalence_report(const OpenDiagram& d, std::size_t nmax) {
  return equivalence_report(d, report_shapes(nmax));
}

TransferReport pushout_transfer_check(const OpenDiagram& d, const order::FinitePoset& k,
                                      std::span<const std::size_t> sigma, std::span<const std::size_t> k0) {
  if (!order::is_zero_coinitial(k, k0)) throw InvalidInput("reduction subset is not 0-coinitial");
  std::vector<std::string> ids;
  for (std::size_t a : k0) ids.push_back(k.id(a));
  order::FinitePoset sub(std::move(ids), [&](std::size_t a, std::size_t b) { return k.leq(k0[a], k0[b]); });
  std::vector<std::size_t> restricted;
  for (std::size_t a : k0) restricted.push_back(sigma[a]);
  TransferReport r;
  r.full_pass = local_lifting_check(d, cone_shape(k, "cone over K"), sigma).pass;
  r.reduced_pass = local_lifting_check(d, cone_shape(sub, "cone over K0"), restricted).pass;
  return r;
}

bool revalidate(const OpenDiagram& d, const LiftingShape& shape, const LiftingOutcome& outcome) {
  if (outcome.pass || outcome.sigma.size() != shape.small().size()) return false;
  const auto& index = d.index();
  const auto& big = shape.big();
  PointSet region = d.target();
  for (std::size_t v : outcome.sigma) {
    if (v >= index.size()) return false;
    region &= d.u(v);
  }
  if (region != outcome.region) return false;

  std::vector<std::size_t> tau(big.size(), order::kUnassigned);
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < outcome.sigma.size(); ++k) tau[shape.embedding()[k]] = outcome.sigma[k];
  for (std::size_t l = 0; l < big.size(); ++l)
    if (tau[l] == order::kUnassigned) free.push_back(l);

  PointSet achieved;
  std::function<void(std::size_t)> rec = [&](std::size_t f) {
    if (f == free.size()) {
      for (std::size_t a = 0; a < big.size(); ++a)
        for (std::size_t b = 0; b < big.size(); ++b)
          if (big.leq(a, b) && !index.leq(tau[a], tau[b])) return;
      PointSet r = d.target();
      for (std::size_t v : tau) r &= d.u(v);
      achieved |= r;
      return;
    }
    for (std::size_t i = 0; i < index.size(); ++i) {
      tau[free[f]] = i;
      rec(f + 1);
    }
    tau[free[f]] = order::kUnassigned;
  };
  rec(0);
  if (achieved != outcome.achieved || region - achieved != outcome.residue || outcome.residue.empty()) return false;
  PointSet rebuilt = outcome.residue;
  for (PointSet r : outcome.filler_regions) rebuilt |= r;
  return rebuilt == region;
}

}  // namespace atlas::lifting

#include <atlas/hypercover.hpp>

#include <algorithm>
#include <bit>

namespace atlas::hypercover {

LabeledSSet::LabeledSSet(order::FiniteFrame frame, simplicial::TruncatedSSet shape,
                         std::vector<std::vector<PointSet>> labels, std::optional<PointSet> target)
    : frame_(std::move(frame)), shape_(std::move(shape)), labels_(std::move(labels)) {
  target_ = target.value_or(frame_.top());
  if (!frame_.is_open(target_)) throw InvalidInput("labeled object: target is not open");
  const std::size_t top = shape_.truncation();
  if (labels_.size() != top + 1) throw InvalidInput("labeled object: expected one label list per level");
  for (std::size_t n = 0; n <= top; ++n) {
    if (labels_[n].size() != shape_.count(n))
      throw InvalidInput("labeled object: level " + std::to_string(n) + " has the wrong number of labels");
    for (Cell x = 0; x < shape_.count(n); ++x) {
      const PointSet l = labels_[n][x];
      const auto where = [&] { return " at " + shape_.name(n, x); };
      if (!frame_.is_open(l)) throw InvalidInput("labeled object: label is not open" + where());
      if (!l.subset_of(target_)) throw InvalidInput("labeled object: label leaves the target" + where());
      for (std::size_t i = 0; n > 0 && i <= n; ++i)
        if (!l.subset_of(labels_[n - 1][shape_.face(n, i, x)]))
          throw InvalidInput("labeled object: label grows along face d" + std::to_string(i) + where());
      for (std::size_t j = 0; n < top && j <= n; ++j)
        if (labels_[n + 1][shape_.degeneracy(n, j, x)] != l)
          throw InvalidInput("labeled object: label changes along degeneracy s" + std::to_string(j) + where());
    }
  }
}

namespace {

/// Level-n cells sorted by a boundary key of width n+1.
class KeyIndex {
 public:
  KeyIndex(std::size_t count, std::size_t width) : count_(count), width_(width), keys_(count * width) {}

  Cell* key(Cell x) { return keys_.data() + static_cast<std::size_t>(x) * width_; }

  void finish() {
    order_.resize(count_);
    for (std::size_t x = 0; x < order_.size(); ++x) order_[x] = static_cast<Cell>(x);
    std::stable_sort(order_.begin(), order_.end(), [&](Cell a, Cell b) { return less(key_of(a), key_of(b)); });
  }

  std::span<const Cell> lookup(std::span<const Cell> k) const {
    auto lo = std::lower_bound(order_.begin(), order_.end(), k,
                               [&](Cell a, std::span<const Cell> q) { return less(key_of(a), q); });
    auto hi = std::upper_bound(lo, order_.end(), k,
                               [&](std::span<const Cell> q, Cell a) { return less(q, key_of(a)); });
    return {lo, hi};
  }

 private:
  std::span<const Cell> key_of(Cell x) const {
    return {keys_.data() + static_cast<std::size_t>(x) * width_, width_};
  }
  static bool less(std::span<const Cell> a, std::span<const Cell> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t count_;
  std::size_t width_;
  std::vector<Cell> keys_;
  std::vector<Cell> order_;
};

PointSet tuple_region(const LabeledSSet& h, std::size_t n, std::span<const Cell> tuple) {
  PointSet r = h.target();
  for (Cell c : tuple) r &= h.label(n - 1, c);
  return r;
}

void fail_with(FillVerdict& v, std::size_t n, std::span<const Cell> tuple, PointSet region, PointSet achieved,
               std::span<const Cell> fillers) {
  v.pass = false;
  v.level = n;
  v.tuple.assign(tuple.begin(), tuple.end());
  v.region = region;
  v.achieved = achieved;
  v.residue = region - achieved;
  v.fillers.assign(fillers.begin(), fillers.end());
}

}  // namespace

FillVerdict check_hypercover(const LabeledSSet& h, std::size_t nmax, FillOptions options) {
  const auto& s = h.shape();
  if (nmax > s.truncation()) throw InvalidInput("hypercover check above the truncation");
  FillVerdict v;
  for (std::size_t n = 0; n <= nmax && v.pass; ++n) {
    if (n == 0) {
      ++v.tuples;
      std::vector<Cell> all(s.count(0));
      PointSet reached;
      for (Cell x = 0; x < all.size(); ++x) {
        all[x] = x;
        reached |= h.label(0, x);
      }
      if (reached != h.target()) fail_with(v, 0, {}, h.target(), reached, all);
      continue;
    }
    KeyIndex index(s.count(n), n + 1);
    for (Cell x = 0; x < s.count(n); ++x) {
      Cell* k = index.key(x);
      for (std::size_t i = 0; i <= n; ++i) k[i] = s.face(n, i, x);
    }
    index.finish();
    simplicial::for_each_boundary_tuple(s, n, [&](std::span<const Cell> tuple) {
      const auto fillers = index.lookup(tuple);
      if (options.nondegenerate_only &&
          std::any_of(fillers.begin(), fillers.end(), [&](Cell c) { return s.is_degenerate(n, c); }))
        return true;
      ++v.tuples;
      const PointSet region = tuple_region(h, n, tuple);
      PointSet reached;
      for (Cell c : fillers) reached |= h.label(n, c);
      if (region.subset_of(reached)) return true;
      fail_with(v, n, tuple, region, reached & region, fillers);
      return false;
    });
  }
  return v;
}

FillVerdict check_hypercover_dhi(const LabeledSSet& h, std::size_t nmax) {
  const auto& s = h.shape();
  if (nmax > s.truncation()) throw InvalidInput("hypercover check above the truncation");
  const auto& opens = h.frame().opens();
  FillVerdict v;
  for (std::size_t n = 0; n <= nmax && v.pass; ++n) {
    // A simplex tau is a map Delta^n -> shape; walk the nondegenerate
    // simplices of Delta^n (inhabited subsets T of [n]) from the top down,
    // reaching each T from T plus its lowest missing vertex.
    const std::uint32_t full = (std::uint32_t{1} << (n + 1)) - 1;
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = full; m >= 1; --m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
    std::vector<Cell> image(full + 1);
    std::vector<PointSet> deepest(s.count(n));
    KeyIndex index(s.count(n), n == 0 ? 0 : n + 1);
    for (Cell tau = 0; tau < s.count(n); ++tau) {
      PointSet meet = h.target();
      for (std::uint32_t m : masks) {
        if (m == full) {
          image[m] = tau;
        } else {
          const std::uint32_t missing = full & ~m;
          const std::uint32_t b = missing & (~missing + 1);
          const std::uint32_t parent = m | b;
          const auto pos = static_cast<std::size_t>(std::popcount(parent & (b - 1)));
          image[m] = s.face(static_cast<std::size_t>(std::popcount(parent)) - 1, pos, image[parent]);
        }
        meet &= h.label(static_cast<std::size_t>(std::popcount(m)) - 1, image[m]);
      }
      deepest[tau] = meet;
      Cell* k = index.key(tau);
      for (std::size_t i = 0; i < n + 1 && n > 0; ++i) k[i] = image[full & ~(std::uint32_t{1} << i)];
    }
    index.finish();

    const auto examine = [&](std::span<const Cell> tuple) {
      ++v.tuples;
      const PointSet region = n == 0 ? h.target() : tuple_region(h, n, tuple);
      const auto group = index.lookup(n == 0 ? std::span<const Cell>() : tuple);
      PointSet good;
      for (PointSet w : opens) {
        if (!w.subset_of(region) || w.subset_of(good)) continue;
        for (Cell tau : group)
          if (w.subset_of(deepest[tau])) {
            good |= w;
            break;
          }
      }
      if (region.subset_of(good)) return true;
      fail_with(v, n, tuple, region, good, group);
      return false;
    };
    if (n == 0) {
      examine({});
    } else {
      simplicial::for_each_boundary_tuple(s, n, [&](std::span<const Cell> t) {
        // The Yoneda keys list facets as d_0 .. d_n, matching the tuple.
        return examine(t);
      });
    }
  }
  return v;
}

bool revalidate(const LabeledSSet& h, const FillVerdict& v) {
  const auto& s = h.shape();
  if (v.pass || v.level > s.truncation()) return false;
  const std::size_t n = v.level;
  if (v.tuple.size() != (n == 0 ? 0 : n + 1)) return false;
  for (Cell c : v.tuple)
    if (c >= s.count(n - 1)) return false;
  for (std::size_t j = 1; j < v.tuple.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (n >= 2 && s.face(n - 1, i, v.tuple[j]) != s.face(n - 1, j - 1, v.tuple[i])) return false;
  PointSet region = h.target();
  for (Cell c : v.tuple) region &= h.label(n - 1, c);
  std::vector<Cell> fillers;
  PointSet reached;
  for (Cell x = 0; x < s.count(n); ++x) {
    bool match = true;
    for (std::size_t i = 0; n > 0 && i <= n && match; ++i) match = s.face(n, i, x) == v.tuple[i];
    if (!match) continue;
    fillers.push_back(x);
    reached |= h.label(n, x);
  }
  const PointSet residue = region - reached;
  return region == v.region && !residue.empty() && residue == v.residue && fillers == v.fillers;
}

LabeledSSet cech_nerve(const order::FiniteFrame& frame, std::span<const PointSet> cover, PointSet v,
                       std::size_t truncation) {
  if (!frame.is_open(v)) throw InvalidInput("cech nerve: target is not open");
  for (PointSet u : cover)
    if (!frame.is_open(u)) throw InvalidInput("cech nerve: cover member " + frame.describe(u) + " is not open");
  if (!order::covers(frame, cover, v)) throw InvalidInput("cech nerve: family does not cover " + frame.describe(v));
  const std::size_t c = cover.size();
  std::vector<std::size_t> count(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    std::size_t p = 1;
    for (std::size_t k = 0; k <= n; ++k) p *= c;
    count[n] = p;
  }
  const auto decode = [&](std::size_t n, std::size_t x) {
    std::vector<std::size_t> t(n + 1);
    for (std::size_t k = n + 1; k-- > 0;) {
      t[k] = x % c;
      x /= c;
    }
    return t;
  };
  const auto encode = [&](const std::vector<std::size_t>& t) {
    std::size_t x = 0;
    for (std::size_t a : t) x = x * c + a;
    return static_cast<Cell>(x);
  };
  std::vector<simplicial::Level> levels(truncation + 1);
  std::vector<std::vector<PointSet>> labels(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    auto& lv = levels[n];
    lv.count = count[n];
    if (n > 0) lv.faces.assign(n + 1, std::vector<Cell>(count[n]));
    if (n < truncation) lv.degeneracies.assign(n + 1, std::vector<Cell>(count[n]));
    for (std::size_t x = 0; x < count[n]; ++x) {
      const auto t = decode(n, x);
      std::string name = "(";
      PointSet l = v;
      for (std::size_t k = 0; k <= n; ++k) {
        name += (k ? "," : "") + std::to_string(t[k]);
        l &= cover[t[k]];
      }
      lv.names.push_back(name + ")");
      labels[n].push_back(l);
      for (std::size_t i = 0; n > 0 && i <= n; ++i) {
        auto f = t;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        lv.faces[i][x] = encode(f);
      }
      for (std::size_t j = 0; n < truncation && j <= n; ++j) {
        auto d = t;
        d.insert(d.begin() + static_cast<std::ptrdiff_t>(j), t[j]);
        lv.degeneracies[j][x] = encode(d);
      }
    }
  }
  return LabeledSSet(frame, simplicial::TruncatedSSet(truncation, std::move(levels)), std::move(labels), v);
}

LabeledSSet constant_object(const order::FiniteFrame& frame, PointSet v, std::size_t truncation) {
  return tensor_representable(frame, simplicial::standard_simplex(0, truncation), v, v);
}

LabeledSSet tensor_representable(const order::FiniteFrame& frame, simplicial::TruncatedSSet k, PointSet w,
                                 std::optional<PointSet> target) {
  std::vector<std::vector<PointSet>> labels;
  for (std::size_t n = 0; n <= k.truncation(); ++n) labels.emplace_back(k.count(n), w);
  return LabeledSSet(frame, std::move(k), std::move(labels), target);
}

LabeledFamilies labeled_to_families(const LabeledSSet& h) {
  const auto& s = h.shape();
  LabeledFamilies out;
  for (std::size_t n = 0; n <= s.truncation(); ++n) {
    semirep::IndexedFamily fam;
    for (Cell x = 0; x < s.count(n); ++x) {
      fam.index.push_back(s.name(n, x));
      fam.member.push_back(h.label(n, x));
    }
    out.levels.push_back(std::move(fam));
  }
  out.faces.resize(s.truncation() + 1);
  out.degeneracies.resize(s.truncation() + 1);
  for (std::size_t n = 0; n <= s.truncation(); ++n) {
    for (std::size_t i = 0; n > 0 && i <= n; ++i) {
      const auto& f = s.level(n).faces[i];
      out.faces[n].emplace_back(out.levels[n], out.levels[n - 1], std::vector<std::size_t>(f.begin(), f.end()));
    }
    for (std::size_t j = 0; n < s.truncation() && j <= n; ++j) {
      const auto& d = s.level(n).degeneracies[j];
      out.degeneracies[n].emplace_back(out.levels[n], out.levels[n + 1],
                                       std::vector<std::size_t>(d.begin(), d.end()));
    }
  }
  return out;
}

LabeledSSet families_to_labeled(const order::FiniteFrame& frame, const LabeledFamilies& f, PointSet target) {
  if (f.levels.empty()) throw InvalidInput("families: no levels");
  const std::size_t top = f.levels.size() - 1;
  if (f.faces.size() != top + 1 || f.degeneracies.size() != top + 1)
    throw InvalidInput("families: structure maps do not match the levels");
  std::vector<simplicial::Level> levels(top + 1);
  std::vector<std::vector<PointSet>> labels(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    const auto& fam = f.levels[n];
    fam.validate(frame);
    levels[n].count = fam.size();
    levels[n].names = fam.index;
    labels[n] = fam.member;
    for (const auto& m : f.faces[n]) {
      if (n == 0 || !(m.source() == fam) || !(m.target() == f.levels[n - 1]))
        throw InvalidInput("families: face morphism between the wrong levels");
      levels[n].faces.emplace_back(m.reindex().begin(), m.reindex().end());
    }
    for (const auto& m : f.degeneracies[n]) {
      if (n == top || !(m.source() == fam) || !(m.target() == f.levels[n + 1]))
        throw InvalidInput("families: degeneracy morphism between the wrong levels");
      levels[n].degeneracies.emplace_back(m.reindex().begin(), m.reindex().end());
    }
  }
  return LabeledSSet(frame, simplicial::TruncatedSSet(top, std::move(levels)), std::move(labels), target);
}

}  // namespace atlas::hypercover

#include <atlas/descent.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace atlas::descent {

namespace {

// Number of tuples (s_a in F(W_a)) agreeing on pairwise intersections.
std::size_t count_compatible(const SetPresheaf& f, std::span<const std::size_t> family) {
  const auto& frame = f.frame();
  const auto& opens = frame.opens();
  const std::size_t m = family.size();
  std::vector<std::size_t> meet(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) meet[a * m + b] = frame.index_of(opens[family[a]] & opens[family[b]]);
  std::vector<std::size_t> cur(m);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == m) {
      ++count;
      return;
    }
    for (std::size_t x = 0; x < f.size(family[a]); ++x) {
      bool ok = true;
      for (std::size_t b = 0; b < a && ok; ++b) {
        const std::size_t w = meet[a * m + b];
        ok = f.restrict(family[a], w, x) == f.restrict(family[b], w, cur[b]);
      }
      if (!ok) continue;
      cur[a] = x;
      rec(a + 1);
    }
  };
  rec(0);
  return count;
}

std::optional<SheafViolation> check_family(const SetPresheaf& f, std::size_t v, std::span<const std::size_t> family) {
  std::map<std::vector<std::size_t>, std::size_t> images;
  bool injective = true;
  for (std::size_t x = 0; x < f.size(v) && injective; ++x) {
    std::vector<std::size_t> img;
    for (std::size_t w : family) img.push_back(f.restrict(v, w, x));
    injective = images.emplace(std::move(img), x).second;
  }
  const std::size_t compatible = count_compatible(f, family);
  if (injective && compatible == f.size(v)) return std::nullopt;
  return SheafViolation{v, {family.begin(), family.end()}, f.size(v), compatible, injective};
}

}  // namespace

std::optional<SheafViolation> sheaf_violation(const SetPresheaf& f) {
  const auto& opens = f.frame().opens();
  if (opens.size() > 64) throw InvalidInput("sheaf check: frames are limited to 64 opens");
  for (std::size_t v = 0; v < opens.size(); ++v) {
    std::vector<std::size_t> below;
    for (std::size_t w = 0; w < opens.size(); ++w)
      if (w != v && opens[w].subset_of(opens[v])) below.push_back(w);
    std::vector<PointSet> reach(below.size() + 1);
    for (std::size_t k = below.size(); k-- > 0;) reach[k] = reach[k + 1] | opens[below[k]];

    std::optional<SheafViolation> found;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, PointSet)> rec = [&](std::size_t k, PointSet joined) {
      if (found || !opens[v].subset_of(joined | reach[k])) return;
      if (k == below.size()) {
        found = check_family(f, v, chosen);
        return;
      }
      const PointSet w = opens[below[k]];
      const bool free = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
        return opens[c].subset_of(w) || w.subset_of(opens[c]);
      });
      if (free) {
        chosen.push_back(below[k]);
        rec(k + 1, joined | w);
        chosen.pop_back();
      }
      rec(k + 1, joined);
    };
    rec(0, PointSet{});
    if (found) return found;
  }
  return std::nullopt;
}

bool is_sheaf(const SetPresheaf& f) { return !sheaf_violation(f).has_value(); }

SetSheaf::SetSheaf(SetPresheaf f) : f_(std::move(f)) {
  if (auto v = sheaf_violation(f_))
    throw InvalidInput("presheaf is not a sheaf over " + f_.frame().describe(f_.frame().opens()[v->open]));
}

SetPresheaf sections_sheaf(const order::FinitePreorder& total, const order::FinitePreorder& base,
                           std::span<const std::size_t> projection) {
  if (projection.size() != total.size()) throw InvalidInput("bundle: projection is not total");
  for (std::size_t x : projection)
    if (x >= base.size()) throw InvalidInput("bundle: projection leaves the base");
  if (!order::is_monotone(total, base, projection)) throw InvalidInput("bundle: projection is not continuous");
  auto frame = order::alexandrov_frame(base);
  const auto& opens = frame.opens();

  // sections[w]: for each point of opens[w] in ascending order, a point of E.
  std::vector<std::vector<std::vector<std::size_t>>> sections(opens.size());
  std::vector<std::vector<std::string>> names(opens.size());
  for (std::size_t w = 0; w < opens.size(); ++w) {
    std::vector<std::size_t> points;
    opens[w].for_each([&](std::size_t x) { points.push_back(x); });
    std::vector<std::size_t> cur(points.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == points.size()) {
        sections[w].push_back(cur);
        return;
      }
      for (std::size_t e = 0; e < total.size(); ++e) {
        if (projection[e] != points[k]) continue;
        bool ok = true;
        for (std::size_t a = 0; a < k && ok; ++a) {
          if (base.leq(points[a], points[k])) ok = total.leq(cur[a], e);
          if (ok && base.leq(points[k], points[a])) ok = total.leq(e, cur[a]);
        }
        if (!ok) continue;
        cur[k] = e;
        rec(k + 1);
      }
    };
    rec(0);
    for (const auto& s : sections[w]) {
      std::string name = "{";
      for (std::size_t k = 0; k < s.size(); ++k)
        name += (k ? "," : "") + base.id(points[k]) + ":" + total.id(s[k]);
      names[w].push_back(name + "}");
    }
  }
  return SetPresheaf(frame, std::move(names), [&](std::size_t w, std::size_t v, std::size_t x) {
    std::vector<std::size_t> restricted;
    std::size_t k = 0;
    opens[w].for_each([&](std::size_t p) {
      if (opens[v].contains(p)) restricted.push_back(sections[w][x][k]);
      ++k;
    });
    const auto& list = sections[v];
    return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), restricted) - list.begin());
  });
}

Limit limit_over_diagram(const SetPresheaf& f, const lifting::OpenDiagram& d) {
  const auto& frame = f.frame();
  if (!(frame == d.frame())) throw InvalidInput("descent: presheaf and diagram live on different frames");
  const auto& index = d.index();
  const std::size_t n = index.size();
  std::vector<std::size_t> at(n);
  for (std::size_t i = 0; i < n; ++i) at[i] = frame.index_of(d.u(i));

  Limit out;
  std::vector<std::size_t> cur(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.families.push_back(cur);
      return;
    }
    for (std::size_t x = 0; x < f.size(at[i]); ++x) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (index.leq(j, i)) ok = f.restrict(at[i], at[j], x) == cur[j];
        if (ok && index.leq(i, j)) ok = f.restrict(at[j], at[i], cur[j]) == x;
      }
      if (!ok) continue;
      cur[i] = x;
      rec(i + 1);
    }
  };
  rec(0);

  const std::size_t v = frame.index_of(d.target());
  for (std::size_t x = 0; x < f.size(v); ++x) {
    std::vector<std::size_t> fam(n);
    for (std::size_t i = 0; i < n; ++i) fam[i] = f.restrict(v, at[i], x);
    const auto it = std::lower_bound(out.families.begin(), out.families.end(), fam);
    if (it == out.families.end() || *it != fam)
      throw InvariantViolation("descent: a restricted global section is not a compatible family");
    out.comparison.push_back(static_cast<std::size_t>(it - out.families.begin()));
  }
  return out;
}

DescentVerdict check_descent(const SetPresheaf& f, const lifting::OpenDiagram& d) {
  const Limit lim = limit_over_diagram(f, d);
  DescentVerdict v;
  v.sections = lim.comparison.size();
  v.limit = lim.families.size();
  std::vector<std::size_t> first(lim.families.size(), lim.comparison.size());
  for (std::size_t x = 0; x < lim.comparison.size(); ++x) {
    std::size_t& seen = first[lim.comparison[x]];
    if (seen != lim.comparison.size()) {
      v.pass = false;
      v.failure = DescentVerdict::Failure::not_injective;
      v.colliding = {seen, x};
      return v;
    }
    seen = x;
  }
  for (std::size_t k = 0; k < lim.families.size(); ++k)
    if (first[k] == lim.comparison.size()) {
      v.pass = false;
      v.failure = DescentVerdict::Failure::not_surjective;
      v.family = lim.families[k];
      return v;
    }
  return v;
}

DescentVerdict check_descent(const SetSheaf& f, const lifting::OpenDiagram& d) { return check_descent(f.presheaf(), d); }

bool revalidate(const SetPresheaf& f, const lifting::OpenDiagram& d, const DescentVerdict& v) {
  if (v.pass) return false;
  const auto& frame = f.frame();
  const auto& index = d.index();
  const std::size_t t = frame.index_of(d.target());
  std::vector<std::size_t> at;
  for (std::size_t i = 0; i < index.size(); ++i) at.push_back(frame.index_of(d.u(i)));
  const auto restrict_all = [&](std::size_t x) {
    std::vector<std::size_t> fam;
    for (std::size_t w : at) fam.push_back(f.restrict(t, w, x));
    return fam;
  };
  switch (v.failure) {
    case DescentVerdict::Failure::not_injective:
      return v.colliding.size() == 2 && v.colliding[0] != v.colliding[1] && v.colliding[0] < f.size(t) &&
             v.colliding[1] < f.size(t) && restrict_all(v.colliding[0]) == restrict_all(v.colliding[1]);
    case DescentVerdict::Failure::not_surjective: {
      if (v.family.size() != at.size()) return false;
      for (std::size_t i = 0; i < at.size(); ++i) {
        if (v.family[i] >= f.size(at[i])) return false;
        for (std::size_t j = 0; j < at.size(); ++j)
          if (index.leq(i, j) && f.restrict(at[j], at[i], v.family[j]) != v.family[i]) return false;
      }
      for (std::size_t x = 0; x < f.size(t); ++x)
        if (restrict_all(x) == v.family) return false;
      return true;
    }
    case DescentVerdict::Failure::none:
      return false;
  }
  return false;
}

std::string failure_name(DescentVerdict::Failure f) {
  switch (f) {
    case DescentVerdict::Failure::none: return "none";
    case DescentVerdict::Failure::not_injective: return "not_injective";
    case DescentVerdict::Failure::not_surjective: return "not_surjective";
  }
  return "none";
}

}  // namespace atlas::descent

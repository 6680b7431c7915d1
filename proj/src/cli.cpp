#include <atlas/cli.hpp>

#include <atlas/corpus.hpp>
#include <atlas/descent.hpp>
#include <atlas/homology.hpp>
#include <atlas/hypercover.hpp>
#include <atlas/lifting.hpp>
#include <atlas/nerve.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace atlas::cli {

namespace {

using nlohmann::json;

class SchemaError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A JSON value together with its path from the document root.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }
  [[noreturn]] void fail(const std::string& what) const { throw SchemaError((path_.empty() ? "/" : path_) + ": " + what); }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }
  Node operator[](const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    if (!j_->contains(key)) fail(std::string("missing field '") + key + "'");
    return Node(j_->at(key), path_ + "/" + key);
  }
  std::optional<Node> find(const char* key) const {
    if (!has(key)) return std::nullopt;
    return (*this)[key];
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t k = 0; k < j_->size(); ++k) out.emplace_back((*j_)[k], path_ + "/" + std::to_string(k));
    return out;
  }
  std::vector<std::pair<std::string, Node>> fields() const {
    if (!j_->is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_->begin(); it != j_->end(); ++it) out.emplace_back(it.key(), Node(it.value(), path_ + "/" + it.key()));
    return out;
  }
  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  std::uint64_t uint() const {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    return j_->get<std::uint64_t>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }

  // Runs f, prefixing any InvalidInput with this node's path.
  template <typename F>
  auto guard(F&& f) const {
    try {
      return f();
    } catch (const SchemaError&) {
      throw;
    } catch (const InvalidInput& e) {
      fail(e.what());
    }
  }

 private:
  const json* j_;
  std::string path_;
};

struct Settings {
  std::size_t truncation = 3;
  std::size_t nmax = 3;
  std::size_t kmax = 4;
  std::size_t count = 20;
  std::uint64_t seed = 1;
  std::string mode = "basic";
};

Settings resolve(const Options& o, const Node& doc) {
  Settings s;
  if (auto opts = doc.find("options")) {
    if (auto n = opts->find("truncation")) s.truncation = n->uint();
    if (auto n = opts->find("nmax")) s.nmax = n->uint();
    if (auto n = opts->find("kmax")) s.kmax = n->uint();
    if (auto n = opts->find("count")) s.count = n->uint();
    if (auto n = opts->find("seed")) s.seed = n->uint();
    if (auto n = opts->find("mode")) s.mode = n->str();
  }
  if (o.truncation) s.truncation = *o.truncation;
  if (o.nmax) s.nmax = *o.nmax;
  if (o.kmax) s.kmax = *o.kmax;
  if (o.count) s.count = *o.count;
  if (o.seed) s.seed = *o.seed;
  if (o.mode) s.mode = *o.mode;
  if (s.truncation < 1 || s.truncation > 6) throw SchemaError("/options/truncation: expected 1 .. 6");
  if (s.nmax < 1 || s.nmax > 5) throw SchemaError("/options/nmax: expected 1 .. 5");
  if (s.kmax > 8) throw SchemaError("/options/kmax: expected 0 .. 8");
  if (s.count > 100000) throw SchemaError("/options/count: expected at most 100000");
  if (s.mode != "basic" && s.mode != "finite_sets" && s.mode != "subsets")
    throw SchemaError("/options/mode: expected basic, finite_sets or subsets");
  return s;
}

// ---------------------------------------------------------------------------
// Document sections

struct Space {
  order::FiniteFrame frame;
  std::optional<order::FinitePreorder> order;  // present when given as a preorder
};

// [[a, b], ...] meaning a <= b, resolved against ids.
std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const Node& node, const std::vector<std::string>& ids) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& item : node.items()) {
    const auto ends = item.items();
    if (ends.size() != 2) item.fail("expected a pair [lower, upper]");
    const auto at = [&](const Node& n) {
      const auto s = n.str();
      const auto it = std::find(ids.begin(), ids.end(), s);
      if (it == ids.end()) n.fail("unknown identifier '" + s + "'");
      return static_cast<std::size_t>(it - ids.begin());
    };
    pairs.emplace_back(at(ends[0]), at(ends[1]));
  }
  return pairs;
}

Space parse_space(const Node& doc) {
  const Node node = doc["space"];
  auto points = node["points"].strings();
  if (points.size() > PointSet::kMaxPoints) node["points"].fail("at most 64 points");
  if (node.has("order")) {
    if (node.has("opens")) node.fail("give either 'opens' or 'order', not both");
    const auto pairs = parse_pairs(node["order"], points);
    auto p = node.guard([&] { return order::FinitePreorder::generated(points, pairs); });
    auto frame = node.guard([&] { return order::alexandrov_frame(p); });
    return {std::move(frame), std::move(p)};
  }
  // Parsing open ids needs the points only, so a discrete frame will do.
  const order::FiniteFrame bare = node.guard([&] { return order::FiniteFrame::from_generators(points, {}); });
  std::vector<PointSet> generators;
  for (const auto& item : node["opens"].items()) {
    const auto ids = item.strings();
    generators.push_back(item.guard([&] { return bare.parse(ids); }));
  }
  return {node.guard([&] { return order::FiniteFrame::from_generators(points, generators); }), std::nullopt};
}

PointSet parse_open(const Node& node, const order::FiniteFrame& frame) {
  const auto ids = node.strings();
  const PointSet s = node.guard([&] { return frame.parse(ids); });
  if (!frame.is_open(s)) node.fail(frame.describe(s) + " is not open");
  return s;
}

order::FinitePoset parse_poset(const Node& doc) {
  const Node node = doc["poset"];
  auto ids = node["elements"].strings();
  const auto pairs = node.has("covers") ? parse_pairs(node["covers"], ids) : decltype(parse_pairs(node, ids)){};
  return node.guard([&] { return order::FinitePoset::generated(std::move(ids), pairs); });
}

lifting::OpenDiagram parse_diagram(const Node& doc, const Space& space) {
  const auto index = parse_poset(doc);
  const Node node = doc["diagram"];
  const Node assignment = node["assignment"];
  std::vector<PointSet> u(index.size());
  std::vector<bool> seen(index.size());
  for (const auto& [key, value] : assignment.fields()) {
    const auto i = index.find(key);
    if (!i) value.fail("'" + key + "' is not an element of the poset");
    u[*i] = parse_open(value, space.frame);
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < index.size(); ++i)
    if (!seen[i]) assignment.fail("no open assigned to '" + index.id(i) + "'");
  std::optional<PointSet> target;
  if (auto t = node.find("target")) target = parse_open(*t, space.frame);
  return node.guard([&] { return lifting::OpenDiagram(space.frame, index, std::move(u), target); });
}

semirep::SetPresheaf parse_sheaf(const Node& doc, const Space& space) {
  const Node node = doc["sheaf"];
  if (auto b = node.find("bundle")) {
    if (!space.order) b->fail("bundles need the space given by 'order'");
    auto points = (*b)["points"].strings();
    const auto pairs = parse_pairs((*b)["order"], points);
    auto total = b->guard([&] { return order::FinitePreorder::generated(points, pairs); });
    std::vector<std::size_t> projection(total.size(), total.size());
    for (const auto& [key, value] : (*b)["projection"].fields()) {
      const auto e = total.find(key);
      if (!e) value.fail("'" + key + "' is not a point of the bundle");
      const auto x = space.order->find(value.str());
      if (!x) value.fail("'" + value.str() + "' is not a point of the space");
      projection[*e] = *x;
    }
    for (std::size_t e = 0; e < total.size(); ++e)
      if (projection[e] == total.size()) (*b)["projection"].fail("no image for '" + total.id(e) + "'");
    return b->guard([&] { return descent::sections_sheaf(total, *space.order, projection); });
  }

  const auto& frame = space.frame;
  std::vector<std::vector<std::string>> elements(frame.open_count());
  std::vector<bool> given(frame.open_count());
  for (const auto& item : node["sections"].items()) {
    const std::size_t w = frame.index_of(parse_open(item["open"], frame));
    if (given[w]) item["open"].fail("sections given twice for " + frame.describe(frame.opens()[w]));
    elements[w] = item["elements"].strings();
    given[w] = true;
  }
  for (std::size_t w = 0; w < frame.open_count(); ++w)
    if (!given[w]) node["sections"].fail("no sections given for " + frame.describe(frame.opens()[w]));

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> maps;
  if (auto r = node.find("restrictions"))
    for (const auto& item : r->items()) {
      const std::size_t w = frame.index_of(parse_open(item["from"], frame));
      const std::size_t v = frame.index_of(parse_open(item["to"], frame));
      std::vector<std::size_t> map(elements[w].size(), elements[v].size());
      for (const auto& [key, value] : item["map"].fields()) {
        const auto x = std::find(elements[w].begin(), elements[w].end(), key);
        if (x == elements[w].end()) value.fail("'" + key + "' is not a section over the source");
        const auto y = std::find(elements[v].begin(), elements[v].end(), value.str());
        if (y == elements[v].end()) value.fail("'" + value.str() + "' is not a section over the target");
        map[static_cast<std::size_t>(x - elements[w].begin())] = static_cast<std::size_t>(y - elements[v].begin());
      }
      for (std::size_t x = 0; x < map.size(); ++x)
        if (map[x] == elements[v].size()) item["map"].fail("no image for '" + elements[w][x] + "'");
      if (!maps.emplace(std::make_pair(w, v), std::move(map)).second) item.fail("restriction given twice");
    }
  return node.guard([&] { return semirep::SetPresheaf::from_covers(frame, std::move(elements), maps); });
}

hypercover::LabeledSSet parse_labeled(const Node& doc, const Space& space) {
  const Node node = doc["labeled_sset"];
  const std::size_t truncation = node["truncation"].uint();
  const auto level_nodes = node["levels"].items();
  if (level_nodes.size() != truncation + 1) node["levels"].fail("expected truncation + 1 levels");
  std::vector<simplicial::Level> levels(truncation + 1);
  std::vector<std::vector<PointSet>> labels(truncation + 1);
  const auto cells = [](const Node& arrays) {
    std::vector<std::vector<simplicial::Cell>> out;
    for (const auto& row : arrays.items()) {
      out.emplace_back();
      for (const auto& v : row.items()) {
        const auto c = v.uint();
        if (c > 0xffffffffULL) v.fail("cell index too large");
        out.back().push_back(static_cast<simplicial::Cell>(c));
      }
    }
    return out;
  };
  for (std::size_t n = 0; n <= truncation; ++n) {
    const Node ln = level_nodes[n];
    auto& level = levels[n];
    for (const auto& l : ln["labels"].items()) labels[n].push_back(parse_open(l, space.frame));
    level.count = labels[n].size();
    if (auto names = ln.find("names")) level.names = names->strings();
    if (auto f = ln.find("faces")) level.faces = cells(*f);
    if (auto d = ln.find("degeneracies")) level.degeneracies = cells(*d);
  }
  auto shape = node.guard([&] { return simplicial::TruncatedSSet(truncation, std::move(levels)); });
  std::optional<PointSet> target;
  if (auto t = node.find("target")) target = parse_open(*t, space.frame);
  return node.guard([&] { return hypercover::LabeledSSet(space.frame, std::move(shape), std::move(labels), target); });
}

// ---------------------------------------------------------------------------
// Report pieces

json points_json(const order::FiniteFrame& frame, PointSet s) { return frame.point_names(s); }

std::optional<lifting::LiftingShape> shape_named(const std::string& name, const Settings& s) {
  for (std::size_t k = 0; k <= std::max<std::size_t>(s.kmax, s.nmax + 1); ++k)
    if (name == "cone over discrete " + std::to_string(k)) return lifting::discrete_cone_shape(k);
  for (std::size_t n = 0; n <= s.nmax; ++n) {
    if (name == "subset boundary " + std::to_string(n)) return lifting::subset_shape(n);
    if (name == "simplicial boundary " + std::to_string(n)) return lifting::simplicial_shape(n, n + 1);
  }
  return std::nullopt;
}

json lifting_witness(const lifting::OpenDiagram& d, const lifting::LiftingOutcome& o, const Settings& s) {
  const auto& frame = d.frame();
  const auto& index = d.index();
  json w;
  w["shape"] = o.shape;
  w["region"] = points_json(frame, o.region);
  w["achieved"] = points_json(frame, o.achieved);
  w["residue"] = points_json(frame, o.residue);
  const auto shape = shape_named(o.shape, s);
  json sigma = json::object();
  for (std::size_t k = 0; k < o.sigma.size(); ++k)
    sigma[shape ? shape->small().id(k) : std::to_string(k)] = index.id(o.sigma[k]);
  w["sigma"] = sigma;
  json fillers = json::array();
  for (std::size_t f = 0; f < o.fillers.size(); ++f) {
    json filler;
    json values = json::object();
    for (std::size_t l = 0; l < o.fillers[f].size(); ++l)
      values[shape && o.fillers[f].size() == shape->big().size() ? shape->big().id(l) : std::to_string(l)] =
          index.id(o.fillers[f][l]);
    filler["values"] = values;
    if (f < o.filler_regions.size()) filler["region"] = points_json(frame, o.filler_regions[f]);
    fillers.push_back(filler);
  }
  w["fillers"] = fillers;
  if (shape) w["revalidated"] = lifting::revalidate(d, *shape, o);
  return w;
}

json verdict_json(const lifting::OpenDiagram& d, const lifting::Verdict& v, const Settings& s) {
  json j;
  j["pass"] = v.pass;
  j["problems"] = v.problems;
  if (v.witness) j["witness"] = lifting_witness(d, *v.witness, s);
  return j;
}

json fill_json(const hypercover::LabeledSSet& h, const hypercover::FillVerdict& v) {
  json j;
  j["pass"] = v.pass;
  j["tuples"] = v.tuples;
  if (!v.pass) {
    const auto& frame = h.frame();
    const auto& shape = h.shape();
    json w;
    w["level"] = v.level;
    json tuple = json::array();
    for (auto c : v.tuple) tuple.push_back(shape.name(v.level - 1, c));
    w["tuple"] = tuple;
    w["region"] = points_json(frame, v.region);
    w["achieved"] = points_json(frame, v.achieved);
    w["residue"] = points_json(frame, v.residue);
    json fillers = json::array();
    for (auto c : v.fillers) fillers.push_back(shape.name(v.level, c));
    w["fillers"] = fillers;
    w["revalidated"] = hypercover::revalidate(h, v);
    j["witness"] = w;
  }
  return j;
}

json levels_json(const simplicial::TruncatedSSet& s) {
  json levels = json::array();
  for (std::size_t n = 0; n <= s.truncation(); ++n) {
    std::size_t nd = 0;
    for (simplicial::Cell x = 0; x < s.count(n); ++x) nd += !s.is_degenerate(n, x);
    levels.push_back({{"level", n}, {"simplices", s.count(n)}, {"nondegenerate", nd}});
  }
  return levels;
}

json homology_json(const std::vector<homology::Group>& groups) {
  json out = json::array();
  for (std::size_t k = 0; k < groups.size(); ++k) {
    json torsion = json::array();
    for (const auto& t : groups[k].torsion) torsion.push_back(t.str());
    out.push_back({{"degree", k}, {"betti", groups[k].betti}, {"torsion", torsion}});
  }
  return out;
}

// Small objects are listed cell by cell; larger ones only by counts.
constexpr std::size_t kListLimit = 200;

lifting::AtlasMode mode_of(const Settings& s) {
  if (s.mode == "finite_sets") return lifting::AtlasMode::finite_sets(s.kmax);
  if (s.mode == "subsets") return lifting::AtlasMode::subsets(s.nmax);
  return lifting::AtlasMode::basic();
}

// ---------------------------------------------------------------------------
// Commands

Result check_atlas_cmd(const Node& doc, const Settings& s) {
  const auto space = parse_space(doc);
  const auto d = parse_diagram(doc, space);
  const auto v = lifting::check_atlas(d, mode_of(s));
  json r = verdict_json(d, v, s);
  r["mode"] = s.mode;
  if (s.mode == "finite_sets") r["kmax"] = s.kmax;
  if (s.mode == "subsets") r["nmax"] = s.nmax;
  return {v.pass ? kPass : kFail, r};
}

Result equivalence_cmd(const Node& doc, const Settings& s) {
  const auto space = parse_space(doc);
  const auto d = parse_diagram(doc, space);
  const auto shapes = lifting::report_shapes(s.nmax);
  const auto rep = lifting::equivalence_report(d, shapes);
  json conditions = json::array();
  for (std::size_t c = 0; c < rep.conditions.size(); ++c) {
    json j = verdict_json(d, rep.conditions[c], s);
    j["name"] = lifting::EquivalenceReport::kNames[c];
    conditions.push_back(j);
  }
  const bool all = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const auto& v) { return v.pass; });
  json r{{"agree", rep.agree()}, {"conditions", conditions}, {"nmax", s.nmax}, {"pass", rep.agree() && all}};
  return {rep.agree() && all ? kPass : kFail, r};
}

Result nerve_cmd(const Node& doc, const Settings& s) {
  const auto index = parse_poset(doc);
  const auto nerve = doc.guard([&] { return nerve::nerve_truncated(index, s.truncation); });
  json r{{"levels", levels_json(nerve.sset())}, {"truncation", s.truncation}};
  if (nerve.sset().total_cells() <= kListLimit) {
    json cells = json::array();
    for (std::size_t n = 0; n <= s.truncation; ++n)
      for (simplicial::Cell x = 0; x < nerve.sset().count(n); ++x)
        cells.push_back({{"level", n}, {"values", nerve.describe(n, x)}, {"counit", index.id(nerve.counit(n, x))}});
    r["simplices"] = cells;
  }
  return {kPass, r};
}

Result refine_cmd(const Node& doc, const Settings& s) {
  const auto space = parse_space(doc);
  const auto d = parse_diagram(doc, space);
  const auto nerve = doc.guard([&] { return nerve::nerve_truncated(d.index(), s.truncation); });
  const auto h = nerve::refine_diagram(d, nerve);
  json r{{"levels", levels_json(h.shape())}, {"truncation", s.truncation}};
  if (h.shape().total_cells() <= kListLimit) {
    json cells = json::array();
    for (std::size_t n = 0; n <= s.truncation; ++n)
      for (simplicial::Cell x = 0; x < h.shape().count(n); ++x)
        cells.push_back({{"level", n}, {"values", nerve.describe(n, x)}, {"label", points_json(d.frame(), h.label(n, x))}});
    r["simplices"] = cells;
  }
  r["hypercover"] = fill_json(h, hypercover::check_hypercover(h, s.truncation));
  return {kPass, r};
}

Result check_hypercover_cmd(const Node& doc, const Settings& s) {
  const auto space = parse_space(doc);
  const auto h = parse_labeled(doc, space);
  const std::size_t nmax = std::min(s.nmax, h.shape().truncation());
  const auto direct = hypercover::check_hypercover(h, nmax);
  const auto dhi = hypercover::check_hypercover_dhi(h, nmax);
  json r = fill_json(h, direct);
  r["nmax"] = nmax;
  r["routes_agree"] = direct.pass == dhi.pass;
  r["levels"] = levels_json(h.shape());
  return {direct.pass && dhi.pass ? kPass : kFail, r};
}

Result cech_cmd(const Node& doc, const Settings& s) {
  const auto space = parse_space(doc);
  const auto d = parse_diagram(doc, space);
  const auto h = doc["diagram"].guard([&] { return hypercover::cech_nerve(space.frame, d.u(), d.target(), s.truncation); });
  const auto direct = hypercover::check_hypercover(h, s.truncation);
  const auto dhi = hypercover::check_hypercover_dhi(h, s.truncation);
  json r = fill_json(h, direct);
  r["levels"] = levels_json(h.shape());
  r["routes_agree"] = direct.pass == dhi.pass;
  r["truncation"] = s.truncation;
  return {direct.pass && dhi.pass ? kPass : kFail, r};
}

Result homology_cmd(const Node& doc, const Settings& s) {
  json r;
  if (doc.has("labeled_sset")) {
    const auto space = parse_space(doc);
    const auto h = parse_labeled(doc, space);
    if (h.shape().truncation() < 1) doc["labeled_sset"]["truncation"].fail("homology needs truncation >= 1");
    r["source"] = "labeled_sset";
    r["groups"] = homology_json(homology::homology(h.shape(), h.shape().truncation() - 1));
  } else {
    const auto index = parse_poset(doc);
    const auto nerve = doc.guard([&] { return nerve::nerve_truncated(index, s.truncation); });
    r["source"] = "poset";
    r["groups"] = homology_json(homology::homology(nerve.sset(), s.truncation - 1));
  }
  return {kPass, r};
}

Result check_descent_cmd(const Node& doc, const Settings& s) {
  const auto space = parse_space(doc);
  const auto d = parse_diagram(doc, space);
  const auto f = parse_sheaf(doc, space);
  const auto& frame = space.frame;
  const auto v = descent::check_descent(f, d);
  json r{{"pass", v.pass}, {"failure", descent::failure_name(v.failure)}, {"sections", v.sections}, {"limit", v.limit}};
  r["is_sheaf"] = descent::is_sheaf(f);
  const auto atlas = lifting::check_atlas(d, lifting::AtlasMode::basic());
  r["atlas"] = verdict_json(d, atlas, s);
  if (!v.pass) {
    const std::size_t t = frame.index_of(d.target());
    json w;
    if (v.failure == descent::DescentVerdict::Failure::not_injective) {
      w["colliding"] = {f.element(t, v.colliding[0]), f.element(t, v.colliding[1])};
    } else {
      json fam = json::object();
      for (std::size_t i = 0; i < d.index().size(); ++i)
        fam[d.index().id(i)] = f.element(frame.index_of(d.u(i)), v.family[i]);
      w["family"] = fam;
    }
    w["revalidated"] = descent::revalidate(f, d, v);
    r["witness"] = w;
  }
  return {v.pass ? kPass : kFail, r};
}

Result corpus_cmd(const Settings& s) {
  corpus::Rng rng(s.seed);
  const auto shapes = lifting::report_shapes(s.nmax);
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // check -> (run, disagreements)
  json first = nullptr;
  std::size_t atlases = 0;
  const auto record = [&](const std::string& check, bool ok, std::size_t item) {
    auto& t = tally[check];
    ++t.first;
    if (!ok) {
      ++t.second;
      if (first.is_null()) first = {{"check", check}, {"item", item}};
    }
  };
  for (std::size_t k = 0; k < s.count; ++k) {
    const auto d = corpus::random_diagram(rng, 4, 4);
    const bool atlas = lifting::check_atlas(d, lifting::AtlasMode::basic()).pass;
    atlases += atlas;
    const auto rep = lifting::equivalence_report(d, shapes);
    record("equivalence", rep.agree() && rep.conditions[0].pass == atlas, k);
    const auto h = nerve::refine_diagram(d, s.truncation);
    record("nerve_theorem", hypercover::check_hypercover(h, s.truncation).pass == atlas, k);
    record("fill_routes",
           hypercover::check_hypercover(h, s.truncation).pass == hypercover::check_hypercover_dhi(h, s.truncation).pass, k);
    const auto l = corpus::random_labeled(rng, std::min<std::size_t>(s.truncation, 3), 200);
    const std::size_t top = l.shape().truncation();
    record("fill_routes", hypercover::check_hypercover(l, top).pass == hypercover::check_hypercover_dhi(l, top).pass, k);
    if (atlas)
      for (const auto& b : corpus::bundles_over(corpus::specialization(d.frame()), rng, 1)) {
        const auto f = descent::sections_sheaf(b.total, corpus::specialization(d.frame()), b.projection);
        record("descent", descent::check_descent(f, d).pass, k);
      }
  }
  json checks = json::object();
  bool ok = true;
  for (const auto& [name, t] : tally) {
    checks[name] = {{"run", t.first}, {"disagreements", t.second}};
    ok = ok && t.second == 0;
  }
  json r{{"atlases", atlases}, {"checks", checks}, {"diagrams", s.count}, {"pass", ok}, {"truncation", s.truncation}};
  if (!first.is_null()) r["first_disagreement"] = first;
  return {ok ? kPass : kFail, r};
}

Result dispatch(const std::string& command, const Node& doc, const Settings& s) {
  if (command == "check-atlas") return check_atlas_cmd(doc, s);
  if (command == "equivalence-report") return equivalence_cmd(doc, s);
  if (command == "nerve") return nerve_cmd(doc, s);
  if (command == "refine") return refine_cmd(doc, s);
  if (command == "check-hypercover") return check_hypercover_cmd(doc, s);
  if (command == "cech") return cech_cmd(doc, s);
  if (command == "homology") return homology_cmd(doc, s);
  if (command == "check-descent") return check_descent_cmd(doc, s);
  if (command == "corpus") return corpus_cmd(s);
  throw SchemaError("unknown command '" + command + "'");
}

}  // namespace

Result run(const Options& options, const json& document) {
  const auto start = std::chrono::steady_clock::now();
  Result result;
  std::uint64_t seed = options.seed.value_or(1);
  try {
    const Node doc(document, "");
    if (!document.is_object()) doc.fail("expected an object");
    const Settings s = resolve(options, doc);
    seed = s.seed;
    result = dispatch(options.command, doc, s);
  } catch (const InvalidInput& e) {
    result = {kInputError, {{"error", e.what()}}};
  } catch (const InvariantViolation& e) {
    result = {kInputError, {{"error", std::string("invariant violation: ") + e.what()}}};
  } catch (const json::exception& e) {
    result = {kInputError, {{"error", e.what()}}};
  }
  result.report["command"] = options.command;
  result.report["seed"] = seed;
  result.report["status"] = result.status;
  if (options.timing)
    result.report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

int main(int argc, char** argv) {
  CLI::App app{"Atlases, hypercovers and descent over finite spaces"};
  app.require_subcommand(1);
  // Subcommands inherit this, so options may follow the command name.
  app.fallthrough();
  Options options;
  std::string input = "-";
  std::string output;
  std::size_t truncation = 3;
  const std::map<std::string_view, std::string> about = {
      {"check-atlas", "check the atlas criterion for a diagram of opens"},
      {"equivalence-report", "compare the six atlas conditions on one diagram"},
      {"nerve", "list the truncated nerve of the poset"},
      {"refine", "label the nerve of the diagram by its opens"},
      {"check-hypercover", "check the fill condition on a labeled simplicial set"},
      {"cech", "build and check the Cech nerve of the diagram's opens"},
      {"homology", "integral homology of a labeled simplicial set or of the poset's nerve"},
      {"check-descent", "compare sections over the target with the limit over the diagram"},
      {"corpus", "run the seeded random cross-checks"},
  };
  for (auto name : kCommands) {
    auto* sub = app.add_subcommand(std::string(name), about.at(name));
    if (name != "corpus") sub->add_option("input", input, "JSON document, '-' for stdin")->required();
  }
  app.add_option("--truncation", truncation, "truncation level (default 3)")->check(CLI::Range(1, 6));
  app.add_option("--nmax", options.nmax, "largest n for boundary shapes");
  app.add_option("--kmax", options.kmax, "largest discrete cone");
  app.add_option("--count", options.count, "random corpus size");
  app.add_option("--seed", options.seed, "random seed");
  app.add_option("--mode", options.mode, "atlas mode: basic, finite_sets, subsets");
  app.add_option("--output,-o", output, "write the report here instead of stdout");
  app.add_flag("--timing", options.timing, "add wall-clock time to the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }
  options.command = app.get_subcommands().front()->get_name();
  if (app.count("--truncation") > 0) options.truncation = truncation;

  json document = json::object();
  Result result;
  try {
    if (options.command != "corpus") {
      if (input == "-") {
        document = json::parse(std::cin);
      } else {
        std::ifstream in(input);
        if (!in) throw InvalidInput("cannot read " + input);
        document = json::parse(in);
      }
    }
    result = run(options, document);
  } catch (const json::parse_error& e) {
    result = {kInputError, {{"command", options.command}, {"error", e.what()}, {"status", kInputError}}};
  } catch (const InvalidInput& e) {
    result = {kInputError, {{"command", options.command}, {"error", e.what()}, {"status", kInputError}}};
  }
  if (result.status == kInputError) std::cerr << "error: " << result.report["error"].get<std::string>() << "\n";

  const std::string text = result.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return kInputError;
    }
    out << text;
  }
  return result.status;
}

}  // namespace atlas::cli

#include "setcalc/dsl.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace setcalc {

using ojson = nlohmann::ordered_json;

const PolyCone& ProblemFile::cone() const {
  if (!cone_) cone_ = std::make_shared<PolyCone>(dim_y, cone_generators, cone_dual_generators);
  return *cone_;
}

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string join(const std::string& path, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return path + "/" + k;
}

std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

class Parser {
 public:
  explicit Parser(ProblemFile& pf) : pf_(pf) {}

  void run(const ojson& root) {
    expect_object(root, "");
    allow_keys(root, "", {"name", "dim_x", "dim_y", "cone", "direction_e", "maps", "scalars",
                          "constraint_set", "candidates", "schedule", "base_point", "penalization"});
    if (root.contains("name")) pf_.name = string_at(root["name"], "/name");
    pf_.dim_x = positive_int(field(root, "dim_x", ""), "/dim_x");
    pf_.dim_y = positive_int(field(root, "dim_y", ""), "/dim_y");
    parse_cone(field(root, "cone", ""));

    if (root.contains("scalars")) {
      const auto& s = root["scalars"];
      expect_object(s, "/scalars");
      for (auto it = s.begin(); it != s.end(); ++it) {
        const auto path = join("/scalars", it.key());
        pf_.scalars.emplace_back(it.key(), scalar(it.value(), path));
      }
    }
    if (root.contains("maps")) {
      const auto& m = root["maps"];
      expect_object(m, "/maps");
      for (auto it = m.begin(); it != m.end(); ++it) {
        const auto path = join("/maps", it.key());
        pf_.maps.emplace_back(it.key(), map(it.value(), path));
      }
    }
    resolve();

    if (root.contains("direction_e")) {
      Direction e{vec(root["direction_e"], "/direction_e", pf_.dim_y)};
      if (e.vector.norm() == 0.0 || !pf_.cone().contains(e.vector))
        throw SchemaError("/direction_e", "direction must lie in K \\ {0}");
      pf_.direction_e = e;
    }
    if (root.contains("constraint_set")) {
      const auto& c = root["constraint_set"];
      expect_array(c, "/constraint_set");
      if (c.empty()) throw SchemaError("/constraint_set", "empty piece list");
      for (std::size_t i = 0; i < c.size(); ++i)
        pf_.constraint_set.push_back(set(c[i], join("/constraint_set", i), pf_.dim_x));
    }
    if (root.contains("candidates")) {
      const auto& c = root["candidates"];
      expect_object(c, "/candidates");
      for (auto it = c.begin(); it != c.end(); ++it) {
        const auto path = join("/candidates", it.key());
        pf_.candidates.emplace_back(it.key(), LinOp(matrix(it.value(), path, pf_.dim_y, pf_.dim_x)));
      }
    }
    pf_.schedule = SamplingSchedule::defaults(pf_.dim_x);
    if (root.contains("schedule")) parse_schedule(root["schedule"]);
    if (root.contains("base_point")) pf_.base_point = vec(root["base_point"], "/base_point", pf_.dim_x);
    if (root.contains("penalization")) {
      const auto& p = root["penalization"];
      expect_object(p, "/penalization");
      allow_keys(p, "/penalization", {"ell", "mu", "radius"});
      PenalizationSpec spec;
      if (p.contains("ell")) spec.ell = number(p["ell"], "/penalization/ell");
      if (p.contains("mu")) spec.mu = number(p["mu"], "/penalization/mu");
      if (p.contains("radius")) spec.radius = number(p["radius"], "/penalization/radius");
      if (!(spec.ell > 0)) throw SchemaError("/penalization/ell", "must be positive");
      if (!(spec.mu >= 0)) throw SchemaError("/penalization/mu", "must be nonnegative");
      if (!(spec.radius > 0)) throw SchemaError("/penalization/radius", "must be positive");
      pf_.penalization = spec;
    }
  }

 private:
  struct PendingMapRef {
    std::shared_ptr<MapExpr> node;
    std::string path;
  };
  struct PendingScalarRef {
    std::shared_ptr<ScalarExpr> node;
    std::string path;
  };

  static void expect_object(const ojson& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  }
  static void expect_array(const ojson& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
  }
  static void allow_keys(const ojson& j, const std::string& path, std::set<std::string> keys) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!keys.count(it.key())) throw SchemaError(join(path, it.key()), "unknown field");
  }
  static const ojson& field(const ojson& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw SchemaError(join(path, key), "missing required field");
    return j[key];
  }
  static std::string string_at(const ojson& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
  }
  static double number(const ojson& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
  }
  static Eigen::Index positive_int(const ojson& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() <= 0)
      throw SchemaError(path, "expected a positive integer");
    return static_cast<Eigen::Index>(j.get<long long>());
  }
  static Vector vec(const ojson& j, const std::string& path, Eigen::Index dim = -1) {
    expect_array(j, path);
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], join(path, i));
    if (dim >= 0 && v.size() != dim)
      throw FileDimensionMismatch(path, "expected " + std::to_string(dim) + " entries, got " +
                                            std::to_string(v.size()));
    return v;
  }
  static std::vector<Point> points(const ojson& j, const std::string& path, Eigen::Index dim) {
    expect_array(j, path);
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec(j[i], join(path, i), dim));
    return out;
  }
  static Matrix matrix(const ojson& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) {
    expect_array(j, path);
    if (static_cast<Eigen::Index>(j.size()) != rows)
      throw FileDimensionMismatch(path, "expected " + std::to_string(rows) + " rows, got " +
                                            std::to_string(j.size()));
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < j.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vec(j[i], join(path, i), cols).transpose();
    return m;
  }

  static ConicPolytope set(const ojson& j, const std::string& path, Eigen::Index dim) {
    expect_object(j, path);
    allow_keys(j, path, {"vertices", "rays", "hulled", "pieces"});
    std::vector<Point> rays;
    if (j.contains("rays")) rays = points(j["rays"], join(path, "rays"), dim);
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (rays[i].norm() == 0.0) throw SchemaError(join(join(path, "rays"), i), "zero ray");
    try {
      if (j.contains("pieces")) {
        if (j.contains("vertices") || j.contains("hulled"))
          throw SchemaError(path, "'pieces' excludes 'vertices' and 'hulled'");
        const auto& p = j["pieces"];
        expect_array(p, join(path, "pieces"));
        std::vector<std::vector<Point>> pieces;
        for (std::size_t i = 0; i < p.size(); ++i) {
          pieces.push_back(points(p[i], join(join(path, "pieces"), i), dim));
          if (pieces.back().empty()) throw SchemaError(join(join(path, "pieces"), i), "empty piece");
        }
        if (pieces.empty()) throw SchemaError(join(path, "pieces"), "empty piece list");
        return ConicPolytope::from_pieces(dim, pieces, rays);
      }
      const auto verts = points(field(j, "vertices", path), join(path, "vertices"), dim);
      if (verts.empty()) throw SchemaError(join(path, "vertices"), "empty vertex list");
      bool hulled = false;
      if (j.contains("hulled")) {
        if (!j["hulled"].is_boolean()) throw SchemaError(join(path, "hulled"), "expected a boolean");
        hulled = j["hulled"].get<bool>();
      }
      return ConicPolytope(dim, verts, rays, hulled);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(path, e.what());
    }
  }

  void parse_cone(const ojson& j) {
    expect_object(j, "/cone");
    allow_keys(j, "/cone", {"generators", "dual_generators"});
    pf_.cone_generators = points(field(j, "generators", "/cone"), "/cone/generators", pf_.dim_y);
    if (j.contains("dual_generators"))
      pf_.cone_dual_generators = points(j["dual_generators"], "/cone/dual_generators", pf_.dim_y);
    try {
      (void)pf_.cone();
    } catch (const Error& e) {
      throw SchemaError("/cone", e.what());
    }
  }

  void parse_schedule(const ojson& j) {
    expect_object(j, "/schedule");
    allow_keys(j, "/schedule", {"radii", "samples_per_sphere", "accept_tol", "reject_tol", "seed",
                                "domain_box", "grid_points", "eps_grid"});
    auto& s = pf_.schedule;
    if (j.contains("radii")) {
      const Vector r = vec(j["radii"], "/schedule/radii");
      s.radii.assign(r.data(), r.data() + r.size());
    }
    if (j.contains("samples_per_sphere")) {
      if (!j["samples_per_sphere"].is_number_integer())
        throw SchemaError("/schedule/samples_per_sphere", "expected an integer");
      s.samples_per_sphere = j["samples_per_sphere"].get<int>();
    }
    if (j.contains("accept_tol")) s.accept_tol = number(j["accept_tol"], "/schedule/accept_tol");
    if (j.contains("reject_tol")) s.reject_tol = number(j["reject_tol"], "/schedule/reject_tol");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw SchemaError("/schedule/seed", "expected an unsigned 64-bit integer");
      s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("domain_box")) {
      const auto& b = j["domain_box"];
      expect_object(b, "/schedule/domain_box");
      allow_keys(b, "/schedule/domain_box", {"lower", "upper"});
      s.domain_box.lower = vec(field(b, "lower", "/schedule/domain_box"), "/schedule/domain_box/lower", pf_.dim_x);
      s.domain_box.upper = vec(field(b, "upper", "/schedule/domain_box"), "/schedule/domain_box/upper", pf_.dim_x);
    }
    if (j.contains("grid_points")) {
      if (!j["grid_points"].is_number_integer()) throw SchemaError("/schedule/grid_points", "expected an integer");
      s.grid_points = j["grid_points"].get<int>();
    }
    if (j.contains("eps_grid")) {
      const Vector e = vec(j["eps_grid"], "/schedule/eps_grid");
      s.eps_grid.assign(e.data(), e.data() + e.size());
    }
    try {
      s.validate();
    } catch (const Error& e) {
      throw SchemaError("/schedule", e.what());
    }
  }

  static std::string kind_of(const ojson& j, const std::string& path) {
    expect_object(j, path);
    return string_at(field(j, "kind", path), join(path, "kind"));
  }

  std::vector<ScalarPtr> scalar_children(const ojson& j, const std::string& path) {
    const auto& c = field(j, "children", path);
    expect_array(c, join(path, "children"));
    if (c.empty()) throw SchemaError(join(path, "children"), "needs at least one child");
    std::vector<ScalarPtr> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(scalar(c[i], join(join(path, "children"), i)));
    return out;
  }

  ScalarPtr scalar(const ojson& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    const auto dx = pf_.dim_x;
    if (kind == "const") {
      allow_keys(j, path, {"kind", "value"});
      return expr::constant(number(field(j, "value", path), join(path, "value")));
    }
    if (kind == "coord") {
      allow_keys(j, path, {"kind", "index"});
      const auto& i = field(j, "index", path);
      if (!i.is_number_integer() || i.get<long long>() < 0)
        throw SchemaError(join(path, "index"), "expected a nonnegative integer");
      if (i.get<long long>() >= dx)
        throw FileDimensionMismatch(join(path, "index"), "coordinate index out of range for dim_x");
      return expr::coord(i.get<int>());
    }
    if (kind == "affine") {
      allow_keys(j, path, {"kind", "w", "c"});
      const double c = j.contains("c") ? number(j["c"], join(path, "c")) : 0.0;
      return expr::affine(vec(field(j, "w", path), join(path, "w"), dx), c);
    }
    if (kind == "norm") {
      allow_keys(j, path, {"kind", "center"});
      Vector center = j.contains("center") ? vec(j["center"], join(path, "center"), dx) : Vector(Vector::Zero(dx));
      return expr::norm(std::move(center));
    }
    if (kind == "dist_to_set") {
      allow_keys(j, path, {"kind", "pieces"});
      const auto& p = field(j, "pieces", path);
      expect_array(p, join(path, "pieces"));
      if (p.empty()) throw SchemaError(join(path, "pieces"), "empty piece list");
      std::vector<ConicPolytope> pieces;
      for (std::size_t i = 0; i < p.size(); ++i) pieces.push_back(set(p[i], join(join(path, "pieces"), i), dx));
      return expr::dist_to_set(std::move(pieces));
    }
    if (kind == "min" || kind == "max" || kind == "sum" || kind == "product") {
      allow_keys(j, path, {"kind", "children"});
      auto c = scalar_children(j, path);
      if (kind == "min") return expr::min(std::move(c));
      if (kind == "max") return expr::max(std::move(c));
      if (kind == "sum") return expr::sum(std::move(c));
      return expr::product(std::move(c));
    }
    if (kind == "scale") {
      allow_keys(j, path, {"kind", "factor", "child"});
      return expr::scale(number(field(j, "factor", path), join(path, "factor")),
                         scalar(field(j, "child", path), join(path, "child")));
    }
    if (kind == "ref") {
      allow_keys(j, path, {"kind", "name"});
      auto e = std::make_shared<ScalarExpr>();
      e->kind = ScalarExpr::Kind::ref;
      e->name = string_at(field(j, "name", path), join(path, "name"));
      scalar_refs_.push_back({e, join(path, "name")});
      return e;
    }
    throw UnknownNodeKind(join(path, "kind"), "unknown scalar node kind '" + kind + "'");
  }

  MapPtr map(const ojson& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    const auto dy = pf_.dim_y, dx = pf_.dim_x;
    if (kind == "const_set") {
      allow_keys(j, path, {"kind", "set"});
      return expr::const_set(set(field(j, "set", path), join(path, "set"), dy));
    }
    if (kind == "epi") {
      allow_keys(j, path, {"kind", "child"});
      return expr::epi(map(field(j, "child", path), join(path, "child")), pf_.cone());
    }
    if (kind == "sum") {
      allow_keys(j, path, {"kind", "children"});
      const auto& c = field(j, "children", path);
      expect_array(c, join(path, "children"));
      if (c.empty()) throw SchemaError(join(path, "children"), "needs at least one child");
      std::vector<MapPtr> kids;
      for (std::size_t i = 0; i < c.size(); ++i) kids.push_back(map(c[i], join(join(path, "children"), i)));
      return expr::sum(std::move(kids));
    }
    if (kind == "affine_arg") {
      allow_keys(j, path, {"kind", "T", "b"});
      Matrix T = matrix(field(j, "T", path), join(path, "T"), dy, dx);
      Vector b = j.contains("b") ? vec(j["b"], join(path, "b"), dy) : Vector(Vector::Zero(dy));
      return expr::affine_arg(std::move(T), std::move(b));
    }
    if (kind == "scalar_dir") {
      allow_keys(j, path, {"kind", "scalar", "e"});
      return expr::scalar_dir(scalar(field(j, "scalar", path), join(path, "scalar")),
                              vec(field(j, "e", path), join(path, "e"), dy));
    }
    if (kind == "scale") {
      allow_keys(j, path, {"kind", "lambda", "child"});
      return expr::scale(number(field(j, "lambda", path), join(path, "lambda")),
                         map(field(j, "child", path), join(path, "child")));
    }
    if (kind == "branch") {
      allow_keys(j, path, {"kind", "guard", "nonneg_child", "neg_child"});
      return expr::branch(scalar(field(j, "guard", path), join(path, "guard")),
                          map(field(j, "nonneg_child", path), join(path, "nonneg_child")),
                          map(field(j, "neg_child", path), join(path, "neg_child")));
    }
    if (kind == "ref") {
      allow_keys(j, path, {"kind", "name"});
      auto e = std::make_shared<MapExpr>();
      e->kind = MapExpr::Kind::ref;
      e->name = string_at(field(j, "name", path), join(path, "name"));
      map_refs_.push_back({e, join(path, "name")});
      return e;
    }
    throw UnknownNodeKind(join(path, "kind"), "unknown map node kind '" + kind + "'");
  }

  void resolve() {
    for (auto& r : scalar_refs_) {
      const auto* t = find_named(pf_.scalars, r.node->name);
      if (!t) throw DanglingReference(r.path, "undefined scalar '" + r.node->name + "'");
      r.node->target = *t;
    }
    for (auto& r : map_refs_) {
      const auto* t = find_named(pf_.maps, r.node->name);
      if (!t) throw DanglingReference(r.path, "undefined map '" + r.node->name + "'");
      r.node->target = *t;
    }
    for (const auto& [name, m] : pf_.maps) check_acyclic(m.get(), join("/maps", name));
    for (const auto& [name, s] : pf_.scalars) check_acyclic(s.get(), join("/scalars", name));
  }

  template <class Node>
  static void check_acyclic(const Node* root, const std::string& path) {
    std::set<const void*> stack;
    std::function<void(const Node*)> walk = [&](const Node* n) {
      if (n->kind == Node::Kind::ref) {
        if (!stack.insert(n->target.get()).second) throw SchemaError(path, "cyclic reference via '" + n->name + "'");
        walk(n->target.get());
        stack.erase(n->target.get());
      }
      for (const auto& c : n->children) walk(c.get());
    };
    stack.insert(root);
    walk(root);
    // Map nodes also hold scalars (guards, scalar_dir); these are checked via /scalars.
  }

  ProblemFile& pf_;
  std::vector<PendingMapRef> map_refs_;
  std::vector<PendingScalarRef> scalar_refs_;
};

ojson to_json(const Vector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ojson to_json(const std::vector<Point>& pts) {
  ojson a = ojson::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

ojson to_json(const Matrix& m) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vector(m.row(i).transpose())));
  return a;
}

}  // namespace

nlohmann::ordered_json set_to_json(const ConicPolytope& s) {
  ojson j;
  if (s.is_cloud() || s.pieces().size() == 1) {
    j["vertices"] = to_json(s.vertices());
    j["rays"] = to_json(s.rays());
    j["hulled"] = !s.is_cloud();
  } else {
    ojson p = ojson::array();
    for (std::size_t i = 0; i < s.pieces().size(); ++i) p.push_back(to_json(s.piece_vertices(i)));
    j["pieces"] = p;
    j["rays"] = to_json(s.rays());
  }
  return j;
}

nlohmann::ordered_json scalar_to_json(const ScalarExpr& e) {
  using K = ScalarExpr::Kind;
  ojson j;
  auto kids = [&] {
    ojson a = ojson::array();
    for (const auto& c : e.children) a.push_back(scalar_to_json(*c));
    return a;
  };
  switch (e.kind) {
    case K::constant:
      j["kind"] = "const";
      j["value"] = e.value;
      break;
    case K::coord:
      j["kind"] = "coord";
      j["index"] = e.index;
      break;
    case K::affine:
      j["kind"] = "affine";
      j["w"] = to_json(e.w);
      j["c"] = e.value;
      break;
    case K::norm:
      j["kind"] = "norm";
      j["center"] = to_json(e.w);
      break;
    case K::dist_to_set: {
      j["kind"] = "dist_to_set";
      ojson p = ojson::array();
      for (const auto& s : e.pieces) p.push_back(set_to_json(s));
      j["pieces"] = p;
      break;
    }
    case K::min:
      j["kind"] = "min";
      j["children"] = kids();
      break;
    case K::max:
      j["kind"] = "max";
      j["children"] = kids();
      break;
    case K::sum:
      j["kind"] = "sum";
      j["children"] = kids();
      break;
    case K::product:
      j["kind"] = "product";
      j["children"] = kids();
      break;
    case K::scale:
      j["kind"] = "scale";
      j["factor"] = e.value;
      j["child"] = scalar_to_json(*e.children.front());
      break;
    case K::ref:
      j["kind"] = "ref";
      j["name"] = e.name;
      break;
  }
  return j;
}

nlohmann::ordered_json map_to_json(const MapExpr& e) {
  using K = MapExpr::Kind;
  ojson j;
  switch (e.kind) {
    case K::const_set:
      j["kind"] = "const_set";
      j["set"] = set_to_json(*e.set);
      break;
    case K::epi:
      j["kind"] = "epi";
      j["child"] = map_to_json(*e.children.front());
      break;
    case K::sum: {
      j["kind"] = "sum";
      ojson a = ojson::array();
      for (const auto& c : e.children) a.push_back(map_to_json(*c));
      j["children"] = a;
      break;
    }
    case K::affine_arg:
      j["kind"] = "affine_arg";
      j["T"] = to_json(e.T);
      j["b"] = to_json(e.b);
      break;
    case K::scalar_dir:
      j["kind"] = "scalar_dir";
      j["scalar"] = scalar_to_json(*e.scalar);
      j["e"] = to_json(e.b);
      break;
    case K::scale:
      j["kind"] = "scale";
      j["lambda"] = e.lambda;
      j["child"] = map_to_json(*e.children.front());
      break;
    case K::branch:
      j["kind"] = "branch";
      j["guard"] = scalar_to_json(*e.scalar);
      j["nonneg_child"] = map_to_json(*e.children[0]);
      j["neg_child"] = map_to_json(*e.children[1]);
      break;
    case K::ref:
      j["kind"] = "ref";
      j["name"] = e.name;
      break;
  }
  return j;
}

nlohmann::ordered_json problem_to_json(const ProblemFile& pf) {
  ojson j;
  if (!pf.name.empty()) j["name"] = pf.name;
  j["dim_x"] = pf.dim_x;
  j["dim_y"] = pf.dim_y;
  ojson cone;
  cone["generators"] = to_json(pf.cone_generators);
  if (pf.cone_dual_generators) cone["dual_generators"] = to_json(*pf.cone_dual_generators);
  j["cone"] = cone;
  if (pf.direction_e) j["direction_e"] = to_json(pf.direction_e->vector);
  if (!pf.scalars.empty()) {
    ojson s = ojson::object();
    for (const auto& [n, e] : pf.scalars) s[n] = scalar_to_json(*e);
    j["scalars"] = s;
  }
  ojson maps = ojson::object();
  for (const auto& [n, e] : pf.maps) maps[n] = map_to_json(*e);
  j["maps"] = maps;
  if (!pf.constraint_set.empty()) {
    ojson c = ojson::array();
    for (const auto& s : pf.constraint_set) c.push_back(set_to_json(s));
    j["constraint_set"] = c;
  }
  if (!pf.candidates.empty()) {
    ojson c = ojson::object();
    for (const auto& [n, T] : pf.candidates) c[n] = to_json(T.matrix());
    j["candidates"] = c;
  }
  const auto& s = pf.schedule;
  ojson sch;
  ojson radii = ojson::array();
  for (double r : s.radii) radii.push_back(r);
  sch["radii"] = radii;
  sch["samples_per_sphere"] = s.samples_per_sphere;
  sch["accept_tol"] = s.accept_tol;
  sch["reject_tol"] = s.reject_tol;
  sch["seed"] = s.seed;
  sch["domain_box"] = {{"lower", to_json(s.domain_box.lower)}, {"upper", to_json(s.domain_box.upper)}};
  sch["grid_points"] = s.grid_points;
  ojson eps = ojson::array();
  for (double e : s.eps_grid) eps.push_back(e);
  sch["eps_grid"] = eps;
  j["schedule"] = sch;
  if (pf.base_point) j["base_point"] = to_json(*pf.base_point);
  if (pf.penalization)
    j["penalization"] = {{"ell", pf.penalization->ell}, {"mu", pf.penalization->mu},
                         {"radius", pf.penalization->radius}};
  return j;
}

ProblemFile parse_json(const nlohmann::ordered_json& root) {
  ProblemFile pf;
  Parser(pf).run(root);
  return pf;
}

ProblemFile parse(const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    // Strip the library prefix, keep the description.
    const auto pos = msg.find("syntax error");
    throw SyntaxError(line_col(text, e.byte), pos == std::string::npos ? msg : msg.substr(pos));
  }
  return parse_json(root);
}

ProblemFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string serialize(const ProblemFile& pf) { return problem_to_json(pf).dump(2) + "\n"; }

}  // namespace setcalc

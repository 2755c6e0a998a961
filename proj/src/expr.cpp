#include <algorithm>
#include <cmath>
#include <limits>

#include "setcalc/dsl.hpp"

namespace setcalc {
namespace expr {
namespace {

std::shared_ptr<ScalarExpr> make(ScalarExpr::Kind k) {
  auto e = std::make_shared<ScalarExpr>();
  e->kind = k;
  return e;
}

std::shared_ptr<MapExpr> make(MapExpr::Kind k) {
  auto e = std::make_shared<MapExpr>();
  e->kind = k;
  return e;
}

void require_children(const std::vector<ScalarPtr>& c, const char* what) {
  if (c.empty()) throw InvalidArgument(std::string(what) + ": needs at least one child");
  for (const auto& p : c)
    if (!p) throw InvalidArgument(std::string(what) + ": null child");
}

}  // namespace

ScalarPtr constant(double c) {
  auto e = make(ScalarExpr::Kind::constant);
  e->value = c;
  return e;
}

ScalarPtr coord(int i) {
  if (i < 0) throw InvalidArgument("coord: negative index");
  auto e = make(ScalarExpr::Kind::coord);
  e->index = i;
  return e;
}

ScalarPtr affine(Vector w, double c) {
  auto e = make(ScalarExpr::Kind::affine);
  e->w = std::move(w);
  e->value = c;
  return e;
}

ScalarPtr norm(Vector center) {
  auto e = make(ScalarExpr::Kind::norm);
  e->w = std::move(center);
  return e;
}

ScalarPtr dist_to_set(std::vector<ConicPolytope> pieces) {
  if (pieces.empty()) throw InvalidArgument("dist_to_set: empty piece list");
  auto e = make(ScalarExpr::Kind::dist_to_set);
  e->pieces = std::move(pieces);
  return e;
}

#define SETCALC_NARY(fn, K)                        \
  ScalarPtr fn(std::vector<ScalarPtr> children) {  \
    require_children(children, #fn);               \
    auto e = make(ScalarExpr::Kind::K);            \
    e->children = std::move(children);             \
    return e;                                      \
  }
SETCALC_NARY(min, min)
SETCALC_NARY(max, max)
SETCALC_NARY(sum, sum)
SETCALC_NARY(product, product)
#undef SETCALC_NARY

ScalarPtr scale(double c, ScalarPtr child) {
  if (!child) throw InvalidArgument("scale: null child");
  auto e = make(ScalarExpr::Kind::scale);
  e->value = c;
  e->children = {std::move(child)};
  return e;
}

MapPtr const_set(ConicPolytope s) {
  auto e = make(MapExpr::Kind::const_set);
  e->set = std::move(s);
  return e;
}

MapPtr epi(MapPtr child, const PolyCone& K) {
  if (!child) throw InvalidArgument("epi: null child");
  auto e = make(MapExpr::Kind::epi);
  e->rays = K.generators();
  e->children = {std::move(child)};
  return e;
}

MapPtr sum(std::vector<MapPtr> children) {
  if (children.empty()) throw InvalidArgument("sum: needs at least one child");
  auto e = make(MapExpr::Kind::sum);
  e->children = std::move(children);
  return e;
}

MapPtr affine_arg(Matrix T, Vector b) {
  if (T.rows() != b.size()) throw DimensionMismatch("affine_arg: T rows vs b");
  auto e = make(MapExpr::Kind::affine_arg);
  e->T = std::move(T);
  e->b = std::move(b);
  return e;
}

MapPtr scalar_dir(ScalarPtr s, Vector e_dir) {
  if (!s) throw InvalidArgument("scalar_dir: null scalar");
  auto e = make(MapExpr::Kind::scalar_dir);
  e->scalar = std::move(s);
  e->b = std::move(e_dir);
  return e;
}

MapPtr scale(double lambda, MapPtr child) {
  if (!child) throw InvalidArgument("scale: null child");
  auto e = make(MapExpr::Kind::scale);
  e->lambda = lambda;
  e->children = {std::move(child)};
  return e;
}

MapPtr branch(ScalarPtr guard, MapPtr nonneg_child, MapPtr neg_child) {
  if (!guard || !nonneg_child || !neg_child) throw InvalidArgument("branch: null operand");
  auto e = make(MapExpr::Kind::branch);
  e->scalar = std::move(guard);
  e->children = {std::move(nonneg_child), std::move(neg_child)};
  return e;
}

}  // namespace expr

double eval_scalar(const ScalarExpr& e, const Point& x) {
  using K = ScalarExpr::Kind;
  switch (e.kind) {
    case K::constant:
      return e.value;
    case K::coord:
      if (e.index >= x.size()) throw DimensionMismatch("coord: index out of range");
      return x[e.index];
    case K::affine:
      require_dim(x, e.w.size(), "affine");
      return e.w.dot(x) + e.value;
    case K::norm:
      require_dim(x, e.w.size(), "norm");
      return (x - e.w).norm();
    case K::dist_to_set: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : e.pieces) best = std::min(best, distance(x, p).value);
      return best;
    }
    case K::min: {
      double v = std::numeric_limits<double>::infinity();
      for (const auto& c : e.children) v = std::min(v, eval_scalar(*c, x));
      return v;
    }
    case K::max: {
      double v = -std::numeric_limits<double>::infinity();
      for (const auto& c : e.children) v = std::max(v, eval_scalar(*c, x));
      return v;
    }
    case K::sum: {
      double v = 0.0;
      for (const auto& c : e.children) v += eval_scalar(*c, x);
      return v;
    }
    case K::product: {
      double v = 1.0;
      for (const auto& c : e.children) v *= eval_scalar(*c, x);
      return v;
    }
    case K::scale:
      return e.value * eval_scalar(*e.children.front(), x);
    case K::ref:
      if (!e.target) throw InvalidArgument("scalar ref '" + e.name + "' is unresolved");
      return eval_scalar(*e.target, x);
  }
  throw InternalInconsistency("eval_scalar: bad node kind");
}

ConicPolytope eval_map(const MapExpr& e, const Point& x) {
  using K = MapExpr::Kind;
  switch (e.kind) {
    case K::const_set:
      return *e.set;
    case K::epi:
      return eval_map(*e.children.front(), x).with_rays(e.rays);
    case K::sum: {
      ConicPolytope acc = eval_map(*e.children.front(), x);
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = minkowski(acc, eval_map(*e.children[i], x));
      return acc;
    }
    case K::affine_arg:
      require_dim(x, e.T.cols(), "affine_arg");
      return ConicPolytope::singleton(e.T * x + e.b);
    case K::scalar_dir: {
      const double s = eval_scalar(*e.scalar, x);
      if (!std::isfinite(s)) throw InvalidArgument("scalar_dir: non-finite scalar value");
      return ConicPolytope::singleton(s * e.b);
    }
    case K::scale:
      return scale(e.lambda, eval_map(*e.children.front(), x));
    case K::branch:
      return eval_scalar(*e.scalar, x) > 0 ? eval_map(*e.children[0], x)
                                           : eval_map(*e.children[1], x);
    case K::ref:
      if (!e.target) throw InvalidArgument("map ref '" + e.name + "' is unresolved");
      return eval_map(*e.target, x);
  }
  throw InternalInconsistency("eval_map: bad node kind");
}

Eigen::Index map_dim(const MapExpr& e) {
  using K = MapExpr::Kind;
  switch (e.kind) {
    case K::const_set:
      return e.set->dim();
    case K::affine_arg:
      return e.T.rows();
    case K::scalar_dir:
      return e.b.size();
    case K::ref:
      if (!e.target) throw InvalidArgument("map ref '" + e.name + "' is unresolved");
      return map_dim(*e.target);
    default:
      return map_dim(*e.children.front());
  }
}

}  // namespace setcalc

#include "setcalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "setcalc/lp.hpp"
#include "setcalc/nnls.hpp"

namespace setcalc {
namespace {

constexpr double kZeroRay = 1e-14;

void check_points(const std::vector<Point>& pts, Eigen::Index dim, const char* what) {
  for (const auto& p : pts) {
    require_dim(p, dim, what);
    if (!p.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite coordinate");
  }
}

std::vector<Point> clean_rays(const std::vector<Point>& rays) {
  std::vector<Point> out;
  for (const auto& r : rays) {
    const double n = r.norm();
    if (n <= kZeroRay) continue;
    const Point u = r / n;
    bool dup = false;
    for (const auto& e : out)
      if ((e / e.norm() - u).cwiseAbs().maxCoeff() <= 1e-12) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(r);
  }
  return out;
}

// Distance from p to conv(piece) + cone(rays).
DistanceResult piece_distance(const Point& p, const std::vector<Point>& piece,
                              const std::vector<Point>& rays) {
  const Eigen::Index d = p.size();
  const auto nv = static_cast<Eigen::Index>(piece.size());
  const auto nr = static_cast<Eigen::Index>(rays.size());
  DistanceResult out;
  if (nv == 1 && nr == 0) {
    out.value = (p - piece[0]).norm();
    out.nearest = piece[0];
    return out;
  }
  if (nv == 1) {
    Matrix A(d, nr);
    for (Eigen::Index j = 0; j < nr; ++j) A.col(j) = rays[static_cast<std::size_t>(j)];
    const Vector b = p - piece[0];
    const auto res = nnls::solve(A, b);
    out.value = res.residual_norm;
    out.nearest = piece[0] + A * res.x;
    return out;
  }
  // Columns (v_i - p) under sum(lambda) = 1, plus rays; target 0.
  Matrix A(d, nv + nr);
  for (Eigen::Index j = 0; j < nv; ++j) A.col(j) = piece[static_cast<std::size_t>(j)] - p;
  for (Eigen::Index j = 0; j < nr; ++j) A.col(nv + j) = rays[static_cast<std::size_t>(j)];
  const auto res = nnls::solve(A, Vector::Zero(d), nv);
  out.value = res.residual_norm;
  out.nearest = p + A * res.x;
  return out;
}

bool piece_member(const Point& p, const std::vector<Point>& piece, const std::vector<Point>& rays,
                  double tol) {
  const Eigen::Index d = p.size();
  const int nv = static_cast<int>(piece.size());
  const int nr = static_cast<int>(rays.size());
  lp::Problem prob;
  prob.add_variables(nv + nr, true);
  for (Eigen::Index i = 0; i < d; ++i) {
    Vector row = Vector::Zero(nv + nr);
    for (int j = 0; j < nv; ++j) row[j] = piece[static_cast<std::size_t>(j)][i];
    for (int j = 0; j < nr; ++j) row[nv + j] = rays[static_cast<std::size_t>(j)][i];
    prob.add_constraint(row, lp::Sense::less_equal, p[i] + tol);
    prob.add_constraint(row, lp::Sense::greater_equal, p[i] - tol);
  }
  Vector ones = Vector::Zero(nv + nr);
  ones.head(nv).setOnes();
  prob.add_constraint(ones, lp::Sense::equal, 1.0);
  return prob.feasible();
}

}  // namespace

ConicPolytope::ConicPolytope(Eigen::Index dim, std::vector<Point> vertices, std::vector<Point> rays,
                             bool hulled)
    : dim_(dim), vertices_(std::move(vertices)), rays_(std::move(rays)) {
  if (dim_ <= 0) throw InvalidArgument("ConicPolytope: dimension must be positive");
  if (vertices_.empty()) throw InvalidArgument("ConicPolytope: empty vertex list");
  check_points(vertices_, dim_, "ConicPolytope vertex");
  check_points(rays_, dim_, "ConicPolytope ray");
  if (hulled) {
    Piece all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    pieces_.push_back(std::move(all));
  } else {
    for (std::size_t i = 0; i < vertices_.size(); ++i) pieces_.push_back({i});
  }
  normalize(1e-12);
}

ConicPolytope ConicPolytope::from_pieces(Eigen::Index dim,
                                         const std::vector<std::vector<Point>>& pieces,
                                         std::vector<Point> rays) {
  if (dim <= 0) throw InvalidArgument("ConicPolytope: dimension must be positive");
  ConicPolytope out;
  out.dim_ = dim;
  for (const auto& piece : pieces) {
    if (piece.empty()) continue;
    check_points(piece, dim, "ConicPolytope vertex");
    Piece idx;
    for (const auto& v : piece) {
      idx.push_back(out.vertices_.size());
      out.vertices_.push_back(v);
    }
    out.pieces_.push_back(std::move(idx));
  }
  if (out.vertices_.empty()) throw InvalidArgument("ConicPolytope: empty vertex list");
  check_points(rays, dim, "ConicPolytope ray");
  out.rays_ = std::move(rays);
  out.normalize(1e-12);
  return out;
}

void ConicPolytope::normalize(double dedup_tol) {
  // Global vertex dedup, preserving first-occurrence order.
  std::vector<Point> uniq;
  std::vector<std::size_t> remap(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    std::size_t found = uniq.size();
    for (std::size_t j = 0; j < uniq.size(); ++j) {
      if ((uniq[j] - vertices_[i]).cwiseAbs().maxCoeff() <= dedup_tol) {
        found = j;
        break;
      }
    }
    if (found == uniq.size()) uniq.push_back(vertices_[i]);
    remap[i] = found;
  }
  std::vector<Piece> pieces;
  for (auto piece : pieces_) {
    for (auto& k : piece) k = remap[k];
    std::sort(piece.begin(), piece.end());
    piece.erase(std::unique(piece.begin(), piece.end()), piece.end());
    if (std::find(pieces.begin(), pieces.end(), piece) == pieces.end()) pieces.push_back(piece);
  }
  // A single-vertex piece that is also part of a bigger piece is redundant.
  std::vector<Piece> kept;
  for (const auto& piece : pieces) {
    bool redundant = false;
    if (piece.size() == 1) {
      for (const auto& other : pieces)
        if (other.size() > 1 && std::binary_search(other.begin(), other.end(), piece[0]))
          redundant = true;
    }
    if (!redundant) kept.push_back(piece);
  }
  vertices_ = std::move(uniq);
  pieces_ = std::move(kept);
  rays_ = clean_rays(rays_);
}

std::vector<Point> ConicPolytope::piece_vertices(std::size_t piece) const {
  std::vector<Point> out;
  for (auto k : pieces_.at(piece)) out.push_back(vertices_[k]);
  return out;
}

bool ConicPolytope::is_cloud() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.size() == 1; });
}

ConicPolytope ConicPolytope::with_rays(const std::vector<Point>& extra) const {
  ConicPolytope out = *this;
  check_points(extra, dim_, "ConicPolytope ray");
  out.rays_.insert(out.rays_.end(), extra.begin(), extra.end());
  out.normalize(1e-12);
  return out;
}

ConicPolytope ConicPolytope::hull() const { return ConicPolytope(dim_, vertices_, rays_, true); }

ConicPolytope ConicPolytope::translated(const Point& shift) const {
  require_dim(shift, dim_, "translated");
  ConicPolytope out = *this;
  for (auto& v : out.vertices_) v += shift;
  return out;
}

bool ConicPolytope::same_representation(const ConicPolytope& other, double tol) const {
  if (dim_ != other.dim_) return false;
  auto piece_sets = [](const ConicPolytope& s) {
    std::vector<std::vector<Point>> out;
    for (std::size_t i = 0; i < s.pieces_.size(); ++i) {
      auto pv = s.piece_vertices(i);
      std::sort(pv.begin(), pv.end(), lex_less);
      out.push_back(std::move(pv));
    }
    return out;
  };
  auto close = [tol](const Point& a, const Point& b) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
  };
  auto same_pointset = [&](const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a)
      if (std::none_of(b.begin(), b.end(), [&](const Point& q) { return close(p, q); }))
        return false;
    return true;
  };
  if (!same_pointset(rays_, other.rays_)) return false;
  const auto pa = piece_sets(*this), pb = piece_sets(other);
  if (pa.size() != pb.size()) return false;
  for (const auto& a : pa)
    if (std::none_of(pb.begin(), pb.end(), [&](const auto& b) { return same_pointset(a, b); }))
      return false;
  return true;
}

bool member(const Point& p, const ConicPolytope& S, double tol) {
  require_dim(p, S.dim(), "member");
  if (!(tol > 0)) throw InvalidArgument("member: tolerance must be positive");
  for (std::size_t i = 0; i < S.pieces().size(); ++i) {
    if (piece_member(p, S.piece_vertices(i), S.rays(), tol)) return true;
  }
  return false;
}

DistanceResult distance(const Point& p, const ConicPolytope& S) {
  require_dim(p, S.dim(), "distance");
  DistanceResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < S.pieces().size(); ++i) {
    auto d = piece_distance(p, S.piece_vertices(i), S.rays());
    if (d.value < best.value) best = std::move(d);
  }
  return best;
}

bool in_cone(const Point& r, const std::vector<Point>& generators, double tol) {
  const double n = r.norm();
  if (n <= kZeroRay) return true;
  const Point u = r / n;
  if (generators.empty()) return false;
  const Eigen::Index d = r.size();
  const int ng = static_cast<int>(generators.size());
  lp::Problem prob;
  prob.add_variables(ng, true);
  for (Eigen::Index i = 0; i < d; ++i) {
    Vector row(ng);
    for (int j = 0; j < ng; ++j) {
      require_dim(generators[static_cast<std::size_t>(j)], d, "in_cone");
      const double gn = generators[static_cast<std::size_t>(j)].norm();
      row[j] = gn > 0 ? generators[static_cast<std::size_t>(j)][i] / gn : 0.0;
    }
    prob.add_constraint(row, lp::Sense::less_equal, u[i] + tol);
    prob.add_constraint(row, lp::Sense::greater_equal, u[i] - tol);
  }
  return prob.feasible();
}

ExcessValue excess(const ConicPolytope& A, const ConicPolytope& B, const Tolerances& tol) {
  if (A.dim() != B.dim()) throw DimensionMismatch("excess: dimensions differ");
  ExcessValue out;
  for (const auto& r : A.rays()) {
    if (!in_cone(r, B.rays(), tol.feasibility)) {
      out.infinite = true;
      out.value = std::numeric_limits<double>::infinity();
      out.escaping_ray = r;
      out.attaining_vertex = A.vertices().front();
      return out;
    }
  }
  if (A.has_hulled_piece() && B.pieces().size() > 1) {
    throw UnsupportedShape(
        "excess: hulled source against a union of several pieces; sample the source explicitly");
  }
  out.value = 0.0;
  for (const auto& v : A.vertices()) {
    const double d = distance(v, B).value;
    if (!out.attaining_vertex || d > out.value) {
      out.value = d;
      out.attaining_vertex = v;
    }
  }
  return out;
}

ConicPolytope minkowski(const ConicPolytope& A, const ConicPolytope& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("minkowski: dimensions differ");
  std::vector<std::vector<Point>> pieces;
  for (std::size_t i = 0; i < A.pieces().size(); ++i) {
    const auto pa = A.piece_vertices(i);
    for (std::size_t j = 0; j < B.pieces().size(); ++j) {
      const auto pb = B.piece_vertices(j);
      std::vector<Point> sum;
      sum.reserve(pa.size() * pb.size());
      for (const auto& a : pa)
        for (const auto& b : pb) sum.push_back(a + b);
      pieces.push_back(std::move(sum));
    }
  }
  std::vector<Point> rays = A.rays();
  rays.insert(rays.end(), B.rays().begin(), B.rays().end());
  return ConicPolytope::from_pieces(A.dim(), pieces, std::move(rays));
}

ConicPolytope affine_image(const LinOp& T, const Point& shift, const ConicPolytope& S) {
  if (T.dim_x() != S.dim()) throw DimensionMismatch("affine_image: operator columns vs set dim");
  require_dim(shift, T.dim_y(), "affine_image shift");
  std::vector<std::vector<Point>> pieces;
  for (std::size_t i = 0; i < S.pieces().size(); ++i) {
    std::vector<Point> pv;
    for (const auto& v : S.piece_vertices(i)) pv.push_back(T.matrix() * v + shift);
    pieces.push_back(std::move(pv));
  }
  std::vector<Point> rays;
  for (const auto& r : S.rays()) rays.push_back(T.matrix() * r);
  return ConicPolytope::from_pieces(T.dim_y(), pieces, std::move(rays));
}

ConicPolytope scale(double lambda, const ConicPolytope& S) {
  if (!std::isfinite(lambda)) throw InvalidArgument("scale: non-finite factor");
  if (lambda == 0.0) return ConicPolytope::singleton(Point::Zero(S.dim()));
  const LinOp T(Matrix::Identity(S.dim(), S.dim()) * lambda);
  return affine_image(T, Point::Zero(S.dim()), S);
}

ConicPolytope scaled_ball(Eigen::Index dim, double radius, int refinement) {
  if (dim <= 0) throw InvalidArgument("scaled_ball: dimension must be positive");
  if (!(radius >= 0) || !std::isfinite(radius))
    throw InvalidArgument("scaled_ball: radius must be a nonnegative real");
  if (radius == 0.0) return ConicPolytope::singleton(Point::Zero(dim));
  std::vector<Point> verts;
  if (dim == 2 && refinement >= 3) {
    for (int k = 0; k < refinement; ++k) {
      const double t = 2.0 * std::numbers::pi * k / refinement;
      verts.push_back(make_vector({radius * std::cos(t), radius * std::sin(t)}));
    }
  } else {
    for (Eigen::Index i = 0; i < dim; ++i) {
      Point e = Point::Zero(dim);
      e[i] = radius;
      verts.push_back(e);
      verts.push_back(-e);
    }
  }
  return ConicPolytope(dim, std::move(verts), {}, true);
}

double scaled_ball_inradius(Eigen::Index dim, int refinement) {
  if (dim == 2 && refinement >= 3) return std::cos(std::numbers::pi / refinement);
  return 1.0 / std::sqrt(static_cast<double>(dim));
}

SupportMin support_min(const ConicPolytope& S, const Vector& y, double tol) {
  require_dim(y, S.dim(), "support_min");
  SupportMin out;
  for (const auto& r : S.rays()) {
    if (y.dot(r) < -tol * r.norm()) {
      out.minus_infinity = true;
      out.value = -std::numeric_limits<double>::infinity();
      return out;
    }
  }
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& v : S.vertices()) {
    const double s = y.dot(v);
    if (s < out.value) {
      out.value = s;
      out.argmin = v;
    }
  }
  return out;
}

}  // namespace setcalc

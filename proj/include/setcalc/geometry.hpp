#pragma once

// Finite-dimensional set arithmetic on sets of the form
//
//     S = (conv P_1  U ... U  conv P_k) + cone(R)
//
// where each P_j is a finite group of vertices ("piece"). The two shapes the
// rest of the library talks about are special cases:
//   * hulled:      a single piece,            S = conv V + cone R
//   * non-hulled:  every piece is one vertex, S = V + cone R
// Minkowski sums of mixed shapes stay exact as unions of convex pieces.

#include <optional>
#include <vector>

#include "setcalc/types.hpp"

namespace setcalc {

struct Tolerances {
  double feasibility = 1e-9;  // LP membership slack (infinity norm)
  double distance = 1e-8;     // distances below this count as containment
  double dedup = 1e-12;       // absolute vertex deduplication threshold
};

class ConicPolytope {
 public:
  using Piece = std::vector<std::size_t>;

  /// `hulled` true: conv(vertices) + cone(rays); false: vertices + cone(rays).
  ConicPolytope(Eigen::Index dim, std::vector<Point> vertices, std::vector<Point> rays = {},
                bool hulled = false);

  /// Union of conv(piece) + cone(rays).
  static ConicPolytope from_pieces(Eigen::Index dim, const std::vector<std::vector<Point>>& pieces,
                                   std::vector<Point> rays = {});
  static ConicPolytope singleton(const Point& p) { return ConicPolytope(p.size(), {p}); }
  /// cone(rays) with apex `apex`.
  static ConicPolytope cone(const Point& apex, std::vector<Point> rays) {
    return ConicPolytope(apex.size(), {apex}, std::move(rays));
  }

  Eigen::Index dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Point>& rays() const { return rays_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::vector<Point> piece_vertices(std::size_t piece) const;

  /// Single convex piece (true also for a single vertex).
  bool hulled() const { return pieces_.size() == 1; }
  /// Every piece is a single vertex (true also for a single vertex).
  bool is_cloud() const;
  /// Some piece has more than one vertex.
  bool has_hulled_piece() const { return !is_cloud(); }

  ConicPolytope with_rays(const std::vector<Point>& extra) const;
  /// conv of all vertices plus the same rays.
  ConicPolytope hull() const;
  ConicPolytope translated(const Point& shift) const;

  /// Representation equality after deduplication (order-insensitive).
  bool same_representation(const ConicPolytope& other, double tol = 1e-9) const;

 private:
  ConicPolytope() = default;
  void normalize(double dedup_tol);

  Eigen::Index dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Point> rays_;
  std::vector<Piece> pieces_;
};

struct DistanceResult {
  double value = 0.0;
  Point nearest;
};

struct ExcessValue {
  bool infinite = false;
  double value = 0.0;
  std::optional<Point> attaining_vertex;
  std::optional<Point> escaping_ray;  // set when infinite
};

/// p in S up to `tol` in the infinity norm (LP feasibility per piece).
bool member(const Point& p, const ConicPolytope& S, double tol = 1e-9);

/// Euclidean distance from p to S (NNLS per piece).
DistanceResult distance(const Point& p, const ConicPolytope& S);

/// e(A, B) = sup_{a in A} d(a, B). Exact by vertex reduction; throws
/// UnsupportedShape when A has a multi-vertex piece and B is a union of
/// several pieces (d(., B) is then not convex on A's pieces).
ExcessValue excess(const ConicPolytope& A, const ConicPolytope& B, const Tolerances& tol = {});

ConicPolytope minkowski(const ConicPolytope& A, const ConicPolytope& B);

/// { T v + shift } + cone{ T r }.
ConicPolytope affine_image(const LinOp& T, const Point& shift, const ConicPolytope& S);

/// lambda * S. lambda == 0 collapses to the origin.
ConicPolytope scale(double lambda, const ConicPolytope& S);

/// Polyhedral inner approximation of radius * unit ball: a hulled cross-polytope,
/// or for dim == 2 and refinement >= 3 a regular polygon with that many vertices.
ConicPolytope scaled_ball(Eigen::Index dim, double radius, int refinement = 0);

/// Radius of the largest Euclidean ball inside scaled_ball(dim, 1, refinement).
double scaled_ball_inradius(Eigen::Index dim, int refinement = 0);

/// r in cone(generators) (r is normalised first; infinity-norm slack tol).
bool in_cone(const Point& r, const std::vector<Point>& generators, double tol = 1e-9);

struct SupportMin {
  bool minus_infinity = false;
  double value = 0.0;
  std::optional<Point> argmin;
};

/// inf over S of y.p; minus infinity whenever some ray has y.r < -tol.
SupportMin support_min(const ConicPolytope& S, const Vector& y, double tol = 1e-12);

}  // namespace setcalc

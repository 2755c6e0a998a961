#include "setcalc/schedule.hpp"

#include <cmath>

namespace setcalc {

bool Box::contains(const Point& x, double tol) const {
  require_dim(x, dim(), "Box::contains");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  return true;
}

SamplingSchedule SamplingSchedule::defaults(Eigen::Index dim_x) {
  SamplingSchedule s;
  for (int k = 0; k <= 13; ++k) s.radii.push_back(0.5 * std::pow(10.0, -k / 2.0));
  s.domain_box.lower = Vector::Constant(dim_x, -1.0);
  s.domain_box.upper = Vector::Constant(dim_x, 1.0);
  return s;
}

void SamplingSchedule::validate() const {
  if (radii.size() < 3) throw InvalidArgument("schedule: need at least 3 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || !std::isfinite(radii[i]))
      throw InvalidArgument("schedule: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw InvalidArgument("schedule: radii must be strictly decreasing");
  }
  if (!(radii.back() < 1e-6 * radii.front()))
    throw InvalidArgument("schedule: smallest radius must be below 1e-6 * largest");
  if (samples_per_sphere < 8) throw InvalidArgument("schedule: samples_per_sphere must be >= 8");
  if (!(accept_tol > 0)) throw InvalidArgument("schedule: accept_tol must be positive");
  if (!(reject_tol >= 2 * accept_tol))
    throw InvalidArgument("schedule: reject_tol must be at least 2 * accept_tol");
  if (domain_box.lower.size() != domain_box.upper.size() || domain_box.lower.size() == 0)
    throw InvalidArgument("schedule: malformed domain box");
  for (Eigen::Index i = 0; i < domain_box.lower.size(); ++i)
    if (!(domain_box.lower[i] <= domain_box.upper[i]))
      throw InvalidArgument("schedule: domain box lower > upper");
  if (grid_points < 2) throw InvalidArgument("schedule: grid_points must be >= 2");
  if (eps_grid.empty()) throw InvalidArgument("schedule: empty eps_grid");
  for (double e : eps_grid)
    if (!(e > 0)) throw InvalidArgument("schedule: eps_grid entries must be positive");
}

std::vector<Point> box_grid(const Box& box, int points) {
  if (points < 2) throw InvalidArgument("box_grid: need at least 2 points per axis");
  const auto d = box.dim();
  std::vector<Point> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Point p(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = static_cast<double>(idx[static_cast<std::size_t>(i)]) / (points - 1);
      p[i] = box.lower[i] + t * (box.upper[i] - box.lower[i]);
    }
    out.push_back(std::move(p));
    Eigen::Index k = d - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == points) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

}  // namespace setcalc

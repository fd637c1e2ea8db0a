#include <algorithm>
#include <cmath>
#include <deque>

#include "bandedge/bands.hpp"
#include "bandedge/error.hpp"

namespace bandedge {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew's monotone chain; returns the hull vertices.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end(),
            [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_set_diameter(const std::vector<Vec2>& pts) {
  const auto hull = convex_hull(pts);
  double d = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) d = std::max(d, (hull[i] - hull[j]).norm());
  return d;
}

}  // namespace

std::vector<LevelCluster> level_set(const BandGrid& grid, int band, double lambda_star, double eps) {
  if (band < 1 || band > grid.count) throw Error(ErrorCode::InvalidArgument, "band index out of range");
  const int n1 = grid.n1, n2 = grid.n2;
  const auto flat = [n2](int i1, int i2) { return static_cast<std::size_t>(i1) * n2 + i2; };

  std::vector<char> marked(static_cast<std::size_t>(n1) * n2, 0);
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      marked[flat(i1, i2)] = std::abs(grid.value(i1, i2, band) - lambda_star) <= eps;

  struct Lift {
    int l1, l2;
  };
  std::vector<char> visited(marked.size(), 0);
  std::vector<Lift> lift(marked.size(), Lift{0, 0});
  std::vector<LevelCluster> clusters;

  for (int s1 = 0; s1 < n1; ++s1)
    for (int s2 = 0; s2 < n2; ++s2) {
      if (!marked[flat(s1, s2)] || visited[flat(s1, s2)]) continue;
      LevelCluster cluster;
      std::vector<Vec2> lifted;
      std::deque<std::pair<int, int>> queue{{s1, s2}};
      visited[flat(s1, s2)] = 1;
      lift[flat(s1, s2)] = {s1, s2};
      double best = std::abs(grid.value(s1, s2, band) - lambda_star);
      cluster.best_k = grid.k_at(s1, s2);
      cluster.best_t = grid.t_at(s1, s2);
      while (!queue.empty()) {
        const auto [i1, i2] = queue.front();
        queue.pop_front();
        cluster.nodes.push_back({i1, i2});
        const Lift here = lift[flat(i1, i2)];
        lifted.push_back((double(here.l1) / n1) * grid.g1 + (double(here.l2) / n2) * grid.g2);
        const double dev = std::abs(grid.value(i1, i2, band) - lambda_star);
        if (dev < best) {
          best = dev;
          cluster.best_k = grid.k_at(i1, i2);
          cluster.best_t = grid.t_at(i1, i2);
        }
        for (int d1 = -1; d1 <= 1; ++d1)
          for (int d2 = -1; d2 <= 1; ++d2) {
            if (d1 == 0 && d2 == 0) continue;
            const int j1 = ((i1 + d1) % n1 + n1) % n1;
            const int j2 = ((i2 + d2) % n2 + n2) % n2;
            const std::size_t f = flat(j1, j2);
            if (!marked[f]) continue;
            const Lift want{here.l1 + d1, here.l2 + d2};
            if (visited[f]) {
              if (lift[f].l1 != want.l1 || lift[f].l2 != want.l2) cluster.wraps = true;
              continue;
            }
            visited[f] = 1;
            lift[f] = want;
            queue.push_back({j1, j2});
          }
      }
      Vec2 centroid = Vec2::Zero();
      for (const auto& p : lifted) centroid += p;
      cluster.centroid_k = centroid / static_cast<double>(lifted.size());
      cluster.diameter = point_set_diameter(lifted) + grid.spacing();
      clusters.push_back(std::move(cluster));
    }

  std::vector<std::size_t> order(clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clusters[a].nodes.size() > clusters[b].nodes.size();
  });
  std::vector<LevelCluster> sorted;
  sorted.reserve(clusters.size());
  for (std::size_t i : order) sorted.push_back(std::move(clusters[i]));
  return sorted;
}

}  // namespace bandedge

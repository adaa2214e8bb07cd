#include "snapfix/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace snapfix {
namespace shapes {

namespace {

Polyhedron fromPolys(std::vector<Vec3> verts, std::vector<std::vector<int>> polys) {
  return buildPolyhedron(std::move(verts), polys);
}

}  // namespace

Polyhedron tetrahedron(double size) {
  double s = size / (2.0 * std::sqrt(2.0));
  std::vector<Vec3> v = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  return fromPolys(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

Polyhedron cube(double size) {
  double s = size / 2.0;
  std::vector<Vec3> v = {{-s, -s, -s}, {s, -s, -s}, {s, s, -s}, {-s, s, -s},
                         {-s, -s, s},  {s, -s, s},  {s, s, s},  {-s, s, s}};
  return fromPolys(v, {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                       {2, 3, 7, 6}, {1, 2, 6, 5}, {3, 0, 4, 7}});
}

Polyhedron octahedron(double size) {
  double s = size / std::sqrt(2.0);
  std::vector<Vec3> v = {{s, 0, 0}, {-s, 0, 0}, {0, s, 0}, {0, -s, 0}, {0, 0, s}, {0, 0, -s}};
  return fromPolys(v, {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                       {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}});
}

Polyhedron icosahedron(double size) {
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  double s = size / 2.0;
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& p : v) p = p * s;
  return fromPolys(v, {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}});
}

Polyhedron dodecahedron(double size) {
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  double s = size / 2.0;
  std::vector<Vec3> v;
  for (double x : {-1.0, 1.0})
    for (double y : {-1.0, 1.0})
      for (double z : {-1.0, 1.0}) v.push_back({x, y, z});
  for (double a : {-1.0 / phi, 1.0 / phi})
    for (double b : {-phi, phi}) {
      v.push_back({0, a, b});
      v.push_back({a, b, 0});
      v.push_back({b, 0, a});
    }
  for (Vec3& p : v) p = p * s;
  // the 12 face planes support the vertex set along icosahedron-vertex axes
  std::vector<std::vector<int>> f;
  std::vector<Vec3> axes;  // face normals: the (0, +-phi, +-1) cyclic family
  for (double a : {-phi, phi})
    for (double b : {-1.0, 1.0}) {
      axes.push_back({0, a, b});
      axes.push_back({a, b, 0});
      axes.push_back({b, 0, a});
    }
  for (const Vec3& axis : axes) {
    Vec3 n = normalized(axis);
    double best = -1e300;
    for (const Vec3& p : v) best = std::max(best, dot(p, n));
    std::vector<int> face;
    for (size_t i = 0; i < v.size(); ++i)
      if (dot(v[i], n) > best - 1e-9 * size) face.push_back(static_cast<int>(i));
    if (face.size() != 5) throw std::logic_error("dodecahedron face extraction failed");
    Vec3 c{0, 0, 0};
    for (int i : face) c += v[i];
    c = c / 5.0;
    Vec3 u = normalized(v[face[0]] - c);
    Vec3 w = cross(n, u);
    std::sort(face.begin(), face.end(), [&](int a, int b) {
      double aa = std::atan2(dot(v[a] - c, w), dot(v[a] - c, u));
      double ab = std::atan2(dot(v[b] - c, w), dot(v[b] - c, u));
      return aa < ab;
    });
    f.push_back(face);
  }
  return fromPolys(v, f);
}

Polyhedron squarePyramid(double base, double height) {
  double s = base / 2.0;
  std::vector<Vec3> v = {{-s, -s, 0}, {s, -s, 0}, {s, s, 0}, {-s, s, 0}, {0, 0, height}};
  return fromPolys(v, {{0, 3, 2, 1}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
}

Polyhedron prism(int m, double radius, double height) {
  if (m < 3) throw std::invalid_argument("prism needs at least 3 sides");
  std::vector<Vec3> v;
  for (int k = 0; k < m; ++k) {
    double a = 2.0 * std::numbers::pi * k / m;
    v.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
  }
  for (int k = 0; k < m; ++k) v.push_back({v[k].x, v[k].y, height});
  std::vector<std::vector<int>> f;
  std::vector<int> bottom, top;
  for (int k = m - 1; k >= 0; --k) bottom.push_back(k);
  for (int k = 0; k < m; ++k) top.push_back(m + k);
  f.push_back(bottom);
  f.push_back(top);
  for (int k = 0; k < m; ++k) {
    int k1 = (k + 1) % m;
    f.push_back({k, k1, m + k1, m + k});
  }
  return fromPolys(v, f);
}

Polyhedron squareFrustum(double baseEdge, double topEdge, double height) {
  double b = baseEdge / 2.0, t = topEdge / 2.0;
  std::vector<Vec3> v = {{-b, -b, 0}, {b, -b, 0}, {b, b, 0}, {-b, b, 0},
                         {-t, -t, height}, {t, -t, height}, {t, t, height}, {-t, t, height}};
  return fromPolys(v, {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                       {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}});
}

Polyhedron quadTorus(int sweepSteps, double majorRadius, double minorHalf) {
  if (sweepSteps < 3) throw std::invalid_argument("quadTorus needs at least 3 sweep steps");
  const int m = sweepSteps;
  std::vector<Vec3> v;
  // square cross-section corners, swept along a regular m-gon in the xy-plane
  for (int k = 0; k < m; ++k) {
    double a = 2.0 * std::numbers::pi * k / m;
    Vec3 radial{std::cos(a), std::sin(a), 0};
    Vec3 center = radial * majorRadius;
    v.push_back(center + radial * minorHalf + Vec3{0, 0, -minorHalf});
    v.push_back(center + radial * minorHalf + Vec3{0, 0, minorHalf});
    v.push_back(center - radial * minorHalf + Vec3{0, 0, minorHalf});
    v.push_back(center - radial * minorHalf + Vec3{0, 0, -minorHalf});
  }
  std::vector<std::vector<int>> f;
  for (int k = 0; k < m; ++k) {
    int a = 4 * k, b = 4 * ((k + 1) % m);
    for (int c = 0; c < 4; ++c) {
      int c1 = (c + 1) % 4;
      f.push_back({a + c, b + c, b + c1, a + c1});
    }
  }
  return fromPolys(v, f);
}

Polyhedron randomConvexPolytope(int nVertices, uint64_t seed, double radius) {
  if (nVertices < 4) throw std::invalid_argument("need at least 4 vertices");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < nVertices) {
    Vec3 p{gauss(rng), gauss(rng), gauss(rng)};
    double n = norm(p);
    if (n < 1e-6) continue;
    p = p * (radius / n);
    bool tooClose = false;
    for (const Vec3& q : pts)
      if (norm(q - p) < 1e-3 * radius) { tooClose = true; break; }
    if (!tooClose) pts.push_back(p);
  }

  // incremental convex hull; points on a sphere are all extreme
  struct Tri { int a, b, c; };
  auto orient = [&](const Tri& t, const Vec3& p) {
    return dot(cross(pts[t.b] - pts[t.a], pts[t.c] - pts[t.a]), p - pts[t.a]);
  };
  std::vector<Tri> hull = {{0, 1, 2}, {0, 2, 1}};
  // seed with a proper tetrahedron
  {
    int d = -1;
    for (int i = 3; i < nVertices; ++i)
      if (std::abs(orient({0, 1, 2}, pts[i])) > 1e-9) { d = i; break; }
    if (d < 0) throw std::logic_error("degenerate point set");
    if (orient({0, 1, 2}, pts[d]) > 0)
      hull = {{0, 2, 1}, {0, 1, d}, {1, 2, d}, {2, 0, d}};
    else
      hull = {{0, 1, 2}, {1, 0, d}, {2, 1, d}, {0, 2, d}};
    std::swap(pts[3], pts[d]);
  }
  for (int i = 4; i < nVertices; ++i) {
    const Vec3& p = pts[i];
    std::vector<char> visible(hull.size(), 0);
    bool any = false;
    for (size_t t = 0; t < hull.size(); ++t)
      if (orient(hull[t], p) > 1e-12) { visible[t] = 1; any = true; }
    if (!any) continue;  // inside (should not happen on a sphere)
    std::set<std::pair<int, int>> horizon;
    for (size_t t = 0; t < hull.size(); ++t) {
      if (!visible[t]) continue;
      int e[3][2] = {{hull[t].a, hull[t].b}, {hull[t].b, hull[t].c}, {hull[t].c, hull[t].a}};
      for (auto& ed : e) {
        auto rev = std::make_pair(ed[1], ed[0]);
        if (horizon.count(rev)) horizon.erase(rev);
        else horizon.insert({ed[0], ed[1]});
      }
    }
    std::vector<Tri> next;
    for (size_t t = 0; t < hull.size(); ++t)
      if (!visible[t]) next.push_back(hull[t]);
    for (const auto& [a, b] : horizon) next.push_back({a, b, i});
    hull = std::move(next);
  }

  std::vector<std::vector<int>> f;
  f.reserve(hull.size());
  for (const Tri& t : hull) f.push_back({t.a, t.b, t.c});
  return fromPolys(pts, f);
}

Polyhedron byName(const std::string& name, double size) {
  if (name == "tetrahedron") return tetrahedron(size);
  if (name == "cube") return cube(size);
  if (name == "octahedron") return octahedron(size);
  if (name == "icosahedron") return icosahedron(size);
  if (name == "dodecahedron") return dodecahedron(size);
  if (name == "square_pyramid") return squarePyramid(size, 0.6 * size);
  if (name == "square_frustum") return squareFrustum(size, 0.6 * size, 0.5 * size);
  if (name == "torus") return quadTorus(8, 0.6 * size, 0.15 * size);
  if (name.rfind("prism", 0) == 0) {
    int m = std::stoi(name.substr(5));
    return prism(m, size / 2.0, size);
  }
  throw std::invalid_argument("unknown builtin shape '" + name + "'");
}

std::vector<std::string> builtinNames() {
  return {"tetrahedron", "cube",          "octahedron",    "icosahedron", "dodecahedron",
          "square_pyramid", "square_frustum", "torus",     "prism8",      "prism28",
          "prism48"};
}

}  // namespace shapes
}  // namespace snapfix

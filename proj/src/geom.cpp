#include "snapfix/geom.hpp"

#include <algorithm>

namespace snapfix {

Vec3 newellNormal(std::span<const Vec3> poly) {
  Vec3 n{0, 0, 0};
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec3& a = poly[i];
    const Vec3& b = poly[(i + 1) % poly.size()];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return n;
}

double polygonArea(std::span<const Vec3> poly) {
  return 0.5 * norm(newellNormal(poly));
}

Vec3 polygonCentroid(std::span<const Vec3> poly) {
  Vec3 c{0, 0, 0};
  for (const Vec3& p : poly) c += p;
  return c / static_cast<double>(poly.size());
}

namespace {

std::vector<Vec2> projectTo2(std::span<const Vec3> poly, const Vec3& n) {
  auto [u, v] = planeBasis(n);
  std::vector<Vec2> out(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) out[i] = {dot(poly[i], u), dot(poly[i], v)};
  return out;
}

bool pointInTriangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
  double d1 = cross2({b.x - a.x, b.y - a.y}, {p.x - a.x, p.y - a.y});
  double d2 = cross2({c.x - b.x, c.y - b.y}, {p.x - b.x, p.y - b.y});
  double d3 = cross2({a.x - c.x, a.y - c.y}, {p.x - c.x, p.y - c.y});
  return d1 >= -eps && d2 >= -eps && d3 >= -eps;
}

}  // namespace

std::vector<std::array<int, 3>> triangulatePolygon(std::span<const Vec3> poly) {
  const size_t n = poly.size();
  std::vector<std::array<int, 3>> tris;
  if (n < 3) return tris;
  if (n == 3) {
    tris.push_back({0, 1, 2});
    return tris;
  }
  Vec3 nrm = newellNormal(poly);
  double scale = norm(nrm);
  if (scale <= 0.0) throw std::invalid_argument("degenerate polygon");
  auto pts = projectTo2(poly, nrm / scale);

  std::vector<int> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);

  // CCW in the projected frame by construction (normal from the polygon itself).
  double eps = 1e-12 * scale;
  size_t guard = 0;
  while (idx.size() > 3) {
    bool clipped = false;
    const size_t m = idx.size();
    for (size_t i = 0; i < m; ++i) {
      int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      const Vec2 &a = pts[ia], &b = pts[ib], &c = pts[ic];
      double turn = cross2({b.x - a.x, b.y - a.y}, {c.x - b.x, c.y - b.y});
      if (turn < -eps) continue;  // reflex
      bool ear = true;
      for (int j : idx) {
        if (j == ia || j == ib || j == ic) continue;
        if (pointInTriangle(pts[j], a, b, c, -eps)) { ear = false; break; }
      }
      if (!ear) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) {
      // numerically stuck: clip the flattest corner to keep progress
      size_t best = 0;
      double bestTurn = -1e300;
      for (size_t i = 0; i < idx.size(); ++i) {
        const size_t m2 = idx.size();
        const Vec2 &a = pts[idx[(i + m2 - 1) % m2]], &b = pts[idx[i]], &c = pts[idx[(i + 1) % m2]];
        double turn = cross2({b.x - a.x, b.y - a.y}, {c.x - b.x, c.y - b.y});
        if (turn > bestTurn) { bestTurn = turn; best = i; }
      }
      const size_t m2 = idx.size();
      tris.push_back({idx[(best + m2 - 1) % m2], idx[best], idx[(best + 1) % m2]});
      idx.erase(idx.begin() + static_cast<long>(best));
    }
    if (++guard > 4 * n) throw std::runtime_error("polygon triangulation failed");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

bool pointInPolygon2(const Vec2& p, std::span<const Vec2> poly) {
  bool in = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 &a = poly[i], &b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xint = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < xint) in = !in;
    }
  }
  return in;
}

std::vector<Vec2> convexClipPolygon2(std::span<const Vec2> subject,
                                     std::span<const Vec2> convexClipper) {
  std::vector<Vec2> poly(subject.begin(), subject.end());
  const size_t n = convexClipper.size();
  double a2 = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 &p = convexClipper[i], &q = convexClipper[(i + 1) % n];
    a2 += cross2(p, q);
  }
  std::vector<Vec2> clip(convexClipper.begin(), convexClipper.end());
  if (a2 < 0) std::reverse(clip.begin(), clip.end());

  for (size_t i = 0; i < n && !poly.empty(); ++i) {
    const Vec2 &a = clip[i], &b = clip[(i + 1) % n];
    Vec2 dir{b.x - a.x, b.y - a.y};
    auto inside = [&](const Vec2& p) { return cross2(dir, {p.x - a.x, p.y - a.y}) >= 0.0; };
    auto intersect = [&](const Vec2& p, const Vec2& q) {
      double dp = cross2(dir, {p.x - a.x, p.y - a.y});
      double dq = cross2(dir, {q.x - a.x, q.y - a.y});
      double t = dp / (dp - dq);
      return Vec2{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    };
    std::vector<Vec2> out;
    for (size_t j = 0; j < poly.size(); ++j) {
      const Vec2 &p = poly[j], &q = poly[(j + 1) % poly.size()];
      bool pin = inside(p), qin = inside(q);
      if (pin) out.push_back(p);
      if (pin != qin) out.push_back(intersect(p, q));
    }
    poly.swap(out);
  }
  return poly;
}

double convexClipArea2(std::span<const Vec2> subject, std::span<const Vec2> convexClipper) {
  auto poly = convexClipPolygon2(subject, convexClipper);
  double area2 = 0;
  for (size_t i = 0; i < poly.size(); ++i)
    area2 += cross2(poly[i], poly[(i + 1) % poly.size()]);
  return std::abs(area2) * 0.5;
}

bool isConvexPolygon2(std::span<const Vec2> poly, double eps) {
  const size_t n = poly.size();
  if (n < 4) return true;
  int sign = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 &a = poly[i], &b = poly[(i + 1) % n], &c = poly[(i + 2) % n];
    double t = cross2({b.x - a.x, b.y - a.y}, {c.x - b.x, c.y - b.y});
    if (std::abs(t) <= eps) continue;
    int s = t > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

}  // namespace snapfix

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace snapfix {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  if (n <= 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return v / n;
}

// Unit vectors u, v with {u, v, n} a right-handed orthonormal frame.
inline std::array<Vec3, 2> planeBasis(const Vec3& n) {
  Vec3 a = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = normalized(cross(a, n));
  Vec3 v = cross(n, u);
  return {u, v};
}

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Newell normal; magnitude is twice the polygon area.
Vec3 newellNormal(std::span<const Vec3> poly);

double polygonArea(std::span<const Vec3> poly);

Vec3 polygonCentroid(std::span<const Vec3> poly);

// Ear-clipping triangulation of a simple planar polygon. Returns index
// triples into `poly`. Collinear vertices are tolerated.
std::vector<std::array<int, 3>> triangulatePolygon(std::span<const Vec3> poly);

// Strictly-inside test for a point in a simple 2D polygon.
bool pointInPolygon2(const Vec2& p, std::span<const Vec2> poly);

// Sutherland-Hodgman clip of a simple `subject` polygon against a convex
// clipper. Returns the clipped polygon (possibly empty).
std::vector<Vec2> convexClipPolygon2(std::span<const Vec2> subject,
                                     std::span<const Vec2> convexClipper);

// Area of the intersection of a simple polygon with a convex polygon.
double convexClipArea2(std::span<const Vec2> subject, std::span<const Vec2> convexClipper);

bool isConvexPolygon2(std::span<const Vec2> poly, double eps = 1e-12);

}  // namespace snapfix

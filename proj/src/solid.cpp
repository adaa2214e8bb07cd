#include "snapfix/solid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

namespace snapfix {

void ExtrusionParams::validate() const {
  if (alphaP <= 0 || alphaB <= 0 || alphaT <= 0)
    throw std::invalid_argument("extrusion thicknesses must be positive");
  if (clearance < 0) throw std::invalid_argument("clearance must be non-negative");
  if (bodyShrink <= 0 || bodyShrink > 1)
    throw std::invalid_argument("bodyShrink must lie in (0, 1]");
  if (tipWidth < 0) throw std::invalid_argument("tipWidth must be non-negative");
}

double SolidMesh::volume() const {
  double vol6 = 0;
  for (const auto& t : triangles)
    vol6 += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]]));
  return vol6 / 6.0;
}

bool SolidMesh::watertight() const {
  if (triangles.empty()) return false;
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a == b) return false;
      if (++directed[{a, b}] > 1) return false;
    }
  }
  for (const auto& [e, n] : directed)
    if (!directed.count({e.second, e.first})) return false;
  return true;
}

double JointFeasibility::maxTipWidth() const { return maxFingertipWidth(a, thetaC, eta); }

double maxFingertipWidth(double a, double thetaC, double eta) {
  if (a <= 0) throw std::invalid_argument("edge length must be positive");
  if (eta <= 0 || eta >= std::numbers::pi)
    throw std::invalid_argument("eta must lie in (0, pi)");
  if (thetaC <= 0) throw std::invalid_argument("thetaC must be positive");
  double s = std::sin(thetaC + eta);
  if (s <= 0) throw std::invalid_argument("thetaC + eta must stay below pi");
  return a * std::sin(thetaC) / s;
}

namespace {

std::vector<Vec3> dedupeLoop(std::span<const Vec3> poly, double eps) {
  std::vector<Vec3> out;
  for (const Vec3& p : poly) {
    if (!out.empty() && norm(p - out.back()) <= eps) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && norm(out.front() - out.back()) <= eps) out.pop_back();
  return out;
}

void appendPrism(SolidMesh& mesh, std::span<const Vec3> polygon, double alpha, int shell) {
  std::vector<Vec3> poly = dedupeLoop(polygon, 1e-12);
  if (poly.size() < 3) throw std::invalid_argument("degenerate polygon");
  double area = polygonArea(poly);
  if (area < 1e-12) throw std::invalid_argument("degenerate polygon (area below 1e-12)");
  if (alpha <= 0) throw std::invalid_argument("extrusion thickness must be positive");
  Vec3 n = normalized(newellNormal(poly));

  const int base = static_cast<int>(mesh.vertices.size());
  const int m = static_cast<int>(poly.size());
  for (const Vec3& p : poly) mesh.vertices.push_back(p);
  for (const Vec3& p : poly) mesh.vertices.push_back(p + n * alpha);

  auto tris = triangulatePolygon(poly);
  auto emit = [&](int a, int b, int c) {
    mesh.triangles.push_back({a, b, c});
    mesh.shellOfTriangle.push_back(shell);
  };
  for (const auto& t : tris) emit(base + t[0], base + t[2], base + t[1]);          // bottom, inward
  for (const auto& t : tris) emit(base + m + t[0], base + m + t[1], base + m + t[2]);  // top
  for (int k = 0; k < m; ++k) {
    int k1 = (k + 1) % m;
    emit(base + k, base + k1, base + m + k1);
    emit(base + k, base + m + k1, base + m + k);
  }
}

SolidMesh makePrism(std::span<const Vec3> polygon, double alpha) {
  SolidMesh mesh;
  appendPrism(mesh, polygon, alpha, 0);
  mesh.shellCount = 1;
  return mesh;
}

// Shared edge of two facets as traversed by facet `f`; throws if none.
std::pair<Vec3, Vec3> sharedEdge(const Polyhedron& p, int f, int g) {
  const auto& loop = p.facets[f].loop;
  const auto& other = p.facets[g].loop;
  std::set<std::pair<int, int>> edgesOfG;
  for (size_t k = 0; k < other.size(); ++k)
    edgesOfG.insert({other[k], other[(k + 1) % other.size()]});
  for (size_t k = 0; k < loop.size(); ++k) {
    int a = loop[k], b = loop[(k + 1) % loop.size()];
    if (edgesOfG.count({b, a}))  // twin runs the other way in g
      return {p.vertices[a], p.vertices[b]};
  }
  throw std::invalid_argument("facets share no edge");
}

std::vector<Vec2> project2(std::span<const Vec3> poly, const Vec3& u, const Vec3& v) {
  std::vector<Vec2> out(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) out[i] = {dot(poly[i], u), dot(poly[i], v)};
  return out;
}

}  // namespace

std::vector<Vec3> buildFingertipQuad(const Vec3& e0, const Vec3& e1, const Vec3& tipNormal,
                                     double width, const Vec3& insideHint) {
  Vec3 edge = e1 - e0;
  Vec3 c = cross(edge, tipNormal);
  if (norm(c) < 1e-9) throw std::invalid_argument("degenerate fingertip edge");
  if (width <= 0) throw std::invalid_argument("fingertip width must be positive");
  Vec3 v = normalized(c);
  Vec3 mid = (e0 + e1) * 0.5;
  if (dot(insideHint - mid, v) < 0) v = -v;
  v = v * width;
  return {e0, e1, e1 + v, e0 + v};
}

std::vector<Vec3> fingertipQuad(const Polyhedron& p, const Finger& f,
                                const ExtrusionParams& params,
                                std::optional<double> maxWidth) {
  auto [t0, t1] = sharedEdge(p, f.tip, f.body);
  const Facet& tf = p.facets[f.tip];
  double width = params.tipWidth;
  if (maxWidth) width = std::min(width, *maxWidth);
  if (width <= 0) throw std::invalid_argument("fingertip width must be positive");

  // inward direction along the tip facet at the joint edge
  Vec3 inward = normalized(cross(tf.normal, t1 - t0));
  std::vector<Vec3> rect = {t0, t1, t1 + inward * width, t0 + inward * width};

  auto [u, v] = planeBasis(tf.normal);
  auto facet2 = project2(p.facetPoints(f.tip), u, v);
  auto rect2 = project2(rect, u, v);
  bool fits = true;
  for (const Vec2& q : rect2) {
    Vec2 m{(rect2[0].x + rect2[2].x) / 2, (rect2[0].y + rect2[2].y) / 2};
    Vec2 nudged{q.x + (m.x - q.x) * 1e-9, q.y + (m.y - q.y) * 1e-9};
    if (!pointInPolygon2(nudged, facet2)) { fits = false; break; }
  }
  if (fits || !isConvexPolygon2(facet2)) return rect;

  auto clipped2 = convexClipPolygon2(rect2, facet2);
  if (clipped2.size() < 3)
    throw std::invalid_argument("tip facet too small for any fingertip");
  std::vector<Vec3> clipped;
  clipped.reserve(clipped2.size());
  for (const Vec2& q : clipped2)
    clipped.push_back(u * q.x + v * q.y + tf.normal * tf.offset);
  if (polygonArea(clipped) < 1e-12)
    throw std::invalid_argument("tip facet too small for any fingertip");
  return clipped;
}

std::vector<Vec3> bodyBasePolygon(const Polyhedron& p, int palm, const Finger& f,
                                  double shrink) {
  if (shrink <= 0 || shrink > 1) throw std::invalid_argument("shrink must lie in (0, 1]");
  auto [p0, p1] = sharedEdge(p, f.body, palm);    // palm-body joint, body traversal
  auto [q0, q1] = sharedEdge(p, f.body, f.tip);   // body-tip joint, body traversal
  auto sub = [&](const Vec3& a, const Vec3& b) {
    Vec3 mid = (a + b) * 0.5;
    Vec3 half = (b - a) * (0.5 * shrink);
    return std::make_pair(mid - half, mid + half);
  };
  auto [a0, a1] = sub(p0, p1);
  auto [b0, b1] = sub(q0, q1);
  // both edges run along the body's boundary orientation, so this loop is CCW
  return {a0, a1, b0, b1};
}

namespace {

struct Part {
  enum Kind { Palm, Body, Tip } kind;
  int baseFacet;    // workpiece facet carrying the base polygon
  int fingerIndex;  // -1 for the palm
  double alpha;
  std::vector<Vec3> base;
};

std::vector<Vec3> partBase(const Polyhedron& p, const Fixture& f,
                           const ExtrusionParams& params, const Part& part, double scale) {
  switch (part.kind) {
    case Part::Palm:
      return p.facetPoints(f.palm);
    case Part::Body:
      return bodyBasePolygon(p, f.palm, f.fingers[part.fingerIndex],
                             params.bodyShrink * scale);
    case Part::Tip: {
      const Finger& fi = f.fingers[part.fingerIndex];
      auto quad = fingertipQuad(p, fi, params);
      if (scale < 1.0) {  // uniform shrink about the joint-edge midpoint
        auto [t0, t1] = sharedEdge(p, fi.tip, fi.body);
        Vec3 c = (t0 + t1) * 0.5;
        for (Vec3& q : quad) q = c + (q - c) * scale;
      }
      return quad;
    }
  }
  throw std::logic_error("unreachable");
}

double baseOverlapArea(const Polyhedron& p, int facet, std::span<const Vec3> a,
                       std::span<const Vec3> b) {
  auto [u, v] = planeBasis(p.facets[facet].normal);
  auto a2 = project2(a, u, v);
  auto b2 = project2(b, u, v);
  // both polygons here are convex (quads/triangles); clip a against b
  return convexClipArea2(a2, b2);
}

}  // namespace

SolidMesh buildFixtureSolid(const Polyhedron& p, const Fixture& f,
                            const ExtrusionParams& params, const FixtureSolidOptions& opts) {
  params.validate();
  if (!validFixture(p, f))
    throw std::invalid_argument("buildFixtureSolid: fixture is not valid");

  std::vector<Part> parts;
  parts.push_back({Part::Palm, f.palm, -1, params.alphaP, {}});
  for (size_t i = 0; i < f.fingers.size(); ++i) {
    parts.push_back({Part::Body, f.fingers[i].body, static_cast<int>(i), params.alphaB, {}});
    parts.push_back({Part::Tip, f.fingers[i].tip, static_cast<int>(i), params.alphaT, {}});
  }
  std::vector<double> scale(parts.size(), 1.0);
  for (size_t i = 0; i < parts.size(); ++i)
    parts[i].base = partBase(p, f, params, parts[i], scale[i]);

  if (opts.resolveOverlaps) {
    for (size_t i = 0; i < parts.size(); ++i)
      for (size_t j = i + 1; j < parts.size(); ++j) {
        if (parts[i].baseFacet != parts[j].baseFacet) continue;
        if (parts[i].kind == Part::Palm || parts[j].kind == Part::Palm)
          throw std::logic_error("palm base shared with a finger part");
        auto overlap = [&](double s) {
          auto a = partBase(p, f, params, parts[i], scale[i] * s);
          auto b = partBase(p, f, params, parts[j], scale[j] * s);
          return baseOverlapArea(p, parts[i].baseFacet, a, b);
        };
        if (overlap(1.0) <= 1e-12) continue;
        double lo = 0.0, hi = 1.0;
        bool resolved = false;
        for (int it = 0; it < opts.maxShrinkIterations; ++it) {
          double mid = (lo + hi) / 2;
          if (overlap(mid) <= 1e-12) {
            lo = mid;
            resolved = true;
          } else {
            hi = mid;
          }
          if ((hi - lo) < opts.shrinkResolution) break;
        }
        if (!resolved)
          throw std::runtime_error("buildFixtureSolid: could not shrink parts apart");
        scale[i] *= lo;
        scale[j] *= lo;
        parts[i].base = partBase(p, f, params, parts[i], scale[i]);
        parts[j].base = partBase(p, f, params, parts[j], scale[j]);
      }
  }

  SolidMesh mesh;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::vector<Vec3> base = parts[i].base;
    const Vec3 n = p.facets[parts[i].baseFacet].normal;
    for (Vec3& q : base) q += n * params.clearance;
    appendPrism(mesh, base, parts[i].alpha, static_cast<int>(i));
  }
  mesh.shellCount = static_cast<int>(parts.size());
  if (!mesh.watertight())
    throw std::runtime_error("buildFixtureSolid: generated solid is not watertight");
  return mesh;
}

SolidMesh extrudePolygon(std::span<const Vec3> polygon, double alpha) {
  return makePrism(polygon, alpha);
}

namespace {

void put32(std::ostream& out, uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.write(b, 4);
}

void putf(std::ostream& out, float v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.write(b, 4);
}

void writeStlBinary(const SolidMesh& s, std::ostream& out) {
  char header[80] = {};
  std::snprintf(header, sizeof header, "snapfix solid");
  out.write(header, 80);
  put32(out, static_cast<uint32_t>(s.triangles.size()));
  for (const auto& t : s.triangles) {
    const Vec3 &a = s.vertices[t[0]], &b = s.vertices[t[1]], &c = s.vertices[t[2]];
    Vec3 n = cross(b - a, c - a);
    double len = norm(n);
    n = len > 0 ? n / len : Vec3{0, 0, 0};
    for (double v : {n.x, n.y, n.z, a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z})
      putf(out, static_cast<float>(v));
    out.put(0);
    out.put(0);
  }
}

void writeStlAscii(const SolidMesh& s, std::ostream& out) {
  out << "solid snapfix\n";
  for (const auto& t : s.triangles) {
    const Vec3 &a = s.vertices[t[0]], &b = s.vertices[t[1]], &c = s.vertices[t[2]];
    Vec3 n = cross(b - a, c - a);
    double len = norm(n);
    n = len > 0 ? n / len : Vec3{0, 0, 0};
    char buf[256];
    std::snprintf(buf, sizeof buf, "  facet normal %.9g %.9g %.9g\n", n.x, n.y, n.z);
    out << buf << "    outer loop\n";
    for (const Vec3* v : {&a, &b, &c}) {
      std::snprintf(buf, sizeof buf, "      vertex %.17g %.17g %.17g\n", v->x, v->y, v->z);
      out << buf;
    }
    out << "    endloop\n  endfacet\n";
  }
  out << "endsolid snapfix\n";
}

void writeSolidOFF(const SolidMesh& s, std::ostream& out) {
  long edges = static_cast<long>(s.triangles.size()) * 3 / 2;
  out << "OFF\n" << s.vertices.size() << ' ' << s.triangles.size() << ' ' << edges << '\n';
  char buf[128];
  for (const Vec3& v : s.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& t : s.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void writeSolidOBJ(const SolidMesh& s, std::ostream& out) {
  char buf[128];
  for (const Vec3& v : s.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& t : s.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace

void exportMesh(const SolidMesh& s, SolidFormat format, std::ostream& out) {
  if (s.triangles.empty()) throw std::invalid_argument("exportMesh: empty mesh");
  if (!s.watertight()) throw std::invalid_argument("exportMesh: mesh is not watertight");
  switch (format) {
    case SolidFormat::StlBinary: writeStlBinary(s, out); break;
    case SolidFormat::StlAscii: writeStlAscii(s, out); break;
    case SolidFormat::OFF: writeSolidOFF(s, out); break;
    case SolidFormat::OBJ: writeSolidOBJ(s, out); break;
  }
  if (!out) throw std::ios_base::failure("exportMesh: write failed");
}

SolidFormat solidFormatFromName(const std::string& name) {
  if (name == "stl" || name == "stl-binary") return SolidFormat::StlBinary;
  if (name == "stl-ascii") return SolidFormat::StlAscii;
  if (name == "off") return SolidFormat::OFF;
  if (name == "obj") return SolidFormat::OBJ;
  throw std::invalid_argument("unknown solid format '" + name + "'");
}

}  // namespace snapfix

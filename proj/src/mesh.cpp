#include "snapfix/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace snapfix {

namespace {

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> polygons;
};

std::string nextContentLine(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    size_t b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    return line;
  }
  return {};
}

RawMesh parseOFF(std::istream& in) {
  std::string header = nextContentLine(in);
  std::istringstream hs(header);
  std::string magic;
  hs >> magic;
  long nv = -1, nf = -1, ne = -1;
  if (magic != "OFF") {
    // tolerate the counts on the OFF line itself
    if (magic.rfind("OFF", 0) == 0) {
      std::istringstream rest(header.substr(header.find("OFF") + 3));
      rest >> nv >> nf >> ne;
    } else {
      throw MeshError("not an OFF stream");
    }
  }
  if (nv < 0) {
    std::istringstream cs(nextContentLine(in));
    if (!(cs >> nv >> nf >> ne)) throw MeshError("OFF: bad count line");
  }
  RawMesh m;
  m.vertices.resize(nv);
  for (long i = 0; i < nv; ++i) {
    std::istringstream vs(nextContentLine(in));
    if (!(vs >> m.vertices[i].x >> m.vertices[i].y >> m.vertices[i].z))
      throw MeshError("OFF: bad vertex line");
  }
  m.polygons.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    std::istringstream fs(nextContentLine(in));
    int cnt = 0;
    if (!(fs >> cnt) || cnt < 3) throw MeshError("OFF: bad face line");
    std::vector<int> loop(cnt);
    for (int k = 0; k < cnt; ++k) {
      if (!(fs >> loop[k]) || loop[k] < 0 || loop[k] >= nv)
        throw MeshError("OFF: face index out of range");
    }
    m.polygons.push_back(std::move(loop));
  }
  return m;
}

RawMesh parseOBJ(std::istream& in) {
  RawMesh m;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z)) throw MeshError("OBJ: bad vertex line");
      m.vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> loop;
      std::string tok;
      while (ls >> tok) {
        size_t slash = tok.find('/');
        if (slash != std::string::npos) tok.resize(slash);
        long idx = std::stol(tok);
        if (idx < 0) idx = static_cast<long>(m.vertices.size()) + idx + 1;
        if (idx < 1 || idx > static_cast<long>(m.vertices.size()))
          throw MeshError("OBJ: face index out of range");
        loop.push_back(static_cast<int>(idx - 1));
      }
      if (loop.size() < 3) throw MeshError("OBJ: face with fewer than 3 vertices");
      m.polygons.push_back(std::move(loop));
    }
  }
  if (m.polygons.empty()) throw MeshError("OBJ: no faces");
  return m;
}

RawMesh parseSTLBinary(const std::string& bytes) {
  if (bytes.size() < 84) throw MeshError("STL: truncated header");
  uint32_t n = 0;
  std::memcpy(&n, bytes.data() + 80, 4);
  if (bytes.size() < 84 + static_cast<size_t>(n) * 50)
    throw MeshError("STL: truncated triangle data");
  RawMesh m;
  m.vertices.reserve(3 * n);
  m.polygons.reserve(n);
  const char* p = bytes.data() + 84;
  for (uint32_t i = 0; i < n; ++i, p += 50) {
    float v[12];
    std::memcpy(v, p, 48);
    int base = static_cast<int>(m.vertices.size());
    for (int k = 0; k < 3; ++k)
      m.vertices.push_back({v[3 + 3 * k], v[4 + 3 * k], v[5 + 3 * k]});
    m.polygons.push_back({base, base + 1, base + 2});
  }
  return m;
}

RawMesh parseSTLAscii(const std::string& bytes) {
  std::istringstream in(bytes);
  RawMesh m;
  std::string tok;
  std::vector<int> cur;
  while (in >> tok) {
    if (tok == "vertex") {
      Vec3 p;
      if (!(in >> p.x >> p.y >> p.z)) throw MeshError("STL: bad vertex");
      cur.push_back(static_cast<int>(m.vertices.size()));
      m.vertices.push_back(p);
    } else if (tok == "endloop") {
      if (cur.size() != 3) throw MeshError("STL: facet is not a triangle");
      m.polygons.push_back(cur);
      cur.clear();
    }
  }
  if (m.polygons.empty()) throw MeshError("STL: no facets");
  return m;
}

RawMesh parseSTL(std::istream& in) {
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  // binary iff the size matches the header-declared triangle count
  if (bytes.size() >= 84) {
    uint32_t n = 0;
    std::memcpy(&n, bytes.data() + 80, 4);
    if (bytes.size() == 84 + static_cast<size_t>(n) * 50) return parseSTLBinary(bytes);
  }
  if (bytes.rfind("solid", 0) == 0) return parseSTLAscii(bytes);
  return parseSTLBinary(bytes);
}

// Weld vertices closer than distTol (grid hash), drop collapsed polygon corners.
void weldVertices(RawMesh& m, double distTol) {
  const double cell = std::max(distTol, 1e-12);  // grid only; matches use distTol
  auto key = [&](const Vec3& p, int dx, int dy, int dz) {
    auto q = [&](double v, int d) { return static_cast<long long>(std::floor(v / cell)) + d; };
    return std::to_string(q(p.x, dx)) + "," + std::to_string(q(p.y, dy)) + "," +
           std::to_string(q(p.z, dz));
  };
  std::unordered_map<std::string, std::vector<int>> grid;
  std::vector<int> remap(m.vertices.size(), -1);
  std::vector<Vec3> out;
  for (size_t i = 0; i < m.vertices.size(); ++i) {
    const Vec3& p = m.vertices[i];
    int found = -1;
    for (int dx = -1; dx <= 1 && found < 0; ++dx)
      for (int dy = -1; dy <= 1 && found < 0; ++dy)
        for (int dz = -1; dz <= 1 && found < 0; ++dz) {
          auto it = grid.find(key(p, dx, dy, dz));
          if (it == grid.end()) continue;
          for (int j : it->second)
            if (norm(out[j] - p) <= distTol) { found = j; break; }
        }
    if (found < 0) {
      found = static_cast<int>(out.size());
      out.push_back(p);
      grid[key(p, 0, 0, 0)].push_back(found);
    }
    remap[i] = found;
  }
  m.vertices = std::move(out);
  for (auto& poly : m.polygons) {
    for (int& v : poly) v = remap[v];
    std::vector<int> clean;
    for (size_t k = 0; k < poly.size(); ++k)
      if (poly[k] != poly[(k + 1) % poly.size()]) clean.push_back(poly[k]);
    poly = std::move(clean);
  }
  std::erase_if(m.polygons, [](const std::vector<int>& p) { return p.size() < 3; });
}

long countVolumeSign(const RawMesh& m) {
  double vol6 = 0;
  for (const auto& poly : m.polygons)
    for (size_t k = 1; k + 1 < poly.size(); ++k)
      vol6 += dot(m.vertices[poly[0]],
                  cross(m.vertices[poly[k]], m.vertices[poly[k + 1]]));
  return vol6 > 0 ? 1 : (vol6 < 0 ? -1 : 0);
}

struct EdgeKey {
  int a, b;
  bool operator<(const EdgeKey& o) const { return a < o.a || (a == o.a && b < o.b); }
};

Polyhedron finalize(RawMesh m, bool triangulate) {
  if (triangulate) {
    std::vector<std::vector<int>> tris;
    for (const auto& poly : m.polygons) {
      if (poly.size() == 3) {
        tris.push_back(poly);
        continue;
      }
      std::vector<Vec3> pts;
      for (int vi : poly) pts.push_back(m.vertices[vi]);
      for (const auto& t : triangulatePolygon(pts))
        tris.push_back({poly[t[0]], poly[t[1]], poly[t[2]]});
    }
    m.polygons = std::move(tris);
  }

  // manifold / orientation validation on directed edges
  std::map<EdgeKey, int> directed;
  for (size_t f = 0; f < m.polygons.size(); ++f) {
    const auto& poly = m.polygons[f];
    for (size_t k = 0; k < poly.size(); ++k) {
      EdgeKey e{poly[k], poly[(k + 1) % poly.size()]};
      if (e.a == e.b) throw MeshError("degenerate edge in facet");
      if (!directed.emplace(e, static_cast<int>(f)).second)
        throw MeshError("inconsistent orientation or non-manifold edge (" +
                        std::to_string(e.a) + "," + std::to_string(e.b) +
                        " used twice in the same direction)");
    }
  }
  for (const auto& [e, f] : directed) {
    if (!directed.count({e.b, e.a}))
      throw MeshError("open boundary: edge (" + std::to_string(e.a) + "," +
                      std::to_string(e.b) + ") has no twin");
  }

  if (countVolumeSign(m) < 0)
    for (auto& poly : m.polygons) std::reverse(poly.begin(), poly.end());
  if (countVolumeSign(m) == 0) throw MeshError("mesh encloses no volume");

  Polyhedron p;
  p.vertices = std::move(m.vertices);
  p.facets.resize(m.polygons.size());
  std::map<EdgeKey, int> dir2;
  for (size_t f = 0; f < m.polygons.size(); ++f) {
    Facet& fc = p.facets[f];
    fc.id = static_cast<int>(f);
    fc.loop = std::move(m.polygons[f]);
    std::vector<Vec3> pts;
    for (int vi : fc.loop) pts.push_back(p.vertices[vi]);
    Vec3 nn = newellNormal(pts);
    double len = norm(nn);
    if (len <= 1e-300) throw MeshError("zero-area facet");
    fc.normal = nn / len;
    fc.area = 0.5 * len;
    fc.offset = dot(fc.normal, pts[0]);
    for (size_t k = 0; k < fc.loop.size(); ++k)
      dir2[{fc.loop[k], fc.loop[(k + 1) % fc.loop.size()]}] = static_cast<int>(f);
  }
  long edges = 0;
  for (auto& [e, f] : dir2) {
    if (e.a < e.b) ++edges;
    int twin = dir2.at({e.b, e.a});
    if (twin != f) {
      auto& nb = p.facets[f].neighbors;
      if (std::find(nb.begin(), nb.end(), twin) == nb.end()) nb.push_back(twin);
    } else {
      throw MeshError("facet adjacent to itself across an edge");
    }
  }
  p.edgeCount = edges;
  for (auto& f : p.facets) std::sort(f.neighbors.begin(), f.neighbors.end());

  // one closed surface; otherwise the Euler bookkeeping below is meaningless
  std::vector<char> seen(p.facets.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int nb : p.facets[f].neighbors)
      if (!seen[nb]) {
        seen[nb] = 1;
        stack.push_back(nb);
      }
  }
  for (char s : seen)
    if (!s) throw MeshError("mesh has more than one connected component");
  return p;
}

}  // namespace

Polyhedron loadMesh(std::istream& in, MeshFormat format, const MeshTolerances& tol) {
  RawMesh m;
  switch (format) {
    case MeshFormat::OFF: m = parseOFF(in); break;
    case MeshFormat::OBJ: m = parseOBJ(in); break;
    case MeshFormat::STL:
    case MeshFormat::StlAscii: m = parseSTL(in); break;
  }
  weldVertices(m, tol.distTol);
  return finalize(std::move(m), /*triangulate=*/true);
}

Polyhedron loadMeshFile(const std::string& path, const MeshTolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return loadMesh(in, formatFromPath(path), tol);
}

Polyhedron buildPolyhedron(std::vector<Vec3> vertices,
                           const std::vector<std::vector<int>>& polygons,
                           const MeshTolerances& tol) {
  RawMesh m{std::move(vertices), polygons};
  weldVertices(m, tol.distTol);
  return finalize(std::move(m), /*triangulate=*/true);
}

MeshFormat formatFromPath(const std::string& path) {
  auto pos = path.rfind('.');
  std::string ext = pos == std::string::npos ? "" : path.substr(pos + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(c));
  if (ext == "off") return MeshFormat::OFF;
  if (ext == "obj") return MeshFormat::OBJ;
  if (ext == "stl") return MeshFormat::STL;
  throw std::ios_base::failure("cannot infer mesh format from '" + path + "'");
}

Polyhedron mergeCoplanarFacets(const Polyhedron& p, double angleTol, double distTol) {
  const long nf = p.facetCount();
  std::vector<int> parent(nf);
  for (long i = 0; i < nf; ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double cosTol = std::cos(angleTol);
  for (long i = 0; i < nf; ++i) {
    for (int j : p.facets[i].neighbors) {
      if (j <= i) continue;
      if (dot(p.facets[i].normal, p.facets[j].normal) < cosTol) continue;
      if (std::abs(p.facets[i].offset - p.facets[j].offset) > distTol) continue;
      int a = find(static_cast<int>(i)), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // group facets, keyed by the smallest member id for deterministic output
  std::map<int, std::vector<int>> groups;
  for (long i = 0; i < nf; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::vector<std::vector<int>> polys;
  polys.reserve(groups.size());
  for (const auto& [root, members] : groups) {
    if (members.size() == 1) {
      polys.push_back(p.facets[members[0]].loop);
      continue;
    }
    std::vector<char> inGroup(nf, 0);
    for (int f : members) inGroup[f] = 1;
    // boundary = directed edges whose twin facet is outside the group
    std::map<int, std::vector<int>> next;  // tail vertex -> head candidates
    std::map<EdgeKey, char> interior;
    for (int f : members) {
      const auto& loop = p.facets[f].loop;
      for (size_t k = 0; k < loop.size(); ++k)
        interior[{loop[k], loop[(k + 1) % loop.size()]}] = 1;
    }
    long boundaryEdges = 0;
    for (const auto& [e, unused] : interior) {
      if (interior.count({e.b, e.a})) continue;  // both directions in group: interior edge
      next[e.a].push_back(e.b);
      ++boundaryEdges;
    }
    if (boundaryEdges < 3)
      throw MeshError("coplanar merge produced a degenerate boundary");
    for (const auto& [v, heads] : next)
      if (heads.size() != 1)
        throw MeshError("coplanar merge produced a non-simple facet (pinched boundary)");
    std::vector<int> loop;
    int start = next.begin()->first;
    int v = start;
    do {
      loop.push_back(v);
      auto it = next.find(v);
      if (it == next.end()) throw MeshError("coplanar merge produced an open boundary");
      v = it->second[0];
      if (loop.size() > static_cast<size_t>(boundaryEdges))
        throw MeshError("coplanar merge produced a non-simple facet");
    } while (v != start);
    if (static_cast<long>(loop.size()) != boundaryEdges)
      throw MeshError("coplanar merge produced a non-simple facet (multiple loops)");
    polys.push_back(std::move(loop));
  }

  // drop vertices that became interior to a merged facet
  std::vector<int> remap(p.vertices.size(), -1);
  std::vector<Vec3> verts;
  for (auto& poly : polys)
    for (int& vi : poly) {
      if (remap[vi] < 0) {
        remap[vi] = static_cast<int>(verts.size());
        verts.push_back(p.vertices[vi]);
      }
      vi = remap[vi];
    }

  Polyhedron out;
  out.vertices = std::move(verts);
  out.facets.resize(polys.size());
  std::map<EdgeKey, int> dir;
  for (size_t f = 0; f < polys.size(); ++f) {
    Facet& fc = out.facets[f];
    fc.id = static_cast<int>(f);
    fc.loop = std::move(polys[f]);
    std::vector<Vec3> pts;
    for (int vi : fc.loop) pts.push_back(out.vertices[vi]);
    Vec3 nn = newellNormal(pts);
    double len = norm(nn);
    if (len <= 1e-300) throw MeshError("merged facet has zero area");
    fc.normal = nn / len;
    fc.area = 0.5 * len;
    fc.offset = dot(fc.normal, pts[0]);
    for (const Vec3& q : pts)
      if (std::abs(dot(fc.normal, q) - fc.offset) > std::max(distTol, 1e-9 * std::sqrt(fc.area)))
        throw MeshError("merged facet is not planar within tolerance");
    for (size_t k = 0; k < fc.loop.size(); ++k) {
      EdgeKey e{fc.loop[k], fc.loop[(k + 1) % fc.loop.size()]};
      if (!dir.emplace(e, static_cast<int>(f)).second)
        throw MeshError("merge broke manifoldness");
    }
  }
  long edges = 0;
  for (auto& [e, f] : dir) {
    if (e.a < e.b) ++edges;
    auto it = dir.find({e.b, e.a});
    if (it == dir.end()) throw MeshError("merge broke closedness");
    if (it->second != f) {
      auto& nb = out.facets[f].neighbors;
      if (std::find(nb.begin(), nb.end(), it->second) == nb.end())
        nb.push_back(it->second);
    }
  }
  out.edgeCount = edges;
  for (auto& f : out.facets) std::sort(f.neighbors.begin(), f.neighbors.end());
  return out;
}

long genus(const Polyhedron& p) {
  long chi = p.vertexCount() - p.edgeCount + p.facetCount();
  return 1 - chi / 2;
}

const std::vector<int>& neighbors(const Polyhedron& p, int facet) {
  return p.facets.at(facet).neighbors;
}

namespace {
void writeCoord(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}
}  // namespace

void writeOFF(const Polyhedron& p, std::ostream& out) {
  out << "OFF\n" << p.vertices.size() << ' ' << p.facets.size() << ' ' << p.edgeCount << '\n';
  for (const Vec3& v : p.vertices) {
    writeCoord(out, v.x); out << ' ';
    writeCoord(out, v.y); out << ' ';
    writeCoord(out, v.z); out << '\n';
  }
  for (const Facet& f : p.facets) {
    out << f.loop.size();
    for (int vi : f.loop) out << ' ' << vi;
    out << '\n';
  }
}

void writeOBJ(const Polyhedron& p, std::ostream& out) {
  for (const Vec3& v : p.vertices) {
    out << "v ";
    writeCoord(out, v.x); out << ' ';
    writeCoord(out, v.y); out << ' ';
    writeCoord(out, v.z); out << '\n';
  }
  for (const Facet& f : p.facets) {
    out << 'f';
    for (int vi : f.loop) out << ' ' << vi + 1;
    out << '\n';
  }
}

}  // namespace snapfix

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "snapfix/geom.hpp"

namespace snapfix {

/// Raised for anything that makes a byte stream unusable as a workpiece:
/// parse failures, open boundaries, non-manifold edges, orientation defects.
class MeshError : public std::runtime_error {
 public:
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

enum class MeshFormat { OFF, OBJ, STL, StlAscii };

struct Facet {
  int id = -1;
  std::vector<int> loop;       // cyclic vertex indices, outward CCW
  Vec3 normal;                 // outward unit normal
  double offset = 0.0;         // plane: dot(normal, p) = offset
  double area = 0.0;           // mm^2
  std::vector<int> neighbors;  // facets sharing at least one full edge, sorted
};

/// Closed oriented 2-manifold mesh, millimeters. Immutable once built;
/// all queries are read-only and safe to share across threads.
struct Polyhedron {
  std::vector<Vec3> vertices;
  std::vector<Facet> facets;
  long edgeCount = 0;

  long vertexCount() const { return static_cast<long>(vertices.size()); }
  long facetCount() const { return static_cast<long>(facets.size()); }

  std::vector<Vec3> facetPoints(int f) const {
    std::vector<Vec3> pts;
    pts.reserve(facets[f].loop.size());
    for (int vi : facets[f].loop) pts.push_back(vertices[vi]);
    return pts;
  }
};

struct MeshTolerances {
  double angleTol = 1e-6;  // rad, coplanarity of neighboring facets
  double distTol = 1e-6;   // mm, vertex weld + plane fit
};

/// Parses, welds duplicate vertices within distTol, triangulates, and
/// validates closed-manifold structure with consistent outward orientation
/// (a globally inverted mesh is flipped; mixed orientation is an error).
Polyhedron loadMesh(std::istream& in, MeshFormat format, const MeshTolerances& tol = {});
Polyhedron loadMeshFile(const std::string& path, const MeshTolerances& tol = {});

/// Builds a Polyhedron from raw polygons (indices must form a closed
/// oriented manifold after welding). Used by the built-in shape generators.
Polyhedron buildPolyhedron(std::vector<Vec3> vertices,
                           const std::vector<std::vector<int>>& polygons,
                           const MeshTolerances& tol = {});

/// Merges edge-adjacent facets whose planes agree within the tolerances.
/// Union-find over facets, then boundary extraction; a merge whose boundary
/// is not a single simple loop is an error. Idempotent; genus-preserving.
Polyhedron mergeCoplanarFacets(const Polyhedron& p, double angleTol = 1e-6,
                               double distTol = 1e-6);

/// 1 - (V - E + F)/2.
long genus(const Polyhedron& p);

/// Facets sharing at least one full edge with f (vertex-only contact excluded).
const std::vector<int>& neighbors(const Polyhedron& p, int facet);

void writeOFF(const Polyhedron& p, std::ostream& out);
void writeOBJ(const Polyhedron& p, std::ostream& out);

MeshFormat formatFromPath(const std::string& path);

}  // namespace snapfix

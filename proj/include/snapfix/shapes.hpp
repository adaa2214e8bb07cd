#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snapfix/mesh.hpp"

namespace snapfix {
namespace shapes {

// All generators emit triangulated, outward-oriented meshes in millimeters.
// `size` is the edge length (platonic solids) or a characteristic diameter.

Polyhedron tetrahedron(double size = 20.0);
Polyhedron cube(double size = 20.0);
Polyhedron octahedron(double size = 20.0);
Polyhedron icosahedron(double size = 20.0);
Polyhedron dodecahedron(double size = 20.0);
Polyhedron squarePyramid(double base = 20.0, double height = 12.0);

/// Right prism over a regular n-gon ("n-base cylinder"), caps fan-triangulated.
Polyhedron prism(int baseSides, double radius = 10.0, double height = 20.0);

/// Square frustum (truncated pyramid), narrowing upward.
Polyhedron squareFrustum(double baseEdge = 20.0, double topEdge = 12.0, double height = 10.0);

/// Quad torus: square cross-section swept along a regular polygon path.
/// Emitted as quads (triangulated on load by buildPolyhedron's caller);
/// here it returns the triangulated closed mesh.
Polyhedron quadTorus(int sweepSteps = 8, double majorRadius = 12.0, double minorHalf = 3.0);

/// Convex hull of `nVertices` random points on a sphere; deterministic in `seed`.
Polyhedron randomConvexPolytope(int nVertices, uint64_t seed, double radius = 10.0);

/// Lookup by name ("tetrahedron", "cube", ..., "prism8", "prism28", ...).
Polyhedron byName(const std::string& name, double size = 20.0);
std::vector<std::string> builtinNames();

}  // namespace shapes
}  // namespace snapfix

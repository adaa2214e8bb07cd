#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snapfix/mesh.hpp"
#include "snapfix/synth.hpp"

namespace snapfix {

struct ExtrusionParams {
  double alphaP = 5.0;     // mm, palm extrusion
  double alphaB = 5.0;     // mm, body extrusion
  double alphaT = 5.0;     // mm, fingertip extrusion
  double clearance = 0.2;  // mm, workpiece-fixture gap (printer compensation)
  double bodyShrink = 0.8; // fraction of each joint edge the body spans
  double tipWidth = 1.0;   // mm, fingertip reach into the tip facet

  void validate() const;
};

/// Indexed triangle mesh; may hold several closed shells (one per part).
struct SolidMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> shellOfTriangle;  // part index per triangle
  int shellCount = 0;

  double volume() const;        // sum over shells, mm^3
  bool watertight() const;      // every edge paired with its reverse, per shell
};

/// Advisory joint-flexibility bound (law of sines).
struct JointFeasibility {
  double a;       // mm, body edge length
  double eta;     // rad, angle between body and tip edges
  double thetaC;  // rad, joint threshold angle
  double maxTipWidth() const;
};

/// a*sin(thetaC)/sin(thetaC + eta); errors when sin(thetaC + eta) <= 0.
double maxFingertipWidth(double a, double thetaC, double eta);

/// Watertight prism over a planar simple polygon, thickness alpha along the
/// polygon's plane normal. Volume = area * alpha.
SolidMesh extrudePolygon(std::span<const Vec3> polygon, double alpha);

/// The fingertip base rectangle on the tip facet: the joint edge and its
/// translate by width * (unit inward edge normal), clipped to the facet when
/// the facet is narrower than the requested width.
std::vector<Vec3> fingertipQuad(const Polyhedron& p, const Finger& f,
                                const ExtrusionParams& params,
                                std::optional<double> maxWidth = std::nullopt);

/// Low-level variant on a bare edge: v = normalize(edge x tipNormal) flipped
/// to point into the facet side of `insideHint`, scaled to width.
std::vector<Vec3> buildFingertipQuad(const Vec3& e0, const Vec3& e1, const Vec3& tipNormal,
                                     double width, const Vec3& insideHint);

/// Body base polygon: the quadrilateral between the middle `shrink` fraction
/// of the palm-body joint edge and of the body-tip joint edge. Degenerates to
/// a triangle when the two edges share a vertex.
std::vector<Vec3> bodyBasePolygon(const Polyhedron& p, int palm, const Finger& f,
                                  double shrink);

struct FixtureSolidOptions {
  bool resolveOverlaps = true;
  int maxShrinkIterations = 20;
  double shrinkResolution = 1e-3;  // mm
};

/// Palm, body, and fingertip prisms as separate closed shells, mutually
/// interior-disjoint. Parts whose bases overlap on a shared workpiece facet
/// are shrunk together by binary search until disjoint; every part is then
/// offset outward by `clearance` along its base facet normal.
SolidMesh buildFixtureSolid(const Polyhedron& p, const Fixture& f,
                            const ExtrusionParams& params,
                            const FixtureSolidOptions& opts = {});

enum class SolidFormat { StlBinary, StlAscii, OFF, OBJ };

/// Bit-exact writers; binary STL is little-endian, 84 + 50n bytes.
void exportMesh(const SolidMesh& s, SolidFormat format, std::ostream& out);

SolidFormat solidFormatFromName(const std::string& name);

}  // namespace snapfix

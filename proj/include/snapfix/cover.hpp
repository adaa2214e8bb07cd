#pragma once

#include <optional>
#include <span>
#include <vector>

#include "snapfix/geom.hpp"

namespace snapfix {

inline constexpr double kEpsCover = 1e-9;  // dot-product tolerance, ties count as uncovered
inline constexpr double kEpsAnti = 1e-9;   // dot-product tolerance for antipodality

/// Unit vector on S^2.
struct Direction {
  Vec3 v;
  static Direction of(const Vec3& raw) { return {normalized(raw)}; }
};

/// Open hemisphere {d : dot(d, normal) > 0} of blocked translation directions.
struct Hemisphere {
  Direction normal;
  static Hemisphere of(const Vec3& n) { return {Direction::of(n)}; }
};

/// Open semicircle on the great circle with plane normal `circleNormal`:
/// {d on the circle : dot(d, midDirection) > 0}.
struct Semicircle {
  Direction circleNormal;
  Direction midDirection;

  /// Orthogonalizes mid against the circle normal.
  static Semicircle make(const Vec3& circleNormal, const Vec3& mid);
};

struct CoverWitness {
  bool covered = false;
  std::optional<Direction> witness;  // set iff not covered
};

Hemisphere hemisphereOf(const Vec3& outwardUnitNormal);

/// Covered iff no nonzero d has dot(d, n_i) <= eps for every normal
/// (equivalently, the origin is strictly inside the hull of the normals).
/// Returns the witness direction when uncovered. Empty input: uncovered.
CoverWitness coversSphere(std::span<const Hemisphere> hemis, double eps = kEpsCover);
CoverWitness coversSphereNormals(std::span<const Vec3> unitNormals, double eps = kEpsCover);

/// 1D analog on a common great circle; the witness lies on the circle.
CoverWitness coversCircle(std::span<const Semicircle> semis, double eps = kEpsCover);

bool antipodal(const Hemisphere& a, const Hemisphere& b, double eps = kEpsAnti);
bool antipodal(const Semicircle& a, const Semicircle& b, double eps = kEpsAnti);

/// Given a covering set of the sphere, extracts a covering subset of size
/// 4, 5, or 6: one hemisphere is set aside and the cover of its closed
/// complement is reduced by central projection to the extended plane
/// (cases: the complement's interior hemisphere is present, or a halfplane
/// cover of size <= 3 exists, patched at the two antipodal far points when
/// only a parallel pair covers the finite plane).
std::vector<Hemisphere> reduceCoverSphere(std::span<const Hemisphere> hemis,
                                          double eps = kEpsCover);

/// Reduces a cover of the closed complement of `target` to size 3, 4, or 5.
std::vector<Hemisphere> reduceCoverClosedHemisphere(std::span<const Hemisphere> hemis,
                                                    const Hemisphere& target,
                                                    double eps = kEpsCover);

/// Reduces a covering set of the circle to size 3, or to 4 when only two
/// antipodal pairs work.
std::vector<Semicircle> reduceCoverCircle(std::span<const Semicircle> semis,
                                          double eps = kEpsCover);

}  // namespace snapfix

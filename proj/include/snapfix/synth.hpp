#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snapfix/cover.hpp"
#include "snapfix/mesh.hpp"

namespace snapfix {

struct ExtrusionParams;  // solid.hpp

/// One finger: the base facet of its body and of its fingertip.
/// The tip facet neighbors the body facet; spreading degree is fixed at two.
struct Finger {
  int body = -1;
  int tip = -1;
  auto operator<=>(const Finger&) const = default;
};

/// Palm facet plus 1..4 fingers whose bodies neighbor the palm.
/// Fingers are kept sorted; within one fixture bodies are pairwise distinct
/// (two fingers on one joint edge would be a single two-tipped finger, and
/// the benchmark fixture counts require this reading).
struct Fixture {
  int palm = -1;
  std::vector<Finger> fingers;

  auto operator<=>(const Fixture&) const = default;
  std::vector<int> facetsPBT() const;  // palm + bodies + tips, deduplicated
  std::vector<int> facetsPB() const;   // palm + bodies
};

/// Phase-1 structure: palm facet id -> candidate fingers, sorted by (body, tip).
struct CandidateMap {
  std::vector<std::vector<Finger>> perPalm;

  long long totalEntries() const;
  long long distinctFingers() const;  // distinct (body, tip) pairs over all palms
};

struct SynthStats {
  long palmsScanned = 0;
  std::array<long long, 3> validCalls{0, 0, 0};  // subphases 2.1, 2.2, 2.3
  double wallMs = 0.0;
};

struct SynthesisResult {
  std::optional<Fixture> fixture;
  std::optional<Direction> servingDirection;
  SynthStats stats;
};

struct QualityMetrics {
  int fingerCount = 0;
  double weightProxy = 0.0;       // mm^3
  double obscurationProxy = 0.0;  // mm^2
};

enum class Objective { Fingers, Weight, Obscuration };

Objective objectiveFromName(const std::string& name);

struct SynthOptions {
  double epsCover = kEpsCover;
  int threads = 1;
  int maxFingers = 4;  // 2, 3, or 4
};

/// M[i] = {(j, l) : f_j neighbors f_i, f_l neighbors f_j, l != i}.
/// Requires a merged polyhedron (no coplanar neighboring facets).
CandidateMap buildCandidateMap(const Polyhedron& p);

/// C1 and C2: the palm+bodies+tips hemispheres cover S^2 and the
/// palm+bodies hemispheres do not. Structural violations throw; a finger
/// count of 0 or 1, or coinciding bodies, is merely invalid (false).
bool validFixture(const Polyhedron& p, const Fixture& f, double eps = kEpsCover);

/// The witness of C2: a translation direction not blocked by palm or bodies.
Direction servingDirection(const Polyhedron& p, const Fixture& f, double eps = kEpsCover);

/// Algorithm: candidate map, then 2-finger scan, 3-finger scan, and the
/// equivalence-class search for four fingers, palm by palm. Returns the
/// first fixture found in (subphase, palm id, lexicographic fingers) order.
SynthesisResult minimalSnappingFixture(const Polyhedron& p, const SynthOptions& opts = {});

/// Case-IV search for one palm: groups candidate hemispheres into classes by
/// their open-semicircle trace on the palm's boundary great circle, orders
/// each class by depth below the palm plane, scans antipodal class pairs plus
/// two more classes whose semicircles cover the circle, and realizes the four
/// classes' maximal hemispheres as fingers that pass validFixture.
std::optional<Fixture> fourFingersFixture(const Polyhedron& p, int palm,
                                          const std::vector<Finger>& candidates,
                                          double eps = kEpsCover,
                                          long long* validCalls = nullptr);

/// Visits every valid fixture with 2..maxFingers fingers exactly once,
/// in (palm, finger count, lexicographic fingers) order.
void enumerateFixtures(const Polyhedron& p, int maxFingers,
                       const std::function<void(const Fixture&)>& visit,
                       const SynthOptions& opts = {});

struct EnumerationSummary {
  int minFingers = 0;        // 0: no fixture
  long long countAtMin = 0;  // number of fixtures with minFingers fingers
  std::optional<Fixture> first;
};

/// Ascending scan over finger counts; stops at the first level with hits and
/// counts that whole level.
EnumerationSummary countMinimalFixtures(const Polyhedron& p, const SynthOptions& opts = {});

/// Contact-area proxies. Body areas use the actual body base polygon (the
/// quadrilateral spanned between the two joint edges at params.bodyShrink),
/// so the solid built from the same params integrates to weightProxy.
QualityMetrics qualityOf(const Polyhedron& p, const Fixture& f, const ExtrusionParams& params);

/// Among the fixtures with the minimal finger count, the one minimizing the
/// chosen metric; ties break in (palm, fingers) lexicographic order.
std::optional<std::pair<Fixture, QualityMetrics>> bestFixture(
    const Polyhedron& p, Objective objective, const ExtrusionParams& params,
    const SynthOptions& opts = {});

namespace detail {
/// The class-quadruple search of the Case-IV procedure on bare semicircle
/// mid-directions (unit, orthogonal to circleNormal). Returns the first
/// (antipodal pair, covering pair) quadruple of class indices.
std::optional<std::array<int, 4>> caseIvClassSearch(std::span<const Vec3> classMids,
                                                    const Vec3& circleNormal,
                                                    double eps = kEpsCover);
}  // namespace detail

}  // namespace snapfix

#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <optional>
#include <random>
#include <vector>

#include "snapfix/cover.hpp"
#include "snapfix/geom.hpp"

namespace snapfix::testing {

inline Vec3 randomUnit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    Vec3 v{g(rng), g(rng), g(rng)};
    double n = norm(v);
    if (n > 1e-9) return v / n;
  }
}

struct McVerdict {
  bool covered;            // no sampled direction escaped
  double bestMargin;       // min over samples of max_i dot(n_i, d)
  Vec3 bestDir;
};

/// Monte-Carlo coverage oracle: sample directions uniformly; the set fails
/// to cover iff some sample has non-positive dot with every normal.
inline McVerdict mcCoversSphere(std::span<const Vec3> normals,
                                std::span<const Vec3> samples) {
  McVerdict v{true, 1e300, {}};
  for (const Vec3& d : samples) {
    double maxDot = -1e300;
    for (const Vec3& n : normals) maxDot = std::max(maxDot, dot(n, d));
    if (maxDot < v.bestMargin) {
      v.bestMargin = maxDot;
      v.bestDir = d;
    }
  }
  v.covered = v.bestMargin > 0.0;
  return v;
}

inline std::vector<Vec3> uniformSphereSamples(size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(randomUnit(rng));
  return out;
}

/// Plain i.i.d. uniform normals; generic position, so the Monte-Carlo oracle
/// only misjudges sets whose margin is genuinely near zero.
inline std::vector<Vec3> randomPlainHemisphereSet(std::mt19937_64& rng, int minSize,
                                                  int maxSize) {
  std::uniform_int_distribution<int> sizeDist(minSize, maxSize);
  int size = sizeDist(rng);
  std::vector<Vec3> normals;
  normals.reserve(size);
  for (int i = 0; i < size; ++i) normals.push_back(randomUnit(rng));
  return normals;
}

/// Random hemisphere sets biased toward interesting structure: sometimes
/// antipodal pairs are injected so minimality cases actually occur. (A set
/// with an exact antipodal pair can be uncovered only on a measure-zero
/// circle, which point sampling cannot see; use the plain generator when
/// comparing against the Monte-Carlo oracle.)
inline std::vector<Vec3> randomHemisphereSet(std::mt19937_64& rng, int minSize, int maxSize) {
  std::uniform_int_distribution<int> sizeDist(minSize, maxSize);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int size = sizeDist(rng);
  std::vector<Vec3> normals;
  while (static_cast<int>(normals.size()) < size) {
    Vec3 n = randomUnit(rng);
    normals.push_back(n);
    if (u(rng) < 0.35 && static_cast<int>(normals.size()) < size) normals.push_back(-n);
  }
  return normals;
}

/// Rejection-sample a covering set of the sphere.
inline std::vector<Vec3> randomCoveringSphereSet(std::mt19937_64& rng, double eps = kEpsCover) {
  while (true) {
    auto set = randomHemisphereSet(rng, 4, 10);
    if (coversSphereNormals(set, eps).covered) return set;
  }
}

/// Random semicircle mid-directions on the circle with normal `cn`.
inline std::vector<Vec3> randomCircleMids(std::mt19937_64& rng, const Vec3& cn,
                                          int minSize, int maxSize) {
  auto [u, v] = planeBasis(cn);
  std::uniform_int_distribution<int> sizeDist(minSize, maxSize);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979323846);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int size = sizeDist(rng);
  std::vector<Vec3> mids;
  while (static_cast<int>(mids.size()) < size) {
    double a = ang(rng);
    Vec3 m = u * std::cos(a) + v * std::sin(a);
    mids.push_back(m);
    if (coin(rng) < 0.4 && static_cast<int>(mids.size()) < size) mids.push_back(-m);
  }
  return mids;
}

inline std::vector<Semicircle> toSemicircles(const Vec3& cn, std::span<const Vec3> mids) {
  std::vector<Semicircle> out;
  out.reserve(mids.size());
  for (const Vec3& m : mids) out.push_back(Semicircle::make(cn, m));
  return out;
}

inline std::vector<Vec3> randomCoveringCircleMids(std::mt19937_64& rng, const Vec3& cn,
                                                  double eps = kEpsCover) {
  while (true) {
    auto mids = randomCircleMids(rng, cn, 3, 9);
    auto semis = toSemicircles(cn, mids);
    if (coversCircle(semis, eps).covered) return mids;
  }
}

inline Vec3 dirAtDeg(const Vec3& cn, double deg) {
  auto [u, v] = planeBasis(cn);
  double a = deg * 3.14159265358979323846 / 180.0;
  return u * std::cos(a) + v * std::sin(a);
}

}  // namespace snapfix::testing

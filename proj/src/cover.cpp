#include "snapfix/cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace snapfix {

namespace {

constexpr double kDegenerate = 1e-14;

// Accepts d as a witness if max_i dot(n_i, d) <= eps * |d|. The cheap strict
// test (<= 0) avoids the sqrt on the hot path.
bool isWitness(std::span<const Vec3> normals, const Vec3& d, double eps) {
  double maxDot = -1e300;
  for (const Vec3& n : normals) maxDot = std::max(maxDot, dot(n, d));
  if (maxDot <= 0.0) return true;
  return maxDot <= eps * norm(d);
}

}  // namespace

Semicircle Semicircle::make(const Vec3& circleNormal, const Vec3& mid) {
  Direction cn = Direction::of(circleNormal);
  Vec3 m = mid - dot(mid, cn.v) * cn.v;
  return {cn, Direction::of(m)};
}

Hemisphere hemisphereOf(const Vec3& outwardUnitNormal) {
  return Hemisphere::of(outwardUnitNormal);
}

CoverWitness coversSphereNormals(std::span<const Vec3> normals, double eps) {
  if (normals.empty()) return {false, Direction{{0, 0, 1}}};
  const size_t n = normals.size();

  for (size_t i = 0; i < n; ++i)
    if (isWitness(normals, -normals[i], eps))
      return {false, Direction::of(-normals[i])};

  // boundary rays of single constraints; also the only witnesses when all
  // normals are parallel with both signs present
  for (size_t i = 0; i < n; ++i) {
    auto [u, v] = planeBasis(normals[i]);
    for (const Vec3& c : {u, -u, v, -v})
      if (isWitness(normals, c, eps)) return {false, Direction::of(c)};
  }

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      Vec3 s = normals[i] + normals[j];
      if (norm2(s) > kDegenerate && isWitness(normals, -s, eps))
        return {false, Direction::of(-s)};
      Vec3 c = cross(normals[i], normals[j]);
      if (norm2(c) > kDegenerate) {
        if (isWitness(normals, c, eps)) return {false, Direction::of(c)};
        if (isWitness(normals, -c, eps)) return {false, Direction::of(-c)};
      }
    }
  }
  return {true, std::nullopt};
}

CoverWitness coversSphere(std::span<const Hemisphere> hemis, double eps) {
  std::vector<Vec3> normals;
  normals.reserve(hemis.size());
  for (const Hemisphere& h : hemis) normals.push_back(h.normal.v);
  return coversSphereNormals(normals, eps);
}

CoverWitness coversCircle(std::span<const Semicircle> semis, double eps) {
  if (semis.empty()) return {false, Direction{{1, 0, 0}}};
  const Vec3 cn = semis[0].circleNormal.v;
  for (const Semicircle& s : semis)
    if (std::abs(dot(s.circleNormal.v, cn)) < 1.0 - 1e-9)
      throw std::invalid_argument("coversCircle: semicircles on different great circles");

  std::vector<Vec3> mids;
  mids.reserve(semis.size());
  for (const Semicircle& s : semis) mids.push_back(s.midDirection.v);

  auto tryWitness = [&](const Vec3& d) -> std::optional<Direction> {
    if (norm2(d) <= kDegenerate) return std::nullopt;
    if (isWitness(mids, d, eps)) return Direction::of(d);
    return std::nullopt;
  };

  for (const Vec3& m : mids) {
    if (auto w = tryWitness(-m)) return {false, w};
    Vec3 perp = cross(cn, m);  // boundary points of the halfcircle constraint
    if (auto w = tryWitness(perp)) return {false, w};
    if (auto w = tryWitness(-perp)) return {false, w};
  }
  for (size_t i = 0; i < mids.size(); ++i)
    for (size_t j = i + 1; j < mids.size(); ++j)
      if (auto w = tryWitness(-(mids[i] + mids[j]))) return {false, w};
  return {true, std::nullopt};
}

bool antipodal(const Hemisphere& a, const Hemisphere& b, double eps) {
  return dot(a.normal.v, b.normal.v) <= -1.0 + eps;
}

bool antipodal(const Semicircle& a, const Semicircle& b, double eps) {
  return dot(a.midDirection.v, b.midDirection.v) <= -1.0 + eps;
}

std::vector<Semicircle> reduceCoverCircle(std::span<const Semicircle> semis, double eps) {
  if (!coversCircle(semis, eps).covered)
    throw std::invalid_argument("reduceCoverCircle: input does not cover the circle");
  const size_t n = semis.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Semicircle sub[3] = {semis[i], semis[j], semis[k]};
        if (coversCircle(sub, eps).covered) return {sub[0], sub[1], sub[2]};
      }
  // no triple works: a minimal cover has size 4 and is two antipodal pairs
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (!antipodal(semis[i], semis[j])) continue;
      for (size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        for (size_t l = k + 1; l < n; ++l) {
          if (l == i || l == j) continue;
          if (!antipodal(semis[k], semis[l])) continue;
          Semicircle sub[4] = {semis[i], semis[j], semis[k], semis[l]};
          if (coversCircle(sub, eps).covered) return {sub[0], sub[1], sub[2], sub[3]};
        }
      }
    }
  throw std::logic_error("reduceCoverCircle: no subset of size 3 or 4 covers");
}

std::vector<Hemisphere> reduceCoverClosedHemisphere(std::span<const Hemisphere> hemis,
                                                    const Hemisphere& target,
                                                    double eps) {
  {
    std::vector<Hemisphere> all(hemis.begin(), hemis.end());
    all.push_back(target);
    if (!coversSphere(all, eps).covered)
      throw std::invalid_argument(
          "reduceCoverClosedHemisphere: input does not cover the closed complement");
  }
  const Vec3 nt = target.normal.v;

  // case (i): the complement's interior hemisphere is in the set
  for (size_t i = 0; i < hemis.size(); ++i) {
    if (dot(hemis[i].normal.v, nt) > -1.0 + kEpsAnti) continue;
    std::vector<Semicircle> semis;
    std::vector<size_t> source;
    for (size_t j = 0; j < hemis.size(); ++j) {
      Vec3 nj = hemis[j].normal.v;
      Vec3 proj = nj - dot(nj, nt) * nt;
      if (norm2(proj) <= kDegenerate) continue;  // parallel: no circle trace
      semis.push_back(Semicircle::make(nt, proj));
      source.push_back(j);
    }
    auto circleCover = reduceCoverCircle(semis, eps);
    std::vector<Hemisphere> out{hemis[i]};
    for (const Semicircle& s : circleCover) {
      for (size_t k = 0; k < semis.size(); ++k)
        if (dot(semis[k].midDirection.v, s.midDirection.v) >= 1.0 - 1e-12) {
          out.push_back(hemis[source[k]]);
          break;
        }
    }
    return out;
  }

  // case (ii): project h cap complement(target) to halfplanes a x + b y + c > 0
  Vec3 w = -nt;
  auto [u, v] = planeBasis(w);
  struct HP { double a, b, c; size_t idx; };
  std::vector<HP> hps;
  for (size_t j = 0; j < hemis.size(); ++j) {
    const Vec3 nj = hemis[j].normal.v;
    HP hp{dot(nj, u), dot(nj, v), dot(nj, w), j};
    if (hp.a * hp.a + hp.b * hp.b <= kDegenerate) continue;  // empty or handled above
    hps.push_back(hp);
  }

  auto coversWithTarget = [&](std::span<const Hemisphere> sub) {
    std::vector<Hemisphere> all(sub.begin(), sub.end());
    all.push_back(target);
    return coversSphere(all, eps).covered;
  };

  for (size_t i = 0; i < hps.size(); ++i)
    for (size_t j = i + 1; j < hps.size(); ++j)
      for (size_t k = j + 1; k < hps.size(); ++k) {
        Hemisphere sub[3] = {hemis[hps[i].idx], hemis[hps[j].idx], hemis[hps[k].idx]};
        if (coversWithTarget(sub)) return {sub[0], sub[1], sub[2]};
      }

  // opposite parallel halfplane pair covering R^2, patched at the two
  // uncovered boundary directions
  for (size_t i = 0; i < hps.size(); ++i)
    for (size_t j = 0; j < hps.size(); ++j) {
      if (i == j) continue;
      const HP &p = hps[i], &q = hps[j];
      double crossAB = p.a * q.b - p.b * q.a;
      double dotAB = p.a * q.a + p.b * q.b;
      if (std::abs(crossAB) > 1e-12 || dotAB >= 0) continue;  // not opposite-parallel
      double lambda = std::sqrt((q.a * q.a + q.b * q.b) / (p.a * p.a + p.b * p.b));
      if (q.c <= -lambda * p.c) continue;  // strips do not overlap
      Vec3 e = normalized(-p.b * u + p.a * v);
      int covPlus = -1, covMinus = -1;
      for (size_t k = 0; k < hps.size() && (covPlus < 0 || covMinus < 0); ++k) {
        const Vec3 nk = hemis[hps[k].idx].normal.v;
        if (covPlus < 0 && dot(nk, e) > 0) covPlus = static_cast<int>(k);
        if (covMinus < 0 && dot(nk, -e) > 0) covMinus = static_cast<int>(k);
      }
      if (covPlus < 0 || covMinus < 0) continue;
      std::vector<Hemisphere> out = {hemis[p.idx], hemis[q.idx],
                                     hemis[hps[covPlus].idx], hemis[hps[covMinus].idx]};
      if (coversWithTarget(out)) return out;
    }
  throw std::logic_error("reduceCoverClosedHemisphere: reduction failed");
}

std::vector<Hemisphere> reduceCoverSphere(std::span<const Hemisphere> hemis, double eps) {
  if (!coversSphere(hemis, eps).covered)
    throw std::invalid_argument("reduceCoverSphere: input does not cover the sphere");
  const Hemisphere& first = hemis[0];
  std::vector<Hemisphere> rest(hemis.begin() + 1, hemis.end());
  std::vector<Hemisphere> sub = reduceCoverClosedHemisphere(rest, first, eps);
  sub.insert(sub.begin(), first);
  return sub;
}

}  // namespace snapfix

#include "snapfix/synth.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <stdexcept>
#include <thread>

#include "snapfix/solid.hpp"

namespace snapfix {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Static palm partition; task(palm) must only touch its own slot.
void parallelOverPalms(long nPalms, int threads, const std::function<void(int)>& task) {
  threads = std::max(1, threads);
  if (threads == 1 || nPalms <= 1) {
    for (long i = 0; i < nPalms; ++i) task(static_cast<int>(i));
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < nPalms; i = next.fetch_add(1))
        task(static_cast<int>(i));
    });
  for (auto& th : pool) th.join();
}

struct PalmScan {
  std::optional<Fixture> hit;
  long long callsToHit = 0;  // valid-fixture calls up to and including the hit
  long long callsTotal = 0;
};

bool coversFacets(const Polyhedron& p, std::span<const int> facets, double eps) {
  std::vector<Vec3> normals;
  normals.reserve(facets.size());
  for (int f : facets) normals.push_back(p.facets[f].normal);
  return coversSphereNormals(normals, eps).covered;
}

// C1 && C2 without structural re-validation; the synthesis loops only build
// structurally sound fixtures.
bool validCore(const Polyhedron& p, int palm, std::span<const Finger> fingers, double eps) {
  std::vector<int> pbt{palm};
  std::vector<int> pb{palm};
  for (const Finger& f : fingers) {
    pbt.push_back(f.body);
    pbt.push_back(f.tip);
    pb.push_back(f.body);
  }
  if (!coversFacets(p, pbt, eps)) return false;
  return !coversFacets(p, pb, eps);
}

// k-combinations of cands with pairwise distinct bodies, lexicographic order;
// returns true when visit() asks to stop.
bool scanCombinations(const std::vector<Finger>& cands, int k,
                      const std::function<bool(std::span<const Finger>)>& visit) {
  const int n = static_cast<int>(cands.size());
  if (n < k) return false;
  std::vector<int> idx(k);
  std::vector<Finger> pick(k);
  std::function<bool(int, int)> rec = [&](int depth, int start) {
    if (depth == k) return visit(pick);
    for (int i = start; i <= n - (k - depth); ++i) {
      if (depth > 0 && cands[i].body == pick[depth - 1].body) continue;
      bool dup = false;
      for (int d = 0; d < depth; ++d)
        if (pick[d].body == cands[i].body) { dup = true; break; }
      if (dup) continue;
      pick[depth] = cands[i];
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

std::vector<int> Fixture::facetsPBT() const {
  std::set<int> s{palm};
  for (const Finger& f : fingers) {
    s.insert(f.body);
    s.insert(f.tip);
  }
  return {s.begin(), s.end()};
}

std::vector<int> Fixture::facetsPB() const {
  std::set<int> s{palm};
  for (const Finger& f : fingers) s.insert(f.body);
  return {s.begin(), s.end()};
}

long long CandidateMap::totalEntries() const {
  long long t = 0;
  for (const auto& v : perPalm) t += static_cast<long long>(v.size());
  return t;
}

long long CandidateMap::distinctFingers() const {
  std::set<Finger> s;
  for (const auto& v : perPalm) s.insert(v.begin(), v.end());
  return static_cast<long long>(s.size());
}

Objective objectiveFromName(const std::string& name) {
  if (name == "fingers") return Objective::Fingers;
  if (name == "weight") return Objective::Weight;
  if (name == "obscuration") return Objective::Obscuration;
  throw std::invalid_argument("unknown objective '" + name + "'");
}

CandidateMap buildCandidateMap(const Polyhedron& p) {
  CandidateMap m;
  m.perPalm.resize(p.facetCount());
  for (long i = 0; i < p.facetCount(); ++i) {
    auto& out = m.perPalm[i];
    for (int j : p.facets[i].neighbors)
      for (int l : p.facets[j].neighbors)
        if (l != i) out.push_back({j, l});
    std::sort(out.begin(), out.end());
  }
  return m;
}

bool validFixture(const Polyhedron& p, const Fixture& f, double eps) {
  if (f.palm < 0 || f.palm >= p.facetCount())
    throw std::invalid_argument("validFixture: palm out of range");
  if (f.fingers.size() > 4)
    throw std::invalid_argument("validFixture: more than four fingers");
  std::set<Finger> seen;
  for (const Finger& fi : f.fingers) {
    const auto& pn = p.facets[f.palm].neighbors;
    if (!std::binary_search(pn.begin(), pn.end(), fi.body))
      throw std::invalid_argument("validFixture: body is not a neighbor of the palm");
    const auto& bn = p.facets[fi.body].neighbors;
    if (!std::binary_search(bn.begin(), bn.end(), fi.tip))
      throw std::invalid_argument("validFixture: tip is not a neighbor of the body");
    if (fi.tip == f.palm)
      throw std::invalid_argument("validFixture: tip coincides with the palm");
    if (!seen.insert(fi).second)
      throw std::invalid_argument("validFixture: duplicate finger");
  }
  if (f.fingers.size() < 2) return false;
  std::set<int> bodies;
  for (const Finger& fi : f.fingers) bodies.insert(fi.body);
  if (bodies.size() != f.fingers.size()) return false;
  return validCore(p, f.palm, f.fingers, eps);
}

Direction servingDirection(const Polyhedron& p, const Fixture& f, double eps) {
  if (!validFixture(p, f, eps))
    throw std::invalid_argument("servingDirection: fixture is not valid");
  std::vector<Vec3> normals;
  for (int fi : f.facetsPB()) normals.push_back(p.facets[fi].normal);
  CoverWitness w = coversSphereNormals(normals, eps);
  if (w.covered) throw std::logic_error("servingDirection: C2 witness vanished");
  return *w.witness;
}

namespace detail {

std::optional<std::array<int, 4>> caseIvClassSearch(std::span<const Vec3> classMids,
                                                    const Vec3& circleNormal,
                                                    double eps) {
  const int n = static_cast<int>(classMids.size());
  std::vector<Semicircle> semis;
  semis.reserve(n);
  for (const Vec3& m : classMids) semis.push_back(Semicircle::make(circleNormal, m));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!antipodal(semis[a], semis[b])) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        for (int d = c + 1; d < n; ++d) {
          if (d == a || d == b) continue;
          Semicircle four[4] = {semis[a], semis[b], semis[c], semis[d]};
          if (coversCircle(four, eps).covered) return std::array<int, 4>{a, b, c, d};
        }
      }
    }
  return std::nullopt;
}

}  // namespace detail

std::optional<Fixture> fourFingersFixture(const Polyhedron& p, int palm,
                                          const std::vector<Finger>& candidates,
                                          double eps, long long* validCalls) {
  const Vec3 np = p.facets[palm].normal;

  std::vector<int> uniqueFacets;
  for (const Finger& f : candidates) {
    uniqueFacets.push_back(f.body);
    uniqueFacets.push_back(f.tip);
  }
  std::sort(uniqueFacets.begin(), uniqueFacets.end());
  uniqueFacets.erase(std::unique(uniqueFacets.begin(), uniqueFacets.end()), uniqueFacets.end());

  struct Class {
    Vec3 mid;
    int maximalFacet = -1;
    double maximalDepth = 1e300;  // most negative dot with palm normal wins
  };
  std::vector<Class> classes;
  for (int g : uniqueFacets) {
    const Vec3 ng = p.facets[g].normal;
    double depth = dot(ng, np);
    Vec3 proj = ng - depth * np;
    if (norm2(proj) <= 1e-18) continue;  // parallel to the palm: no circle trace
    Vec3 mid = normalized(proj);
    int cls = -1;
    for (size_t c = 0; c < classes.size(); ++c)
      if (dot(classes[c].mid, mid) >= 1.0 - kEpsAnti) { cls = static_cast<int>(c); break; }
    if (cls < 0) {
      classes.push_back({mid, g, depth});
    } else if (depth < classes[cls].maximalDepth - 1e-15) {
      classes[cls].maximalFacet = g;
      classes[cls].maximalDepth = depth;
    }
  }
  if (classes.size() < 4) return std::nullopt;

  std::vector<Vec3> mids;
  mids.reserve(classes.size());
  for (const Class& c : classes) mids.push_back(c.mid);

  const int n = static_cast<int>(classes.size());
  std::vector<Semicircle> semis;
  semis.reserve(n);
  for (const Vec3& m : mids) semis.push_back(Semicircle::make(np, m));

  // realizers per facet, lexicographic
  auto realizers = [&](int facet) {
    std::vector<Finger> out;
    for (const Finger& f : candidates)
      if (f.body == facet || f.tip == facet) out.push_back(f);
    return out;
  };

  auto tryRealize = [&](const std::array<int, 4>& quad) -> std::optional<Fixture> {
    std::array<std::vector<Finger>, 4> options;
    for (int i = 0; i < 4; ++i) {
      options[i] = realizers(classes[quad[i]].maximalFacet);
      if (options[i].empty()) return std::nullopt;
    }
    std::array<Finger, 4> pick;
    std::function<std::optional<Fixture>(int)> rec =
        [&](int depth) -> std::optional<Fixture> {
      if (depth == 4) {
        Fixture fx{palm, {pick.begin(), pick.end()}};
        std::sort(fx.fingers.begin(), fx.fingers.end());
        if (std::adjacent_find(fx.fingers.begin(), fx.fingers.end()) != fx.fingers.end())
          return std::nullopt;
        if (validCalls) ++*validCalls;
        if (validCore(p, palm, fx.fingers, eps)) return fx;
        return std::nullopt;
      }
      for (const Finger& f : options[depth]) {
        bool clash = false;
        for (int d = 0; d < depth; ++d)
          if (pick[d].body == f.body) { clash = true; break; }
        if (clash) continue;
        pick[depth] = f;
        if (auto r = rec(depth + 1)) return r;
      }
      return std::nullopt;
    };
    return rec(0);
  };

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!antipodal(semis[a], semis[b])) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        for (int d = c + 1; d < n; ++d) {
          if (d == a || d == b) continue;
          Semicircle four[4] = {semis[a], semis[b], semis[c], semis[d]};
          if (!coversCircle(four, eps).covered) continue;
          if (auto fx = tryRealize({a, b, c, d})) return fx;
        }
      }
    }
  return std::nullopt;
}

SynthesisResult minimalSnappingFixture(const Polyhedron& p, const SynthOptions& opts) {
  auto t0 = Clock::now();
  SynthesisResult res;
  CandidateMap m = buildCandidateMap(p);
  const long nPalms = p.facetCount();
  res.stats.palmsScanned = nPalms;

  auto runSubphase = [&](int k, int statIdx) -> std::optional<Fixture> {
    std::vector<PalmScan> scans(nPalms);
    parallelOverPalms(nPalms, opts.threads, [&](int palm) {
      PalmScan& s = scans[palm];
      scanCombinations(m.perPalm[palm], k, [&](std::span<const Finger> pick) {
        ++s.callsTotal;
        if (validCore(p, palm, pick, opts.epsCover)) {
          s.hit = Fixture{palm, {pick.begin(), pick.end()}};
          s.callsToHit = s.callsTotal;
          return true;
        }
        return false;
      });
    });
    for (long palm = 0; palm < nPalms; ++palm) {
      if (scans[palm].hit) {
        res.stats.validCalls[statIdx] += scans[palm].callsToHit;
        return scans[palm].hit;
      }
      res.stats.validCalls[statIdx] += scans[palm].callsTotal;
    }
    return std::nullopt;
  };

  std::optional<Fixture> found = runSubphase(2, 0);
  if (!found && opts.maxFingers >= 3) found = runSubphase(3, 1);
  if (!found && opts.maxFingers >= 4) {
    std::vector<PalmScan> scans(nPalms);
    parallelOverPalms(nPalms, opts.threads, [&](int palm) {
      PalmScan& s = scans[palm];
      s.hit = fourFingersFixture(p, palm, m.perPalm[palm], opts.epsCover, &s.callsTotal);
      s.callsToHit = s.callsTotal;
    });
    for (long palm = 0; palm < nPalms && !found; ++palm) {
      res.stats.validCalls[2] += scans[palm].callsToHit;
      if (scans[palm].hit) found = scans[palm].hit;
    }
  }

  if (found) {
    res.fixture = found;
    res.servingDirection = servingDirection(p, *found, opts.epsCover);
  }
  res.stats.wallMs = msSince(t0);
  return res;
}

void enumerateFixtures(const Polyhedron& p, int maxFingers,
                       const std::function<void(const Fixture&)>& visit,
                       const SynthOptions& opts) {
  CandidateMap m = buildCandidateMap(p);
  for (long palm = 0; palm < p.facetCount(); ++palm)
    for (int k = 2; k <= maxFingers; ++k)
      scanCombinations(m.perPalm[palm], k, [&](std::span<const Finger> pick) {
        if (validCore(p, static_cast<int>(palm), pick, opts.epsCover))
          visit(Fixture{static_cast<int>(palm), {pick.begin(), pick.end()}});
        return false;
      });
}

EnumerationSummary countMinimalFixtures(const Polyhedron& p, const SynthOptions& opts) {
  CandidateMap m = buildCandidateMap(p);
  const long nPalms = p.facetCount();
  for (int k = 2; k <= opts.maxFingers; ++k) {
    std::vector<long long> counts(nPalms, 0);
    std::vector<std::optional<Fixture>> firsts(nPalms);
    parallelOverPalms(nPalms, opts.threads, [&](int palm) {
      scanCombinations(m.perPalm[palm], k, [&](std::span<const Finger> pick) {
        if (validCore(p, palm, pick, opts.epsCover)) {
          ++counts[palm];
          if (!firsts[palm]) firsts[palm] = Fixture{palm, {pick.begin(), pick.end()}};
        }
        return false;
      });
    });
    EnumerationSummary s;
    for (long palm = 0; palm < nPalms; ++palm) {
      s.countAtMin += counts[palm];
      if (!s.first && firsts[palm]) s.first = firsts[palm];
    }
    if (s.countAtMin > 0) {
      s.minFingers = k;
      return s;
    }
  }
  return {};
}

QualityMetrics qualityOf(const Polyhedron& p, const Fixture& f, const ExtrusionParams& params) {
  if (!validFixture(p, f)) throw std::invalid_argument("qualityOf: fixture is not valid");
  QualityMetrics q;
  q.fingerCount = static_cast<int>(f.fingers.size());
  double palmArea = p.facets[f.palm].area;
  q.weightProxy = params.alphaP * palmArea;
  q.obscurationProxy = palmArea;
  for (const Finger& fi : f.fingers) {
    double bodyArea = polygonArea(bodyBasePolygon(p, f.palm, fi, params.bodyShrink));
    double tipArea =
        params.tipWidth > 0 ? polygonArea(fingertipQuad(p, fi, params)) : 0.0;
    q.weightProxy += params.alphaB * bodyArea + params.alphaT * tipArea;
    q.obscurationProxy += bodyArea + tipArea;
  }
  return q;
}

std::optional<std::pair<Fixture, QualityMetrics>> bestFixture(
    const Polyhedron& p, Objective objective, const ExtrusionParams& params,
    const SynthOptions& opts) {
  if (objective == Objective::Fingers) {
    SynthesisResult r = minimalSnappingFixture(p, opts);
    if (!r.fixture) return std::nullopt;
    return std::make_pair(*r.fixture, qualityOf(p, *r.fixture, params));
  }
  EnumerationSummary lvl = countMinimalFixtures(p, opts);
  if (lvl.minFingers == 0) return std::nullopt;

  CandidateMap m = buildCandidateMap(p);
  const long nPalms = p.facetCount();
  struct Best {
    std::optional<Fixture> fx;
    QualityMetrics q;
    double metric = 1e300;
  };
  std::vector<Best> best(nPalms);
  parallelOverPalms(nPalms, opts.threads, [&](int palm) {
    scanCombinations(m.perPalm[palm], lvl.minFingers, [&](std::span<const Finger> pick) {
      if (!validCore(p, palm, pick, opts.epsCover)) return false;
      Fixture fx{palm, {pick.begin(), pick.end()}};
      QualityMetrics q = qualityOf(p, fx, params);
      double metric = objective == Objective::Weight ? q.weightProxy : q.obscurationProxy;
      if (metric < best[palm].metric) best[palm] = {fx, q, metric};
      return false;
    });
  });
  Best overall;
  for (long palm = 0; palm < nPalms; ++palm)
    if (best[palm].fx && best[palm].metric < overall.metric) overall = best[palm];
  if (!overall.fx) return std::nullopt;
  return std::make_pair(*overall.fx, overall.q);
}

}  // namespace snapfix

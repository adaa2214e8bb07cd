#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "snapfix/mesh.hpp"
#include "snapfix/shapes.hpp"
#include "snapfix/solid.hpp"

using namespace snapfix;

namespace {

std::string cubeOFF() {
  Polyhedron c = shapes::cube(2.0);
  std::ostringstream os;
  writeOFF(c, os);
  return os.str();
}

}  // namespace

TEST_CASE("OFF cube loads with the benchmark vertex/edge/triangle counts") {
  std::istringstream in(cubeOFF());
  Polyhedron p = loadMesh(in, MeshFormat::OFF);
  CHECK(p.vertexCount() == 8);
  CHECK(p.edgeCount == 18);
  CHECK(p.facetCount() == 12);
}

TEST_CASE("OFF tetrahedron loads with V=4 E=6 F=4") {
  Polyhedron t = shapes::tetrahedron();
  CHECK(t.vertexCount() == 4);
  CHECK(t.edgeCount == 6);
  CHECK(t.facetCount() == 4);
}

TEST_CASE("STL with a missing triangle is an open-boundary error") {
  Polyhedron cube = shapes::cube();
  SolidMesh s;
  s.vertices = cube.vertices;
  for (size_t i = 0; i + 1 < cube.facets.size(); ++i) {  // drop the last triangle
    const auto& loop = cube.facets[i].loop;
    s.triangles.push_back({loop[0], loop[1], loop[2]});
    s.shellOfTriangle.push_back(0);
  }
  s.shellCount = 1;
  std::ostringstream os(std::ios::binary);
  // exportMesh refuses non-watertight meshes, so write the broken STL by hand
  os << "solid hole\n";
  for (const auto& t : s.triangles) {
    os << "facet normal 0 0 0\nouter loop\n";
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = s.vertices[t[k]];
      os << "vertex " << v.x << ' ' << v.y << ' ' << v.z << "\n";
    }
    os << "endloop\nendfacet\n";
  }
  os << "endsolid hole\n";
  std::istringstream in(os.str());
  CHECK_THROWS_WITH_AS(loadMesh(in, MeshFormat::STL), doctest::Contains("open boundary"),
                       MeshError);
}

TEST_CASE("STL round trip rebuilds connectivity by welding") {
  Polyhedron cube = shapes::cube(20.0);
  SolidMesh s;
  s.vertices = cube.vertices;
  for (const Facet& f : cube.facets) {
    s.triangles.push_back({f.loop[0], f.loop[1], f.loop[2]});
    s.shellOfTriangle.push_back(0);
  }
  s.shellCount = 1;
  std::ostringstream os(std::ios::binary);
  exportMesh(s, SolidFormat::StlBinary, os);
  std::string bytes = os.str();
  CHECK(bytes.size() == 84 + 50 * s.triangles.size());
  std::istringstream in(bytes);
  Polyhedron p = loadMesh(in, MeshFormat::STL);
  CHECK(p.vertexCount() == 8);
  CHECK(p.edgeCount == 18);
  CHECK(p.facetCount() == 12);
}

TEST_CASE("coplanar merge reproduces the benchmark facet counts") {
  CHECK(mergeCoplanarFacets(shapes::cube()).facetCount() == 6);
  CHECK(mergeCoplanarFacets(shapes::tetrahedron()).facetCount() == 4);
  CHECK(mergeCoplanarFacets(shapes::prism(8)).facetCount() == 10);
  CHECK(mergeCoplanarFacets(shapes::squarePyramid()).facetCount() == 5);
  CHECK(mergeCoplanarFacets(shapes::octahedron()).facetCount() == 8);
  CHECK(mergeCoplanarFacets(shapes::icosahedron()).facetCount() == 20);
  CHECK(mergeCoplanarFacets(shapes::dodecahedron()).facetCount() == 12);
}

TEST_CASE("prism triangulation counts match the 8-base cylinder row") {
  Polyhedron p = shapes::prism(8);
  CHECK(p.vertexCount() == 16);
  CHECK(p.edgeCount == 42);
  CHECK(p.facetCount() == 28);
}

TEST_CASE("merge is idempotent") {
  for (const char* name : {"cube", "prism8", "square_pyramid"}) {
    Polyhedron once = mergeCoplanarFacets(shapes::byName(name));
    Polyhedron twice = mergeCoplanarFacets(once);
    CHECK(once.facetCount() == twice.facetCount());
    CHECK(once.vertexCount() == twice.vertexCount());
    CHECK(once.edgeCount == twice.edgeCount);
  }
}

TEST_CASE("genus: sphere-like solids are 0, the quad torus is 1") {
  CHECK(genus(shapes::cube()) == 0);
  CHECK(genus(mergeCoplanarFacets(shapes::cube())) == 0);
  CHECK(genus(shapes::icosahedron()) == 0);
  Polyhedron torus = shapes::quadTorus(8);
  CHECK(torus.vertexCount() == 32);
  CHECK(genus(torus) == 1);
}

TEST_CASE("genus is invariant under merging") {
  for (const char* name : {"cube", "prism8", "octahedron", "dodecahedron"})
    CHECK(genus(mergeCoplanarFacets(shapes::byName(name))) == genus(shapes::byName(name)));
}

TEST_CASE("divergence: area-weighted outward normals sum to zero") {
  for (const char* name : {"cube", "prism28", "icosahedron", "square_pyramid"}) {
    Polyhedron p = mergeCoplanarFacets(shapes::byName(name));
    Vec3 sum{0, 0, 0};
    double total = 0;
    for (const Facet& f : p.facets) {
      sum += f.normal * f.area;
      total += f.area;
    }
    CHECK(norm(sum) <= 1e-9 * total);
  }
}

TEST_CASE("neighbors: cube squares have 4, tetra facets 3, prism caps 8") {
  Polyhedron cube = mergeCoplanarFacets(shapes::cube());
  for (const Facet& f : cube.facets) CHECK(neighbors(cube, f.id).size() == 4);
  Polyhedron tet = shapes::tetrahedron();
  for (const Facet& f : tet.facets) CHECK(neighbors(tet, f.id).size() == 3);
  Polyhedron prism = mergeCoplanarFacets(shapes::prism(8));
  int caps = 0;
  for (const Facet& f : prism.facets)
    if (f.loop.size() == 8) {
      ++caps;
      CHECK(neighbors(prism, f.id).size() == 8);
    }
  CHECK(caps == 2);
}

TEST_CASE("neighbor relation is symmetric and excludes vertex-only contact") {
  Polyhedron p = mergeCoplanarFacets(shapes::prism(8));
  for (const Facet& f : p.facets)
    for (int nb : f.neighbors) {
      const auto& back = p.facets[nb].neighbors;
      CHECK(std::find(back.begin(), back.end(), f.id) != back.end());
    }
  // octagon caps touch each side rectangle along a full edge and nothing else
  Polyhedron oct = mergeCoplanarFacets(shapes::octahedron());
  for (const Facet& f : oct.facets) CHECK(f.neighbors.size() == 3);
}

TEST_CASE("merging the swept quad torus reports the annular facet") {
  Polyhedron torus = shapes::quadTorus(8);
  CHECK_THROWS_AS(mergeCoplanarFacets(torus), MeshError);
}

TEST_CASE("OFF round trip is isomorphic and writes 17 significant digits") {
  Polyhedron p = mergeCoplanarFacets(shapes::dodecahedron(17.0));
  std::ostringstream os;
  writeOFF(p, os);
  std::istringstream in(os.str());
  Polyhedron q = loadMesh(in, MeshFormat::OFF);
  Polyhedron qm = mergeCoplanarFacets(q);
  CHECK(qm.vertexCount() == p.vertexCount());
  CHECK(qm.edgeCount == p.edgeCount);
  CHECK(qm.facetCount() == p.facetCount());
  for (long v = 0; v < p.vertexCount(); ++v) CHECK(norm(q.vertices[v]) > 0);
}

TEST_CASE("OBJ writer round trips through the OBJ parser") {
  Polyhedron p = shapes::squarePyramid();
  std::ostringstream os;
  writeOBJ(p, os);
  std::istringstream in(os.str());
  Polyhedron q = loadMesh(in, MeshFormat::OBJ);
  CHECK(q.vertexCount() == p.vertexCount());
  CHECK(q.facetCount() == p.facetCount());
  CHECK(q.edgeCount == p.edgeCount);
}

TEST_CASE("mixed orientation that a global flip cannot repair is rejected") {
  Polyhedron cube = shapes::cube();
  std::vector<std::vector<int>> polys;
  for (const Facet& f : cube.facets) polys.push_back(f.loop);
  std::reverse(polys[0].begin(), polys[0].end());  // flip one triangle only
  CHECK_THROWS_WITH_AS(buildPolyhedron(cube.vertices, polys),
                       doctest::Contains("orientation"), MeshError);
}

TEST_CASE("globally inverted input is flipped to outward orientation") {
  Polyhedron cube = shapes::cube();
  std::vector<std::vector<int>> polys;
  for (const Facet& f : cube.facets) {
    auto loop = f.loop;
    std::reverse(loop.begin(), loop.end());
    polys.push_back(loop);
  }
  Polyhedron p = buildPolyhedron(cube.vertices, polys);
  double vol6 = 0;
  for (const Facet& f : p.facets)
    vol6 += dot(p.vertices[f.loop[0]],
                cross(p.vertices[f.loop[1]], p.vertices[f.loop[2]]));
  CHECK(vol6 > 0);
}

TEST_CASE("random convex polytopes are closed manifolds of genus 0") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    Polyhedron p = shapes::randomConvexPolytope(30, seed);
    CHECK(p.vertexCount() == 30);
    CHECK(genus(p) == 0);
    Polyhedron m = mergeCoplanarFacets(p);
    CHECK(genus(m) == 0);
  }
}

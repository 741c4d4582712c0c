#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "graspgen/errors.hpp"
#include "graspgen/mesh.hpp"
#include "graspgen/ply_io.hpp"
#include "graspgen/primitives.hpp"
#include "graspgen/sampling.hpp"
#include "graspgen/voxel_filter.hpp"
#include "test_util.hpp"

using namespace graspgen;
using testutil::TempDir;

namespace {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  os << content;
}

// Independent binary PLY writer (float64), separate from save_ply.
void write_reference_binary_ply(const std::string& path, const std::vector<double>& rows) {
  std::ofstream os(path, std::ios::binary);
  os << "ply\nformat binary_little_endian 1.0\nelement vertex " << rows.size() / 6 << "\n";
  for (const char* n : {"x", "y", "z", "nx", "ny", "nz"}) os << "property double " << n << "\n";
  os << "end_header\n";
  os.write(reinterpret_cast<const char*>(rows.data()),
           static_cast<std::streamsize>(rows.size() * sizeof(double)));
}

// Minimum distance from p to any triangle of the mesh (vertex/edge/face).
double distance_to_mesh(const Vec3& p, const TriangleMesh& mesh) {
  double best = 1e300;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    // Project onto the triangle plane and clamp via barycentric edges.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    const Vec3 n = cross(ab, ac);
    const double denom = n.squared_norm();
    double dist;
    const double u = (dot(ab, ab) * d2 - dot(ab, ac) * d1);
    const double v = (dot(ac, ac) * d1 - dot(ab, ac) * d2);
    const double det = dot(ab, ab) * dot(ac, ac) - dot(ab, ac) * dot(ab, ac);
    if (det > 0 && v >= 0 && u >= 0 && (u + v) <= det) {
      dist = std::abs(dot(ap, n)) / std::sqrt(denom);
    } else {
      // Closest point on one of the three edges.
      const auto edge_dist = [&](const Vec3& e0, const Vec3& e1) {
        const Vec3 e = e1 - e0;
        const double t = std::clamp(dot(p - e0, e) / e.squared_norm(), 0.0, 1.0);
        return (p - (e0 + e * t)).norm();
      };
      dist = std::min({edge_dist(a, b), edge_dist(b, c), edge_dist(c, a)});
    }
    best = std::min(best, dist);
  }
  return best;
}

}  // namespace

TEST_SUITE("cloud_io") {

TEST_CASE("ascii ply with three vertices loads positions and normals") {
  TempDir dir("ply_ascii");
  write_text(dir.file("tri.ply"),
             "ply\nformat ascii 1.0\ncomment test\nelement vertex 3\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property float nx\nproperty float ny\nproperty float nz\n"
             "end_header\n"
             "0 0 0 1 0 0\n"
             "1 0 0 0 1 0\n"
             "0 1 0 0 0 1\n");
  const PointCloud cloud = load_ply(dir.file("tri.ply"));
  REQUIRE(cloud.size() == 3);
  CHECK(cloud.position(1) == Vec3{1, 0, 0});
  CHECK(cloud.normal(2).z() == doctest::Approx(1.0));
}

TEST_CASE("ply without normals raises MissingNormals") {
  TempDir dir("ply_nonormals");
  write_text(dir.file("p.ply"),
             "ply\nformat ascii 1.0\nelement vertex 1\n"
             "property float x\nproperty float y\nproperty float z\n"
             "end_header\n0 0 0\n");
  CHECK_THROWS_AS(load_ply(dir.file("p.ply")), MissingNormalsError);
}

TEST_CASE("malformed ply headers raise ParseError") {
  TempDir dir("ply_bad");
  write_text(dir.file("a.ply"), "not_a_ply\n");
  CHECK_THROWS_AS(load_ply(dir.file("a.ply")), ParseError);

  write_text(dir.file("b.ply"),
             "ply\nformat binary_big_endian 1.0\nelement vertex 1\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property float nx\nproperty float ny\nproperty float nz\nend_header\n");
  CHECK_THROWS_AS(load_ply(dir.file("b.ply")), ParseError);

  write_text(dir.file("c.ply"),
             "ply\nformat ascii 1.0\nelement vertex 2\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property float nx\nproperty float ny\nproperty float nz\n"
             "end_header\n0 0 0 1 0 0\n");  // body truncated
  CHECK_THROWS_AS(load_ply(dir.file("c.ply")), ParseError);
}

TEST_CASE("empty vertex element raises EmptyCloud") {
  TempDir dir("ply_empty");
  write_text(dir.file("e.ply"),
             "ply\nformat ascii 1.0\nelement vertex 0\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property float nx\nproperty float ny\nproperty float nz\nend_header\n");
  CHECK_THROWS_AS(load_ply(dir.file("e.ply")), EmptyCloudError);
}

TEST_CASE("binary ply from an independent writer loads bit-exact") {
  TempDir dir("ply_bin");
  testutil::Rand rng(21);
  const std::size_t n = 10000;
  std::vector<double> rows;
  rows.reserve(n * 6);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p = rng.vec(-0.3, 0.3);
    const UnitVec3 u = rng.direction();
    rows.insert(rows.end(), {p.x, p.y, p.z, u.x(), u.y(), u.z()});
  }
  write_reference_binary_ply(dir.file("big.ply"), rows);

  const PointCloud cloud = load_ply(dir.file("big.ply"));
  REQUIRE(cloud.size() == n);
  for (std::size_t i : {std::size_t(0), n / 2, n - 1}) {
    CHECK(cloud.position(i).x == rows[i * 6 + 0]);
    CHECK(cloud.position(i).y == rows[i * 6 + 1]);
    CHECK(cloud.position(i).z == rows[i * 6 + 2]);
  }
  bool all_exact = true;
  for (std::size_t i = 0; i < n; ++i)
    all_exact = all_exact && cloud.position(i) == Vec3{rows[i * 6], rows[i * 6 + 1], rows[i * 6 + 2]};
  CHECK(all_exact);
}

TEST_CASE("float32 properties and extra columns are handled") {
  TempDir dir("ply_f32");
  std::ofstream os(dir.file("f.ply"), std::ios::binary);
  os << "ply\nformat binary_little_endian 1.0\nelement vertex 2\n"
        "property float x\nproperty float y\nproperty float z\n"
        "property uchar intensity\n"
        "property float nx\nproperty float ny\nproperty float nz\n"
        "end_header\n";
  const auto put_vertex = [&](float x, float y, float z, unsigned char inten, float nx,
                              float ny, float nz) {
    const float pos[3] = {x, y, z};
    os.write(reinterpret_cast<const char*>(pos), 12);
    os.put(static_cast<char>(inten));
    const float nrm[3] = {nx, ny, nz};
    os.write(reinterpret_cast<const char*>(nrm), 12);
  };
  put_vertex(0.25f, -1.5f, 3.0f, 7, 1, 0, 0);
  put_vertex(1.0f, 2.0f, 3.0f, 9, 0, 0, 2);  // normal renormalized
  os.close();

  const PointCloud cloud = load_ply(dir.file("f.ply"));
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.position(0).x == 0.25);
  CHECK(cloud.position(0).y == -1.5);
  CHECK(cloud.normal(1).z() == doctest::Approx(1.0));
}

TEST_CASE("elements before and after vertex are skipped") {
  TempDir dir("ply_skip");
  write_text(dir.file("s.ply"),
             "ply\nformat ascii 1.0\n"
             "element camera 1\n"
             "property float cx\nproperty float cy\n"
             "element vertex 2\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property float nx\nproperty float ny\nproperty float nz\n"
             "element face 1\n"
             "property list uchar int vertex_indices\n"
             "end_header\n"
             "0.5 0.25\n"
             "1 0 0 0 0 1\n"
             "2 0 0 0 0 1\n"
             "2 0 1\n");
  const PointCloud cloud = load_ply(dir.file("s.ply"));
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.position(0).x == 1.0);
  CHECK(cloud.position(1).x == 2.0);
}

TEST_CASE("load applies the unit scale to positions only") {
  TempDir dir("ply_scale");
  write_text(dir.file("s.ply"),
             "ply\nformat ascii 1.0\nelement vertex 1\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property float nx\nproperty float ny\nproperty float nz\n"
             "end_header\n40 0 -20 0 0 1\n");
  const PointCloud cloud = load_ply(dir.file("s.ply"), 0.001);
  CHECK(cloud.position(0).x == doctest::Approx(0.040));
  CHECK(cloud.position(0).z == doctest::Approx(-0.020));
  CHECK(cloud.normal(0).z() == 1.0);
}

TEST_CASE("duplicate points within 1e-9 are dropped at load") {
  TempDir dir("ply_dup");
  write_text(dir.file("d.ply"),
             "ply\nformat ascii 1.0\nelement vertex 4\n"
             "property double x\nproperty double y\nproperty double z\n"
             "property double nx\nproperty double ny\nproperty double nz\n"
             "end_header\n"
             "0 0 0 1 0 0\n"
             "0 0 0 0 1 0\n"           // exact duplicate
             "5e-10 0 0 0 0 1\n"       // within tolerance
             "3e-9 0 0 0 0 1\n");      // kept
  const PointCloud cloud = load_ply(dir.file("d.ply"));
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.normal(0).x() == 1.0);  // first occurrence kept
  CHECK(cloud.position(1).x == 3e-9);
}

TEST_CASE("save_ply round-trips bit-exact in binary and ascii") {
  TempDir dir("ply_rt");
  testutil::Rand rng(22);
  PointCloud cloud;
  cloud.source = "rt";
  for (int i = 0; i < 257; ++i)
    cloud.points.push_back(SurfacePoint{rng.vec(-0.2, 0.2), rng.direction()});

  for (const auto format : {PlyFormat::BinaryLittleEndian, PlyFormat::Ascii}) {
    const std::string path =
        dir.file(format == PlyFormat::Ascii ? "rt_ascii.ply" : "rt_bin.ply");
    save_ply(cloud, path, format);
    const PointCloud loaded = load_ply(path);
    REQUIRE(loaded.size() == cloud.size());
    bool positions_exact = true, normals_exact = true;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      positions_exact = positions_exact && loaded.position(i) == cloud.position(i);
      normals_exact = normals_exact && loaded.normal(i).vec() == cloud.normal(i).vec();
    }
    CHECK(positions_exact);
    CHECK(normals_exact);
  }
}

TEST_CASE("obj loader handles quads, normals and negative indices") {
  TempDir dir("obj");
  write_text(dir.file("q.obj"),
             "# unit square, one quad\n"
             "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
             "vn 0 0 1\n"
             "f 1//1 2//1 3//1 4//1\n"
             "f -4 -3 -2\n"
             "f 1 2 2\n");  // degenerate, dropped by cleaning
  const TriangleMesh mesh = load_obj(dir.file("q.obj"));
  CHECK(mesh.vertices.size() == 4);
  CHECK(mesh.triangle_count() == 3);  // quad fan (2) + explicit triangle
  REQUIRE(mesh.vertex_normals.size() == 4);
  CHECK(mesh.vertex_normals[0].z == doctest::Approx(1.0));

  write_text(dir.file("bad.obj"), "v 0 0 0\nf 1 2 3\n");
  CHECK_THROWS_AS(load_obj(dir.file("bad.obj")), ParseError);
}

TEST_CASE("stl binary and ascii load with recomputed winding normals") {
  TempDir dir("stl");
  const TriangleMesh cube = make_box_mesh({0.02, 0.02, 0.02});
  save_stl_binary(cube, dir.file("cube.stl"));
  const TriangleMesh loaded = load_stl(dir.file("cube.stl"));
  CHECK(loaded.triangle_count() == 12);
  CHECK(loaded.vertices.size() == 8);  // shared corners merged
  CHECK(surface_area(loaded) == doctest::Approx(6 * 0.02 * 0.02).epsilon(1e-9));

  // ASCII STL with a deliberately wrong facet normal: winding wins.
  write_text(dir.file("tri.stl"),
             "solid t\n"
             " facet normal 1 0 0\n"
             "  outer loop\n"
             "   vertex 0 0 0\n   vertex 1 0 0\n   vertex 0 1 0\n"
             "  endloop\n"
             " endfacet\n"
             "endsolid t\n");
  const TriangleMesh tri = load_stl(dir.file("tri.stl"));
  REQUIRE(tri.triangle_count() == 1);
  const Vec3 n = cross(tri.vertices[tri.triangles[0][1]] - tri.vertices[tri.triangles[0][0]],
                       tri.vertices[tri.triangles[0][2]] - tri.vertices[tri.triangles[0][0]]);
  CHECK(n.z > 0.0);  // +z from counter-clockwise winding, not the stored +x
}

TEST_CASE("primitive meshes are closed with outward winding") {
  // Signed volume from the divergence theorem: positive and close to the
  // analytic value only when the mesh is watertight and wound outward.
  const auto signed_volume = [](const TriangleMesh& mesh) {
    double v = 0.0;
    for (const auto& t : mesh.triangles)
      v += dot(mesh.vertices[t[0]], cross(mesh.vertices[t[1]], mesh.vertices[t[2]])) / 6.0;
    return v;
  };

  const TriangleMesh box = make_box_mesh({0.04, 0.03, 0.02});
  CHECK(signed_volume(box) == doctest::Approx(0.04 * 0.03 * 0.02).epsilon(1e-12));

  const TriangleMesh cylinder = make_cylinder_mesh(0.015, 0.05);
  CHECK(signed_volume(cylinder) ==
        doctest::Approx(std::numbers::pi * 0.015 * 0.015 * 0.05).epsilon(0.01));

  const TriangleMesh ring = make_ring_mesh(0.015, 0.030, 0.010);
  CHECK(signed_volume(ring) ==
        doctest::Approx(std::numbers::pi * (0.03 * 0.03 - 0.015 * 0.015) * 0.010)
            .epsilon(0.01));

  const TriangleMesh bracket = make_lbracket_mesh(0.06, 0.04, 0.012, 0.03);
  const double l_area = 0.06 * 0.012 + 0.012 * (0.04 - 0.012);
  CHECK(signed_volume(bracket) == doctest::Approx(l_area * 0.03).epsilon(1e-12));

  // The ring's bore facets face the axis (outward from the material).
  const PointCloud ring_cloud = sample_mesh(ring, 400, 17);
  for (const SurfacePoint& p : ring_cloud.points) {
    const double r = std::hypot(p.position.x, p.position.y);
    if (r < 0.0155 && std::abs(p.position.z) < 0.004) {
      const double radial = p.normal.x() * p.position.x + p.normal.y() * p.position.y;
      CHECK(radial < 0.0);
    }
  }
}

TEST_CASE("sample_mesh covers a unit square deterministically") {
  TriangleMesh square;
  square.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  square.triangles = {{0, 1, 2}, {0, 2, 3}};

  const PointCloud a = sample_mesh(square, 1000, 42);
  REQUIRE(a.size() == 1000);
  for (const SurfacePoint& p : a.points) {
    CHECK(p.position.x >= 0.0);
    CHECK(p.position.x <= 1.0);
    CHECK(p.position.y >= 0.0);
    CHECK(p.position.y <= 1.0);
    CHECK(p.position.z == 0.0);
    CHECK(p.normal.z() == doctest::Approx(1.0));
  }

  const PointCloud b = sample_mesh(square, 1000, 42);
  bool identical = a.size() == b.size();
  for (std::size_t i = 0; identical && i < a.size(); ++i)
    identical = a.position(i) == b.position(i);
  CHECK(identical);

  const PointCloud c = sample_mesh(square, 1000, 43);
  bool differs = false;
  for (std::size_t i = 0; i < c.size() && !differs; ++i)
    differs = !(c.position(i) == a.position(i));
  CHECK(differs);
}

TEST_CASE("sample_mesh points lie on the mesh surface") {
  const TriangleMesh cube = make_box_mesh({0.04, 0.03, 0.05});
  const PointCloud cloud = sample_mesh(cube, 500, 7);
  double worst = 0.0;
  for (const SurfacePoint& p : cloud.points)
    worst = std::max(worst, distance_to_mesh(p.position, cube));
  CHECK(worst <= 1e-9);
}

TEST_CASE("sample_mesh per-face counts follow the area weighting") {
  const TriangleMesh cube = make_box_mesh({0.04, 0.04, 0.04});
  const PointCloud cloud = sample_mesh(cube, 60000, 123);
  std::map<int, int> face_counts;  // +-x = 0/1, +-y = 2/3, +-z = 4/5
  for (const SurfacePoint& p : cloud.points) {
    const Vec3 n = p.normal.vec();
    if (n.x > 0.5) ++face_counts[0];
    else if (n.x < -0.5) ++face_counts[1];
    else if (n.y > 0.5) ++face_counts[2];
    else if (n.y < -0.5) ++face_counts[3];
    else if (n.z > 0.5) ++face_counts[4];
    else ++face_counts[5];
  }
  // Binomial(60000, 1/6): mean 10000, sigma ~91.3; require within 3 sigma.
  for (const auto& [face, count] : face_counts) {
    (void)face;
    CHECK(std::abs(count - 10000) <= 3 * 92);
  }
}

TEST_CASE("sample_mesh rejects empty meshes and n = 0") {
  TriangleMesh degenerate;
  degenerate.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  degenerate.triangles = {{0, 1, 2}};  // zero area
  CHECK_THROWS_AS(sample_mesh(degenerate, 10, 1), DegenerateMeshError);

  const TriangleMesh cube = make_box_mesh({0.02, 0.02, 0.02});
  CHECK_THROWS_AS(sample_mesh(cube, 0, 1), InvalidArgumentError);
}

TEST_CASE("voxel_downsample collapses, preserves and stays idempotent") {
  PointCloud tight;
  tight.points = {
      SurfacePoint{{0.001, 0.001, 0.001}, UnitVec3(1, 0, 0)},
      SurfacePoint{{0.002, 0.001, 0.001}, UnitVec3(0, 1, 0)},
      SurfacePoint{{0.003, 0.001, 0.001}, UnitVec3(0, 0, 1)},
  };
  const PointCloud one = voxel_downsample(tight, 0.01);
  REQUIRE(one.size() == 1);
  // Centroid x = 0.002: the middle point is nearest.
  CHECK(one.position(0).x == 0.002);
  CHECK(one.normal(0).y() == 1.0);

  // Voxel below the minimum pairwise distance: unchanged.
  const PointCloud same = voxel_downsample(tight, 0.0004);
  REQUIRE(same.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same.position(i) == tight.position(i));

  // Eight cube corners with voxel = edge/2 stay distinct (hand-computed ids).
  PointCloud corners;
  const double e = 0.02;
  for (int ix : {-1, 1})
    for (int iy : {-1, 1})
      for (int iz : {-1, 1})
        corners.points.push_back(
            SurfacePoint{{ix * e / 2, iy * e / 2, iz * e / 2}, UnitVec3(1, 0, 0)});
  CHECK(voxel_downsample(corners, e / 2).size() == 8);

  // Idempotence on random clouds.
  testutil::Rand rng(23);
  for (int c = 0; c < 50; ++c) {
    const PointCloud cloud = testutil::random_cloud(rng, 120, 0.06, 0.0005);
    const PointCloud once = voxel_downsample(cloud, 0.007);
    const PointCloud twice = voxel_downsample(once, 0.007);
    REQUIRE(once.size() == twice.size());
    bool identical = true;
    for (std::size_t i = 0; i < once.size(); ++i)
      identical = identical && once.position(i) == twice.position(i);
    CHECK(identical);
  }
}

TEST_CASE("voxel ties resolve to the lowest index") {
  // Binary-exact coordinates so both points tie exactly at the centroid.
  PointCloud cloud;
  cloud.points = {
      SurfacePoint{{0.25, 0, 0}, UnitVec3(1, 0, 0)},
      SurfacePoint{{0.75, 0, 0}, UnitVec3(0, 1, 0)},
  };
  const PointCloud out = voxel_downsample(cloud, 2.0);
  REQUIRE(out.size() == 1);
  CHECK(out.position(0).x == 0.25);
}

}  // TEST_SUITE

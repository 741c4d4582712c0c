#include "graspgen/mesh.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "graspgen/errors.hpp"

namespace graspgen {

void TriangleMesh::validate() const {
  for (const auto& t : triangles)
    for (std::uint32_t idx : t)
      if (idx >= vertices.size())
        throw ParseError("mesh: triangle references vertex " + std::to_string(idx) +
                         " out of " + std::to_string(vertices.size()));
  if (!vertex_normals.empty() && vertex_normals.size() != vertices.size())
    throw ParseError("mesh: vertex normal count does not match vertex count");
}

double triangle_area(const TriangleMesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Vec3& a = mesh.vertices[tri[0]];
  const Vec3& b = mesh.vertices[tri[1]];
  const Vec3& c = mesh.vertices[tri[2]];
  return 0.5 * cross(b - a, c - a).norm();
}

double surface_area(const TriangleMesh& mesh) {
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) total += triangle_area(mesh, t);
  return total;
}

TriangleMesh clean_mesh(TriangleMesh mesh, double min_area) {
  std::vector<std::array<std::uint32_t, 3>> kept;
  kept.reserve(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    if (triangle_area(mesh, t) > min_area) kept.push_back(mesh.triangles[t]);
  mesh.triangles = std::move(kept);
  return mesh;
}

namespace {

[[noreturn]] void fail_obj(const std::string& message) { throw ParseError("OBJ: " + message); }
[[noreturn]] void fail_stl(const std::string& message) { throw ParseError("STL: " + message); }

double parse_double(const std::string& token, const char* what) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError(std::string(what) + ": bad number '" + token + "'");
  return v;
}

long parse_long(std::string_view token, const char* what) {
  long v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError(std::string(what) + ": bad index '" + std::string(token) + "'");
  return v;
}

// "i", "i/t", "i//n", "i/t/n" -> (vertex index, optional normal index), 0-based.
std::pair<std::uint32_t, long> parse_obj_corner(const std::string& token,
                                                std::size_t vertex_count,
                                                std::size_t normal_count) {
  const auto first_slash = token.find('/');
  const std::string_view vtok =
      std::string_view(token).substr(0, first_slash == std::string::npos ? token.size() : first_slash);
  long vi = parse_long(vtok, "OBJ");
  if (vi < 0) vi = static_cast<long>(vertex_count) + vi + 1;
  if (vi < 1 || static_cast<std::size_t>(vi) > vertex_count)
    fail_obj("vertex index " + std::string(vtok) + " out of range");

  long ni = 0;  // 0 = absent
  if (first_slash != std::string::npos) {
    const auto second_slash = token.find('/', first_slash + 1);
    if (second_slash != std::string::npos && second_slash + 1 < token.size()) {
      ni = parse_long(std::string_view(token).substr(second_slash + 1), "OBJ");
      if (ni < 0) ni = static_cast<long>(normal_count) + ni + 1;
      if (ni < 1 || static_cast<std::size_t>(ni) > normal_count)
        fail_obj("normal index out of range");
    }
  }
  return {static_cast<std::uint32_t>(vi - 1), ni};
}

}  // namespace

TriangleMesh load_obj(const std::string& path, double scale) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  TriangleMesh mesh;
  std::vector<Vec3> file_normals;
  std::vector<Vec3> accumulated(0);
  bool any_corner_normal = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string kw;
    if (!(ss >> kw)) continue;
    if (kw.empty() || kw[0] == '#') continue;

    if (kw == "v") {
      std::string xs, ys, zs;
      if (!(ss >> xs >> ys >> zs)) fail_obj("line " + std::to_string(line_no) + ": malformed vertex");
      mesh.vertices.push_back(Vec3{parse_double(xs, "OBJ"), parse_double(ys, "OBJ"),
                                   parse_double(zs, "OBJ")} *
                              scale);
    } else if (kw == "vn") {
      std::string xs, ys, zs;
      if (!(ss >> xs >> ys >> zs)) fail_obj("line " + std::to_string(line_no) + ": malformed normal");
      file_normals.push_back(
          Vec3{parse_double(xs, "OBJ"), parse_double(ys, "OBJ"), parse_double(zs, "OBJ")});
    } else if (kw == "f") {
      std::vector<std::pair<std::uint32_t, long>> corners;
      std::string tok;
      while (ss >> tok)
        corners.push_back(parse_obj_corner(tok, mesh.vertices.size(), file_normals.size()));
      if (corners.size() < 3)
        fail_obj("line " + std::to_string(line_no) + ": face with fewer than 3 corners");
      accumulated.resize(mesh.vertices.size());
      for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        mesh.triangles.push_back({corners[0].first, corners[k].first, corners[k + 1].first});
      }
      for (const auto& [vi, ni] : corners) {
        if (ni > 0) {
          accumulated[vi] += file_normals[static_cast<std::size_t>(ni - 1)];
          any_corner_normal = true;
        }
      }
    }
    // Other record types (vt, g, o, s, usemtl, mtllib, ...) are ignored.
  }

  if (any_corner_normal) {
    accumulated.resize(mesh.vertices.size());
    mesh.vertex_normals.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < accumulated.size(); ++i) {
      const double n = accumulated[i].norm();
      mesh.vertex_normals[i] = n > 1e-12 ? accumulated[i] * (1.0 / n) : Vec3{0, 0, 0};
    }
  }

  mesh.validate();
  return clean_mesh(std::move(mesh));
}

namespace {

struct VertexKey {
  double x, y, z;
  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    std::uint64_t bits;
    for (double v : {k.x, k.y, k.z}) {
      std::memcpy(&bits, &v, 8);
      h ^= bits;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class StlBuilder {
public:
  explicit StlBuilder(double scale) : scale_(scale) {}

  void add_facet(const Vec3& a, const Vec3& b, const Vec3& c) {
    mesh_.triangles.push_back({index_of(a), index_of(b), index_of(c)});
  }

  TriangleMesh take() { return std::move(mesh_); }

private:
  std::uint32_t index_of(const Vec3& raw) {
    const Vec3 v = raw * scale_;
    const VertexKey key{v.x, v.y, v.z};
    const auto it = dedup_.find(key);
    if (it != dedup_.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(mesh_.vertices.size());
    mesh_.vertices.push_back(v);
    dedup_.emplace(key, idx);
    return idx;
  }

  double scale_;
  TriangleMesh mesh_;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> dedup_;
};

TriangleMesh load_stl_binary(const std::vector<char>& data, double scale) {
  std::uint32_t count;
  std::memcpy(&count, data.data() + 80, 4);
  StlBuilder builder(scale);
  const char* p = data.data() + 84;
  for (std::uint32_t f = 0; f < count; ++f, p += 50) {
    float coords[12];  // normal + 3 vertices; the file normal is ignored
    std::memcpy(coords, p, 48);
    builder.add_facet(Vec3{coords[3], coords[4], coords[5]},
                      Vec3{coords[6], coords[7], coords[8]},
                      Vec3{coords[9], coords[10], coords[11]});
  }
  return builder.take();
}

TriangleMesh load_stl_ascii(const std::vector<char>& data, double scale) {
  std::istringstream in(std::string(data.begin(), data.end()));
  StlBuilder builder(scale);
  std::string tok;
  std::vector<Vec3> verts;
  while (in >> tok) {
    if (tok == "vertex") {
      std::string xs, ys, zs;
      if (!(in >> xs >> ys >> zs)) fail_stl("truncated vertex record");
      verts.push_back(
          Vec3{parse_double(xs, "STL"), parse_double(ys, "STL"), parse_double(zs, "STL")});
    } else if (tok == "endfacet") {
      if (verts.size() != 3) fail_stl("facet with " + std::to_string(verts.size()) + " vertices");
      builder.add_facet(verts[0], verts[1], verts[2]);
      verts.clear();
    }
  }
  if (!verts.empty()) fail_stl("trailing vertices outside a facet");
  return builder.take();
}

}  // namespace

TriangleMesh load_stl(const std::string& path, double scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  bool binary = false;
  if (data.size() >= 84) {
    std::uint32_t count;
    std::memcpy(&count, data.data() + 80, 4);
    binary = data.size() == 84 + static_cast<std::size_t>(count) * 50;
  }
  TriangleMesh mesh;
  if (binary) {
    mesh = load_stl_binary(data, scale);
  } else {
    const std::string head(data.begin(), data.begin() + std::min<std::size_t>(data.size(), 16));
    if (head.rfind("solid", 0) != 0) fail_stl("neither a valid binary nor ASCII STL");
    mesh = load_stl_ascii(data, scale);
  }
  mesh.validate();
  return clean_mesh(std::move(mesh));
}

void save_obj(const TriangleMesh& mesh, const std::string& path, double position_scale) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char buf[32];
  const auto emit = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
  };
  for (const Vec3& v : mesh.vertices) {
    out << "v ";
    emit(v.x * position_scale);
    out << ' ';
    emit(v.y * position_scale);
    out << ' ';
    emit(v.z * position_scale);
    out << '\n';
  }
  for (const auto& t : mesh.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  if (!out) throw IoError("write failure on '" + path + "'");
}

void save_stl_binary(const TriangleMesh& mesh, const std::string& path, double position_scale) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char header[80] = {};
  std::strncpy(header, "graspgen binary stl", sizeof(header) - 1);
  out.write(header, 80);
  const auto count = static_cast<std::uint32_t>(mesh.triangles.size());
  out.write(reinterpret_cast<const char*>(&count), 4);
  for (const auto& t : mesh.triangles) {
    const Vec3 a = mesh.vertices[t[0]] * position_scale;
    const Vec3 b = mesh.vertices[t[1]] * position_scale;
    const Vec3 c = mesh.vertices[t[2]] * position_scale;
    Vec3 n = cross(b - a, c - a);
    const double len = n.norm();
    if (len > 1e-30) n *= 1.0 / len;
    const float record[12] = {
        static_cast<float>(n.x), static_cast<float>(n.y), static_cast<float>(n.z),
        static_cast<float>(a.x), static_cast<float>(a.y), static_cast<float>(a.z),
        static_cast<float>(b.x), static_cast<float>(b.y), static_cast<float>(b.z),
        static_cast<float>(c.x), static_cast<float>(c.y), static_cast<float>(c.z)};
    out.write(reinterpret_cast<const char*>(record), 48);
    const std::uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(&attr), 2);
  }
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace graspgen

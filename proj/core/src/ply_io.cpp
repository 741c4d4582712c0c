#include "graspgen/ply_io.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "graspgen/errors.hpp"
#include "graspgen/version.hpp"

namespace graspgen {

namespace {

enum class ScalarType { I8, U8, I16, U16, I32, U32, F32, F64 };

std::size_t scalar_size(ScalarType t) {
  switch (t) {
    case ScalarType::I8:
    case ScalarType::U8:
      return 1;
    case ScalarType::I16:
    case ScalarType::U16:
      return 2;
    case ScalarType::I32:
    case ScalarType::U32:
    case ScalarType::F32:
      return 4;
    case ScalarType::F64:
      return 8;
  }
  return 0;
}

std::optional<ScalarType> parse_scalar_type(const std::string& s) {
  if (s == "char" || s == "int8") return ScalarType::I8;
  if (s == "uchar" || s == "uint8") return ScalarType::U8;
  if (s == "short" || s == "int16") return ScalarType::I16;
  if (s == "ushort" || s == "uint16") return ScalarType::U16;
  if (s == "int" || s == "int32") return ScalarType::I32;
  if (s == "uint" || s == "uint32") return ScalarType::U32;
  if (s == "float" || s == "float32") return ScalarType::F32;
  if (s == "double" || s == "float64") return ScalarType::F64;
  return std::nullopt;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::F32;
  bool is_list = false;
  ScalarType count_type = ScalarType::U8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  bool binary = false;
  std::vector<Element> elements;
  std::size_t body_offset = 0;
};

[[noreturn]] void fail(const std::string& message) { throw ParseError("PLY: " + message); }

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string t;
  while (ss >> t) tokens.push_back(t);
  return tokens;
}

Header parse_header(std::istream& in) {
  Header header;
  std::string line;
  if (!std::getline(in, line)) fail("empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "ply") fail("missing 'ply' magic");

  bool have_format = false;
  bool ended = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    if (kw == "comment" || kw == "obj_info") continue;
    if (kw == "format") {
      if (tokens.size() < 2) fail("malformed format line");
      if (tokens[1] == "ascii")
        header.binary = false;
      else if (tokens[1] == "binary_little_endian")
        header.binary = true;
      else if (tokens[1] == "binary_big_endian")
        fail("binary_big_endian is not supported");
      else
        fail("unknown format '" + tokens[1] + "'");
      have_format = true;
    } else if (kw == "element") {
      if (tokens.size() != 3) fail("malformed element line");
      Element e;
      e.name = tokens[1];
      std::size_t value = 0;
      const auto res = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), value);
      if (res.ec != std::errc() || res.ptr != tokens[2].data() + tokens[2].size())
        fail("bad element count '" + tokens[2] + "'");
      e.count = value;
      header.elements.push_back(std::move(e));
    } else if (kw == "property") {
      if (header.elements.empty()) fail("property before any element");
      Property p;
      if (tokens.size() == 3) {
        const auto t = parse_scalar_type(tokens[1]);
        if (!t) fail("unknown property type '" + tokens[1] + "'");
        p.type = *t;
        p.name = tokens[2];
      } else if (tokens.size() == 5 && tokens[1] == "list") {
        const auto ct = parse_scalar_type(tokens[2]);
        const auto vt = parse_scalar_type(tokens[3]);
        if (!ct || !vt) fail("unknown list property types");
        p.is_list = true;
        p.count_type = *ct;
        p.type = *vt;
        p.name = tokens[4];
      } else {
        fail("malformed property line");
      }
      header.elements.back().properties.push_back(std::move(p));
    } else if (kw == "end_header") {
      ended = true;
      break;
    } else {
      fail("unknown header keyword '" + kw + "'");
    }
  }
  if (!ended) fail("missing end_header");
  if (!have_format) fail("missing format line");
  header.body_offset = static_cast<std::size_t>(in.tellg());
  return header;
}

class AsciiTokenReader {
public:
  explicit AsciiTokenReader(std::istream& in) : in_(in) {}

  double next_number() {
    std::string t;
    if (!(in_ >> t)) fail("unexpected end of ASCII body");
    // from_chars rejects an explicit leading '+'.
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) fail("bad number '" + t + "' in ASCII body");
    return v;
  }

private:
  std::istream& in_;
};

class BinaryReader {
public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  double read_scalar(ScalarType t) {
    unsigned char buf[8];
    if (!in_.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(scalar_size(t))))
      fail("unexpected end of binary body");
    switch (t) {
      case ScalarType::I8:
        return static_cast<double>(static_cast<std::int8_t>(buf[0]));
      case ScalarType::U8:
        return static_cast<double>(buf[0]);
      case ScalarType::I16: {
        std::int16_t v;
        std::memcpy(&v, buf, 2);
        return v;
      }
      case ScalarType::U16: {
        std::uint16_t v;
        std::memcpy(&v, buf, 2);
        return v;
      }
      case ScalarType::I32: {
        std::int32_t v;
        std::memcpy(&v, buf, 4);
        return v;
      }
      case ScalarType::U32: {
        std::uint32_t v;
        std::memcpy(&v, buf, 4);
        return v;
      }
      case ScalarType::F32: {
        float v;
        std::memcpy(&v, buf, 4);
        return v;
      }
      case ScalarType::F64: {
        double v;
        std::memcpy(&v, buf, 8);
        return v;
      }
    }
    fail("unreachable scalar type");
  }

  void skip(std::size_t bytes) {
    in_.seekg(static_cast<std::streamoff>(bytes), std::ios::cur);
    if (!in_) fail("unexpected end of binary body");
  }

private:
  std::istream& in_;
};

// Skips one element's worth of body data for elements preceding "vertex".
void skip_element_ascii(AsciiTokenReader& reader, const Element& e) {
  for (std::size_t i = 0; i < e.count; ++i)
    for (const Property& p : e.properties) {
      if (p.is_list) {
        const auto n = static_cast<std::size_t>(reader.next_number());
        for (std::size_t k = 0; k < n; ++k) reader.next_number();
      } else {
        reader.next_number();
      }
    }
}

void skip_element_binary(BinaryReader& reader, const Element& e) {
  for (std::size_t i = 0; i < e.count; ++i)
    for (const Property& p : e.properties) {
      if (p.is_list) {
        const auto n = static_cast<std::size_t>(reader.read_scalar(p.count_type));
        reader.skip(n * scalar_size(p.type));
      } else {
        reader.skip(scalar_size(p.type));
      }
    }
}

}  // namespace

PointCloud load_ply(const std::string& path, double scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");

  const Header header = parse_header(in);

  const Element* vertex = nullptr;
  std::size_t vertex_pos = 0;
  for (std::size_t i = 0; i < header.elements.size(); ++i) {
    if (header.elements[i].name == "vertex") {
      vertex = &header.elements[i];
      vertex_pos = i;
      break;
    }
  }
  if (!vertex) fail("no 'vertex' element");
  if (vertex->count == 0) throw EmptyCloudError("PLY: zero vertices in '" + path + "'");

  int field_slot[6] = {-1, -1, -1, -1, -1, -1};  // x y z nx ny nz -> property index
  const char* names[6] = {"x", "y", "z", "nx", "ny", "nz"};
  for (std::size_t p = 0; p < vertex->properties.size(); ++p) {
    const Property& prop = vertex->properties[p];
    if (prop.is_list) fail("list property '" + prop.name + "' on vertex element");
    for (int f = 0; f < 6; ++f)
      if (prop.name == names[f]) {
        if (prop.type != ScalarType::F32 && prop.type != ScalarType::F64)
          fail("property '" + prop.name + "' must be float32 or float64");
        field_slot[f] = static_cast<int>(p);
      }
  }
  for (int f = 0; f < 3; ++f)
    if (field_slot[f] < 0) fail(std::string("missing vertex property '") + names[f] + "'");
  for (int f = 3; f < 6; ++f)
    if (field_slot[f] < 0)
      throw MissingNormalsError("PLY: vertex element has no nx/ny/nz normals");

  PointCloud cloud;
  cloud.source = path;
  cloud.points.reserve(vertex->count);

  std::vector<double> row(vertex->properties.size());
  const auto consume_vertices = [&](auto&& read_row) {
    for (std::size_t v = 0; v < vertex->count; ++v) {
      read_row();
      const Vec3 pos{row[field_slot[0]] * scale, row[field_slot[1]] * scale,
                     row[field_slot[2]] * scale};
      const Vec3 nrm{row[field_slot[3]], row[field_slot[4]], row[field_slot[5]]};
      if (!pos.is_finite()) fail("non-finite position");
      if (std::abs(pos.x) > 1e12 || std::abs(pos.y) > 1e12 || std::abs(pos.z) > 1e12)
        fail("position magnitude out of range");
      if (!nrm.is_finite() || !(nrm.norm() > 1e-12)) fail("invalid normal vector");
      // Keep already-unit normals bit-exact; renormalize sloppy ones.
      const UnitVec3 unit = std::abs(nrm.norm() - 1.0) <= 1e-9 ? UnitVec3::assume_unit(nrm)
                                                               : normalize(nrm);
      cloud.points.push_back(SurfacePoint{pos, unit});
    }
  };

  if (header.binary) {
    BinaryReader reader(in);
    for (std::size_t i = 0; i < vertex_pos; ++i) skip_element_binary(reader, header.elements[i]);
    consume_vertices([&] {
      for (std::size_t p = 0; p < vertex->properties.size(); ++p)
        row[p] = reader.read_scalar(vertex->properties[p].type);
    });
  } else {
    AsciiTokenReader reader(in);
    for (std::size_t i = 0; i < vertex_pos; ++i) skip_element_ascii(reader, header.elements[i]);
    consume_vertices([&] {
      for (std::size_t p = 0; p < vertex->properties.size(); ++p) row[p] = reader.next_number();
    });
  }

  return deduplicate_points(cloud);
}

namespace {

void write_double_token(std::ostream& os, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  os.write(buf, res.ptr - buf);
}

}  // namespace

void save_ply(const PointCloud& cloud, const std::string& path, PlyFormat format,
              double position_scale) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");

  out << "ply\n";
  out << (format == PlyFormat::Ascii ? "format ascii 1.0\n"
                                     : "format binary_little_endian 1.0\n");
  out << "comment generated by graspgen " << version_string << "\n";
  out << "element vertex " << cloud.size() << "\n";
  for (const char* name : {"x", "y", "z", "nx", "ny", "nz"})
    out << "property double " << name << "\n";
  out << "end_header\n";

  for (const SurfacePoint& p : cloud.points) {
    const double values[6] = {p.position.x * position_scale, p.position.y * position_scale,
                              p.position.z * position_scale, p.normal.x(),
                              p.normal.y(),                  p.normal.z()};
    if (format == PlyFormat::Ascii) {
      for (int k = 0; k < 6; ++k) {
        if (k) out << ' ';
        write_double_token(out, values[k]);
      }
      out << '\n';
    } else {
      out.write(reinterpret_cast<const char*>(values), sizeof(values));
    }
  }
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace graspgen

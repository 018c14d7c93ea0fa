// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/ply_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "voxsr/error.hpp"

namespace voxsr {

namespace {

enum class PropType { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

struct Property {
  std::string name;
  PropType type = PropType::kInt32;
  bool is_list = false;
  PropType count_type = PropType::kUInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> props;
};

std::size_t type_size(PropType t) {
  switch (t) {
    case PropType::kInt8:
    case PropType::kUInt8: return 1;
    case PropType::kInt16:
    case PropType::kUInt16: return 2;
    case PropType::kInt32:
    case PropType::kUInt32:
    case PropType::kFloat32: return 4;
    case PropType::kFloat64: return 8;
  }
  return 0;
}

bool type_is_float(PropType t) {
  return t == PropType::kFloat32 || t == PropType::kFloat64;
}

PropType parse_prop_type(const std::string& token) {
  if (token == "char" || token == "int8") return PropType::kInt8;
  if (token == "uchar" || token == "uint8") return PropType::kUInt8;
  if (token == "short" || token == "int16") return PropType::kInt16;
  if (token == "ushort" || token == "uint16") return PropType::kUInt16;
  if (token == "int" || token == "int32") return PropType::kInt32;
  if (token == "uint" || token == "uint32") return PropType::kUInt32;
  if (token == "float" || token == "float32") return PropType::kFloat32;
  if (token == "double" || token == "float64") return PropType::kFloat64;
  fail(ErrorCode::kParse, "unknown property type '" + token + "'");
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) tokens.push_back(tok);
  return tokens;
}

double read_binary_value(std::istream& in, PropType t) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(type_size(t)));
  if (!in) fail(ErrorCode::kParse, "truncated binary payload");
  // little-endian payload on a little-endian host
  switch (t) {
    case PropType::kInt8: return static_cast<double>(static_cast<std::int8_t>(buf[0]));
    case PropType::kUInt8: return static_cast<double>(buf[0]);
    case PropType::kInt16: {
      std::int16_t v;
      std::memcpy(&v, buf, 2);
      return static_cast<double>(v);
    }
    case PropType::kUInt16: {
      std::uint16_t v;
      std::memcpy(&v, buf, 2);
      return static_cast<double>(v);
    }
    case PropType::kInt32: {
      std::int32_t v;
      std::memcpy(&v, buf, 4);
      return static_cast<double>(v);
    }
    case PropType::kUInt32: {
      std::uint32_t v;
      std::memcpy(&v, buf, 4);
      return static_cast<double>(v);
    }
    case PropType::kFloat32: {
      float v;
      std::memcpy(&v, buf, 4);
      return static_cast<double>(v);
    }
    case PropType::kFloat64: {
      double v;
      std::memcpy(&v, buf, 8);
      return v;
    }
  }
  return 0.0;
}

double read_ascii_value(std::istream& in) {
  double v = 0.0;
  if (!(in >> v)) fail(ErrorCode::kParse, "truncated or non-numeric ascii payload");
  return v;
}

// round half up and clamp into [0, limit]
std::int32_t quantize_coordinate(double raw, bool is_float, std::int64_t limit) {
  if (!std::isfinite(raw)) fail(ErrorCode::kParse, "non-finite vertex coordinate");
  double rounded = is_float ? std::floor(raw + 0.5) : raw;
  if (rounded < -2147483648.0 || rounded > 2147483647.0)
    fail(ErrorCode::kOverflow, "vertex coordinate overflows 32-bit range");
  std::int64_t v = static_cast<std::int64_t>(rounded);
  v = std::clamp<std::int64_t>(v, 0, limit);
  return static_cast<std::int32_t>(v);
}

struct Header {
  PlyFormat format = PlyFormat::kAscii;
  std::vector<Element> elements;
  std::optional<int> comment_depth;
};

Header parse_header(std::istream& in) {
  Header h;
  std::string line;

  auto next_line = [&]() {
    if (!std::getline(in, line)) fail(ErrorCode::kParse, "unterminated header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line();
  if (line != "ply") fail(ErrorCode::kParse, "missing ply magic");

  bool have_format = false;
  bool done = false;
  while (!done) {
    next_line();
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    if (kw == "comment" || kw == "obj_info") {
      if (tokens.size() >= 3 && tokens[1] == "depth") {
        try {
          h.comment_depth = std::stoi(tokens[2]);
        } catch (...) {
          // not ours; ignore
        }
      }
      continue;
    }
    if (kw == "format") {
      if (tokens.size() < 2) fail(ErrorCode::kParse, "malformed format line");
      if (tokens[1] == "ascii") {
        h.format = PlyFormat::kAscii;
      } else if (tokens[1] == "binary_little_endian") {
        h.format = PlyFormat::kBinaryLittleEndian;
      } else {
        fail(ErrorCode::kParse, "unsupported format '" + tokens[1] + "'");
      }
      have_format = true;
    } else if (kw == "element") {
      if (tokens.size() != 3) fail(ErrorCode::kParse, "malformed element line");
      Element e;
      e.name = tokens[1];
      try {
        e.count = static_cast<std::size_t>(std::stoull(tokens[2]));
      } catch (...) {
        fail(ErrorCode::kParse, "malformed element count");
      }
      h.elements.push_back(std::move(e));
    } else if (kw == "property") {
      if (h.elements.empty()) fail(ErrorCode::kParse, "property before element");
      Property p;
      if (tokens.size() == 5 && tokens[1] == "list") {
        p.is_list = true;
        p.count_type = parse_prop_type(tokens[2]);
        if (type_is_float(p.count_type)) fail(ErrorCode::kParse, "float list count type");
        p.type = parse_prop_type(tokens[3]);
        p.name = tokens[4];
      } else if (tokens.size() == 3) {
        p.type = parse_prop_type(tokens[1]);
        p.name = tokens[2];
      } else {
        fail(ErrorCode::kParse, "malformed property line");
      }
      h.elements.back().props.push_back(std::move(p));
    } else if (kw == "end_header") {
      done = true;
    } else {
      fail(ErrorCode::kParse, "unknown header keyword '" + kw + "'");
    }
  }
  if (!have_format) fail(ErrorCode::kParse, "missing format line");
  return h;
}

void skip_element_ascii(std::istream& in, const Element& e) {
  for (std::size_t i = 0; i < e.count; ++i) {
    for (const Property& p : e.props) {
      if (p.is_list) {
        const auto n = static_cast<std::size_t>(read_ascii_value(in));
        for (std::size_t k = 0; k < n; ++k) read_ascii_value(in);
      } else {
        read_ascii_value(in);
      }
    }
  }
}

void skip_element_binary(std::istream& in, const Element& e) {
  bool fixed = true;
  std::size_t stride = 0;
  for (const Property& p : e.props) {
    if (p.is_list) {
      fixed = false;
      break;
    }
    stride += type_size(p.type);
  }
  if (fixed) {
    in.ignore(static_cast<std::streamsize>(stride * e.count));
    if (!in) fail(ErrorCode::kParse, "truncated binary payload");
    return;
  }
  for (std::size_t i = 0; i < e.count; ++i) {
    for (const Property& p : e.props) {
      if (p.is_list) {
        const auto n = static_cast<std::size_t>(read_binary_value(in, p.count_type));
        in.ignore(static_cast<std::streamsize>(n * type_size(p.type)));
        if (!in) fail(ErrorCode::kParse, "truncated binary payload");
      } else {
        read_binary_value(in, p.type);
      }
    }
  }
}

}  // namespace

VoxelCloud load_ply(std::istream& in, std::optional<int> depth) {
  const Header header = parse_header(in);

  const Element* vertex = nullptr;
  for (const Element& e : header.elements)
    if (e.name == "vertex") {
      vertex = &e;
      break;
    }
  if (vertex == nullptr) fail(ErrorCode::kParse, "no vertex element");

  int idx[3] = {-1, -1, -1};
  for (std::size_t i = 0; i < vertex->props.size(); ++i) {
    const Property& p = vertex->props[i];
    if (p.name == "x" || p.name == "y" || p.name == "z") {
      if (p.is_list) fail(ErrorCode::kParse, "list-typed vertex coordinate");
      idx[p.name[0] - 'x'] = static_cast<int>(i);
    }
  }
  if (idx[0] < 0 || idx[1] < 0 || idx[2] < 0)
    fail(ErrorCode::kParse, "vertex element lacks x/y/z properties");

  if (depth && (*depth < 1 || *depth > kMaxDepth))
    fail(ErrorCode::kInvalidArgument, "depth must be in [1, " + std::to_string(kMaxDepth) + "]");
  // a foreign depth comment outside the representable range is not ours; ignore it
  std::optional<int> comment_depth = header.comment_depth;
  if (comment_depth && (*comment_depth < 1 || *comment_depth > kMaxDepth))
    comment_depth.reset();
  const std::optional<int> effective_depth = depth ? depth : comment_depth;
  const std::int64_t limit = effective_depth
                                 ? (std::int64_t{1} << *effective_depth) - 1
                                 : std::numeric_limits<std::int32_t>::max();

  std::vector<Vec3i> points;
  points.reserve(vertex->count);

  const bool ascii = header.format == PlyFormat::kAscii;
  for (const Element& e : header.elements) {
    if (&e != vertex) {
      // anything after the vertex payload carries nothing we need
      ascii ? skip_element_ascii(in, e) : skip_element_binary(in, e);
      continue;
    }
    double row[3] = {0, 0, 0};
    for (std::size_t i = 0; i < e.count; ++i) {
      for (std::size_t pi = 0; pi < e.props.size(); ++pi) {
        const Property& p = e.props[pi];
        if (p.is_list) {
          const auto n = static_cast<std::size_t>(
              ascii ? read_ascii_value(in) : read_binary_value(in, p.count_type));
          for (std::size_t k = 0; k < n; ++k)
            ascii ? read_ascii_value(in) : read_binary_value(in, p.type);
          continue;
        }
        const double value = ascii ? read_ascii_value(in) : read_binary_value(in, p.type);
        for (int axis = 0; axis < 3; ++axis)
          if (static_cast<int>(pi) == idx[axis]) row[axis] = value;
      }
      Vec3i v;
      for (int axis = 0; axis < 3; ++axis)
        v[axis] = quantize_coordinate(
            row[axis], type_is_float(e.props[static_cast<std::size_t>(idx[axis])].type),
            limit);
      points.push_back(v);
    }
    break;  // done once the vertex element is read
  }

  return VoxelCloud::from_points(std::move(points), effective_depth);
}

void save_ply(const VoxelCloud& cloud, std::ostream& out, PlyFormat format) {
  std::int32_t max_coordinate = 0;
  if (!cloud.empty()) {
    const Vec3i hi = cloud.max_corner();
    max_coordinate = std::max({hi.x, hi.y, hi.z});
  }
  const char* type = max_coordinate <= 0xff ? "uchar" : max_coordinate <= 0xffff ? "ushort" : "uint";
  const std::size_t width = max_coordinate <= 0xff ? 1 : max_coordinate <= 0xffff ? 2 : 4;

  out << "ply\n";
  out << (format == PlyFormat::kAscii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n");
  out << "comment depth " << cloud.depth() << "\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property " << type << " x\n";
  out << "property " << type << " y\n";
  out << "property " << type << " z\n";
  out << "end_header\n";

  if (format == PlyFormat::kAscii) {
    for (const Vec3i& p : cloud.points()) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  } else {
    for (const Vec3i& p : cloud.points()) {
      for (int axis = 0; axis < 3; ++axis) {
        const auto v = static_cast<std::uint32_t>(p[axis]);
        char buf[4];
        for (std::size_t b = 0; b < width; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xff);
        out.write(buf, static_cast<std::streamsize>(width));
      }
    }
  }
  if (!out) fail(ErrorCode::kIo, "failed to write ply stream");
}

VoxelCloud load_ply_file(const std::filesystem::path& path, std::optional<int> depth) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return load_ply(in, depth);
}

void save_ply_file(const VoxelCloud& cloud, const std::filesystem::path& path,
                   PlyFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  save_ply(cloud, out, format);
}

}  // namespace voxsr

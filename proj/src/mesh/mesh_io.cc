/*
 * Copyright 2026 The Demoforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "demoforge/mesh/mesh_io.h"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "demoforge/common/binary_io.h"
#include "demoforge/common/error.h"

namespace demoforge::mesh {
namespace {

using nlohmann::json;

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double ParseDouble(std::string_view token, std::size_t line_number) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kParseError,
                "bad number '" + std::string(token) + "' on line " + std::to_string(line_number));
  }
  return value;
}

long ParseIndex(std::string_view token, std::size_t line_number) {
  // "v", "v/vt", "v//vn", "v/vt/vn": only the vertex index matters.
  const std::string_view head = token.substr(0, token.find('/'));
  long value = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc() || ptr != head.data() + head.size() || value == 0) {
    throw Error(ErrorCode::kParseError,
                "bad face index '" + std::string(token) + "' on line " + std::to_string(line_number));
  }
  return value;
}

struct PlyProperty {
  std::string name;
  std::string type;
  bool is_list = false;
  std::string count_type;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

std::size_t PlyTypeSize(const std::string& type) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" ||
      type == "float" || type == "float32") {
    return 4;
  }
  if (type == "double" || type == "float64") return 8;
  throw Error(ErrorCode::kParseError, "unknown PLY type '" + type + "'");
}

double ReadPlyScalar(std::span<const uint8_t> bytes, std::size_t& offset,
                     const std::string& type) {
  const std::size_t size = PlyTypeSize(type);
  if (offset + size > bytes.size()) {
    throw Error(ErrorCode::kParseError, "PLY body truncated");
  }
  double value = 0.0;
  if (type == "char" || type == "int8") value = ReadLe<int8_t>(bytes, offset);
  else if (type == "uchar" || type == "uint8") value = ReadLe<uint8_t>(bytes, offset);
  else if (type == "short" || type == "int16") value = ReadLe<int16_t>(bytes, offset);
  else if (type == "ushort" || type == "uint16") value = ReadLe<uint16_t>(bytes, offset);
  else if (type == "int" || type == "int32") value = ReadLe<int32_t>(bytes, offset);
  else if (type == "uint" || type == "uint32") value = ReadLe<uint32_t>(bytes, offset);
  else if (type == "float" || type == "float32") value = ReadLe<float>(bytes, offset);
  else value = ReadLe<double>(bytes, offset);
  offset += size;
  return value;
}

}  // namespace

TriMesh ParseObj(std::string_view text, const std::string& id) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) {
        throw Error(ErrorCode::kParseError, "vertex needs 3 coordinates on line " +
                                                std::to_string(line_number));
      }
      vertices.emplace_back(ParseDouble(tokens[1], line_number),
                            ParseDouble(tokens[2], line_number),
                            ParseDouble(tokens[3], line_number));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        throw Error(ErrorCode::kParseError, "face needs 3 indices on line " +
                                                std::to_string(line_number));
      }
      std::vector<uint32_t> polygon;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        long index = ParseIndex(tokens[k], line_number);
        // Negative indices are relative to the vertices read so far.
        index = index > 0 ? index - 1 : static_cast<long>(vertices.size()) + index;
        if (index < 0) {
          throw Error(ErrorCode::kParseError,
                      "face index out of range on line " + std::to_string(line_number));
        }
        polygon.push_back(static_cast<uint32_t>(index));
      }
      for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
        faces.push_back({polygon[0], polygon[k], polygon[k + 1]});
      }
    }
  }
  return TriMesh(id, std::move(vertices), std::move(faces));
}

TriMesh ParsePly(std::span<const uint8_t> bytes, const std::string& id) {
  const std::string_view all(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const std::string_view marker = "end_header";
  const std::size_t header_end = all.find(marker);
  if (all.substr(0, 3) != "ply" || header_end == std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "not a PLY file");
  }
  std::size_t body = all.find('\n', header_end);
  if (body == std::string_view::npos) throw Error(ErrorCode::kParseError, "PLY header unterminated");
  ++body;

  std::vector<PlyElement> elements;
  std::istringstream header{std::string(all.substr(0, header_end))};
  std::string line;
  bool binary_le = false;
  while (std::getline(header, line)) {
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword == "format") {
      std::string format;
      ls >> format;
      binary_le = format == "binary_little_endian";
    } else if (keyword == "element") {
      PlyElement element;
      ls >> element.name >> element.count;
      elements.push_back(element);
    } else if (keyword == "property") {
      if (elements.empty()) throw Error(ErrorCode::kParseError, "PLY property before element");
      PlyProperty property;
      std::string type;
      ls >> type;
      if (type == "list") {
        property.is_list = true;
        ls >> property.count_type >> property.type >> property.name;
      } else {
        property.type = type;
        ls >> property.name;
      }
      elements.back().properties.push_back(property);
    }
  }
  if (!binary_le) throw Error(ErrorCode::kParseError, "only binary_little_endian PLY is supported");

  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  std::size_t offset = body;
  for (const PlyElement& element : elements) {
    for (std::size_t i = 0; i < element.count; ++i) {
      Eigen::Vector3d v = Eigen::Vector3d::Zero();
      for (const PlyProperty& property : element.properties) {
        if (property.is_list) {
          const auto count =
              static_cast<std::size_t>(ReadPlyScalar(bytes, offset, property.count_type));
          std::vector<uint32_t> polygon;
          for (std::size_t k = 0; k < count; ++k) {
            const double index = ReadPlyScalar(bytes, offset, property.type);
            if (index < 0) throw Error(ErrorCode::kParseError, "negative PLY face index");
            polygon.push_back(static_cast<uint32_t>(index));
          }
          if (element.name == "face" &&
              (property.name == "vertex_indices" || property.name == "vertex_index")) {
            if (polygon.size() < 3) throw Error(ErrorCode::kParseError, "PLY face with < 3 indices");
            for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
              faces.push_back({polygon[0], polygon[k], polygon[k + 1]});
            }
          }
        } else {
          const double value = ReadPlyScalar(bytes, offset, property.type);
          if (element.name == "vertex") {
            if (property.name == "x") v.x() = value;
            else if (property.name == "y") v.y() = value;
            else if (property.name == "z") v.z() = value;
          }
        }
      }
      if (element.name == "vertex") vertices.push_back(v);
    }
  }
  return TriMesh(id, std::move(vertices), std::move(faces));
}

TriMesh LoadMesh(const std::filesystem::path& path) {
  const std::string id = path.stem().string();
  std::string extension = path.extension().string();
  for (char& c : extension) c = static_cast<char>(std::tolower(c));
  if (extension == ".obj") return ParseObj(ReadFileText(path), id);
  if (extension == ".ply") {
    const std::vector<uint8_t> bytes = ReadFileBytes(path);
    return ParsePly(bytes, id);
  }
  throw Error(ErrorCode::kParseError, "unsupported mesh format: " + path.string());
}

void WriteObj(const TriMesh& mesh, const std::filesystem::path& path) {
  std::ostringstream out;
  out.precision(17);
  const auto pose = geometry::ToArray(mesh.canonical_pose());
  out << "# demoforge mesh " << mesh.id() << "\n# canonical_pose";
  for (const double v : pose) out << ' ' << v;
  out << '\n';
  for (const Eigen::Vector3d& v : mesh.vertices()) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const Face& f : mesh.faces()) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  WriteFileText(path, out.str());
}

std::map<std::string, geometry::Pose> LoadPoseOverrides(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(ReadFileText(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, "pose override file: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "pose override file must be an object");
  std::map<std::string, geometry::Pose> overrides;
  for (const auto& [mesh_id, value] : doc.items()) {
    if (!value.is_array()) throw Error(ErrorCode::kParseError, "override for " + mesh_id);
    const std::vector<double> values = value.get<std::vector<double>>();
    overrides.emplace(mesh_id, geometry::FromArray(values));
  }
  return overrides;
}

}  // namespace demoforge::mesh

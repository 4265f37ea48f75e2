#include "sftd/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace sftd::io {
namespace {

static_assert(std::endian::native == std::endian::little,
              "npy encoding assumes a little-endian host");

constexpr std::string_view kNpyMagic = "\x93NUMPY";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::size_t parse_count(std::string_view token, std::string_view what) {
  token = trim(token);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FileError("malformed " + std::string(what) + " '" + std::string(token) + "'");
  return value;
}

Index parse_index(std::string_view token) {
  token = trim(token);
  Index value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FileError("malformed vertex index '" + std::string(token) + "'");
  return value;
}

// Extracts the value of `key` from a python-literal npy header dict.
std::string_view header_entry(std::string_view header, std::string_view key) {
  const std::string quoted = "'" + std::string(key) + "'";
  auto pos = header.find(quoted);
  if (pos == std::string_view::npos) throw FileError("npy header lacks '" + std::string(key) + "'");
  pos = header.find(':', pos + quoted.size());
  if (pos == std::string_view::npos) throw FileError("malformed npy header");
  auto rest = trim(header.substr(pos + 1));
  if (!rest.empty() && rest.front() == '(') {
    const auto close = rest.find(')');
    if (close == std::string_view::npos) throw FileError("malformed npy shape tuple");
    return rest.substr(0, close + 1);
  }
  const auto end = rest.find_first_of(",}");
  return trim(rest.substr(0, end));
}

}  // namespace

std::string format_real(double value) {
  if (value == kInfinity) return "inf";
  if (value == -kInfinity) return "-inf";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format real");
  return std::string(buffer, ptr);
}

double parse_real(std::string_view token) {
  token = trim(token);
  if (token == "inf" || token == "+inf") return kInfinity;
  if (token == "-inf") return -kInfinity;
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FileError("malformed real '" + std::string(token) + "'");
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw FileError("failed writing '" + path.string() + "'");
}

FieldFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".npy") return FieldFormat::npy;
  if (ext == ".csv") return FieldFormat::csv;
  throw FileError("cannot infer field format from '" + path.string() + "' (expected .npy or .csv)");
}

ScalarField parse_npy(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, 6) != kNpyMagic) throw FileError("not an npy file");
  const auto major = static_cast<unsigned char>(bytes[6]);
  const auto minor = static_cast<unsigned char>(bytes[7]);
  if (major != 1 || minor != 0)
    throw FileError("unsupported npy version " + std::to_string(major) + "." + std::to_string(minor));
  const std::size_t header_len = static_cast<unsigned char>(bytes[8]) |
                                 (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
  if (bytes.size() < 10 + header_len) throw FileError("truncated npy header");
  const auto header = bytes.substr(10, header_len);

  const auto descr = header_entry(header, "descr");
  if (descr != "'<f8'") throw FileError("unsupported npy dtype " + std::string(descr) + " (need '<f8')");
  if (header_entry(header, "fortran_order") != "False")
    throw FileError("Fortran-ordered npy arrays are not accepted");

  auto tuple = header_entry(header, "shape");
  tuple = tuple.substr(1, tuple.size() - 2);
  std::vector<std::size_t> shape;
  for (auto part : split(tuple, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    shape.push_back(parse_count(part, "npy shape entry"));
  }
  if (shape.empty()) throw FileError("zero-dimensional npy arrays are not fields");

  std::size_t count = 1;
  for (auto d : shape) count *= d;
  const auto payload = bytes.substr(10 + header_len);
  if (payload.size() != count * sizeof(double))
    throw FileError("npy payload holds " + std::to_string(payload.size()) + " bytes, expected " +
                    std::to_string(count * sizeof(double)));
  std::vector<double> values(count);
  std::memcpy(values.data(), payload.data(), payload.size());
  return ScalarField(std::move(shape), std::move(values));
}

std::string encode_npy(const ScalarField& field) {
  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (";
  for (std::size_t axis = 0; axis < field.axes(); ++axis) {
    dict += std::to_string(field.shape()[axis]);
    dict += field.axes() == 1 ? ",)" : (axis + 1 == field.axes() ? ")" : ", ");
  }
  dict += ", }";
  // Magic + version + length field + dict + newline, padded to 64 bytes.
  const std::size_t unpadded = 10 + dict.size() + 1;
  dict.append((64 - unpadded % 64) % 64, ' ');
  dict += '\n';

  std::string out(kNpyMagic);
  out += static_cast<char>(1);
  out += static_cast<char>(0);
  out += static_cast<char>(dict.size() & 0xff);
  out += static_cast<char>((dict.size() >> 8) & 0xff);
  out += dict;
  const auto values = field.values();
  out.append(reinterpret_cast<const char*>(values.data()), values.size() * sizeof(double));
  return out;
}

ScalarField parse_field_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw FileError("empty field csv");
  const auto header = split(lines[0], ',');
  if (trim(header[0]) != "shape" || header.size() < 2)
    throw FileError("field csv must start with 'shape,d1,...'");
  std::vector<std::size_t> shape;
  for (std::size_t i = 1; i < header.size(); ++i) shape.push_back(parse_count(header[i], "shape entry"));

  std::vector<double> values;
  for (std::size_t l = 1; l < lines.size(); ++l)
    for (auto token : split(lines[l], ';')) {
      try {
        values.push_back(parse_real(token));
      } catch (const FileError&) {
        throw FileError("malformed value '" + std::string(trim(token)) + "' on line " +
                        std::to_string(l + 1));
      }
    }
  return ScalarField(std::move(shape), std::move(values));
}

std::string encode_field_csv(const ScalarField& field) {
  std::string out = "shape";
  for (auto d : field.shape()) out += "," + std::to_string(d);
  out += '\n';
  const std::size_t row = field.shape().back();
  const auto values = field.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += format_real(values[i]);
    out += (i + 1) % row == 0 ? '\n' : ';';
  }
  return out;
}

ScalarField load_field(const std::filesystem::path& path, FieldFormat format) {
  const auto bytes = read_file(path);
  return format == FieldFormat::npy ? parse_npy(bytes) : parse_field_csv(bytes);
}

ScalarField load_field(const std::filesystem::path& path) {
  return load_field(path, format_from_path(path));
}

void save_field(const ScalarField& field, const std::filesystem::path& path, FieldFormat format) {
  write_file(path, format == FieldFormat::npy ? encode_npy(field) : encode_field_csv(field));
}

void save_field(const ScalarField& field, const std::filesystem::path& path) {
  save_field(field, path, format_from_path(path));
}

GraphField parse_graph_field(std::string_view edges_csv, std::string_view values_csv) {
  std::vector<double> values;
  for (auto line : lines_of(values_csv)) values.push_back(parse_real(line));
  std::vector<std::pair<Index, Index>> edges;
  for (auto line : lines_of(edges_csv)) {
    const auto parts = split(line, ',');
    if (parts.size() != 2) throw FileError("edge line '" + std::string(line) + "' is not 'i,j'");
    edges.emplace_back(parse_index(parts[0]), parse_index(parts[1]));
  }
  const auto n = values.size();
  return GraphField(n, std::move(edges), std::move(values));
}

GraphField parse_graph(std::string_view edges_csv) {
  std::vector<std::pair<Index, Index>> edges;
  Index top = -1;
  for (auto line : lines_of(edges_csv)) {
    const auto parts = split(line, ',');
    if (parts.size() != 2) throw FileError("edge line '" + std::string(line) + "' is not 'i,j'");
    edges.emplace_back(parse_index(parts[0]), parse_index(parts[1]));
    top = std::max({top, edges.back().first, edges.back().second});
  }
  const auto n = static_cast<std::size_t>(top + 1);
  return GraphField(n, std::move(edges), std::vector<double>(n, 0.0));
}

GraphField load_graph_field(const std::filesystem::path& edges_path,
                            const std::filesystem::path& values_path) {
  return parse_graph_field(read_file(edges_path), read_file(values_path));
}

std::string encode_edges_csv(const GraphField& graph) {
  std::string out;
  for (auto [i, j] : graph.edges()) out += std::to_string(i) + "," + std::to_string(j) + "\n";
  return out;
}

std::string encode_values_csv(std::span<const double> values) {
  std::string out;
  for (double v : values) out += format_real(v) + "\n";
  return out;
}

}  // namespace sftd::io

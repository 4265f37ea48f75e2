#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sftd/types.hpp"

namespace sftd::io {

enum class FieldFormat { npy, csv };

/// Raised for unreadable or malformed input files. Precondition violations on
/// well-formed files (non-finite values, bad edges) surface as std::invalid_argument.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldFormat format_from_path(const std::filesystem::path& path);

ScalarField load_field(const std::filesystem::path& path, FieldFormat format);
ScalarField load_field(const std::filesystem::path& path);
void save_field(const ScalarField& field, const std::filesystem::path& path, FieldFormat format);
void save_field(const ScalarField& field, const std::filesystem::path& path);

/// npy v1.0, little-endian float64, C order.
ScalarField parse_npy(std::string_view bytes);
std::string encode_npy(const ScalarField& field);

/// `shape,d1,...,dn` header then semicolon-separated values, one lattice row per line.
ScalarField parse_field_csv(std::string_view text);
std::string encode_field_csv(const ScalarField& field);

GraphField load_graph_field(const std::filesystem::path& edges_path,
                            const std::filesystem::path& values_path);
GraphField parse_graph_field(std::string_view edges_csv, std::string_view values_csv);
/// Topology only: vertex count is the largest endpoint plus one, values are zero.
GraphField parse_graph(std::string_view edges_csv);
std::string encode_edges_csv(const GraphField& graph);
std::string encode_values_csv(std::span<const double> values);

/// Shortest decimal that round-trips; +inf is written as `inf`.
std::string format_real(double value);
double parse_real(std::string_view token);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace sftd::io

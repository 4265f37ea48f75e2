#pragma once

// Report assembly and serialization for the command-line tool: JSON reports,
// localization CSV and SVG barcode plots.
//
// JSON bar entries are [birth, death, birth_site, death_site] for finite bars
// and [birth, "inf", birth_site] for essential bars. A site is the list of
// lattice coordinates, [vertex] on graphs, or ["O"] for the extra vertex of
// the doubled graph.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sftd/cross_barcode.hpp"
#include "sftd/divergence.hpp"
#include "sftd/metrics.hpp"
#include "sftd/types.hpp"

namespace sftd::report {

using Json = nlohmann::ordered_json;

struct DegreeSftd {
  double forward = 0.0;    // SFTD_k(f, g)
  double reverse = 0.0;    // SFTD_k(g, f)
  double symmetric = 0.0;  // their mean

  friend bool operator==(const DegreeSftd&, const DegreeSftd&) = default;
};

struct CompareConfig {
  std::string domain;  // "lattice" or "graph"
  std::vector<int> dims;
  double p = 1.0;
  bool symmetric = false;
};

struct CompareReport {
  CompareConfig config;
  std::map<int, DegreeSftd> sftd;
  /// Sum over degrees of the symmetric values when config.symmetric, of the
  /// forward values otherwise.
  double total = 0.0;
  std::vector<LocalizedBar> forward;  // F-Cross-Barcode(f, g), requested degrees only
  std::vector<LocalizedBar> reverse;  // F-Cross-Barcode(g, f)
  std::optional<double> timing_ms;
};

CompareReport compare(const ScalarField& f, const ScalarField& g, const SftdConfig& config);
CompareReport compare(const GraphField& f, const GraphField& g, const SftdConfig& config);

/// Plain sublevel barcode of one field.
struct BarcodeReport {
  std::string domain;
  std::vector<int> dims;
  std::vector<LocalizedBar> bars;
};

BarcodeReport barcode(const ScalarField& f, const std::vector<int>& dims);
BarcodeReport barcode(const GraphField& f, const std::vector<int>& dims);

Json to_json(const CompareReport& report);
CompareReport compare_report_from_json(const Json& doc);
Json to_json(const BarcodeReport& report);

/// {"dims": {...}, "essential": {...}} for the listed degrees.
Json bars_to_json(const std::vector<LocalizedBar>& bars, const std::vector<int>& dims);

/// Finite diagram of degree `dim` read from a document's "dims" object; a
/// missing degree is an empty diagram. Throws std::invalid_argument on
/// malformed content.
Diagram diagram_from_json(const Json& doc, int dim);

/// One `degree,event,value,c1,...,cn` row per finite bar event; no header.
/// The extra doubled-graph vertex is written as `O`.
std::string points_csv(const std::vector<LocalizedBar>& bars);

/// Bars as horizontal segments over the filtration axis, one color per degree.
std::string barcode_svg(const std::vector<LocalizedBar>& bars, const std::vector<int>& dims,
                        const std::string& title);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& doc);

}  // namespace sftd::report

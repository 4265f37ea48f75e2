#include "sftd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sftd/cubical_persistence.hpp"
#include "sftd/flag_persistence.hpp"
#include "sftd/io.hpp"

namespace sftd::report {
namespace {

std::vector<int> normalized(std::vector<int> dims) {
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  if (dims.empty()) throw std::invalid_argument("at least one degree is required");
  if (dims.front() < 0) throw std::invalid_argument("degrees must be non-negative");
  return dims;
}

bool contains(const std::vector<int>& dims, int k) {
  return std::binary_search(dims.begin(), dims.end(), k);
}

std::vector<LocalizedBar> keep(std::vector<LocalizedBar> bars, const std::vector<int>& dims) {
  std::erase_if(bars, [&](const LocalizedBar& b) { return !contains(dims, b.bar.dim); });
  return bars;
}

std::vector<Bar> all_bars(const Barcode& barcode) {
  std::vector<Bar> bars = barcode.finite;
  bars.insert(bars.end(), barcode.essential.begin(), barcode.essential.end());
  return bars;
}

template <class Field>
CompareReport compare_impl(const Field& f, const Field& g, const SftdConfig& config, const char* domain,
                           std::vector<LocalizedBar> (*located)(const Field&, const Field&, int)) {
  config.validate();
  CompareReport report;
  report.config = {domain, normalized(config.degrees), config.p, config.symmetric};
  const int top = report.config.dims.back();
  report.forward = keep(located(f, g, top), report.config.dims);
  report.reverse = keep(located(g, f, top), report.config.dims);

  std::vector<Bar> fwd, rev;
  for (const auto& b : report.forward) fwd.push_back(b.bar);
  for (const auto& b : report.reverse) rev.push_back(b.bar);
  for (int k : report.config.dims) {
    DegreeSftd d;
    d.forward = bar_power_sum(fwd, k, config.p);
    d.reverse = bar_power_sum(rev, k, config.p);
    d.symmetric = 0.5 * d.forward + 0.5 * d.reverse;
    report.sftd[k] = d;
    report.total += config.symmetric ? d.symmetric : d.forward;
  }
  return report;
}

std::vector<LocalizedBar> located_lattice(const ScalarField& f, const ScalarField& g, int top) {
  check_cross_degree(f, top);
  const auto extended = build_extended_field(f, g);
  const auto bars = all_bars(cubical_persistence({extended.field, top}));
  return localize(bars, f.shape());
}

std::vector<LocalizedBar> located_graph(const GraphField& f, const GraphField& g, int top) {
  check_cross_degree(f, top);
  const auto doubled = build_doubled_matrix(f, g);
  const auto bars = all_bars(flag_persistence({doubled.matrix, top}));
  return localize(bars, doubled);
}

Json real(double x) {
  if (x == kInfinity) return "inf";
  return x;
}

double real_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
  if (!j.is_number()) throw std::invalid_argument("expected a number or \"inf\"");
  return j.get<double>();
}

Json site_json(const Site& site) {
  if (site.origin) return Json::array({"O"});
  Json out = Json::array();
  for (auto c : site.coords) out.push_back(c);
  return out;
}

Site site_from(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("site must be an array");
  if (j.size() == 1 && j[0].is_string()) {
    if (j[0].get<std::string>() != "O") throw std::invalid_argument("unknown site label");
    return Site{{}, true};
  }
  Site site;
  for (const auto& c : j) {
    if (!c.is_number_unsigned()) throw std::invalid_argument("site coordinates must be non-negative integers");
    site.coords.push_back(c.get<std::size_t>());
  }
  return site;
}

std::vector<LocalizedBar> bars_from(const Json& doc) {
  std::vector<LocalizedBar> out;
  auto read = [&](const Json& group, bool essential) {
    if (!group.is_object()) throw std::invalid_argument("bar groups must be objects keyed by degree");
    for (const auto& [key, list] : group.items()) {
      const int dim = std::stoi(key);
      if (!list.is_array()) throw std::invalid_argument("bar lists must be arrays");
      for (const auto& e : list) {
        if (!e.is_array() || e.size() != (essential ? 3u : 4u)) throw std::invalid_argument("malformed bar entry");
        LocalizedBar lb{Bar{}, site_from(e[2]), std::nullopt};
        lb.bar.dim = dim;
        lb.bar.birth = real_from(e[0]);
        lb.bar.death = real_from(e[1]);
        if (!essential) lb.death_site = site_from(e[3]);
        out.push_back(std::move(lb));
      }
    }
  };
  read(doc.at("dims"), false);
  read(doc.at("essential"), true);
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

CompareReport compare(const ScalarField& f, const ScalarField& g, const SftdConfig& config) {
  if (f.shape() != g.shape()) throw std::invalid_argument("f and g have different shapes");
  return compare_impl<ScalarField>(f, g, config, "lattice", located_lattice);
}

CompareReport compare(const GraphField& f, const GraphField& g, const SftdConfig& config) {
  if (!f.same_graph(g)) throw std::invalid_argument("f and g are defined on different graphs");
  return compare_impl<GraphField>(f, g, config, "graph", located_graph);
}

BarcodeReport barcode(const ScalarField& f, const std::vector<int>& dims) {
  BarcodeReport report{"lattice", normalized(dims), {}};
  const auto code = cubical_persistence({f, report.dims.back()});
  for (const Bar& bar : all_bars(code)) {
    if (!contains(report.dims, bar.dim)) continue;
    LocalizedBar lb{bar, Site{f.unravel(static_cast<std::size_t>(bar.birth_vertex)), false}, std::nullopt};
    if (!bar.essential()) lb.death_site = Site{f.unravel(static_cast<std::size_t>(bar.death_vertex)), false};
    report.bars.push_back(std::move(lb));
  }
  return report;
}

BarcodeReport barcode(const GraphField& f, const std::vector<int>& dims) {
  BarcodeReport report{"graph", normalized(dims), {}};
  const auto code = flag_persistence({FiltrationMatrix::lower_star(f), report.dims.back()});
  auto site = [&](Index v, Index peer) {
    Index at = v;
    if (peer != v && f[static_cast<std::size_t>(peer)] > f[static_cast<std::size_t>(v)]) at = peer;
    if (peer != v && f[static_cast<std::size_t>(peer)] == f[static_cast<std::size_t>(v)]) at = std::min(v, peer);
    return Site{{static_cast<std::size_t>(at)}, false};
  };
  for (const Bar& bar : all_bars(code)) {
    if (!contains(report.dims, bar.dim)) continue;
    LocalizedBar lb{bar, site(bar.birth_vertex, bar.birth_peer), std::nullopt};
    if (!bar.essential()) lb.death_site = site(bar.death_vertex, bar.death_peer);
    report.bars.push_back(std::move(lb));
  }
  return report;
}

Json bars_to_json(const std::vector<LocalizedBar>& bars, const std::vector<int>& dims) {
  Json finite = Json::object();
  Json essential = Json::object();
  for (int k : dims) {
    finite[std::to_string(k)] = Json::array();
    essential[std::to_string(k)] = Json::array();
  }
  std::vector<const LocalizedBar*> order;
  for (const auto& b : bars) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(),
                   [](const LocalizedBar* a, const LocalizedBar* b) { return bar_less(a->bar, b->bar); });
  for (const LocalizedBar* b : order) {
    const std::string key = std::to_string(b->bar.dim);
    if (b->bar.essential()) {
      essential[key].push_back(Json::array({real(b->bar.birth), "inf", site_json(b->birth_site)}));
    } else {
      finite[key].push_back(Json::array(
          {real(b->bar.birth), real(b->bar.death), site_json(b->birth_site), site_json(*b->death_site)}));
    }
  }
  Json out = Json::object();
  out["dims"] = std::move(finite);
  out["essential"] = std::move(essential);
  return out;
}

Json to_json(const CompareReport& report) {
  Json doc = bars_to_json(report.forward, report.config.dims);
  Json sftd = Json::object();
  for (const auto& [k, d] : report.sftd)
    sftd[std::to_string(k)] = {{"forward", d.forward}, {"reverse", d.reverse}, {"symmetric", d.symmetric}};
  sftd["total"] = report.total;
  doc["sftd"] = std::move(sftd);
  doc["reverse"] = bars_to_json(report.reverse, report.config.dims);
  doc["config"] = {{"domain", report.config.domain},
                   {"dims", report.config.dims},
                   {"p", report.config.p},
                   {"symmetric", report.config.symmetric}};
  if (report.timing_ms) doc["timing_ms"] = *report.timing_ms;
  return doc;
}

CompareReport compare_report_from_json(const Json& doc) {
  try {
    CompareReport report;
    const Json& config = doc.at("config");
    report.config.domain = config.at("domain").get<std::string>();
    report.config.dims = config.at("dims").get<std::vector<int>>();
    report.config.p = config.at("p").get<double>();
    report.config.symmetric = config.at("symmetric").get<bool>();
    for (const auto& [key, value] : doc.at("sftd").items()) {
      if (key == "total") {
        report.total = value.get<double>();
        continue;
      }
      report.sftd[std::stoi(key)] = {value.at("forward").get<double>(), value.at("reverse").get<double>(),
                                     value.at("symmetric").get<double>()};
    }
    report.forward = bars_from(doc);
    report.reverse = bars_from(doc.at("reverse"));
    if (doc.contains("timing_ms")) report.timing_ms = doc.at("timing_ms").get<double>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

Json to_json(const BarcodeReport& report) {
  Json doc = bars_to_json(report.bars, report.dims);
  doc["config"] = {{"domain", report.domain}, {"dims", report.dims}};
  return doc;
}

Diagram diagram_from_json(const Json& doc, int dim) {
  Diagram d;
  if (!doc.is_object()) throw std::invalid_argument("barcode document must be a JSON object");
  if (!doc.contains("dims")) return d;
  const Json& dims = doc.at("dims");
  if (!dims.is_object()) throw std::invalid_argument("\"dims\" must be an object keyed by degree");
  const auto it = dims.find(std::to_string(dim));
  if (it == dims.end()) return d;
  if (!it->is_array()) throw std::invalid_argument("bar list must be an array");
  for (const auto& e : *it) {
    if (!e.is_array() || e.size() < 2) throw std::invalid_argument("bar entry must be [birth, death, ...]");
    const double b = real_from(e[0]);
    const double death = real_from(e[1]);
    if (death == kInfinity) continue;
    if (!(death >= b)) throw std::invalid_argument("bar death precedes its birth");
    d.points.emplace_back(b, death);
  }
  return d;
}

std::string points_csv(const std::vector<LocalizedBar>& bars) {
  std::vector<const LocalizedBar*> order;
  for (const auto& b : bars)
    if (!b.bar.essential()) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(),
                   [](const LocalizedBar* a, const LocalizedBar* b) { return bar_less(a->bar, b->bar); });
  std::string out;
  auto row = [&](int dim, const char* event, double value, const Site& site) {
    out += std::to_string(dim);
    out += ',';
    out += event;
    out += ',';
    out += io::format_real(value);
    if (site.origin) out += ",O";
    for (auto c : site.coords) out += ',' + std::to_string(c);
    out += '\n';
  };
  for (const LocalizedBar* b : order) {
    row(b->bar.dim, "birth", b->bar.birth, b->birth_site);
    row(b->bar.dim, "death", b->bar.death, *b->death_site);
  }
  return out;
}

std::string barcode_svg(const std::vector<LocalizedBar>& bars, const std::vector<int>& dims,
                        const std::string& title) {
  static const char* palette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const double width = 800.0, left = 60.0, right = 40.0, top = 40.0, row_h = 8.0, gap = 18.0;

  double lo = kInfinity, hi = -kInfinity;
  for (const auto& b : bars) {
    lo = std::min(lo, b.bar.birth);
    hi = std::max(hi, b.bar.birth);
    if (!b.bar.essential()) hi = std::max(hi, b.bar.death);
  }
  if (!(lo <= hi)) lo = 0.0, hi = 1.0;
  if (lo == hi) lo -= 0.5, hi += 0.5;
  const double plot_w = width - left - right;
  auto x_of = [&](double v) { return left + (v - lo) / (hi - lo) * plot_w * 0.9; };
  const double x_end = left + plot_w;

  std::vector<std::vector<const LocalizedBar*>> rows(dims.size());
  for (const auto& b : bars)
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] == b.bar.dim) rows[i].push_back(&b);
  for (auto& r : rows)
    std::stable_sort(r.begin(), r.end(),
                     [](const LocalizedBar* a, const LocalizedBar* b) { return bar_less(a->bar, b->bar); });

  std::string body;
  double y = top;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const char* color = palette[static_cast<std::size_t>(dims[i]) % std::size(palette)];
    body += "<text x=\"8\" y=\"" + fixed(y + row_h) + "\" font-size=\"12\" fill=\"" + color + "\">H" +
            std::to_string(dims[i]) + "</text>\n";
    for (const LocalizedBar* b : rows[i]) {
      y += row_h;
      const double x1 = x_of(b->bar.birth);
      const double x2 = b->bar.essential() ? x_end : x_of(b->bar.death);
      body += "<line x1=\"" + fixed(x1) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(x2) + "\" y2=\"" +
              fixed(y) + "\" stroke=\"" + color + "\" stroke-width=\"4\"/>\n";
    }
    y += gap;
  }
  const double axis_y = y + 4.0;
  const double height = axis_y + 40.0;

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(width) + "\" height=\"" +
         fixed(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(left) + "\" y=\"20\" font-size=\"14\">" + xml_escape(title) + "</text>\n";
  svg += body;
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(axis_y) + "\" x2=\"" + fixed(x_end) + "\" y2=\"" +
         fixed(axis_y) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    const double x = x_of(v);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(axis_y) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
           fixed(axis_y + 5.0) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(axis_y + 18.0) +
           "\" font-size=\"10\" text-anchor=\"middle\">" + io::format_real(v) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace sftd::report

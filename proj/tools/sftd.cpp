// sftd: compare scalar functions on lattices and graphs by topology divergence.
//
// Exit codes: 0 success, 1 invalid arguments or input, 2 file errors
// (missing, unreadable, malformed or unwritable), 3 gradient check failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sftd/divergence.hpp"
#include "sftd/io.hpp"
#include "sftd/metrics.hpp"
#include "sftd/report.hpp"
#include "sftd/synth.hpp"

namespace {

using namespace sftd;
using report::Json;

struct GradcheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Either two lattice files or a graph with two value files.
struct Inputs {
  std::string f, g;
  std::string edges, fvals, gvals;

  void add_to(CLI::App* cmd, bool need_g) {
    cmd->add_option("--f", f, "field f (.npy or .csv)");
    if (need_g) cmd->add_option("--g", g, "field g (.npy or .csv)");
    cmd->add_option("--edges", edges, "graph edge list csv (u,v per line)");
    cmd->add_option("--fvals", fvals, "graph vertex values of f");
    if (need_g) cmd->add_option("--gvals", gvals, "graph vertex values of g");
  }
  bool graph() const { return !edges.empty(); }
  void check(bool need_g) const {
    if (graph()) {
      if (fvals.empty() || (need_g && gvals.empty()))
        throw std::invalid_argument(need_g ? "--edges needs --fvals and --gvals" : "--edges needs --fvals");
      if (!f.empty() || !g.empty()) throw std::invalid_argument("give either lattice fields or a graph, not both");
    } else if (f.empty() || (need_g && g.empty())) {
      throw std::invalid_argument(need_g ? "--f and --g are required" : "--f is required");
    }
  }
};

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed degree list '" + text + "'");
    }
  }
  if (dims.empty()) throw std::invalid_argument("empty degree list");
  return dims;
}

// "a,b;c,d" -> {{a,b},{c,d}}
std::vector<std::vector<double>> parse_points(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    if (row.empty()) continue;
    std::vector<double> p;
    std::stringstream cols(row);
    std::string tok;
    while (std::getline(cols, tok, ',')) p.push_back(io::parse_real(tok));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> parse_shape(const std::string& text) {
  std::vector<std::size_t> shape;
  for (int d : parse_dims(text)) {
    if (d <= 0) throw std::invalid_argument("shape extents must be positive");
    shape.push_back(static_cast<std::size_t>(d));
  }
  return shape;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
  Inputs in;
  std::string dims = "0";
  double p = 1.0;
  bool sym = false;
  std::string out, points, points_reverse, svg;
  bool timing = false;
};

void run_compare(const CompareOpts& o) {
  o.in.check(true);
  SftdConfig config{parse_dims(o.dims), o.p, o.sym};
  const auto start = std::chrono::steady_clock::now();
  report::CompareReport rep;
  if (o.in.graph()) {
    const auto f = io::load_graph_field(o.in.edges, o.in.fvals);
    const auto g = io::load_graph_field(o.in.edges, o.in.gvals);
    rep = report::compare(f, g, config);
  } else {
    const auto f = io::load_field(o.in.f);
    const auto g = io::load_field(o.in.g);
    if (f.shape() != g.shape()) throw std::invalid_argument("incompatible shapes: f and g differ");
    rep = report::compare(f, g, config);
  }
  if (o.timing)
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  emit(o.out, report::dump(report::to_json(rep)));
  if (!o.points.empty()) io::write_file(o.points, report::points_csv(rep.forward));
  if (!o.points_reverse.empty()) io::write_file(o.points_reverse, report::points_csv(rep.reverse));
  if (!o.svg.empty())
    io::write_file(o.svg, report::barcode_svg(rep.forward, rep.config.dims, "F-Cross-Barcode (f, g)"));
}

// ---------------------------------------------------------------- barcode

struct BarcodeOpts {
  Inputs in;
  std::string dims = "0";
  std::string out, svg;
};

void run_barcode(const BarcodeOpts& o) {
  o.in.check(false);
  const auto dims = parse_dims(o.dims);
  const auto rep = o.in.graph() ? report::barcode(io::load_graph_field(o.in.edges, o.in.fvals), dims)
                                : report::barcode(io::load_field(o.in.f), dims);
  emit(o.out, report::dump(report::to_json(rep)));
  if (!o.svg.empty()) io::write_file(o.svg, report::barcode_svg(rep.bars, rep.dims, "Barcode"));
}

// -------------------------------------------------------------- gradcheck

struct GradcheckOpts {
  Inputs in;
  std::string dims = "0,1";
  double p = 2.0;
  bool sym = false;
  double eps = 1e-5;
  double perturb = 1e-3;
  int trials = 5;
  std::uint64_t seed = 0;
  std::string out;
};

// Separates exactly tied values of the concatenation f ++ g by multiples of
// 4 eps. Returns whether anything moved.
bool jitter(std::vector<double>& f, std::vector<double>& g, double eps) {
  std::map<double, int> seen;
  bool moved = false;
  for (auto* vec : {&f, &g})
    for (double& x : *vec) {
      const int k = seen[x]++;
      if (k > 0) {
        x += 4.0 * eps * k;
        moved = true;
      }
    }
  return moved;
}

struct Evaluator {
  std::function<SftdGradient(const std::vector<double>&, const std::vector<double>&)> gradient;
  std::function<double(const std::vector<double>&, const std::vector<double>&)> value;
};

void run_gradcheck(const GradcheckOpts& o) {
  o.in.check(true);
  if (!(o.eps > 0.0)) throw std::invalid_argument("--eps must be positive");
  if (o.trials < 1) throw std::invalid_argument("--trials must be at least 1");
  SftdConfig config{parse_dims(o.dims), o.p, o.sym};
  config.validate();

  std::vector<double> f0, g0;
  Evaluator eval;
  std::optional<GraphField> topo;
  std::vector<std::size_t> shape;
  if (o.in.graph()) {
    const auto f = io::load_graph_field(o.in.edges, o.in.fvals);
    const auto g = io::load_graph_field(o.in.edges, o.in.gvals);
    topo = f;
    f0.assign(f.values().begin(), f.values().end());
    g0.assign(g.values().begin(), g.values().end());
    eval.gradient = [&](const auto& a, const auto& b) {
      return sftd_gradient(topo->with_values(a), topo->with_values(b), config);
    };
    eval.value = [&](const auto& a, const auto& b) {
      return sftd::sftd(topo->with_values(a), topo->with_values(b), config).total;
    };
  } else {
    const auto f = io::load_field(o.in.f);
    const auto g = io::load_field(o.in.g);
    if (f.shape() != g.shape()) throw std::invalid_argument("incompatible shapes: f and g differ");
    shape = f.shape();
    f0.assign(f.values().begin(), f.values().end());
    g0.assign(g.values().begin(), g.values().end());
    eval.gradient = [&](const auto& a, const auto& b) {
      return sftd_gradient(ScalarField(shape, a), ScalarField(shape, b), config);
    };
    eval.value = [&](const auto& a, const auto& b) { return sftd::sftd(ScalarField(shape, a), ScalarField(shape, b), config).total; };
  }

  Json doc;
  doc["config"] = {{"dims", config.degrees}, {"p", o.p}, {"symmetric", o.sym}, {"eps", o.eps},
                   {"perturb", o.perturb}, {"trials", o.trials}, {"seed", o.seed}};
  if (f0 == g0) {
    doc["vacuous"] = true;
    doc["jitter"] = false;
    doc["checked"] = 0;
    doc["max_rel_error"] = 0.0;
    doc["pass"] = true;
    doc["note"] = "f equals g: the divergence and its gradient vanish identically";
    emit(o.out, report::dump(doc));
    return;
  }

  const bool jittered = jitter(f0, g0, o.eps);
  doc["vacuous"] = false;
  doc["jitter"] = jittered;
  if (jittered) doc["note"] = "tied input values were separated by multiples of 4*eps before checking";

  synth::Rng rng(o.seed);
  double max_err = 0.0;
  std::size_t checked = 0;
  for (int t = 0; t < o.trials; ++t) {
    std::vector<double> f = f0, g = g0;
    if (t > 0)
      for (auto* vec : {&f, &g})
        for (double& x : *vec) x += rng.uniform(-o.perturb, o.perturb);
    const auto grad = eval.gradient(f, g);
    for (int side = 0; side < 2; ++side) {
      auto& vec = side == 0 ? f : g;
      const auto& analytic = side == 0 ? grad.gradient.wrt_f : grad.gradient.wrt_g;
      for (std::size_t i = 0; i < vec.size(); ++i) {
        const double saved = vec[i];
        vec[i] = saved + o.eps;
        const double up = eval.value(f, g);
        vec[i] = saved - o.eps;
        const double down = eval.value(f, g);
        vec[i] = saved;
        const double numeric = (up - down) / (2.0 * o.eps);
        const auto it = analytic.find(static_cast<Index>(i));
        const double a = it == analytic.end() ? 0.0 : it->second;
        const double err = std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
        max_err = std::max(max_err, err);
        ++checked;
      }
    }
  }
  const bool pass = max_err <= 1e-4;
  doc["checked"] = checked;
  doc["max_rel_error"] = max_err;
  doc["pass"] = pass;
  emit(o.out, report::dump(doc));
  if (!pass) throw GradcheckFailed("gradient check failed: max relative error " + io::format_real(max_err));
}

// ------------------------------------------------------------------ synth

struct SynthOpts {
  std::uint64_t seed = 0;
  std::string out;
  // minima
  std::string shape = "64,64", centers;
  std::size_t count = 3;
  double depth = 1.0, sigma = 4.0;
  int mirror = -1;
  // lattice
  std::size_t rows = 3, cols = 3, cell = 4;
  std::string defects;
  // spheres
  std::size_t grid = 32;
  double r_inner = 0.2, r_outer = 0.4, shell_width = 0.05;
  std::string bridge = "above";
  // ws-graph
  std::size_t n = 30, k_ring = 4;
  double beta = 0.3;
  std::string values;
};

void run_minima(const SynthOpts& o) {
  const auto shape = parse_shape(o.shape);
  std::vector<std::vector<double>> centers;
  if (!o.centers.empty()) {
    centers = parse_points(o.centers);
  } else {
    synth::Rng rng(o.seed);
    for (std::size_t c = 0; c < o.count; ++c) {
      std::vector<double> x;
      for (auto d : shape) x.push_back(static_cast<double>(rng.below(d)));
      centers.push_back(std::move(x));
    }
  }
  if (o.mirror >= 0) {
    const auto axis = static_cast<std::size_t>(o.mirror);
    if (axis >= shape.size()) throw std::invalid_argument("--mirror axis out of range");
    for (auto& c : centers)
      if (axis < c.size()) c[axis] = static_cast<double>(shape[axis] - 1) - c[axis];
  }
  io::save_field(synth::gaussian_minima_field(shape, centers, o.depth, o.sigma), o.out);
}

void run_lattice(const SynthOpts& o) {
  std::vector<std::pair<std::size_t, std::size_t>> defects;
  for (const auto& p : parse_points(o.defects)) {
    if (p.size() != 2 || p[0] < 0 || p[1] < 0 || p[0] != std::floor(p[0]) || p[1] != std::floor(p[1]))
      throw std::invalid_argument("defects are row,col pairs of non-negative integers");
    defects.emplace_back(static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1]));
  }
  io::save_field(synth::lattice_defect_field(o.rows, o.cols, o.cell, defects), o.out);
}

void run_spheres(const SynthOpts& o) {
  synth::BridgePosition where;
  if (o.bridge == "above")
    where = synth::BridgePosition::above;
  else if (o.bridge == "below")
    where = synth::BridgePosition::below;
  else
    throw std::invalid_argument("--bridge must be 'above' or 'below'");
  io::save_field(synth::spheres_bridge_field(o.grid, o.r_inner, o.r_outer, o.shell_width, where), o.out);
}

void run_ws(const SynthOpts& o) {
  synth::Rng rng(o.seed);
  const auto graph = synth::watts_strogatz(o.n, o.k_ring, o.beta, rng);
  io::write_file(o.out, io::encode_edges_csv(graph));
  if (!o.values.empty()) {
    auto stream = synth::Rng(o.seed).split(1);
    std::vector<double> v(o.n);
    for (double& x : v) x = stream.uniform();
    io::write_file(o.values, io::encode_values_csv(v));
  }
}

// ----------------------------------------------------------------- eigmap

struct EigmapOpts {
  std::string edges, dims = "0,1", out, svg, eigenvalues;
  double p = 1.0;
};

std::string heatmap_svg(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  const double cell = 16.0;
  double hi = 0.0;
  for (const auto& r : m)
    for (double x : r) hi = std::max(hi, x);
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  const auto side = std::to_string(static_cast<int>(cell * static_cast<double>(n)));
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + side + "\" height=\"" + side + "\">\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int shade = hi > 0.0 ? static_cast<int>(std::lround(255.0 * (1.0 - m[i][j] / hi))) : 255;
      char buf[160];
      std::snprintf(buf, sizeof buf, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"rgb(%d,%d,%d)\"/>\n",
                    static_cast<int>(j) * 16, static_cast<int>(i) * 16, 16, 16, shade, shade, 255);
      svg += buf;
    }
  svg += "</svg>\n";
  return svg;
}

void run_eigmap(const EigmapOpts& o) {
  if (o.edges.empty()) throw std::invalid_argument("--edges is required");
  const auto graph = io::parse_graph(io::read_file(o.edges));
  const std::size_t n = graph.vertex_count();
  const auto pairs = synth::laplacian_eigenvectors(graph);

  SftdConfig config{parse_dims(o.dims), o.p, true};
  std::vector<GraphField> fields;
  for (const auto& e : pairs) fields.push_back(graph.with_values(e.vector));
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = sftd::sftd(fields[i], fields[j], config).total;

  std::string csv;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) csv += (j ? "," : "") + io::format_real(row[j]);
    csv += '\n';
  }
  emit(o.out, csv);
  if (!o.eigenvalues.empty()) {
    std::vector<double> vals;
    for (const auto& e : pairs) vals.push_back(e.value);
    io::write_file(o.eigenvalues, io::encode_values_csv(vals));
  }
  if (!o.svg.empty()) io::write_file(o.svg, heatmap_svg(m));
}

// ------------------------------------------------------------- bottleneck

struct BottleneckOpts {
  std::string a, b;
  int dim = 0;
  double wasserstein = 0.0;
};

void run_bottleneck(const BottleneckOpts& o) {
  auto load = [&](const std::string& path) {
    try {
      return Json::parse(io::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw io::FileError("malformed JSON in '" + path + "': " + e.what());
    }
  };
  const auto da = report::diagram_from_json(load(o.a), o.dim);
  const auto db = report::diagram_from_json(load(o.b), o.dim);
  const double d = o.wasserstein > 0.0 ? wasserstein_distance(da, db, o.wasserstein) : bottleneck_distance(da, db);
  std::cout << io::format_real(d) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology divergence between scalar functions on lattices and graphs"};
  app.require_subcommand(1);

  CompareOpts cmp;
  auto* c = app.add_subcommand("compare", "F-Cross-Barcodes, SFTD and localization of f against g");
  cmp.in.add_to(c, true);
  c->add_option("--dims", cmp.dims, "comma-separated degrees")->capture_default_str();
  c->add_option("--p", cmp.p, "exponent p >= 1")->capture_default_str();
  c->add_flag("--sym", cmp.sym, "report the symmetrized divergence as total");
  c->add_option("--out", cmp.out, "report JSON (default stdout)");
  c->add_option("--points", cmp.points, "localization csv for the (f, g) orientation");
  c->add_option("--points-reverse", cmp.points_reverse, "localization csv for the (g, f) orientation");
  c->add_option("--svg", cmp.svg, "SVG rendering of the (f, g) F-Cross-Barcode");
  c->add_flag("--timing", cmp.timing, "record wall time in the report as timing_ms");

  BarcodeOpts bc;
  auto* b = app.add_subcommand("barcode", "sublevel barcode of a single field");
  bc.in.add_to(b, false);
  b->add_option("--dims", bc.dims, "comma-separated degrees")->capture_default_str();
  b->add_option("--out", bc.out, "barcode JSON (default stdout)");
  b->add_option("--svg", bc.svg, "SVG rendering");

  GradcheckOpts gc;
  auto* gck = app.add_subcommand("gradcheck", "compare the SFTD gradient with central differences");
  gc.in.add_to(gck, true);
  gck->add_option("--dims", gc.dims, "comma-separated degrees")->capture_default_str();
  gck->add_option("--p", gc.p, "exponent p >= 1")->capture_default_str();
  gck->add_flag("--sym", gc.sym, "check the symmetrized divergence");
  gck->add_option("--eps", gc.eps, "finite-difference step")->capture_default_str();
  gck->add_option("--perturb", gc.perturb, "amplitude of the random perturbation per trial")->capture_default_str();
  gck->add_option("--trials", gc.trials, "number of base points (the first is unperturbed)")->capture_default_str();
  gck->add_option("--seed", gc.seed, "perturbation seed")->capture_default_str();
  gck->add_option("--out", gc.out, "report JSON (default stdout)");

  SynthOpts sy;
  auto* s = app.add_subcommand("synth", "synthetic fields and graphs");
  s->require_subcommand(1);
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", sy.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", sy.out, "output path")->required();
  };
  auto* sm = s->add_subcommand("minima", "sum of Gaussian wells");
  common(sm);
  sm->add_option("--shape", sy.shape, "lattice shape")->capture_default_str();
  sm->add_option("--centers", sy.centers, "well centers 'x,y;x,y;...' (default: --count random lattice sites)");
  sm->add_option("--count", sy.count, "number of random wells")->capture_default_str();
  sm->add_option("--depth", sy.depth)->capture_default_str();
  sm->add_option("--sigma", sy.sigma)->capture_default_str();
  sm->add_option("--mirror", sy.mirror, "reflect the centers along this axis");
  auto* sl = s->add_subcommand("lattice", "square lattice of walls with defects");
  common(sl);
  sl->add_option("--rows", sy.rows)->capture_default_str();
  sl->add_option("--cols", sy.cols)->capture_default_str();
  sl->add_option("--cell", sy.cell, "wall pitch")->capture_default_str();
  sl->add_option("--defects", sy.defects, "opened cells 'r,c;r,c;...'");
  auto* ss = s->add_subcommand("spheres", "two concentric spherical shells and a bridge");
  common(ss);
  ss->add_option("--grid", sy.grid)->capture_default_str();
  ss->add_option("--r-inner", sy.r_inner)->capture_default_str();
  ss->add_option("--r-outer", sy.r_outer)->capture_default_str();
  ss->add_option("--shell-width", sy.shell_width)->capture_default_str();
  ss->add_option("--bridge", sy.bridge, "above or below")->capture_default_str();
  auto* sw = s->add_subcommand("ws-graph", "Watts-Strogatz small-world graph");
  common(sw);
  sw->add_option("--n", sy.n)->capture_default_str();
  sw->add_option("--k", sy.k_ring, "ring degree (even)")->capture_default_str();
  sw->add_option("--beta", sy.beta, "rewiring probability")->capture_default_str();
  sw->add_option("--values", sy.values, "also write uniform random vertex values here");

  EigmapOpts em;
  auto* e = app.add_subcommand("eigmap", "pairwise SFTD between Laplacian eigenvectors");
  e->add_option("--edges", em.edges, "graph edge list csv")->required();
  e->add_option("--dims", em.dims, "comma-separated degrees")->capture_default_str();
  e->add_option("--p", em.p, "exponent p >= 1")->capture_default_str();
  e->add_option("--out", em.out, "heatmap csv (default stdout)");
  e->add_option("--svg", em.svg, "heatmap SVG");
  e->add_option("--eigenvalues", em.eigenvalues, "eigenvalues csv, ascending");

  BottleneckOpts bo;
  auto* bn = app.add_subcommand("bottleneck", "distance between two barcode JSON files");
  bn->add_option("--a", bo.a)->required();
  bn->add_option("--b", bo.b)->required();
  bn->add_option("--dim", bo.dim, "degree")->capture_default_str();
  bn->add_option("--wasserstein", bo.wasserstein, "print the q-Wasserstein distance instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 1;
  }

  try {
    if (*c) run_compare(cmp);
    if (*b) run_barcode(bc);
    if (*gck) run_gradcheck(gc);
    if (*sm) run_minima(sy);
    if (*sl) run_lattice(sy);
    if (*ss) run_spheres(sy);
    if (*sw) run_ws(sy);
    if (*e) run_eigmap(em);
    if (*bn) run_bottleneck(bo);
  } catch (const io::FileError& err) {
    std::cerr << "sftd: " << err.what() << '\n';
    return 2;
  } catch (const GradcheckFailed& err) {
    std::cerr << "sftd: " << err.what() << '\n';
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "sftd: " << err.what() << '\n';
    return 1;
  }
  return 0;
}

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sftd/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("sftd_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  // Exit status of `sftd <args>`; stdout goes to out.txt, stderr to err.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string("cd '") + dir.string() + "' && '" SFTD_CLI_PATH "' " + args +
                            " > out.txt 2> err.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name, std::ios::binary) << text;
  }
};

std::vector<std::vector<double>> read_matrix(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("identical inputs give zero divergence and no points") {
  Sandbox box;
  REQUIRE(box.run("synth minima --shape 8,8 --count 3 --seed 5 --out f.npy") == 0);
  REQUIRE(box.run("compare --f f.npy --g f.npy --dims 0,1 --sym --out r.json --points pts.csv") == 0);
  const auto doc = nlohmann::json::parse(box.read("r.json"));
  CHECK(doc["sftd"]["total"].get<double>() == 0.0);
  for (const auto* k : {"0", "1"}) {
    CHECK(doc["sftd"][k]["forward"].get<double>() == 0.0);
    CHECK(doc["sftd"][k]["reverse"].get<double>() == 0.0);
    CHECK(doc["dims"][k].empty());
  }
  CHECK(box.read("pts.csv").empty());
  CHECK_FALSE(doc.contains("timing_ms"));
}

TEST_CASE("compare on a graph") {
  Sandbox box;
  box.write("e.csv", "0,1\n1,2\n2,0\n2,3\n");
  box.write("f.csv", "0\n1\n2\n3\n");
  box.write("g.csv", "3\n2\n1\n0\n");
  REQUIRE(box.run("compare --edges e.csv --fvals f.csv --gvals g.csv --dims 0,1 --out r.json --timing") == 0);
  const auto doc = nlohmann::json::parse(box.read("r.json"));
  CHECK(doc["config"]["domain"] == "graph");
  CHECK(doc.contains("timing_ms"));
  CHECK(doc["sftd"]["total"].get<double>() >= 0.0);
}

TEST_CASE("degree above the lattice dimension is rejected") {
  Sandbox box;
  REQUIRE(box.run("synth minima --shape 4,4,4 --count 2 --seed 1 --out f.npy") == 0);
  CHECK(box.run("compare --f f.npy --g f.npy --dims 5") == 1);
  CHECK(box.read("err.txt").find("exceeds lattice dimension") != std::string::npos);
}

TEST_CASE("constant field has a single essential bar") {
  Sandbox box;
  box.write("c.csv", "shape,3,3\n1;1;1;1;1;1;1;1;1\n");
  REQUIRE(box.run("barcode --f c.csv --dims 0,1 --out b.json") == 0);
  const auto doc = nlohmann::json::parse(box.read("b.json"));
  CHECK(doc["essential"]["0"].size() == 1);
  CHECK(doc["essential"]["1"].empty());
  CHECK(doc["dims"]["0"].empty());
  CHECK(doc["dims"]["1"].empty());
}

TEST_CASE("missing input file exits with 2") {
  Sandbox box;
  CHECK(box.run("compare --f nope.npy --g nope.npy") == 2);
  CHECK(box.run("barcode --f nope.npy") == 2);
}

TEST_CASE("argument errors exit with 1") {
  Sandbox box;
  CHECK(box.run("") == 1);
  CHECK(box.run("compare --bogus") == 1);
  CHECK(box.run("synth minima --shape 4,4") == 1);  // --out is required
  REQUIRE(box.run("synth minima --shape 4,4 --seed 1 --out f.npy") == 0);
  CHECK(box.run("compare --f f.npy --g f.npy --p 0.5") == 1);
}

TEST_CASE("unwritable output is an error") {
  Sandbox box;
  REQUIRE(box.run("synth minima --shape 4,4 --seed 1 --out f.npy") == 0);
  CHECK(box.run("compare --f f.npy --g f.npy --out /nonexistent/dir/r.json") != 0);
  CHECK(box.run("synth minima --shape 4,4 --seed 1 --out /nonexistent/dir/f.npy") != 0);
}

TEST_CASE("synth spheres shape") {
  Sandbox box;
  REQUIRE(box.run("synth spheres --grid 32 --bridge above --out s.npy") == 0);
  const auto f = sftd::io::load_field(box.path("s.npy"));
  CHECK(f.shape() == std::vector<std::size_t>{32, 32, 32});
}

TEST_CASE("synth lattice shape") {
  Sandbox box;
  REQUIRE(box.run("synth lattice --rows 3 --cols 3 --cell 4 --defects 0,0 --out l.npy") == 0);
  CHECK(sftd::io::load_field(box.path("l.npy")).shape() == std::vector<std::size_t>{13, 13});
}

TEST_CASE("synth ws-graph") {
  Sandbox box;
  REQUIRE(box.run("synth ws-graph --n 30 --k 4 --beta 0.2 --seed 9 --out e.csv --values v.csv") == 0);
  const auto g = sftd::io::load_graph_field(box.path("e.csv"), box.path("v.csv"));
  CHECK(g.vertex_count() == 30);
  CHECK(g.edges().size() == 60);
}

TEST_CASE("same seed gives identical bytes") {
  Sandbox box;
  REQUIRE(box.run("synth minima --shape 16,16 --count 4 --seed 11 --out a.npy") == 0);
  REQUIRE(box.run("synth minima --shape 16,16 --count 4 --seed 11 --out b.npy") == 0);
  REQUIRE(box.run("synth minima --shape 16,16 --count 4 --seed 12 --out c.npy") == 0);
  CHECK(box.read("a.npy") == box.read("b.npy"));
  CHECK(box.read("a.npy") != box.read("c.npy"));
  REQUIRE(box.run("synth ws-graph --n 20 --seed 4 --out e1.csv --values v1.csv") == 0);
  REQUIRE(box.run("synth ws-graph --n 20 --seed 4 --out e2.csv --values v2.csv") == 0);
  CHECK(box.read("e1.csv") == box.read("e2.csv"));
  CHECK(box.read("v1.csv") == box.read("v2.csv"));
}

TEST_CASE("eigmap on a ring") {
  Sandbox box;
  std::string ring;
  for (int i = 0; i < 8; ++i) ring += std::to_string(i) + "," + std::to_string((i + 1) % 8) + "\n";
  box.write("ring.csv", ring);
  REQUIRE(box.run("eigmap --edges ring.csv --out heat.csv --eigenvalues ev.csv --svg heat.svg") == 0);
  const auto m = read_matrix(box.read("heat.csv"));
  REQUIRE(m.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    REQUIRE(m[i].size() == 8);
    CHECK(m[i][i] == 0.0);
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(std::abs(m[i][j] - m[j][i]) <= 1e-12);
      CHECK(m[i][j] >= 0.0);
    }
  }
  // Constant eigenvector against the alternating one (both simple).
  CHECK(m[0][7] == doctest::Approx(1.414213562373095).epsilon(1e-9));
  // Partners within the degenerate eigenspaces, as recorded for the basis this
  // solver picks. The two lower pairs are each other's nearest rows; the top
  // pair is not.
  CHECK(m[1][2] == doctest::Approx(0.2887990074635453).epsilon(1e-9));
  CHECK(m[3][4] == doctest::Approx(0.10745197065016243).epsilon(1e-9));
  CHECK(m[5][6] == doctest::Approx(1.1210679974162536).epsilon(1e-9));
  for (std::size_t i : {1, 2, 3, 4}) {
    const std::size_t partner = i % 2 ? i + 1 : i - 1;
    for (std::size_t j = 0; j < 8; ++j)
      if (j != i && j != partner) CHECK(m[i][partner] < m[i][j]);
  }
  const auto ev = read_matrix(box.read("ev.csv"));
  REQUIRE(ev.size() == 8);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(ev[i][0] == doctest::Approx(1.0 - std::cos(2.0 * M_PI * static_cast<double>((i + 1) / 2) / 8.0)).epsilon(1e-9));
  CHECK(box.read("heat.svg").find("<svg") != std::string::npos);
}

TEST_CASE("eigmap rejects an isolated vertex") {
  Sandbox box;
  box.write("e.csv", "0,1\n2,2\n");
  CHECK(box.run("eigmap --edges e.csv") != 0);
}

TEST_CASE("bottleneck") {
  Sandbox box;
  box.write("a.json", R"({"dims": {"0": [[0, 2, [0], [1]]]}})");
  box.write("empty.json", R"({"dims": {}})");
  box.write("bad.json", R"({"dims": {"0": [[0]]}})");
  box.write("broken.json", "{");
  REQUIRE(box.run("bottleneck --a a.json --b a.json --dim 0") == 0);
  CHECK(std::stod(box.read("out.txt")) == 0.0);
  REQUIRE(box.run("bottleneck --a a.json --b empty.json --dim 0") == 0);
  CHECK(std::stod(box.read("out.txt")) == 1.0);
  REQUIRE(box.run("bottleneck --a a.json --b empty.json --dim 1") == 0);
  CHECK(std::stod(box.read("out.txt")) == 0.0);
  REQUIRE(box.run("bottleneck --a a.json --b empty.json --dim 0 --wasserstein 2") == 0);
  CHECK(std::stod(box.read("out.txt")) == doctest::Approx(1.0));
  CHECK(box.run("bottleneck --a a.json --b bad.json") != 0);
  CHECK(box.run("bottleneck --a a.json --b broken.json") != 0);
  CHECK(box.run("bottleneck --a a.json --b missing.json") == 2);
}

TEST_CASE("bottleneck reads compare reports") {
  Sandbox box;
  REQUIRE(box.run("synth minima --shape 8,8 --count 3 --seed 1 --out f.npy") == 0);
  REQUIRE(box.run("synth minima --shape 8,8 --count 3 --seed 2 --out g.npy") == 0);
  REQUIRE(box.run("compare --f f.npy --g g.npy --out r.json") == 0);
  REQUIRE(box.run("bottleneck --a r.json --b r.json") == 0);
  CHECK(std::stod(box.read("out.txt")) == 0.0);
}

TEST_CASE("gradcheck") {
  Sandbox box;
  REQUIRE(box.run("synth minima --shape 8,8 --count 3 --seed 1 --out f.npy") == 0);
  REQUIRE(box.run("synth minima --shape 8,8 --count 3 --seed 2 --out g.npy") == 0);
  REQUIRE(box.run("gradcheck --f f.npy --g g.npy --out gc.json") == 0);
  auto doc = nlohmann::json::parse(box.read("gc.json"));
  CHECK(doc["pass"].get<bool>());
  CHECK(doc["max_rel_error"].get<double>() <= 1e-4);
  CHECK(doc["checked"].get<int>() == 5 * 2 * 64);

  REQUIRE(box.run("gradcheck --f f.npy --g f.npy --out same.json") == 0);
  doc = nlohmann::json::parse(box.read("same.json"));
  CHECK(doc["vacuous"].get<bool>());
  CHECK(doc["pass"].get<bool>());

  box.write("t1.csv", "shape,2,2\n0;1;1;2\n");
  box.write("t2.csv", "shape,2,2\n2;1;1;0\n");
  REQUIRE(box.run("gradcheck --f t1.csv --g t2.csv --out tie.json") == 0);
  doc = nlohmann::json::parse(box.read("tie.json"));
  CHECK(doc["jitter"].get<bool>());
  CHECK(doc["note"].get<std::string>().find("4*eps") != std::string::npos);
}

TEST_CASE("compare writes svg and both point files") {
  Sandbox box;
  REQUIRE(box.run("synth lattice --rows 3 --cols 3 --cell 4 --defects 0,0 --out a.npy") == 0);
  REQUIRE(box.run("synth lattice --rows 3 --cols 3 --cell 4 --defects 2,1 --out b.npy") == 0);
  REQUIRE(box.run("compare --f a.npy --g b.npy --dims 1 --points p.csv --points-reverse q.csv --svg s.svg") == 0);
  const auto doc = nlohmann::json::parse(box.read("out.txt"));
  CHECK(doc["sftd"]["1"]["forward"].get<double>() == 1.0);
  CHECK(doc["sftd"]["1"]["reverse"].get<double>() == 1.0);
  CHECK(box.read("p.csv").find("1,birth,") == 0);
  CHECK(box.read("q.csv").find("1,birth,") == 0);
  CHECK(box.read("s.svg").find("<svg") != std::string::npos);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nematic/config.hpp"
#include "nematic/io.hpp"
#include "nematic/mesh.hpp"
#include "oracle.hpp"

using namespace nematic;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
  const fs::path p = fs::temp_directory_path() /
                     (std::string("nematic_test_") + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config defaults, errors, round trip") {
  const RunConfig def = parse_config("{}");
  CHECK(def.nx == 41);
  CHECK(def.k == 1e-3);
  CHECK(def.eps == 0.05);
  CHECK(def.experiment == "annihilation");
  CHECK(def.snapshot_times == std::vector<double>{0.1, 0.2, 0.3, 0.6});

  CHECK_THROWS_WITH_AS(parse_config(R"({"k": -1})"),
                       doctest::Contains("k"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"timestep": 1e-3})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"nx": "many"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("{"), std::invalid_argument);

  RunConfig c = default_convergence_config();
  c.lin_tol = 3.25e-11;
  c.output_dir = "elsewhere";
  c.snapshot_times = {0.004, 0.016};
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(serialize_config(back) == serialize_config(c));
  CHECK(back.lin_tol == c.lin_tol);
  CHECK(back.nx == c.nx);
  CHECK(back.x1 == c.x1);
  CHECK(back.experiment == "convergence");
}

TEST_CASE("energy csv write and read") {
  const fs::path dir = temp_dir("csv");
  std::vector<EnergyRecord> h(1);
  h[0].step = 0;
  h[0].time = 0.0;
  h[0].kinetic = 1.0 / 3.0;
  h[0].elastic = 0.1;
  h[0].penalty = 2e-17;
  h[0].total = h[0].kinetic + h[0].elastic + h[0].penalty;
  h[0].grad_u_norm = 0.5;
  h[0].w_norm = 0.25;
  h[0].d_inf = 1.0;
  const fs::path f = dir / "energies.csv";
  write_energy_csv(h, f);

  const std::string text = slurp(f);
  CHECK(text.substr(0, 4) == "step");
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find('\r') == std::string::npos);

  const std::vector<EnergyRecord> back = read_energy_csv(f);
  REQUIRE(back.size() == 1);
  CHECK(back[0].step == 0);
  CHECK(back[0].kinetic == h[0].kinetic);  // exact round trip
  CHECK(back[0].penalty == h[0].penalty);
  CHECK(back[0].total == h[0].total);

  CHECK_THROWS(write_energy_csv({}, dir / "empty.csv"));
  fs::remove_all(dir);
}

TEST_CASE("vtk snapshot layout") {
  const Mesh mesh = generate_rectangle_mesh(0, 1, 0, 1, 1, 1);
  SimState s;
  s.d = P1VectorField::zeros(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    s.d.set(v, {0.5 + 0.125 * v, -0.25 * v});
  s.u_tilde = P1VectorField::zeros(mesh);
  s.p = P1ScalarField::zeros(mesh);
  s.p.values[2] = 0.75;
  s.w = P0VectorField::zeros(mesh);
  s.w.set(1, {2.0, -3.0});

  const fs::path dir = temp_dir("vtk");
  const fs::path f = dir / "snap.vtk";
  write_vtk_snapshot(mesh, s, f);
  const std::string text = slurp(f);
  CHECK(text.rfind("# vtk DataFile Version 3.0", 0) == 0);
  CHECK(text.find("POINTS 4 double") != std::string::npos);
  CHECK(text.find("CELLS 2") != std::string::npos);
  CHECK(text.find("CELL_TYPES 2") != std::string::npos);
  CHECK(text.find("\n5\n5\n") != std::string::npos);  // triangle type
  CHECK(text.find("POINT_DATA 4") != std::string::npos);
  CHECK(text.find("VECTORS director double") != std::string::npos);
  CHECK(text.find("VECTORS velocity_tilde double") != std::string::npos);
  CHECK(text.find("SCALARS pressure double") != std::string::npos);
  CHECK(text.find("CELL_DATA 2") != std::string::npos);
  CHECK(text.find("VECTORS w double") != std::string::npos);
  CHECK(text.find("0.875") != std::string::npos);  // d at vertex 3, x comp
  CHECK(text.find("0.75") != std::string::npos);
  CHECK(text.find("-3") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("output lock is exclusive") {
  const fs::path dir = temp_dir("lock");
  const fs::path out = dir / "run";
  {
    OutputLock lock(out);
    CHECK(fs::exists(out));
    CHECK_THROWS_AS(OutputLock second(out), std::runtime_error);
  }
  // released on destruction
  OutputLock again(out);
  fs::remove_all(dir);
}

TEST_CASE("energy csv is byte-identical across identical runs") {
  const Mesh mesh = generate_rectangle_mesh(-1, 1, -1, 1, 6, 6);
  SimParams params;
  params.eps = 0.25;
  const fs::path dir = temp_dir("repro");
  std::array<fs::path, 2> files = {dir / "a.csv", dir / "b.csv"};
  for (const fs::path& f : files) {
    const Stepper stepper(mesh, params);
    SimState s = stepper.initialize(
        [](double x, double y) {
          const Vec2 v = {x * x + y * y - 0.25, y};
          return (1.0 / std::sqrt(dot(v, v) + 0.0025)) * v;
        },
        [](double, double) { return Vec2{0, 0}; });
    std::vector<EnergyRecord> h;
    h.push_back(energies(s, mesh, params));
    for (int n = 0; n < 10; ++n) {
      stepper.advance(s);
      h.push_back(energies(s, mesh, params));
    }
    write_energy_csv(h, f);
  }
  CHECK(slurp(files[0]) == slurp(files[1]));
  fs::remove_all(dir);
}

}  // TEST_SUITE

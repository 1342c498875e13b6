#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "nematic/mesh.hpp"
#include "nematic/quadrature.hpp"

using namespace nematic;

TEST_SUITE("mesh") {

TEST_CASE("unit square, single cell") {
  const Mesh m = generate_rectangle_mesh(0, 1, 0, 1, 1, 1);
  CHECK(m.n_vertices() == 4);
  CHECK(m.n_triangles() == 2);
  const MeshMetrics mm = mesh_metrics(m);
  CHECK(mm.total_area == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mm.h_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("2x1 grid of a 2x1 rectangle") {
  const Mesh m = generate_rectangle_mesh(0, 2, 0, 1, 2, 1);
  CHECK(m.n_vertices() == 6);
  CHECK(m.n_triangles() == 4);
  for (int e = 0; e < 4; ++e)
    CHECK(m.element_area[e] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("41x41 mesh h matches the target resolution") {
  const Mesh m = generate_rectangle_mesh(-1, 1, -1, 1, 41, 41);
  CHECK(m.h_max == doctest::Approx(std::sqrt(2.0) * 2.0 / 41).epsilon(1e-14));
  CHECK(m.h_max == doctest::Approx(0.069007).epsilon(1e-4));
  CHECK(mesh_metrics(m).total_area == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("invalid requests rejected") {
  CHECK_THROWS_AS(generate_rectangle_mesh(0, 1, 0, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_rectangle_mesh(0, 1, 0, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_rectangle_mesh(1, 0, 0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("geometry invariants on several grids") {
  for (auto [nx, ny] : {std::pair{1, 1}, {2, 2}, {5, 3}, {7, 7}}) {
    const Mesh m = generate_rectangle_mesh(-1, 2, 0.5, 2, nx, ny);
    double area = 0.0;
    for (int e = 0; e < m.n_triangles(); ++e) {
      CHECK(m.element_area[e] > 0.0);
      area += m.element_area[e];
      Vec2 sum = {0, 0};
      for (int i = 0; i < 3; ++i) sum = sum + m.hat_grad(e, i);
      CHECK(std::abs(sum[0]) < 1e-13);
      CHECK(std::abs(sum[1]) < 1e-13);
    }
    CHECK(area == doctest::Approx(3.0 * 1.5).epsilon(1e-12));

    // each boundary edge in exactly one triangle, interior edges in two
    std::map<std::pair<int, int>, int> edge_count;
    for (int e = 0; e < m.n_triangles(); ++e) {
      const int* t = m.tri(e);
      for (int i = 0; i < 3; ++i) {
        int a = t[i], b = t[(i + 1) % 3];
        if (a > b) std::swap(a, b);
        edge_count[{a, b}]++;
      }
    }
    for (const auto& [edge, count] : edge_count) {
      const bool boundary_edge =
          m.boundary_vertex[edge.first] && m.boundary_vertex[edge.second];
      if (count == 1) CHECK(boundary_edge);
      CHECK((count == 1 || count == 2));
    }

    int nb = 0;
    for (int v = 0; v < m.n_vertices(); ++v) nb += m.boundary_vertex[v];
    CHECK(nb == 2 * (nx + ny));
  }
}

TEST_CASE("quadrature exactness on the reference triangle") {
  // reference triangle (0,0)-(1,0)-(0,1): x = l1, y = l2
  auto integrate = [](const QuadratureRule& r, int px, int py) {
    double acc = 0.0;
    for (int q = 0; q < r.n_points(); ++q)
      acc += r.weights[q] * std::pow(r.bary(q)[1], px) * std::pow(r.bary(q)[2], py);
    return 0.5 * acc;  // reference area
  };
  auto exact = [](int px, int py) {
    // int_T x^p y^q = p! q! / (p+q+2)!
    auto fact = [](int n) { double f = 1; for (int i = 2; i <= n; ++i) f *= i; return f; };
    return fact(px) * fact(py) / fact(px + py + 2);
  };
  for (int degree : {1, 2, 4}) {
    const QuadratureRule r = quadrature(degree);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int px = 0; px <= degree; ++px)
      for (int py = 0; py + px <= degree; ++py)
        CHECK(integrate(r, px, py) ==
              doctest::Approx(exact(px, py)).epsilon(1e-13));
  }
  CHECK(integrate(quadrature(2), 1, 1) == doctest::Approx(1.0 / 24).epsilon(1e-14));
  CHECK(integrate(quadrature(4), 4, 0) == doctest::Approx(1.0 / 30).epsilon(1e-13));
  CHECK_THROWS_AS(quadrature(3), std::invalid_argument);
}

}  // TEST_SUITE

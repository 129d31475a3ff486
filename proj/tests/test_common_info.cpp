#include <cmath>
#include <random>

#include "doctest.h"
#include "ucnet/common_info.hpp"
#include "oracles.hpp"

using namespace ucnet;

namespace {

using oracle::gk_brute_force;
using oracle::h2;
using oracle::sparse_random;

// Binary-E Wyner grid for DSBS(0.1): p(e=0) = al, p(x=1|e) = (a0, a1), p(y=1|e) = (b0, b1).
double wyner_dsbs_grid() {
  const double hxy = 1 + h2(0.1);
  double best = hxy;
  for (int i = 1; i < 100; ++i) {
    const double al = i * 0.01;
    for (int j = 0; j <= 100; ++j) {
      const double a0 = j * 0.01;
      const double a1 = (0.5 - al * a0) / (1 - al);
      if (a1 < 0 || a1 > 1) continue;
      // al b0 + (1-al) b1 = 0.5 ; al a0 b0 + (1-al) a1 b1 = 0.45
      const double det = al * (1 - al) * (a1 - a0);
      if (std::abs(det) < 1e-12) continue;
      const double b0 = (0.5 * (1 - al) * a1 - 0.45 * (1 - al)) / det;
      const double b1 = (al * 0.45 - al * a0 * 0.5) / det;
      if (b0 < 0 || b0 > 1 || b1 < 0 || b1 > 1) continue;
      const double cond = al * (h2(a0) + h2(b0)) + (1 - al) * (h2(a1) + h2(b1));
      best = std::min(best, hxy - cond);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("gacs-korner on reference distributions") {
  CHECK(gacs_korner(equal_uniform()).gk_value == doctest::Approx(1.0));
  CHECK(gacs_korner(dsbs(0.1)).gk_value == 0.0);
  std::vector<std::vector<double>> blocks(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) blocks[i][j] = blocks[2 + i][2 + j] = 0.125;
  auto d = gacs_korner(JointDistribution::from_rows(blocks));
  CHECK(d.gk_value == doctest::Approx(1.0));
  CHECK(d.component_of_x[0] == d.component_of_y[1]);
  CHECK(d.component_of_x[2] != d.component_of_x[0]);
}

TEST_CASE("gacs-korner matches brute-force common functions") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    auto p = sparse_random(rng);
    auto d = gacs_korner(p);
    CHECK(std::abs(d.gk_value - gk_brute_force(p)) < 1e-12);
    for (std::size_t x = 0; x < p.nx(); ++x)
      for (std::size_t y = 0; y < p.ny(); ++y)
        if (p(x, y) > kSupportThreshold) CHECK(d.component_of_x[x] == d.component_of_y[y]);
  }
}

TEST_CASE("gacs-korner discontinuity") {
  for (double eps : {1e-6, 1e-3, 0.1}) CHECK(gacs_korner(dsbs(eps)).gk_value == 0.0);
  CHECK(gacs_korner(dsbs(0.0)).gk_value == doctest::Approx(1.0));
}

TEST_CASE("wyner common information") {
  WynerOptions o;
  o.restarts = 16;
  CHECK(wyner(independent_uniform(), o).value < 1e-3);
  auto eq = wyner(equal_uniform(), o);
  CHECK(eq.value == doctest::Approx(1.0).epsilon(1e-3));

  auto p = dsbs(0.1);
  const double grid = wyner_dsbs_grid();
  const double a1 = (1 - std::sqrt(1 - 2 * 0.1)) / 2;
  const double closed = 1 + h2(0.1) - 2 * h2(a1);
  CHECK(grid >= closed - 1e-9);
  CHECK(grid - closed < 2e-2);

  o.e_size = 2;
  auto w2 = wyner(p, o);
  CHECK(w2.markov_residual <= o.tol);
  CHECK(w2.value <= grid + 1e-6);
  CHECK(w2.value >= closed - 1e-3);

  o.e_size = 0;
  auto w = wyner(p, o);
  CHECK(w.value >= w.lower_bound - 1e-6);
  CHECK(w.value <= measures(p).h_xy + 1e-9);
  CHECK(std::abs(w.value - closed) < 5e-3);
}

TEST_CASE("wyner is deterministic and thread-independent") {
  WynerOptions o;
  o.restarts = 8;
  o.seed = 99;
  auto a = wyner(dsbs(0.2), o, Exec::Parallel);
  auto b = wyner(dsbs(0.2), o, Exec::Serial);
  CHECK(a.value == b.value);
  CHECK(a.markov_residual == b.markov_residual);
  CHECK(a.certificate.e_size() == b.certificate.e_size());
}

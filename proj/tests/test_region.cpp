#include <cmath>
#include <random>

#include "doctest.h"
#include "ucnet/error.hpp"
#include "ucnet/region.hpp"

using namespace ucnet;

namespace {

double h2(double a) { return -a * std::log2(a) - (1 - a) * std::log2(1 - a); }

RegionOptions quick() {
  RegionOptions o;
  o.restarts = 16;
  return o;
}

WeightVector random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  WeightVector l{g(rng), g(rng), g(rng), g(rng)};
  const double s = l[0] + l[1] + l[2] + l[3];
  if (s > 0) l[3] -= s + std::abs(g(rng));
  return l;
}

}  // namespace

TEST_CASE("family points") {
  auto p = dsbs(0.1);
  const double h = h2(0.1);
  FamilySpec s;
  s.family = 2;
  auto u = family_point(p, s);
  CHECK(u.u1 == doctest::Approx(h));
  CHECK(u.u2 == doctest::Approx(h));
  CHECK(u.u3 == 0);
  s.family = 1;
  s.channel = AuxiliaryChannel::constant(2, 2);
  u = family_point(p, s);
  CHECK(u.u1 == 0);
  CHECK(u.u4 == 0);
  s.family = 4;
  s.f = h;
  u = family_point(p, s);
  CHECK(u.u1 == doctest::Approx(h));
  CHECK(u.u3 == doctest::Approx(h));
  CHECK(u.u4 == 0);
  s.f = 2.0;
  CHECK_THROWS_AS(family_point(p, s), Error);
  s.family = 1;
  s.channel.reset();
  CHECK_THROWS_AS(family_point(p, s), Error);
}

TEST_CASE("support function closed forms") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  CHECK(support_function(p, {1, 0, 0, -1}).value == doctest::Approx(m.h_xy));
  CHECK(support_function(p, {1, 0, 0, 0}).infinite);
  CHECK(support_function(p, {1, 1, 1, 1}).infinite);
  CHECK(support_function(p, {-1, -1, -1, -1}).value == 0);
  CHECK(support_function(p, {-1, 1, 0, 0}).value == 0);
  CHECK(support_function(p, {-1, 2, 0, -1}).value == doctest::Approx(m.h_y_given_x));
  auto s = support_function(p, {1, -1, 1, -1});
  CHECK(s.value == doctest::Approx(m.h_x + m.h_x_given_y));
  CHECK(s.orthant == "+-+");
}

TEST_CASE("support function is positively homogeneous") {
  auto p = JointDistribution::from_rows({{0.3, 0.1, 0.05}, {0.05, 0.2, 0.05}, {0.0, 0.1, 0.15}});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    auto l = random_direction(rng);
    const double a = 0.1 + 3.0 * static_cast<double>(rng() % 1000) / 1000.0;
    auto s1 = support_function(p, l, quick());
    auto s2 = support_function(p, {a * l[0], a * l[1], a * l[2], a * l[3]}, quick());
    CHECK(std::abs(a * s1.value - s2.value) < 1e-9 * (1 + std::abs(s2.value)));
  }
}

TEST_CASE("sampled vectors respect the support function") {
  std::mt19937_64 rng(9);
  for (const auto& p : {dsbs(0.1), independent_uniform(), equal_uniform()}) {
    auto m = measures(p);
    auto samples = sample_region(p, 2, 300, 4, 17);
    std::vector<WeightVector> dirs;
    std::vector<double> sv;
    for (int k = 0; k < 30; ++k) {
      dirs.push_back(random_direction(rng));
      sv.push_back(support_function(p, dirs.back(), quick()).value);
    }
    for (const auto& u : samples) {
      CHECK(sampler_invariant_violation(m, u) <= 1e-9);
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const auto& l = dirs[k];
        CHECK(l[0] * u.u1 + l[1] * u.u2 + l[2] * u.u3 + l[3] * u.u4 <= sv[k] + 1e-6);
      }
    }
  }
}

TEST_CASE("sampler special kernels and limits") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  // k_size 1 is the constant kernel.
  for (const auto& u : sample_region(p, 1, 8, 1, 0)) CHECK(u.u1 == doctest::Approx(0.0));
  CHECK_THROWS_AS(sample_region(p, 4, 1, 2, 0), Error);
  CHECK_THROWS_AS(sample_region(independent_uniform(4), 3, 1, 300, 0), Error);
  auto a = sample_region(p, 2, 64, 3, 5, Exec::Parallel);
  auto b = sample_region(p, 2, 64, 3, 5, Exec::Serial);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].u1 == b[i].u1);
  (void)m;
}

TEST_CASE("membership certificates") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto r = membership(p, {0.5, 0, 0, 0}, quick());
  CHECK(r.verdict == Verdict::Outside);
  CHECK(r.separator[0] + r.separator[1] + r.separator[2] + r.separator[3] <= 1e-12);
  CHECK(r.margin > 0);

  r = membership(p, {m.h_y_given_x, m.h_y_given_x, 0, 0}, quick());
  CHECK(r.verdict == Verdict::Inside);
  // The certificate reproduces the point.
  Vec4 acc{};
  double wsum = 0;
  for (const auto& [w, spec] : r.combination) {
    auto u = family_point(p, spec).array();
    for (int i = 0; i < 4; ++i) acc[i] += w * u[i];
    wsum += w;
  }
  CHECK(wsum == doctest::Approx(1.0));
  CHECK(std::abs(acc[0] - m.h_y_given_x) <= 1e-4 + 1e-9);
  CHECK(r.combination.size() <= 5);

  CHECK(membership(p, {0, 0, 0, 0}, quick()).verdict == Verdict::Inside);
  CHECK(membership(equal_uniform(), {1, 0, 0, 0}, quick()).verdict == Verdict::Inside);
  CHECK(membership(p, {3, 3, 3, 3}, quick()).verdict == Verdict::Inside);
}

TEST_CASE("independent sources: (a,a,a,0) sits on the fourth family") {
  auto p = independent_uniform();
  for (double a : {0.25, 0.5, 1.0}) CHECK(membership(p, {a, a, a, 0}, quick()).verdict == Verdict::Inside);
  CHECK(membership(p, {1.5, 1.5, 1.5, 0}, quick()).verdict == Verdict::Outside);
}

TEST_CASE("convex combinations of inside points stay inside") {
  auto p = dsbs(0.2);
  auto m = measures(p);
  std::vector<Vec4> pts{{m.h_xy, m.h_y_given_x, m.h_x_given_y, 0},
                        {m.h_y_given_x, m.h_y_given_x, 0, 0},
                        {0.3, 0.3, 0.3, 0.3},
                        {m.h_x, 0, m.h_x_given_y, 0}};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Vec4 mid;
      for (int k = 0; k < 4; ++k) mid[k] = 0.35 * pts[i][k] + 0.65 * pts[j][k];
      CHECK(membership(p, UncertaintyVector::from(pts[i]), quick()).verdict == Verdict::Inside);
      CHECK(membership(p, UncertaintyVector::from(mid), quick()).verdict == Verdict::Inside);
    }
}

TEST_CASE("outer bound") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto r = outer_bound_feasible(p, {m.h_xy, m.h_y_given_x, m.h_x_given_y, 0});
  CHECK(r.feasible);
  CHECK(r.g < 1e-3);
  r = outer_bound_feasible(p, {0, 0, 0, 0});
  CHECK(r.feasible);
  r = outer_bound_feasible(p, {m.h_xy + 1, 0, 0, 0});
  CHECK_FALSE(r.feasible);
  CHECK(r.certified);
  // Family points lie inside Theorem 2's region.
  for (int fam = 2; fam <= 4; ++fam) {
    FamilySpec s;
    s.family = fam;
    s.c = 0.2;
    s.f = 0.3;
    CHECK(outer_bound_feasible(p, family_point(p, s), 1e-4, quick()).feasible);
  }
}

TEST_CASE("positive-sum weights: infinite support, finite value over c = 0 points") {
  auto p = dsbs(0.1);
  auto s = support_function(p, {1, 0, 0, 0});
  CHECK(s.infinite);
  CHECK(s.c0_value == doctest::Approx(1 + h2(0.1)).epsilon(1e-12));
  auto s2 = support_function(p, {0, 1, 0, 0});
  CHECK(s2.infinite);
  CHECK(s2.c0_value == doctest::Approx(measures(p).h_y_given_x).epsilon(1e-12));
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "ucnet/error.hpp"
#include "ucnet/info.hpp"

using namespace ucnet;

namespace {

double h2(double a) { return -a * std::log2(a) - (1 - a) * std::log2(1 - a); }

JointDistribution random_joint(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> p(nx * ny);
  double s = 0;
  for (double& v : p) s += (v = ex(rng));
  for (double& v : p) v /= s;
  std::vector<std::string> xs, ys;
  for (std::size_t i = 0; i < nx; ++i) xs.push_back("x" + std::to_string(i));
  for (std::size_t j = 0; j < ny; ++j) ys.push_back("y" + std::to_string(j));
  return JointDistribution(xs, ys, p);
}

AuxiliaryChannel random_channel(std::mt19937_64& rng, std::size_t nx, std::size_t ny, std::size_t ne) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> k(nx * ny * ne);
  for (double& v : k) v = ex(rng);
  for (std::size_t c = 0; c < nx * ny; ++c) {
    double s = 0;
    for (std::size_t e = 0; e < ne; ++e) s += k[c * ne + e];
    for (std::size_t e = 0; e < ne; ++e) k[c * ne + e] /= s;
  }
  return AuxiliaryChannel(nx, ny, ne, k);
}

}  // namespace

TEST_CASE("entropy of small vectors") {
  CHECK(entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  const double expect = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(entropy(std::vector<double>{0.25, 0.75}) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(entropy(std::vector<double>{0.5, 0.4}), Error);
  CHECK_THROWS_AS(entropy(std::vector<double>{1.2, -0.2}), Error);
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(JointDistribution::from_rows({{0.45, 0.45}, {0.05, -0.05}}), Error);
  CHECK_THROWS_AS(JointDistribution::from_rows({{0.4, 0.45}, {0.05, 0.0}}), Error);
  CHECK_THROWS_AS(JointDistribution::from_rows({{0.5, 0.5}, {0.0}}), Error);
  auto p = JointDistribution::from_rows({{0.5 + 1e-10, 0.0}, {0.0, 0.5}});
  CHECK(p(0, 0) + p(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("measures on reference distributions") {
  auto m = measures(equal_uniform());
  CHECK(m.h_x == doctest::Approx(1));
  CHECK(m.h_xy == doctest::Approx(1));
  CHECK(m.i_xy == doctest::Approx(1));
  CHECK(std::abs(m.h_x_given_y) < 1e-12);

  m = measures(independent_uniform());
  CHECK(m.h_xy == doctest::Approx(2));
  CHECK(std::abs(m.i_xy) < 1e-12);

  m = measures(dsbs(0.1));
  CHECK(m.h_x == doctest::Approx(1));
  CHECK(m.h_y_given_x == doctest::Approx(h2(0.1)).epsilon(1e-12));
  CHECK(m.i_xy == doctest::Approx(1 - h2(0.1)).epsilon(1e-12));
  CHECK(m.h_xy == doctest::Approx(m.h_y + m.h_x_given_y).epsilon(1e-12));
}

TEST_CASE("channel functionals") {
  auto p = dsbs(0.1);
  auto m = measures(p);
  auto f = channel_functionals(p, AuxiliaryChannel::constant(2, 2));
  CHECK(std::abs(f.i_e_xy) < 1e-12);
  CHECK(std::abs(f.i_e_y_given_x) < 1e-12);
  CHECK(f.h_x_given_e == doctest::Approx(m.h_x));

  f = channel_functionals(p, AuxiliaryChannel::reveal_both(2, 2));
  CHECK(f.i_e_xy == doctest::Approx(m.h_xy));
  CHECK(std::abs(f.h_xy_given_e) < 1e-12);

  // E = X: direct table computation.
  f = channel_functionals(p, AuxiliaryChannel::reveal_x(2, 2));
  CHECK(f.i_e_xy == doctest::Approx(1.0));
  CHECK(f.i_e_x_given_y == doctest::Approx(h2(0.1)));
  CHECK(std::abs(f.i_xy_given_e) < 1e-12);
  // E - X - Y Markov, so I(E;XY) = I(E;X|Y) + I(X;Y) - I(X;Y|E) here.
  CHECK(f.i_e_xy == doctest::Approx(f.i_e_x_given_y + m.i_xy - f.i_xy_given_e));

  CHECK_THROWS_AS(channel_functionals(p, AuxiliaryChannel::constant(3, 2)), Error);
}

TEST_CASE("identities hold on random channels") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t nx = 1 + rng() % 4, ny = 1 + rng() % 4, ne = 1 + rng() % 6;
    auto p = random_joint(rng, nx, ny);
    auto ch = random_channel(rng, nx, ny, ne);
    auto m = measures(p);
    auto je = joint_entropies(p, ch.kernel(), ne);
    auto f = channel_functionals(m, je);
    for (double v : {f.i_e_xy, f.i_e_y_given_x, f.i_e_x_given_y, f.h_x_given_e, f.h_y_given_e,
                     f.h_xy_given_e, f.i_xy_given_e})
      CHECK(v >= -1e-10);
    const double i_ey = je.h_e + m.h_y - je.h_ey;
    CHECK(std::abs(f.i_e_xy - (f.i_e_x_given_y + i_ey)) < 1e-10);
    // interaction information: I(X;Y) - I(X;Y|E) = I(E;X) + I(E;Y) - I(E;XY)
    const double i_ex = je.h_e + m.h_x - je.h_ex;
    CHECK(std::abs(m.i_xy - f.i_xy_given_e - (i_ex + i_ey - f.i_e_xy)) < 1e-10);
    const double h_e_given_x = je.h_ex - m.h_x, h_e_given_y = je.h_ey - m.h_y, h_e_given_xy = je.h_exy - m.h_xy;
    CHECK(std::abs(je.h_e - (h_e_given_x + h_e_given_y - h_e_given_xy + m.i_xy - f.i_xy_given_e)) < 1e-9);
  }
}

TEST_CASE("deterministic channels obey the [.]+ lower bounds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t nx = 1 + rng() % 4, ny = 1 + rng() % 4, ne = 1 + rng() % 5;
    auto p = random_joint(rng, nx, ny);
    std::vector<std::size_t> labels(nx * ny);
    for (auto& l : labels) l = rng() % ne;
    auto ch = AuxiliaryChannel::deterministic(nx, ny, ne, labels);
    auto m = measures(p);
    auto je = joint_entropies(p, ch.kernel(), ne);
    const double i_ex = je.h_e + m.h_x - je.h_ex, i_ey = je.h_e + m.h_y - je.h_ey;
    CHECK(i_ex >= std::max(0.0, je.h_e - m.h_y_given_x) - 1e-9);
    CHECK(i_ey >= std::max(0.0, je.h_e - m.h_x_given_y) - 1e-9);
  }
}

TEST_CASE("measures are invariant under relabelling") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto p = random_joint(rng, 3, 4);
    auto ch = random_channel(rng, 3, 4, 3);
    std::vector<std::size_t> px{2, 0, 1}, py{3, 1, 0, 2};
    auto q = p.permuted(px, py);
    std::vector<double> k(ch.kernel().size());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t e = 0; e < 3; ++e) k[(i * 4 + j) * 3 + e] = ch(px[i] * 4 + py[j], e);
    auto chq = AuxiliaryChannel(3, 4, 3, k);
    auto a = channel_functionals(p, ch), b = channel_functionals(q, chq);
    CHECK(std::abs(a.i_e_xy - b.i_e_xy) < 1e-10);
    CHECK(std::abs(a.i_e_y_given_x - b.i_e_y_given_x) < 1e-10);
    CHECK(std::abs(a.i_xy_given_e - b.i_xy_given_e) < 1e-10);
    auto ma = measures(p), mb = measures(q);
    CHECK(std::abs(ma.i_xy - mb.i_xy) < 1e-10);
    CHECK(q.x_alphabet()[0] == "x2");
  }
}

TEST_CASE("block power") {
  auto p = dsbs(0.1).power(2);
  CHECK(p.nx() == 4);
  CHECK(measures(p).h_xy == doctest::Approx(2 * measures(dsbs(0.1)).h_xy));
  CHECK(p.x_alphabet()[1] == "0,1");
}

TEST_CASE("time-sharing mixture is linear in the functionals") {
  auto p = dsbs(0.2);
  std::vector<AuxiliaryChannel> parts{AuxiliaryChannel::reveal_x(2, 2), AuxiliaryChannel::reveal_y(2, 2)};
  std::vector<double> w{0.3, 0.7};
  auto mix = mix_channels(parts, w);
  auto a = channel_functionals(p, parts[0]), b = channel_functionals(p, parts[1]);
  auto f = channel_functionals(p, mix);
  CHECK(f.i_e_xy == doctest::Approx(0.3 * a.i_e_xy + 0.7 * b.i_e_xy));
  CHECK(f.i_e_y_given_x == doctest::Approx(0.3 * a.i_e_y_given_x + 0.7 * b.i_e_y_given_x));
  CHECK(compact(mix).e_size() == 4);
}

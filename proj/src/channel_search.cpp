#include "ucnet/channel_search.hpp"

#include <algorithm>
#include <cmath>

#include "ucnet/error.hpp"

namespace ucnet {

namespace {

constexpr double kLogFloor = -996.0;  // log2(1e-300)

double safe_log2(double v) { return v > 1e-300 ? std::log2(v) : kLogFloor; }

struct Marginals {
  std::vector<double> pe, pex, pey;
};

void fill_marginals(const JointDistribution& p, const std::vector<double>& k, std::size_t ne, Marginals& m) {
  const std::size_t nx = p.nx(), ny = p.ny();
  m.pe.assign(ne, 0.0);
  m.pex.assign(nx * ne, 0.0);
  m.pey.assign(ny * ne, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = p(x, y);
      if (pxy <= 0) continue;
      const double* row = &k[(x * ny + y) * ne];
      for (std::size_t e = 0; e < ne; ++e) {
        const double v = pxy * row[e];
        m.pe[e] += v;
        m.pex[x * ne + e] += v;
        m.pey[y * ne + e] += v;
      }
    }
}

// Zeroes tiny entries and renormalizes rows.
std::vector<double> polish(std::vector<double> k, std::size_t ne, double floor) {
  for (std::size_t c = 0; c * ne < k.size(); ++c) {
    double s = 0;
    for (std::size_t e = 0; e < ne; ++e) {
      double& v = k[c * ne + e];
      if (v < floor) v = 0;
      s += v;
    }
    if (s <= 0) continue;
    for (std::size_t e = 0; e < ne; ++e) k[c * ne + e] /= s;
  }
  return k;
}

}  // namespace

EntropyObjective functional_objective(const MeasureSet& m, double w1, double w2, double w3, double w4) {
  // I(E;XY)   = H(E) + H(XY) - H(EXY)
  // I(E;Y|X)  = H(EX) - H(X) + H(XY) - H(EXY)
  // I(E;X|Y)  = H(EY) - H(Y) + H(XY) - H(EXY)
  // I(X;Y|E)  = H(EX) + H(EY) - H(E) - H(EXY)
  EntropyObjective o;
  o.a_e = w1 - w4;
  o.a_ex = w2 + w4;
  o.a_ey = w3 + w4;
  o.a_exy = -(w1 + w2 + w3 + w4);
  o.constant = w1 * m.h_xy + w2 * (m.h_xy - m.h_x) + w3 * (m.h_xy - m.h_y);
  return o;
}

std::vector<double> random_kernel(std::mt19937_64& rng, std::size_t cells, std::size_t e_size) {
  std::vector<double> k(cells * e_size);
  for (std::size_t c = 0; c < cells; ++c) {
    double s = 0;
    for (std::size_t e = 0; e < e_size; ++e) {
      const double g = -std::log(1.0 - u01(rng));
      k[c * e_size + e] = g;
      s += g;
    }
    for (std::size_t e = 0; e < e_size; ++e) k[c * e_size + e] /= s;
  }
  return k;
}

std::vector<double> ascend(const JointDistribution& p, const EntropyObjective& obj, std::vector<double> k,
                           std::size_t ne, std::size_t max_iters, double* value) {
  const std::size_t nx = p.nx(), ny = p.ny(), cells = nx * ny;
  if (k.size() != cells * ne) throw Error(ErrorCode::DimensionMismatch, "kernel size does not match");
  auto eval = [&](const std::vector<double>& kk) { return obj(joint_entropies(p, kk, ne)); };

  double f = eval(k);
  double eta = 1.0;
  Marginals m;
  std::vector<double> grad(cells * ne), trial(cells * ne);
  for (std::size_t it = 0; it < max_iters; ++it) {
    fill_marginals(p, k, ne, m);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        const std::size_t c = x * ny + y;
        const double pxy = p(x, y);
        for (std::size_t e = 0; e < ne; ++e) {
          // Derivative of the objective per unit of p(x,y); row constants cancel.
          grad[c * ne + e] = pxy <= 0 ? 0.0
                                      : -(obj.a_e * safe_log2(m.pe[e]) + obj.a_ex * safe_log2(m.pex[x * ne + e]) +
                                          obj.a_ey * safe_log2(m.pey[y * ne + e]) +
                                          obj.a_exy * safe_log2(pxy * k[c * ne + e]));
        }
      }
    bool improved = false;
    while (eta > 1e-12) {
      for (std::size_t c = 0; c < cells; ++c) {
        double gmax = -INFINITY;
        for (std::size_t e = 0; e < ne; ++e)
          if (k[c * ne + e] > 0) gmax = std::max(gmax, grad[c * ne + e]);
        double s = 0;
        for (std::size_t e = 0; e < ne; ++e) {
          const double v = k[c * ne + e] > 0 ? k[c * ne + e] * std::exp(eta * (grad[c * ne + e] - gmax)) : 0.0;
          trial[c * ne + e] = v;
          s += v;
        }
        for (std::size_t e = 0; e < ne; ++e) trial[c * ne + e] /= s;
      }
      const double ft = eval(trial);
      if (ft >= f) {
        const double gain = ft - f;
        std::swap(k, trial);
        f = ft;
        eta = std::min(eta * 1.5, 1e6);
        improved = gain > 1e-14 * (1.0 + std::abs(f));
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
  }
  auto pk = polish(k, ne, 1e-6);
  const double fp = eval(pk);
  if (fp >= f) {
    k = std::move(pk);
    f = fp;
  }
  if (value) *value = f;
  return k;
}

SearchResult maximize_channel(const JointDistribution& p, const EntropyObjective& obj, const SearchOptions& opts,
                              Exec exec) {
  const std::size_t ne = opts.e_size ? opts.e_size : p.cells() + 2;
  const std::size_t total = std::max(opts.restarts, opts.warm_starts.size());
  if (total == 0) throw Error(ErrorCode::NoFeasibleChannel, "no restarts requested");
  std::vector<double> values(total);
  std::vector<std::vector<double>> kernels(total);
  parallel_for(
      total,
      [&](std::size_t i) {
        std::vector<double> start;
        if (i < opts.warm_starts.size()) {
          start = opts.warm_starts[i];
        } else {
          std::mt19937_64 rng(mix_seed(opts.seed, i));
          start = random_kernel(rng, p.cells(), ne);
        }
        kernels[i] = ascend(p, obj, std::move(start), ne, opts.max_iters, &values[i]);
      },
      exec);
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (values[i] > values[best]) best = i;
  return {values[best], std::move(kernels[best]), ne, best, total};
}

}  // namespace ucnet

#include "ucnet/common_info.hpp"

#include <numeric>

#include "ucnet/channel_search.hpp"
#include "ucnet/error.hpp"

namespace ucnet {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

CommonPartDecomposition gacs_korner(const JointDistribution& p, double threshold) {
  const std::size_t nx = p.nx(), ny = p.ny();
  DisjointSets ds(nx + ny);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      if (p(x, y) > threshold) ds.unite(x, nx + y);

  // Number components by first appearance over x then y.
  std::vector<std::size_t> id(nx + ny, SIZE_MAX);
  std::size_t count = 0;
  CommonPartDecomposition out;
  out.component_of_x.resize(nx);
  out.component_of_y.resize(ny);
  for (std::size_t v = 0; v < nx + ny; ++v) {
    const std::size_t r = ds.find(v);
    if (id[r] == SIZE_MAX) id[r] = count++;
    (v < nx ? out.component_of_x[v] : out.component_of_y[v - nx]) = id[r];
  }
  out.component_pmf.assign(count, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) out.component_pmf[out.component_of_x[x]] += p(x, y);
  out.gk_value = entropy_unchecked(out.component_pmf);
  return out;
}

WynerResult wyner(const JointDistribution& p, const WynerOptions& opts, Exec exec) {
  if (opts.restarts < 1) throw Error(ErrorCode::NoFeasibleChannel, "restarts must be positive");
  const std::size_t ne = opts.e_size ? opts.e_size : p.cells();
  const MeasureSet m = measures(p);
  static constexpr double kPenalties[] = {10.0, 100.0, 1000.0};

  const std::size_t total = opts.restarts;
  std::vector<std::vector<double>> kernels(total);
  parallel_for(
      total,
      [&](std::size_t i) {
        std::mt19937_64 rng(mix_seed(opts.seed, i));
        auto k = random_kernel(rng, p.cells(), ne);
        for (double mu : kPenalties)
          k = ascend(p, functional_objective(m, 1.0, 0.0, 0.0, mu).negated(), std::move(k), ne, opts.max_iters);
        kernels[i] = std::move(k);
      },
      exec);

  WynerResult best;
  bool found = false;
  for (std::size_t i = 0; i < total; ++i) {
    const auto f = channel_functionals(m, joint_entropies(p, kernels[i], ne));
    const double residual = std::max(f.i_xy_given_e, 0.0);
    if (residual > opts.tol) continue;
    if (!found || f.i_e_xy < best.value) {
      best.value = std::max(f.i_e_xy, 0.0);
      best.markov_residual = residual;
      best.certificate = AuxiliaryChannel(p.nx(), p.ny(), ne, kernels[i]);
      found = true;
    }
  }
  // E = (X,Y) is always Markov; keep it as the fallback certificate.
  if (ne >= p.cells() && (!found || m.h_xy < best.value)) {
    std::vector<std::size_t> labels(p.cells());
    std::iota(labels.begin(), labels.end(), std::size_t{0});
    best.value = m.h_xy;
    best.markov_residual = 0;
    best.certificate = AuxiliaryChannel::deterministic(p.nx(), p.ny(), ne, labels);
    found = true;
  }
  if (!found) throw Error(ErrorCode::NoFeasibleChannel, "no restart met the Markov tolerance");
  best.certificate = compact(best.certificate);
  best.restarts_used = total;
  best.lower_bound = m.i_xy;
  return best;
}

}  // namespace ucnet

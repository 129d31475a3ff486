#pragma once

// Multi-start maximization of affine functionals of the auxiliary channel
// p(e|x,y). Every functional the library optimizes is of the form
//
//   a_e H(E) + a_ex H(E,X) + a_ey H(E,Y) + a_exy H(E,X,Y) + constant
//
// so one optimizer covers the Wyner penalty, the support function's numerical
// orthant and the targeted dictionary refinement.

#include <cstdint>
#include <random>
#include <vector>

#include "ucnet/info.hpp"
#include "ucnet/parallel.hpp"

namespace ucnet {

struct EntropyObjective {
  double a_e = 0;
  double a_ex = 0;
  double a_ey = 0;
  double a_exy = 0;
  double constant = 0;

  double operator()(const JointEntropies& je) const {
    return a_e * je.h_e + a_ex * je.h_ex + a_ey * je.h_ey + a_exy * je.h_exy + constant;
  }
  EntropyObjective negated() const { return {-a_e, -a_ex, -a_ey, -a_exy, -constant}; }
};

/// w1 I(E;XY) + w2 I(E;Y|X) + w3 I(E;X|Y) + w4 I(X;Y|E) as an EntropyObjective.
EntropyObjective functional_objective(const MeasureSet& m, double w1, double w2, double w3, double w4 = 0);

struct SearchOptions {
  std::size_t e_size = 0;  // 0: |X||Y| + 2
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t max_iters = 1500;
  /// Kernels tried before the random restarts (each counts as a restart).
  std::vector<std::vector<double>> warm_starts;
};

struct SearchResult {
  double value = 0;
  std::vector<double> kernel;
  std::size_t e_size = 0;
  std::size_t best_restart = 0;
  std::size_t restarts_used = 0;
};

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Row-wise Dirichlet(1) kernel.
std::vector<double> random_kernel(std::mt19937_64& rng, std::size_t cells, std::size_t e_size);

/// Exponentiated-gradient ascent with backtracking from `kernel`; returns the
/// polished kernel and writes its objective value.
std::vector<double> ascend(const JointDistribution& p, const EntropyObjective& obj, std::vector<double> kernel,
                           std::size_t e_size, std::size_t max_iters, double* value = nullptr);

/// Multi-start maximization; best value wins, ties go to the lowest restart index.
SearchResult maximize_channel(const JointDistribution& p, const EntropyObjective& obj, const SearchOptions& opts,
                              Exec exec = Exec::Parallel);

}  // namespace ucnet

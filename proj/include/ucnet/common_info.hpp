#pragma once

#include <cstdint>
#include <vector>

#include "ucnet/info.hpp"
#include "ucnet/parallel.hpp"

namespace ucnet {

/// Support threshold for the common-part graph; GK is discontinuous in p and
/// this makes the discontinuity reproducible.
inline constexpr double kSupportThreshold = 1e-12;

struct CommonPartDecomposition {
  std::vector<std::size_t> component_of_x;
  std::vector<std::size_t> component_of_y;
  std::vector<double> component_pmf;
  double gk_value = 0;
};

/// Gacs-Korner common information via connected components of the support graph.
CommonPartDecomposition gacs_korner(const JointDistribution& p, double threshold = kSupportThreshold);

struct WynerOptions {
  std::size_t e_size = 0;  // 0: |X||Y|
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  double tol = 1e-4;  // accepted I(X;Y|E)
  std::size_t max_iters = 3000;
};

struct WynerResult {
  double value = 0;
  AuxiliaryChannel certificate = AuxiliaryChannel::constant(1, 1);
  double markov_residual = 0;
  std::size_t restarts_used = 0;
  double lower_bound = 0;  // I(X;Y)
};

/// Upper estimate of Wyner's common information min I(E;XY) s.t. X - E - Y,
/// by penalized multi-start search with mu in {10, 100, 1000}, warm-started.
WynerResult wyner(const JointDistribution& p, const WynerOptions& opts = {}, Exec exec = Exec::Parallel);

}  // namespace ucnet

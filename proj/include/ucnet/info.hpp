#pragma once

// Finite-alphabet joint distributions p(x,y), auxiliary channels p(e|x,y)
// and the Shannon measures built from them. All logarithms are base 2.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ucnet {

/// Entropy in bits of a probability vector; 0 log 0 = 0.
/// Throws NotADistribution when the vector is negative or does not sum to 1
/// within 1e-9.
double entropy(std::span<const double> pmf);

/// Entropy of an unnormalized non-negative vector treated as a distribution
/// (no validation). Used by inner loops.
double entropy_unchecked(std::span<const double> weights);

/// Binary entropy function h(a).
double binary_entropy(double a);

/// Joint pmf of (X, Y) indexed (x, y), stored row-major.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> x_alphabet, std::vector<std::string> y_alphabet,
                    std::vector<double> pmf);

  /// Labels default to "0", "1", ...
  static JointDistribution from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t nx() const noexcept { return x_alphabet_.size(); }
  std::size_t ny() const noexcept { return y_alphabet_.size(); }
  std::size_t cells() const noexcept { return pmf_.size(); }

  double operator()(std::size_t x, std::size_t y) const { return pmf_[x * ny() + y]; }
  std::span<const double> pmf() const noexcept { return pmf_; }

  const std::vector<std::string>& x_alphabet() const noexcept { return x_alphabet_; }
  const std::vector<std::string>& y_alphabet() const noexcept { return y_alphabet_; }

  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;

  /// Distribution of (X^n, Y^n) for n i.i.d. copies; X^n and Y^n are indexed in
  /// base |X| and base |Y| respectively, first copy most significant.
  JointDistribution power(int n) const;

  /// Relabels: new x index i takes old row x_perm[i], new y index j takes old column y_perm[j].
  JointDistribution permuted(std::span<const std::size_t> x_perm,
                             std::span<const std::size_t> y_perm) const;

  /// Swaps the roles of X and Y.
  JointDistribution transposed() const;

 private:
  std::vector<std::string> x_alphabet_;
  std::vector<std::string> y_alphabet_;
  std::vector<double> pmf_;
};

/// Doubly symmetric binary source: X uniform, Y = X flipped with probability a.
JointDistribution dsbs(double a);
/// X = Y uniform on k symbols.
JointDistribution equal_uniform(std::size_t k = 2);
/// X, Y independent, each uniform on k symbols.
JointDistribution independent_uniform(std::size_t k = 2);

/// Conditional pmf p(e|x,y). Row `cell = x * ny + y` holds the distribution of E.
class AuxiliaryChannel {
 public:
  AuxiliaryChannel(std::size_t nx, std::size_t ny, std::size_t e_size, std::vector<double> kernel);

  static AuxiliaryChannel constant(std::size_t nx, std::size_t ny);
  /// E = (X, Y).
  static AuxiliaryChannel reveal_both(std::size_t nx, std::size_t ny);
  /// E = X.
  static AuxiliaryChannel reveal_x(std::size_t nx, std::size_t ny);
  /// E = Y.
  static AuxiliaryChannel reveal_y(std::size_t nx, std::size_t ny);
  /// E = f(x, y) for a labelling f with values in [0, e_size).
  static AuxiliaryChannel deterministic(std::size_t nx, std::size_t ny, std::size_t e_size,
                                        std::span<const std::size_t> labels);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t cells() const noexcept { return nx_ * ny_; }
  std::size_t e_size() const noexcept { return e_size_; }

  double operator()(std::size_t cell, std::size_t e) const { return kernel_[cell * e_size_ + e]; }
  std::span<const double> kernel() const noexcept { return kernel_; }
  std::span<const double> row(std::size_t cell) const {
    return std::span<const double>(kernel_).subspan(cell * e_size_, e_size_);
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::size_t e_size_;
  std::vector<double> kernel_;
};

struct MeasureSet {
  double h_x = 0;
  double h_y = 0;
  double h_xy = 0;
  double h_x_given_y = 0;
  double h_y_given_x = 0;
  double i_xy = 0;
};

MeasureSet measures(const JointDistribution& p);

/// H(E), H(E,X), H(E,Y), H(E,X,Y) for the joint p(x,y) p(e|x,y). Every channel
/// functional used by the library is an affine combination of these four.
struct JointEntropies {
  double h_e = 0;
  double h_ex = 0;
  double h_ey = 0;
  double h_exy = 0;
};

JointEntropies joint_entropies(const JointDistribution& p, std::span<const double> kernel,
                               std::size_t e_size);

struct ChannelFunctionals {
  double i_e_xy = 0;
  double i_e_y_given_x = 0;
  double i_e_x_given_y = 0;
  double h_x_given_e = 0;
  double h_y_given_e = 0;
  double h_xy_given_e = 0;
  double i_xy_given_e = 0;
  double h_e = 0;
};

ChannelFunctionals channel_functionals(const JointDistribution& p, const AuxiliaryChannel& ch);
ChannelFunctionals channel_functionals(const MeasureSet& m, const JointEntropies& je);

/// Stacks channels as a time-sharing mixture: E' = (i, E_i) with probability
/// weights[i]. Every functional of the mixture is the weighted sum of the parts.
AuxiliaryChannel mix_channels(std::span<const AuxiliaryChannel> parts, std::span<const double> weights);

/// Drops output letters that have zero probability under every input cell.
AuxiliaryChannel compact(const AuxiliaryChannel& ch, double threshold = 0.0);

}  // namespace ucnet

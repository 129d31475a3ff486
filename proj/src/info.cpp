#include "ucnet/info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ucnet/error.hpp"

namespace ucnet {

namespace {

constexpr double kInputTol = 1e-9;

double xlog2x(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

// Validates against kInputTol, clamps tiny negatives and renormalizes once.
void normalize_in_place(std::vector<double>& v, const char* what) {
  double sum = 0;
  for (double& x : v) {
    if (!std::isfinite(x) || x < -kInputTol)
      throw Error(ErrorCode::NotADistribution, std::string(what) + " has a negative or non-finite entry");
    if (x < 0) x = 0;
    sum += x;
  }
  if (std::abs(sum - 1.0) > kInputTol)
    throw Error(ErrorCode::NotADistribution,
                std::string(what) + " sums to " + std::to_string(sum) + ", not 1");
  for (double& x : v) x /= sum;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoFeasibleChannel: return "NoFeasibleChannel";
    case ErrorCode::InvalidFamilyParam: return "InvalidFamilyParam";
    case ErrorCode::BlockTooLarge: return "BlockTooLarge";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::NoSuchEdge: return "NoSuchEdge";
    case ErrorCode::NoSuchCut: return "NoSuchCut";
    case ErrorCode::NoCutFound: return "NoCutFound";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::InconsistentTies: return "InconsistentTies";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double entropy(std::span<const double> pmf) {
  double sum = 0;
  for (double p : pmf) {
    if (!std::isfinite(p) || p < -kInputTol)
      throw Error(ErrorCode::NotADistribution, "negative or non-finite probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kInputTol)
    throw Error(ErrorCode::NotADistribution, "probabilities sum to " + std::to_string(sum));
  double h = 0;
  for (double p : pmf) h -= xlog2x(p > 0 ? p : 0);
  return std::max(h, 0.0);
}

double entropy_unchecked(std::span<const double> weights) {
  double h = 0;
  for (double p : weights) h -= xlog2x(p);
  return h;
}

double binary_entropy(double a) { return -xlog2x(a) - xlog2x(1 - a); }

JointDistribution::JointDistribution(std::vector<std::string> x_alphabet,
                                     std::vector<std::string> y_alphabet, std::vector<double> pmf)
    : x_alphabet_(std::move(x_alphabet)), y_alphabet_(std::move(y_alphabet)), pmf_(std::move(pmf)) {
  if (x_alphabet_.empty() || y_alphabet_.empty())
    throw Error(ErrorCode::NotADistribution, "alphabets must be non-empty");
  if (pmf_.size() != x_alphabet_.size() * y_alphabet_.size())
    throw Error(ErrorCode::DimensionMismatch, "pmf size does not match alphabet sizes");
  normalize_in_place(pmf_, "joint pmf");
}

JointDistribution JointDistribution::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw Error(ErrorCode::NotADistribution, "empty pmf matrix");
  const std::size_t ny = rows.front().size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != ny) throw Error(ErrorCode::DimensionMismatch, "ragged pmf matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return JointDistribution(default_labels(rows.size()), default_labels(ny), std::move(flat));
}

std::vector<double> JointDistribution::marginal_x() const {
  std::vector<double> m(nx(), 0.0);
  for (std::size_t x = 0; x < nx(); ++x)
    for (std::size_t y = 0; y < ny(); ++y) m[x] += (*this)(x, y);
  return m;
}

std::vector<double> JointDistribution::marginal_y() const {
  std::vector<double> m(ny(), 0.0);
  for (std::size_t x = 0; x < nx(); ++x)
    for (std::size_t y = 0; y < ny(); ++y) m[y] += (*this)(x, y);
  return m;
}

JointDistribution JointDistribution::power(int n) const {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "block length must be positive");
  std::vector<std::string> xs = x_alphabet_, ys = y_alphabet_;
  std::vector<double> cur(pmf_);
  std::size_t cx = nx(), cy = ny();
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(cx * nx() * cy * ny());
    const std::size_t ncy = cy * ny();
    for (std::size_t a = 0; a < cx; ++a)
      for (std::size_t x = 0; x < nx(); ++x)
        for (std::size_t b = 0; b < cy; ++b)
          for (std::size_t y = 0; y < ny(); ++y)
            next[(a * nx() + x) * ncy + (b * ny() + y)] = cur[a * cy + b] * (*this)(x, y);
    std::vector<std::string> nxs, nys;
    for (const auto& a : xs)
      for (const auto& x : x_alphabet_) nxs.push_back(a + "," + x);
    for (const auto& b : ys)
      for (const auto& y : y_alphabet_) nys.push_back(b + "," + y);
    xs = std::move(nxs);
    ys = std::move(nys);
    cur = std::move(next);
    cx *= nx();
    cy *= ny();
  }
  return JointDistribution(std::move(xs), std::move(ys), std::move(cur));
}

JointDistribution JointDistribution::permuted(std::span<const std::size_t> x_perm,
                                              std::span<const std::size_t> y_perm) const {
  if (x_perm.size() != nx() || y_perm.size() != ny())
    throw Error(ErrorCode::DimensionMismatch, "permutation size mismatch");
  std::vector<std::string> xs(nx()), ys(ny());
  std::vector<double> p(cells());
  for (std::size_t i = 0; i < nx(); ++i) xs[i] = x_alphabet_[x_perm[i]];
  for (std::size_t j = 0; j < ny(); ++j) ys[j] = y_alphabet_[y_perm[j]];
  for (std::size_t i = 0; i < nx(); ++i)
    for (std::size_t j = 0; j < ny(); ++j) p[i * ny() + j] = (*this)(x_perm[i], y_perm[j]);
  return JointDistribution(std::move(xs), std::move(ys), std::move(p));
}

JointDistribution JointDistribution::transposed() const {
  std::vector<double> p(cells());
  for (std::size_t x = 0; x < nx(); ++x)
    for (std::size_t y = 0; y < ny(); ++y) p[y * nx() + x] = (*this)(x, y);
  return JointDistribution(y_alphabet_, x_alphabet_, std::move(p));
}

JointDistribution dsbs(double a) {
  return JointDistribution::from_rows({{(1 - a) / 2, a / 2}, {a / 2, (1 - a) / 2}});
}

JointDistribution equal_uniform(std::size_t k) {
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) rows[i][i] = 1.0 / static_cast<double>(k);
  return JointDistribution::from_rows(rows);
}

JointDistribution independent_uniform(std::size_t k) {
  const double v = 1.0 / static_cast<double>(k * k);
  return JointDistribution::from_rows(std::vector<std::vector<double>>(k, std::vector<double>(k, v)));
}

AuxiliaryChannel::AuxiliaryChannel(std::size_t nx, std::size_t ny, std::size_t e_size,
                                   std::vector<double> kernel)
    : nx_(nx), ny_(ny), e_size_(e_size), kernel_(std::move(kernel)) {
  if (e_size_ == 0) throw Error(ErrorCode::DimensionMismatch, "channel output alphabet is empty");
  if (kernel_.size() != nx_ * ny_ * e_size_)
    throw Error(ErrorCode::DimensionMismatch, "channel kernel size does not match dimensions");
  for (std::size_t c = 0; c < cells(); ++c) {
    std::vector<double> r(kernel_.begin() + c * e_size_, kernel_.begin() + (c + 1) * e_size_);
    normalize_in_place(r, "channel row");
    std::copy(r.begin(), r.end(), kernel_.begin() + c * e_size_);
  }
}

AuxiliaryChannel AuxiliaryChannel::constant(std::size_t nx, std::size_t ny) {
  return AuxiliaryChannel(nx, ny, 1, std::vector<double>(nx * ny, 1.0));
}

AuxiliaryChannel AuxiliaryChannel::deterministic(std::size_t nx, std::size_t ny, std::size_t e_size,
                                                 std::span<const std::size_t> labels) {
  if (labels.size() != nx * ny) throw Error(ErrorCode::DimensionMismatch, "label count mismatch");
  std::vector<double> k(nx * ny * e_size, 0.0);
  for (std::size_t c = 0; c < nx * ny; ++c) {
    if (labels[c] >= e_size) throw Error(ErrorCode::DimensionMismatch, "label out of range");
    k[c * e_size + labels[c]] = 1.0;
  }
  return AuxiliaryChannel(nx, ny, e_size, std::move(k));
}

AuxiliaryChannel AuxiliaryChannel::reveal_both(std::size_t nx, std::size_t ny) {
  std::vector<std::size_t> labels(nx * ny);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return deterministic(nx, ny, nx * ny, labels);
}

AuxiliaryChannel AuxiliaryChannel::reveal_x(std::size_t nx, std::size_t ny) {
  std::vector<std::size_t> labels(nx * ny);
  for (std::size_t c = 0; c < nx * ny; ++c) labels[c] = c / ny;
  return deterministic(nx, ny, nx, labels);
}

AuxiliaryChannel AuxiliaryChannel::reveal_y(std::size_t nx, std::size_t ny) {
  std::vector<std::size_t> labels(nx * ny);
  for (std::size_t c = 0; c < nx * ny; ++c) labels[c] = c % ny;
  return deterministic(nx, ny, ny, labels);
}

MeasureSet measures(const JointDistribution& p) {
  MeasureSet m;
  m.h_x = entropy_unchecked(p.marginal_x());
  m.h_y = entropy_unchecked(p.marginal_y());
  m.h_xy = entropy_unchecked(p.pmf());
  m.h_x_given_y = m.h_xy - m.h_y;
  m.h_y_given_x = m.h_xy - m.h_x;
  m.i_xy = m.h_x + m.h_y - m.h_xy;
  return m;
}

JointEntropies joint_entropies(const JointDistribution& p, std::span<const double> kernel,
                               std::size_t e_size) {
  const std::size_t nx = p.nx(), ny = p.ny();
  if (kernel.size() != nx * ny * e_size)
    throw Error(ErrorCode::DimensionMismatch, "channel does not match distribution");
  std::vector<double> pe(e_size, 0.0), pex(nx * e_size, 0.0), pey(ny * e_size, 0.0);
  double h_exy = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = p(x, y);
      if (pxy <= 0) continue;
      const double* row = kernel.data() + (x * ny + y) * e_size;
      for (std::size_t e = 0; e < e_size; ++e) {
        const double v = pxy * row[e];
        pe[e] += v;
        pex[x * e_size + e] += v;
        pey[y * e_size + e] += v;
        h_exy -= xlog2x(v);
      }
    }
  }
  JointEntropies je;
  je.h_e = entropy_unchecked(pe);
  je.h_ex = entropy_unchecked(pex);
  je.h_ey = entropy_unchecked(pey);
  je.h_exy = h_exy;
  return je;
}

ChannelFunctionals channel_functionals(const MeasureSet& m, const JointEntropies& je) {
  ChannelFunctionals f;
  f.h_e = je.h_e;
  f.i_e_xy = je.h_e + m.h_xy - je.h_exy;
  f.i_e_y_given_x = je.h_ex - m.h_x + m.h_xy - je.h_exy;
  f.i_e_x_given_y = je.h_ey - m.h_y + m.h_xy - je.h_exy;
  f.h_x_given_e = je.h_ex - je.h_e;
  f.h_y_given_e = je.h_ey - je.h_e;
  f.h_xy_given_e = je.h_exy - je.h_e;
  f.i_xy_given_e = je.h_ex + je.h_ey - je.h_e - je.h_exy;
  return f;
}

ChannelFunctionals channel_functionals(const JointDistribution& p, const AuxiliaryChannel& ch) {
  if (ch.nx() != p.nx() || ch.ny() != p.ny())
    throw Error(ErrorCode::DimensionMismatch, "channel input alphabet does not match distribution");
  return channel_functionals(measures(p), joint_entropies(p, ch.kernel(), ch.e_size()));
}

AuxiliaryChannel mix_channels(std::span<const AuxiliaryChannel> parts, std::span<const double> weights) {
  if (parts.empty() || parts.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "mixture needs one weight per channel");
  const std::size_t nx = parts.front().nx(), ny = parts.front().ny();
  std::size_t total = 0;
  for (const auto& c : parts) {
    if (c.nx() != nx || c.ny() != ny) throw Error(ErrorCode::DimensionMismatch, "mixed channel shapes");
    total += c.e_size();
  }
  double wsum = 0;
  for (double w : weights) {
    if (w < -kInputTol) throw Error(ErrorCode::NotADistribution, "negative mixture weight");
    wsum += std::max(w, 0.0);
  }
  std::vector<double> k(nx * ny * total, 0.0);
  for (std::size_t cell = 0; cell < nx * ny; ++cell) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const double w = std::max(weights[i], 0.0) / wsum;
      for (std::size_t e = 0; e < parts[i].e_size(); ++e)
        k[cell * total + off + e] = w * parts[i](cell, e);
      off += parts[i].e_size();
    }
  }
  return AuxiliaryChannel(nx, ny, total, std::move(k));
}

AuxiliaryChannel compact(const AuxiliaryChannel& ch, double threshold) {
  std::vector<std::size_t> keep;
  for (std::size_t e = 0; e < ch.e_size(); ++e) {
    double mx = 0;
    for (std::size_t c = 0; c < ch.cells(); ++c) mx = std::max(mx, ch(c, e));
    if (mx > threshold) keep.push_back(e);
  }
  if (keep.empty()) return AuxiliaryChannel::constant(ch.nx(), ch.ny());
  std::vector<double> k(ch.cells() * keep.size());
  for (std::size_t c = 0; c < ch.cells(); ++c) {
    double s = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) s += ch(c, keep[i]);
    for (std::size_t i = 0; i < keep.size(); ++i)
      k[c * keep.size() + i] = s > 0 ? ch(c, keep[i]) / s : 1.0 / static_cast<double>(keep.size());
  }
  return AuxiliaryChannel(ch.nx(), ch.ny(), keep.size(), std::move(k));
}

}  // namespace ucnet

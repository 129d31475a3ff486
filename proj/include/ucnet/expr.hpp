#pragma once

// Affine expressions over edge capacities and the source entropies
// H(X), H(Y), H(X,Y). Parsed from strings such as "C1+C2+C3=Hxy" or
// "Hx|y", and printed back with named information quantities.

#include <string>
#include <utility>
#include <vector>

#include "ucnet/info.hpp"

namespace ucnet {

struct AffineExpr {
  std::vector<std::pair<std::string, double>> caps;  // edge id -> coefficient, natural order
  double hx = 0, hy = 0, hxy = 0;
  double constant = 0;

  AffineExpr& add_cap(const std::string& edge, double coef);
  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr operator*(double k) const;
  double cap_coef(const std::string& edge) const;
  double measure_value(const MeasureSet& m) const { return hx * m.h_x + hy * m.h_y + hxy * m.h_xy + constant; }
  bool has_caps() const { return !caps.empty(); }
  std::string to_string() const;
};

/// "2*C4 + Hx|y - 0.5" style expressions. Symbols: Hx Hy Hxy Hx|y Hy|x Ixy C<id>.
AffineExpr parse_affine(const std::string& text);
/// "lhs = rhs", returned as lhs - rhs (meaning the result equals zero).
AffineExpr parse_tie(const std::string& text);

/// Natural ordering of ids: numeric ids compare as numbers.
bool natural_less(const std::string& a, const std::string& b);

/// Prints a*H(X) + b*H(Y) + c*H(XY) using named quantities where possible.
std::string measure_terms(double hx, double hy, double hxy);

}  // namespace ucnet

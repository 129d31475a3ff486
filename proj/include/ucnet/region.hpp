#pragma once

// The uncertainty region U(p): normalized (H(K), H(K|X^n), H(K|Y^n),
// H(K|X^n Y^n)) over all block lengths and kernels p(k|x^n, y^n).
//
// U(p) is the convex hull of four explicit point families plus the ray
// (1,1,1,1). Its support function is closed form except when
// (l1, l2, l3) has sign pattern (+,-,-), where a channel optimization runs.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ucnet/info.hpp"
#include "ucnet/parallel.hpp"

namespace ucnet {

using Vec4 = std::array<double, 4>;

struct UncertaintyVector {
  double u1 = 0, u2 = 0, u3 = 0, u4 = 0;

  Vec4 array() const { return {u1, u2, u3, u4}; }
  static UncertaintyVector from(const Vec4& a) { return {a[0], a[1], a[2], a[3]}; }
};

struct FamilySpec {
  int family = 1;
  double c = 0;
  std::optional<AuxiliaryChannel> channel;  // family 1
  double f = 0;                             // family 4
};

using WeightVector = Vec4;

struct RegionOptions {
  double tol = 1e-4;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 200;  // column generation rounds
  std::size_t mesh = 32;             // random family-1 channels seeded into the dictionary
  bool direction_probes = true;      // fallback search when column generation stalls
  Exec exec = Exec::Parallel;
};

UncertaintyVector family_point(const JointDistribution& p, const FamilySpec& spec);

struct SupportValue {
  double value = 0;
  bool infinite = false;
  double c0_value = 0;     // sup over the points with c = 0 (finite even when value is +inf)
  bool numerical = false;  // value came from the channel optimizer (a lower estimate)
  std::string orthant;     // sign pattern of (l1, l2, l3), e.g. "+--"
  std::size_t restarts_used = 0;
  std::optional<FamilySpec> argmax;  // c = 0 point attaining the value
};

SupportValue support_function(const JointDistribution& p, const WeightVector& lam, const RegionOptions& opts = {});

/// Sign pattern label of (l1, l2, l3); zero counts as '+'.
std::string orthant_label(const WeightVector& lam);

/// Linear constraints over (u1..u4, extra variables...). Used both for single
/// query points and for per-edge converse polyhedra.
struct LinearSet {
  struct Row {
    std::vector<std::pair<int, double>> coefs;
    double lower;
    double upper;
  };
  std::vector<double> lower{0, 0, 0, 0};
  std::vector<double> upper;  // +inf by default
  std::vector<Row> rows;

  LinearSet();
  int add_variable(double lo, double hi);
  void add_row(std::vector<std::pair<int, double>> coefs, double lo, double hi);
  std::size_t size() const { return lower.size(); }
  static LinearSet point(const Vec4& u);
};

struct Atom {
  FamilySpec spec;
  Vec4 point{};
};

enum class Verdict { Inside, Outside, Unresolved };
const char* to_string(Verdict v);

struct IntersectionResult {
  Verdict verdict = Verdict::Unresolved;
  // Inside: the witness in P and its certificate, point = sum w_i atom_i + ray*(1,1,1,1) (+/- tol)
  Vec4 witness{};
  std::vector<double> values;  // all LinearSet variables at the witness
  std::vector<std::pair<double, Atom>> combination;
  double ray = 0;
  // Outside: l.u >= min_P l.u > S(l) + margin for every u in P
  WeightVector separator{};
  double min_over_set = 0;
  double margin = 0;
  SupportValue support;
  bool empty_set = false;  // P itself is empty
  std::size_t iterations = 0;
};

/// Decides whether P meets U(p): column generation over family points, then
/// direction probes if it stalls.
IntersectionResult intersect_region(const JointDistribution& p, const LinearSet& set, const RegionOptions& opts = {});

struct MembershipResult {
  Verdict verdict = Verdict::Unresolved;
  std::vector<std::pair<double, FamilySpec>> combination;  // ray folded into c
  WeightVector separator{};
  double margin = 0;
  SupportValue support;
};

MembershipResult membership(const JointDistribution& p, const UncertaintyVector& u, const RegionOptions& opts = {});

struct OuterBoundResult {
  bool feasible = false;
  bool certified = false;  // infeasibility certified by a linear Shannon inequality
  std::string reason;
  double c = 0, g = 0, h = 0;
  std::optional<AuxiliaryChannel> channel;
  std::array<double, 3> separator{};  // numerical evidence when not certified
};

OuterBoundResult outer_bound_feasible(const JointDistribution& p, const UncertaintyVector& u, double tol = 1e-4,
                                      const RegionOptions& opts = {});

/// Exact uncertainty vectors of random kernels p(k|x^n,y^n) over p^n.
std::vector<UncertaintyVector> sample_region(const JointDistribution& p, int n, std::size_t count,
                                             std::size_t k_size, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Largest violation of the sampler's Shannon invariants (0 when all hold).
double sampler_invariant_violation(const MeasureSet& m, const UncertaintyVector& u);

}  // namespace ucnet

#pragma once

// The six-coefficient quadratic map
//
//   z'_n = a_n1 z1^2 + a_n2 z2^2 + a_n3 z1 z2,   n = 1, 2,
//
// obtained from the x-system by an invertible linear change of variables
// z = A x, and its shifted form z(l) = w(l) + f(l) with an assigned f.

#include "solvable/numerics.hpp"
#include "solvable/xsystem.hpp"

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace solvable {

struct ZState {
  Scalar z1;
  Scalar z2;

  friend bool operator==(const ZState& a, const ZState& b) { return a.z1 == b.z1 && a.z2 == b.z2; }
};

struct WState {
  Scalar w1;
  Scalar w2;

  friend bool operator==(const WState& a, const WState& b) { return a.w1 == b.w1 && a.w2 == b.w2; }
};

inline std::pair<const Scalar&, const Scalar&> components(const ZState& s) { return {s.z1, s.z2}; }
inline std::pair<const Scalar&, const Scalar&> components(const WState& s) { return {s.w1, s.w2}; }

/// Unordered pair of states, stored in lexicographic order.
template <class State>
class StatePair {
 public:
  StatePair(State a, State b) : first_(std::move(a)), second_(std::move(b)) {
    if (less(second_, first_)) std::swap(first_, second_);
  }

  const State& first() const { return first_; }
  const State& second() const { return second_; }
  bool contains(const State& s) const { return first_ == s || second_ == s; }

  friend bool operator==(const StatePair& a, const StatePair& b) {
    return a.first_ == b.first_ && a.second_ == b.second_;
  }

 private:
  static bool less(const State& a, const State& b) {
    const auto [a1, a2] = components(a);
    const auto [b1, b2] = components(b);
    if (lexicographic_less(a1, b1)) return true;
    if (lexicographic_less(b1, a1)) return false;
    return lexicographic_less(a2, b2);
  }

  State first_;
  State second_;
};

/// Image {A (r1, r2), A (r2, r1)} of a root pair under the change of variables.
using ZImage = StatePair<ZState>;
using WImage = StatePair<WState>;

/// z = A x with A invertible.
class LinearChange {
 public:
  /// DomainError when the determinant vanishes.
  LinearChange(Scalar a11, Scalar a12, Scalar a21, Scalar a22);
  static LinearChange identity(const BackendSpec& spec = BackendSpec::exact());

  /// Zero-based entry A(row, col).
  const Scalar& operator()(int row, int col) const { return entries_[row][col]; }
  const Scalar& determinant() const { return determinant_; }

 private:
  std::array<std::array<Scalar, 2>, 2> entries_;
  Scalar determinant_;
};

ZState x_to_z(const LinearChange& A, const XState& s);
XState z_to_x(const LinearChange& A, const ZState& s);

/// The generating (A, alpha, beta), kept so closed-form solving stays available.
struct Provenance {
  LinearChange change;
  XParams x_params;
};

/// a[n][j] multiplies z1^2, z2^2, z1 z2 (j = 0, 1, 2) in the update of z_{n+1}.
using ZCoefficients = std::array<std::array<Scalar, 3>, 2>;

class ZParams {
 public:
  /// Raw coefficients; iteration only.
  explicit ZParams(ZCoefficients a) : a_(std::move(a)) {}

  const ZCoefficients& a() const { return a_; }
  const Scalar& a(int n, int j) const { return a_[n][j]; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  friend ZParams conjugate_params(const LinearChange& A, const Scalar& alpha, const Scalar& beta);

 private:
  ZCoefficients a_;
  std::optional<Provenance> provenance_;
};

ZParams conjugate_params(const LinearChange& A, const Scalar& alpha, const Scalar& beta);

ZState z_step(const ZParams& p, const ZState& s);
std::vector<ZState> z_orbit(const ZParams& p, const ZState& s0, TimeIndex horizon);

/// Identity residual of one z_step, evaluated in x coordinates. Needs provenance.
std::pair<Scalar, Scalar> z_step_residual(const ZParams& p, const ZState& s);

/// Closed-form image multiset at time l. DomainError without provenance.
ZImage z_orbit_closed(const ZParams& p, const ZState& s0, TimeIndex l);

// ---------------------------------------------------------------------------
// Shifted system

/// Assigned shift f(l) = (f1(l), f2(l)): a finite table, an affine rule
/// offset + slope * l, or a geometric rule scale * ratio^l.
class ShiftSequence {
 public:
  struct Table {
    std::vector<std::pair<Scalar, Scalar>> values;
  };
  struct Affine {
    std::array<Scalar, 2> offset;
    std::array<Scalar, 2> slope;
  };
  struct Geometric {
    std::array<Scalar, 2> scale;
    std::array<Scalar, 2> ratio;
  };
  using Rule = std::variant<Table, Affine, Geometric>;

  static ShiftSequence table(std::vector<std::pair<Scalar, Scalar>> values);
  static ShiftSequence affine(std::array<Scalar, 2> offset, std::array<Scalar, 2> slope);
  static ShiftSequence geometric(std::array<Scalar, 2> scale, std::array<Scalar, 2> ratio);
  static ShiftSequence zero(const BackendSpec& spec = BackendSpec::exact());

  /// ShiftExhausted past the end of a table.
  std::pair<Scalar, Scalar> at(TimeIndex l) const;
  const Rule& rule() const { return rule_; }

 private:
  explicit ShiftSequence(Rule rule) : rule_(std::move(rule)) {}
  Rule rule_;
};

struct WCoefficients {
  std::array<std::array<Scalar, 2>, 2> g;  // g[n][m] multiplies w_{m+1} in w'_{n+1}
  std::array<Scalar, 2> h;
};

WCoefficients w_coefficients(const ZParams& p, const ShiftSequence& f, TimeIndex l);

WState w_step(const ZParams& p, const ShiftSequence& f, TimeIndex l, const WState& s);
std::vector<WState> w_orbit(const ZParams& p, const ShiftSequence& f, const WState& s0,
                            TimeIndex horizon);

/// Closed-form image at time l: z_orbit_closed from w(0) + f(0), shifted by -f(l).
WImage w_orbit_closed(const ZParams& p, const ShiftSequence& f, const WState& s0, TimeIndex l);

}  // namespace solvable

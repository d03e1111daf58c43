#pragma once

// The zeros-side system: x1, x2 are the two roots of z^2 + y1 z + y2, and
// evolve by homogeneous quadratic recursions inherited from the coefficient
// system through the Vieta correspondence.

#include "solvable/numerics.hpp"
#include "solvable/ysystem.hpp"

#include <array>
#include <utility>

namespace solvable {

/// (alpha, beta) with gamma = (alpha^2 - beta^2) / 4 derived, never set.
class XParams {
 public:
  XParams(Scalar alpha, Scalar beta);

  const Scalar& alpha() const { return alpha_; }
  const Scalar& beta() const { return beta_; }
  const Scalar& gamma() const { return gamma_; }
  YParams y_params() const { return {alpha_, beta_, gamma_}; }

 private:
  Scalar alpha_;
  Scalar beta_;
  Scalar gamma_;
};

/// Labeled pair; the order matters under iteration.
struct XState {
  Scalar x1;
  Scalar x2;

  friend bool operator==(const XState& a, const XState& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
};

/// a[n][j] multiplies x1^2, x2^2, x1 x2 (j = 0, 1, 2) in the update of x_{n+1}.
struct XCoefficients {
  std::array<std::array<Scalar, 3>, 2> a;
};

/// Unordered pair of scalars, stored in lexicographic order.
class RootPair {
 public:
  RootPair(Scalar a, Scalar b);

  const Scalar& first() const { return first_; }
  const Scalar& second() const { return second_; }
  bool contains(const Scalar& v) const { return first_ == v || second_ == v; }

  friend bool operator==(const RootPair& a, const RootPair& b) {
    return a.first_ == b.first_ && a.second_ == b.second_;
  }

 private:
  Scalar first_;
  Scalar second_;
};

/// Best of the two matchings under `approximately_equal`.
bool approximately_equal(const RootPair& a, const RootPair& b, const Tolerance& tol);

/// (-(x1 + x2), x1 x2).
YState vieta(const XState& s);

/// Roots of z^2 + y1 z + y2. NotPerfectSquare in the exact backend when the
/// discriminant has no Gaussian-rational square root.
RootPair roots_of_monic_quadratic(const YState& y);

XCoefficients x_coefficients(const XParams& p);

XState x_step(const XCoefficients& c, const XState& s);
XState x_step(const XParams& p, const XState& s);

/// beta (x1^2 - x2^2): the + branch of the square root of delta_squared_rhs.
Scalar delta(const XParams& p, const XState& s);

/// (x1 + x2)^2 [ (alpha^2 - 4 gamma)(x1 + x2)^2 - 4 beta^2 x1 x2 ].
Scalar delta_squared_rhs(const XParams& p, const XState& s);

/// Left-hand sides of
///   (x'_n - x1)(x'_n - x2) + (y1' - y1) x'_n + y2' - y2,   n = 1, 2.
std::pair<Scalar, Scalar> identity_residual(const XState& s, const XState& next, const YState& y,
                                            const YState& y_next);

/// Residual of one x_step against the y_step of its Vieta image.
std::pair<Scalar, Scalar> step_residual(const XParams& p, const XState& s);

/// Multiset {x1(l), x2(l)} via the closed-form y route and root extraction.
RootPair x_orbit_closed(const XParams& p, const XState& s0, TimeIndex l);

std::vector<XState> x_orbit(const XParams& p, const XState& s0, TimeIndex horizon);

}  // namespace solvable

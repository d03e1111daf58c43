#include "solvable/xsystem.hpp"

#include "solvable/errors.hpp"

namespace solvable {

XParams::XParams(Scalar alpha, Scalar beta)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      gamma_((alpha_.square() - beta_.square()) / alpha_.like(4)) {}

RootPair::RootPair(Scalar a, Scalar b) : first_(std::move(a)), second_(std::move(b)) {
  if (lexicographic_less(second_, first_)) std::swap(first_, second_);
}

bool approximately_equal(const RootPair& a, const RootPair& b, const Tolerance& tol) {
  const bool straight = approximately_equal(a.first(), b.first(), tol) &&
                        approximately_equal(a.second(), b.second(), tol);
  return straight || (approximately_equal(a.first(), b.second(), tol) &&
                      approximately_equal(a.second(), b.first(), tol));
}

YState vieta(const XState& s) { return {-(s.x1 + s.x2), s.x1 * s.x2}; }

RootPair roots_of_monic_quadratic(const YState& y) {
  const Scalar disc = y.y1.square() - y.y2 * y.y1.like(4);
  const auto root = square_root(disc);
  if (!root) {
    throw NotPerfectSquare("discriminant " + to_string(disc) +
                           " is not a square of a Gaussian rational");
  }
  const Scalar two = y.y1.like(2);
  if (y.y1.is_exact()) {
    return RootPair((-y.y1 + *root) / two, (-y.y1 - *root) / two);
  }

  // Larger-magnitude root first, the other from the product y2.
  const auto [b_re, b_im] = y.y1.to_doubles();
  const auto [r_re, r_im] = root->to_doubles();
  const bool same_side = b_re * r_re + b_im * r_im >= 0.0;
  const Scalar q = same_side ? -(y.y1 + *root) / two : -(y.y1 - *root) / two;
  if (q.is_zero()) return RootPair(q, q);
  return RootPair(q, y.y2 / q);
}

XCoefficients x_coefficients(const XParams& p) {
  const Scalar two = p.alpha().like(2);
  // n = 1 carries (-1)^n = -1, n = 2 carries +1.
  const Scalar plus = (p.alpha() + p.beta()) / two;
  const Scalar minus = (p.alpha() - p.beta()) / two;
  return {{{
      {{-minus, -plus, -p.alpha()}},
      {{-plus, -minus, -p.alpha()}},
  }}};
}

XState x_step(const XCoefficients& c, const XState& s) {
  const Scalar sq1 = s.x1.square();
  const Scalar sq2 = s.x2.square();
  const Scalar cross = s.x1 * s.x2;
  auto row = [&](const std::array<Scalar, 3>& a) { return a[0] * sq1 + a[1] * sq2 + a[2] * cross; };
  return {row(c.a[0]), row(c.a[1])};
}

XState x_step(const XParams& p, const XState& s) { return x_step(x_coefficients(p), s); }

Scalar delta(const XParams& p, const XState& s) { return p.beta() * (s.x1.square() - s.x2.square()); }

Scalar delta_squared_rhs(const XParams& p, const XState& s) {
  const Scalar sum_sq = (s.x1 + s.x2).square();
  const Scalar four = p.alpha().like(4);
  return sum_sq * ((p.alpha().square() - four * p.gamma()) * sum_sq -
                   four * p.beta().square() * s.x1 * s.x2);
}

std::pair<Scalar, Scalar> identity_residual(const XState& s, const XState& next, const YState& y,
                                            const YState& y_next) {
  auto residual = [&](const Scalar& xn) {
    return (xn - s.x1) * (xn - s.x2) + (y_next.y1 - y.y1) * xn + y_next.y2 - y.y2;
  };
  return {residual(next.x1), residual(next.x2)};
}

std::pair<Scalar, Scalar> step_residual(const XParams& p, const XState& s) {
  const YState y = vieta(s);
  return identity_residual(s, x_step(p, s), y, y_step(p.y_params(), y));
}

RootPair x_orbit_closed(const XParams& p, const XState& s0, TimeIndex l) {
  if (p.alpha().is_zero() || p.beta().is_zero()) {
    throw DomainError("closed-form x orbit requires alpha != 0 and beta != 0; use the iterated method");
  }
  if (l == 0) return RootPair(s0.x1, s0.x2);
  return roots_of_monic_quadratic(y_closed(p.y_params(), vieta(s0), l));
}

std::vector<XState> x_orbit(const XParams& p, const XState& s0, TimeIndex horizon) {
  const XCoefficients c = x_coefficients(p);
  std::vector<XState> orbit{s0};
  orbit.reserve(static_cast<std::size_t>(horizon) + 1);
  for (TimeIndex l = 0; l < horizon; ++l) orbit.push_back(x_step(c, orbit.back()));
  return orbit;
}

}  // namespace solvable

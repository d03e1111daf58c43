#include "solvable/ysystem.hpp"

#include "solvable/errors.hpp"

namespace solvable {

YState y_step(const YParams& p, const YState& s) {
  const Scalar y1_sq = s.y1.square();
  return {p.alpha * y1_sq, p.beta.square() * y1_sq * s.y2 + p.gamma * y1_sq.square()};
}

Scalar y1_closed(const Scalar& alpha, const Scalar& y1_0, TimeIndex l) {
  if (alpha.is_zero()) {
    throw DomainError("closed-form y1 requires alpha != 0; use the iterated method");
  }
  return pow_tower(alpha * y1_0, l) / alpha;
}

Scalar y2_closed(const YParams& p, const YState& s0, TimeIndex l) {
  if (p.alpha.is_zero() || p.beta.is_zero()) {
    throw DomainError("closed-form y2 requires alpha != 0 and beta != 0; use the iterated method");
  }
  if (l == 0) return s0.y2;

  const Scalar c = p.alpha * s0.y1;
  const Scalar c_sq = c.square();

  // c^(2^(l+1)-2) = c^2 * c^4 * ... * c^(2^l)
  Scalar tower_product = c.like(1);
  Scalar level = c;
  for (TimeIndex k = 1; k <= l; ++k) {
    level = level.square();
    tower_product *= level;
    if (tower_product.is_zero()) return tower_product;
  }

  const Scalar ratio_sq = (p.alpha / p.beta).square();
  const Scalar sum = geometric_sum(ratio_sq, l);
  const Scalar bracket = s0.y2 + p.gamma / (p.alpha * p.beta).square() * sum * c_sq;
  return (p.beta / p.alpha).square().pow(l) * tower_product * bracket;
}

YState y_closed(const YParams& p, const YState& s0, TimeIndex l) {
  return {y1_closed(p.alpha, s0.y1, l), y2_closed(p, s0, l)};
}

std::vector<YState> y_orbit(const YParams& p, const YState& s0, TimeIndex horizon, Method method) {
  std::vector<YState> orbit;
  orbit.reserve(static_cast<std::size_t>(horizon) + 1);
  if (method == Method::iterated) {
    orbit.push_back(s0);
    for (TimeIndex l = 0; l < horizon; ++l) orbit.push_back(y_step(p, orbit.back()));
  } else {
    for (TimeIndex l = 0; l <= horizon; ++l) orbit.push_back(y_closed(p, s0, l));
  }
  return orbit;
}

}  // namespace solvable

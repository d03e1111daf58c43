#pragma once

// The coefficient system
//
//   y1' = alpha * y1^2
//   y2' = beta^2 * y1^2 * y2 + gamma * y1^4
//
// with its explicit solution of the initial-value problem.

#include "solvable/numerics.hpp"

#include <vector>

namespace solvable {

enum class Method { iterated, closed };

struct YParams {
  Scalar alpha;
  Scalar beta;
  Scalar gamma;
};

struct YState {
  Scalar y1;
  Scalar y2;

  friend bool operator==(const YState& a, const YState& b) { return a.y1 == b.y1 && a.y2 == b.y2; }
};

YState y_step(const YParams& p, const YState& s);

/// alpha^-1 (alpha y1(0))^(2^l). DomainError when alpha == 0.
Scalar y1_closed(const Scalar& alpha, const Scalar& y1_0, TimeIndex l);

/// (beta/alpha)^(2l) c^(2^(l+1)-2) { y2(0) + gamma (alpha beta)^-2 G c^2 } with
/// c = alpha y1(0) and G = sum_{s<l} (alpha/beta)^(2s); the ratio-one case
/// (alpha = +-beta) uses G = l. DomainError when alpha == 0 or beta == 0.
Scalar y2_closed(const YParams& p, const YState& s0, TimeIndex l);

YState y_closed(const YParams& p, const YState& s0, TimeIndex l);

/// States s(0..horizon). The closed method evaluates every point independently.
std::vector<YState> y_orbit(const YParams& p, const YState& s0, TimeIndex horizon, Method method);

}  // namespace solvable

#include "solvable/ensemble.hpp"

namespace solvable {

batch::Complex to_complex(const Scalar& s) {
  const auto [re, im] = s.to_doubles();
  return {re, im};
}

Scalar from_complex(batch::Complex c) { return Scalar::floating(c.re, c.im, 53); }

batch::QuadraticMap quadratic_map(const ZCoefficients& a) {
  batch::QuadraticMap m;
  for (int n = 0; n < 2; ++n)
    for (int j = 0; j < 3; ++j) m.a[n][j] = to_complex(a[n][j]);
  return m;
}

batch::QuadraticMap quadratic_map(const XCoefficients& c) { return quadratic_map(c.a); }

batch::CoefficientMap coefficient_map(const YParams& p) {
  const Scalar beta = p.beta.to_floating(53);
  return {to_complex(p.alpha), to_complex(beta.square()), to_complex(p.gamma)};
}

namespace {

template <class State, class Get>
batch::Ensemble build(std::span<const State> states, Get get) {
  batch::Ensemble e(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [u, v] = get(states[i]);
    const batch::Complex cu = to_complex(u), cv = to_complex(v);
    e.u_re[i] = cu.re;
    e.u_im[i] = cu.im;
    e.v_re[i] = cv.re;
    e.v_im[i] = cv.im;
  }
  return e;
}

}  // namespace

batch::Ensemble make_ensemble(std::span<const ZState> states) {
  return build(states, [](const ZState& s) { return std::pair<const Scalar&, const Scalar&>{s.z1, s.z2}; });
}

batch::Ensemble make_ensemble(std::span<const YState> states) {
  return build(states, [](const YState& s) { return std::pair<const Scalar&, const Scalar&>{s.y1, s.y2}; });
}

std::vector<ZState> z_states(const batch::Ensemble& e) {
  std::vector<ZState> out;
  out.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    out.push_back({from_complex({e.u_re[i], e.u_im[i]}), from_complex({e.v_re[i], e.v_im[i]})});
  return out;
}

std::vector<YState> y_states(const batch::Ensemble& e) {
  std::vector<YState> out;
  out.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    out.push_back({from_complex({e.u_re[i], e.u_im[i]}), from_complex({e.v_re[i], e.v_im[i]})});
  return out;
}

}  // namespace solvable

#include "solvable/batch.hpp"

namespace solvable::batch::detail {

namespace {

Complex mul(Complex a, Complex b) {
  const double rr = a.re * b.re;
  const double ii = a.im * b.im;
  const double ri = a.re * b.im;
  const double ir = a.im * b.re;
  return {rr - ii, ri + ir};
}

Complex add(Complex a, Complex b) { return {a.re + b.re, a.im + b.im}; }

}  // namespace

void quadratic_scalar(const QuadraticMap& map, Columns c, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const Complex u{c.u_re[i], c.u_im[i]};
    const Complex v{c.v_re[i], c.v_im[i]};
    const Complex sq1 = mul(u, u);
    const Complex sq2 = mul(v, v);
    const Complex cross = mul(u, v);
    const auto& a = map.a;
    const Complex n1 = add(add(mul(a[0][0], sq1), mul(a[0][1], sq2)), mul(a[0][2], cross));
    const Complex n2 = add(add(mul(a[1][0], sq1), mul(a[1][1], sq2)), mul(a[1][2], cross));
    c.u_re[i] = n1.re;
    c.u_im[i] = n1.im;
    c.v_re[i] = n2.re;
    c.v_im[i] = n2.im;
  }
}

void coefficient_scalar(const CoefficientMap& map, Columns c, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const Complex u{c.u_re[i], c.u_im[i]};
    const Complex v{c.v_re[i], c.v_im[i]};
    const Complex u_sq = mul(u, u);
    const Complex n1 = mul(map.alpha, u_sq);
    const Complex n2 = add(mul(mul(map.beta_sq, u_sq), v), mul(map.gamma, mul(u_sq, u_sq)));
    c.u_re[i] = n1.re;
    c.u_im[i] = n1.im;
    c.v_re[i] = n2.re;
    c.v_im[i] = n2.im;
  }
}

}  // namespace solvable::batch::detail

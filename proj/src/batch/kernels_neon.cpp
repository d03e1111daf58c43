#include "solvable/batch.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace solvable::batch::detail {

#if defined(__aarch64__) && defined(__ARM_NEON)

namespace {

struct Vec {
  float64x2_t re;
  float64x2_t im;
};

inline Vec broadcast(Complex c) { return {vdupq_n_f64(c.re), vdupq_n_f64(c.im)}; }

// Separate multiply and add/subtract; vfmaq is never used.
inline Vec mul(Vec a, Vec b) {
  const float64x2_t rr = vmulq_f64(a.re, b.re);
  const float64x2_t ii = vmulq_f64(a.im, b.im);
  const float64x2_t ri = vmulq_f64(a.re, b.im);
  const float64x2_t ir = vmulq_f64(a.im, b.re);
  return {vsubq_f64(rr, ii), vaddq_f64(ri, ir)};
}

inline Vec add(Vec a, Vec b) { return {vaddq_f64(a.re, b.re), vaddq_f64(a.im, b.im)}; }

inline Vec load(const double* re, const double* im, std::size_t i) {
  return {vld1q_f64(re + i), vld1q_f64(im + i)};
}

inline void store(double* re, double* im, std::size_t i, Vec v) {
  vst1q_f64(re + i, v.re);
  vst1q_f64(im + i, v.im);
}

}  // namespace

std::size_t quadratic_neon(const QuadraticMap& map, Columns c, std::size_t n) {
  const Vec a00 = broadcast(map.a[0][0]), a01 = broadcast(map.a[0][1]), a02 = broadcast(map.a[0][2]);
  const Vec a10 = broadcast(map.a[1][0]), a11 = broadcast(map.a[1][1]), a12 = broadcast(map.a[1][2]);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const Vec u = load(c.u_re, c.u_im, i);
    const Vec v = load(c.v_re, c.v_im, i);
    const Vec sq1 = mul(u, u);
    const Vec sq2 = mul(v, v);
    const Vec cross = mul(u, v);
    store(c.u_re, c.u_im, i, add(add(mul(a00, sq1), mul(a01, sq2)), mul(a02, cross)));
    store(c.v_re, c.v_im, i, add(add(mul(a10, sq1), mul(a11, sq2)), mul(a12, cross)));
  }
  return i;
}

std::size_t coefficient_neon(const CoefficientMap& map, Columns c, std::size_t n) {
  const Vec alpha = broadcast(map.alpha);
  const Vec beta_sq = broadcast(map.beta_sq);
  const Vec gamma = broadcast(map.gamma);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const Vec u = load(c.u_re, c.u_im, i);
    const Vec v = load(c.v_re, c.v_im, i);
    const Vec u_sq = mul(u, u);
    store(c.u_re, c.u_im, i, mul(alpha, u_sq));
    store(c.v_re, c.v_im, i, add(mul(mul(beta_sq, u_sq), v), mul(gamma, mul(u_sq, u_sq))));
  }
  return i;
}

#else

std::size_t quadratic_neon(const QuadraticMap&, Columns, std::size_t) { return 0; }
std::size_t coefficient_neon(const CoefficientMap&, Columns, std::size_t) { return 0; }

#endif

}  // namespace solvable::batch::detail

#include "solvable/batch.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace solvable::batch::detail {

#if defined(__AVX2__)

namespace {

struct Vec {
  __m256d re;
  __m256d im;
};

inline Vec broadcast(Complex c) { return {_mm256_set1_pd(c.re), _mm256_set1_pd(c.im)}; }

inline Vec mul(Vec a, Vec b) {
  const __m256d rr = _mm256_mul_pd(a.re, b.re);
  const __m256d ii = _mm256_mul_pd(a.im, b.im);
  const __m256d ri = _mm256_mul_pd(a.re, b.im);
  const __m256d ir = _mm256_mul_pd(a.im, b.re);
  return {_mm256_sub_pd(rr, ii), _mm256_add_pd(ri, ir)};
}

inline Vec add(Vec a, Vec b) { return {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)}; }

inline Vec load(const double* re, const double* im, std::size_t i) {
  return {_mm256_loadu_pd(re + i), _mm256_loadu_pd(im + i)};
}

inline void store(double* re, double* im, std::size_t i, Vec v) {
  _mm256_storeu_pd(re + i, v.re);
  _mm256_storeu_pd(im + i, v.im);
}

}  // namespace

std::size_t quadratic_avx2(const QuadraticMap& map, Columns c, std::size_t n) {
  const Vec a00 = broadcast(map.a[0][0]), a01 = broadcast(map.a[0][1]), a02 = broadcast(map.a[0][2]);
  const Vec a10 = broadcast(map.a[1][0]), a11 = broadcast(map.a[1][1]), a12 = broadcast(map.a[1][2]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
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

std::size_t coefficient_avx2(const CoefficientMap& map, Columns c, std::size_t n) {
  const Vec alpha = broadcast(map.alpha);
  const Vec beta_sq = broadcast(map.beta_sq);
  const Vec gamma = broadcast(map.gamma);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const Vec u = load(c.u_re, c.u_im, i);
    const Vec v = load(c.v_re, c.v_im, i);
    const Vec u_sq = mul(u, u);
    store(c.u_re, c.u_im, i, mul(alpha, u_sq));
    store(c.v_re, c.v_im, i, add(mul(mul(beta_sq, u_sq), v), mul(gamma, mul(u_sq, u_sq))));
  }
  return i;
}

#else

std::size_t quadratic_avx2(const QuadraticMap&, Columns, std::size_t) { return 0; }
std::size_t coefficient_avx2(const CoefficientMap&, Columns, std::size_t) { return 0; }

#endif

}  // namespace solvable::batch::detail

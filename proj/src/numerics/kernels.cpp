#include "solvable/numerics.hpp"

namespace solvable {

Scalar pow_tower(const Scalar& base, TimeIndex levels) {
  Scalar value = base;
  for (TimeIndex k = 0; k < levels; ++k) {
    // Zero and one are fixed by squaring; stop early so huge level counts stay cheap.
    if (value.is_zero() || value.is_one()) break;
    value = value.square();
  }
  return value;
}

namespace {

bool ratio_is_one(const Scalar& ratio, double ratio_one_factor) {
  if (ratio.is_exact()) return ratio.is_one();
  const FloatComplex& r = ratio.floating();
  const mpfr_prec_t prec = r.precision();
  BigFloat re_minus_one(prec), gap(prec), bound(prec);
  mpfr_sub_ui(re_minus_one.get(), r.re.get(), 1, MPFR_RNDN);
  mpfr_hypot(gap.get(), re_minus_one.get(), r.im.get(), MPFR_RNDN);
  mpfr_hypot(bound.get(), r.re.get(), r.im.get(), MPFR_RNDN);
  mpfr_mul_d(bound.get(), bound.get(), ratio_one_factor, MPFR_RNDN);
  mpfr_mul_2si(bound.get(), bound.get(), 1 - static_cast<long>(prec), MPFR_RNDN);  // * eps
  return mpfr_lessequal_p(gap.get(), bound.get()) != 0;
}

}  // namespace

constexpr TimeIndex kHornerLimit = 64;

Scalar geometric_sum(const Scalar& ratio, TimeIndex count, double ratio_one_factor) {
  if (count == 0) return ratio.like(0);
  if (ratio_is_one(ratio, ratio_one_factor)) return Scalar::count(count, ratio.spec());
  const Scalar one = ratio.like(1);
  // The quotient form cancels badly for floating ratios near 1; short sums are
  // accumulated directly instead.
  if (!ratio.is_exact() && count <= kHornerLimit) {
    Scalar sum = one;
    for (TimeIndex k = 1; k < count; ++k) sum = sum * ratio + one;
    return sum;
  }
  return (ratio.pow(count) - one) / (ratio - one);
}

}  // namespace solvable

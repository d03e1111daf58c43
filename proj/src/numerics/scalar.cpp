#include "solvable/numerics.hpp"

#include "solvable/errors.hpp"

#include <atomic>
#include <limits>
#include <ostream>

namespace solvable {

namespace {

std::atomic<std::size_t> g_digit_budget{kDefaultDigitBudget};

void check_digits(const mpz_class& z) {
  const std::size_t budget = g_digit_budget.load(std::memory_order_relaxed);
  // mpz_sizeinbase may overestimate by one; that only tightens the budget.
  const std::size_t digits = mpz_sizeinbase(z.get_mpz_t(), 10);
  if (digits > budget) {
    throw ResourceError("exact value needs " + std::to_string(digits) +
                        " decimal digits, exceeding the digit budget of " +
                        std::to_string(budget) + " (raise it with --digit-budget)");
  }
}

const GaussianRational& budgeted(const GaussianRational& v) {
  check_digits(v.re.get_num());
  check_digits(v.re.get_den());
  check_digits(v.im.get_num());
  check_digits(v.im.get_den());
  return v;
}

// (re + im i) / den with integer re, im: one gcd pass per component instead of
// one per intermediate rational.
struct CommonForm {
  mpz_class re, im, den;
};

CommonForm common_form(const GaussianRational& v) {
  const mpz_class& dr = v.re.get_den();
  const mpz_class& di = v.im.get_den();
  if (dr == di) return {v.re.get_num(), v.im.get_num(), dr};
  const mpz_class g = gcd(dr, di);
  const mpz_class sr = di / g;
  const mpz_class si = dr / g;
  return {v.re.get_num() * sr, v.im.get_num() * si, dr * sr};
}

mpq_class reduced(mpz_class num, const mpz_class& den) {
  mpq_class q;
  mpz_swap(q.get_num_mpz_t(), num.get_mpz_t());
  q.get_den() = den;
  q.canonicalize();
  return q;
}

GaussianRational common_product(const CommonForm& x, const CommonForm& y) {
  const mpz_class rr = x.re * y.re;
  const mpz_class ii = x.im * y.im;
  mpz_class mixed = (x.re + x.im) * (y.re + y.im);
  mixed -= rr;
  mixed -= ii;
  const mpz_class den = x.den * y.den;
  return {reduced(rr - ii, den), reduced(std::move(mixed), den)};
}

GaussianRational common_square(const CommonForm& x) {
  const mpz_class den = x.den * x.den;
  return {reduced((x.re + x.im) * (x.re - x.im), den), reduced(2 * x.re * x.im, den)};
}

[[noreturn]] void mismatch(const char* what) {
  throw BackendMismatch(std::string("cannot combine exact and floating scalars in ") + what);
}

// Floating helpers. Every elementary operation rounds once to nearest at the
// result precision; the operation order matches the double-precision batch
// kernels so 53-bit results coincide with IEEE doubles.
FloatComplex make_float(mpfr_prec_t prec) { return {BigFloat(prec), BigFloat(prec)}; }

FloatComplex float_mul(const FloatComplex& a, const FloatComplex& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  FloatComplex out = make_float(prec);
  BigFloat t1(prec), t2(prec);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  return out;
}

FloatComplex float_div(const FloatComplex& a, const FloatComplex& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  BigFloat den(prec), t1(prec), t2(prec);
  mpfr_mul(t1.get(), b.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
  FloatComplex out = make_float(prec);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(out.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), out.re.get(), den.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), den.get(), MPFR_RNDN);
  return out;
}

FloatComplex to_float(const Scalar& s, mpfr_prec_t prec) {
  FloatComplex out = make_float(prec);
  if (s.is_exact()) {
    mpfr_set_q(out.re.get(), s.exact().re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(out.im.get(), s.exact().im.get_mpq_t(), MPFR_RNDN);
  } else {
    mpfr_set(out.re.get(), s.floating().re.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), s.floating().im.get(), MPFR_RNDN);
  }
  return out;
}

mpfr_prec_t working_precision(const Scalar& a, const Scalar& b) {
  mpfr_prec_t p = 53;
  if (!a.is_exact()) p = std::max(p, a.floating().precision());
  if (!b.is_exact()) p = std::max(p, b.floating().precision());
  return p + 64;
}

void magnitude(BigFloat& out, const FloatComplex& v) {
  mpfr_hypot(out.get(), v.re.get(), v.im.get(), MPFR_RNDN);
}

}  // namespace

std::string to_string(const BackendSpec& spec) {
  if (spec.kind == Backend::exact) return "exact";
  return "float(" + std::to_string(spec.precision) + ")";
}

// ---------------------------------------------------------------------------

std::size_t digit_budget() { return g_digit_budget.load(std::memory_order_relaxed); }

void set_digit_budget(std::size_t digits) {
  g_digit_budget.store(digits, std::memory_order_relaxed);
}

ScopedDigitBudget::ScopedDigitBudget(std::size_t digits) : saved_(digit_budget()) {
  set_digit_budget(digits);
}

ScopedDigitBudget::~ScopedDigitBudget() { set_digit_budget(saved_); }

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : value_(GaussianRational{0, 0}) {}

Scalar::Scalar(GaussianRational value) : value_(std::move(value)) {
  auto& v = std::get<GaussianRational>(value_);
  v.re.canonicalize();
  v.im.canonicalize();
}

Scalar::Scalar(FloatComplex value) : value_(std::move(value)) {}

Scalar Scalar::rational(const mpq_class& re, const mpq_class& im) {
  return Scalar(GaussianRational{re, im});
}

Scalar Scalar::integer(long value, const BackendSpec& spec) {
  if (spec.kind == Backend::exact) return rational(value, 0);
  return Scalar(FloatComplex{BigFloat(static_cast<double>(value), spec.precision),
                             BigFloat(0.0, spec.precision)});
}

Scalar Scalar::count(std::uint64_t value, const BackendSpec& spec) {
  mpz_class z;
  mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(value));
  Scalar exact = rational(mpq_class(z), 0);
  if (spec.kind == Backend::exact) return exact;
  return exact.to_floating(spec.precision);
}

Scalar Scalar::floating(double re, double im, unsigned precision) {
  return Scalar(FloatComplex{BigFloat(re, precision), BigFloat(im, precision)});
}

Scalar Scalar::like(long value) const { return integer(value, spec()); }

BackendSpec Scalar::spec() const {
  if (is_exact()) return BackendSpec::exact();
  return BackendSpec::floating(static_cast<unsigned>(floating().precision()));
}

const GaussianRational& Scalar::exact() const {
  if (!is_exact()) throw BackendMismatch("scalar is not exact");
  return std::get<GaussianRational>(value_);
}

const FloatComplex& Scalar::floating() const {
  if (is_exact()) throw BackendMismatch("scalar is not floating");
  return std::get<FloatComplex>(value_);
}

bool Scalar::is_zero() const {
  if (is_exact()) return sgn(exact().re) == 0 && sgn(exact().im) == 0;
  return floating().re.is_zero() && floating().im.is_zero();
}

bool Scalar::is_one() const {
  if (is_exact()) return exact().re == 1 && sgn(exact().im) == 0;
  return mpfr_cmp_ui(floating().re.get(), 1) == 0 && floating().im.is_zero();
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(GaussianRational{-exact().re, -exact().im});
  FloatComplex out = floating();
  mpfr_neg(out.re.get(), out.re.get(), MPFR_RNDN);
  mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
  return Scalar(std::move(out));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (is_exact() != rhs.is_exact()) mismatch("addition");
  if (is_exact()) {
    auto& v = std::get<GaussianRational>(value_);
    v.re += rhs.exact().re;
    v.im += rhs.exact().im;
    budgeted(v);
  } else {
    auto& v = std::get<FloatComplex>(value_);
    const mpfr_prec_t prec = std::max(v.precision(), rhs.floating().precision());
    FloatComplex out = make_float(prec);
    mpfr_add(out.re.get(), v.re.get(), rhs.floating().re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), v.im.get(), rhs.floating().im.get(), MPFR_RNDN);
    v = std::move(out);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (is_exact() != rhs.is_exact()) mismatch("subtraction");
  if (is_exact()) {
    auto& v = std::get<GaussianRational>(value_);
    v.re -= rhs.exact().re;
    v.im -= rhs.exact().im;
    budgeted(v);
  } else {
    auto& v = std::get<FloatComplex>(value_);
    const mpfr_prec_t prec = std::max(v.precision(), rhs.floating().precision());
    FloatComplex out = make_float(prec);
    mpfr_sub(out.re.get(), v.re.get(), rhs.floating().re.get(), MPFR_RNDN);
    mpfr_sub(out.im.get(), v.im.get(), rhs.floating().im.get(), MPFR_RNDN);
    v = std::move(out);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_exact() != rhs.is_exact()) mismatch("multiplication");
  if (is_exact()) {
    auto& v = std::get<GaussianRational>(value_);
    const auto& r = rhs.exact();
    if (sgn(v.im) == 0 && sgn(r.im) == 0) {
      v.re *= r.re;
    } else {
      v = common_product(common_form(v), common_form(r));
    }
    budgeted(v);
  } else {
    value_ = float_mul(std::get<FloatComplex>(value_), rhs.floating());
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (is_exact() != rhs.is_exact()) mismatch("division");
  if (rhs.is_zero()) throw DomainError("division by zero");
  if (is_exact()) {
    auto& v = std::get<GaussianRational>(value_);
    const auto& r = rhs.exact();
    if (sgn(r.im) == 0) {
      v.re /= r.re;
      v.im /= r.re;
    } else {
      const mpq_class norm = r.re * r.re + r.im * r.im;
      mpq_class re = (v.re * r.re + v.im * r.im) / norm;
      mpq_class im = (v.im * r.re - v.re * r.im) / norm;
      v.re = std::move(re);
      v.im = std::move(im);
    }
    budgeted(v);
  } else {
    value_ = float_div(std::get<FloatComplex>(value_), rhs.floating());
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) mismatch("comparison");
  if (a.is_exact()) return a.exact() == b.exact();
  return a.floating() == b.floating();
}

Scalar Scalar::square() const {
  if (is_exact()) {
    const auto& v = exact();
    if (sgn(v.im) == 0) {
      GaussianRational out{v.re * v.re, 0};
      budgeted(out);
      return Scalar(std::move(out));
    }
    GaussianRational out = common_square(common_form(v));
    budgeted(out);
    return Scalar(std::move(out));
  }
  return Scalar(float_mul(floating(), floating()));
}

Scalar Scalar::pow(std::uint64_t exponent) const {
  Scalar result = like(1);
  Scalar base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base = base.square();
  }
  return result;
}

Scalar Scalar::to_floating(unsigned precision) const {
  return Scalar(to_float(*this, static_cast<mpfr_prec_t>(precision)));
}

std::pair<double, double> Scalar::to_doubles() const {
  if (is_exact()) {
    const FloatComplex f = to_float(*this, 53);
    return {f.re.to_double(), f.im.to_double()};
  }
  return {floating().re.to_double(), floating().im.to_double()};
}

bool lexicographic_less(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) mismatch("ordering");
  if (a.is_exact()) {
    const int c = cmp(a.exact().re, b.exact().re);
    return c < 0 || (c == 0 && a.exact().im < b.exact().im);
  }
  const int c = compare(a.floating().re, b.floating().re);
  return c < 0 || (c == 0 && compare(a.floating().im, b.floating().im) < 0);
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << to_string(value); }

// ---------------------------------------------------------------------------
// Tolerance comparisons

bool approximately_equal(const Scalar& a, const Scalar& b, const Tolerance& tol) {
  const mpfr_prec_t prec = working_precision(a, b);
  const FloatComplex fa = to_float(a, prec);
  const FloatComplex fb = to_float(b, prec);
  FloatComplex diff = make_float(prec);
  mpfr_sub(diff.re.get(), fa.re.get(), fb.re.get(), MPFR_RNDN);
  mpfr_sub(diff.im.get(), fa.im.get(), fb.im.get(), MPFR_RNDN);
  BigFloat dmag(prec), amag(prec), bmag(prec);
  magnitude(dmag, diff);
  magnitude(amag, fa);
  magnitude(bmag, fb);
  if (!dmag.is_finite()) return false;
  if (mpfr_cmp_d(dmag.get(), tol.absolute) <= 0) return true;
  BigFloat bound(prec);
  mpfr_max(bound.get(), amag.get(), bmag.get(), MPFR_RNDN);
  mpfr_mul_d(bound.get(), bound.get(), tol.relative, MPFR_RNDN);
  return mpfr_lessequal_p(dmag.get(), bound.get()) != 0;
}

double relative_error(const Scalar& approx, const Scalar& reference) {
  const mpfr_prec_t prec = working_precision(approx, reference);
  const FloatComplex fa = to_float(approx, prec);
  const FloatComplex fr = to_float(reference, prec);
  FloatComplex diff = make_float(prec);
  mpfr_sub(diff.re.get(), fa.re.get(), fr.re.get(), MPFR_RNDN);
  mpfr_sub(diff.im.get(), fa.im.get(), fr.im.get(), MPFR_RNDN);
  BigFloat dmag(prec), rmag(prec);
  magnitude(dmag, diff);
  magnitude(rmag, fr);
  if (dmag.is_zero()) return 0.0;
  if (rmag.is_zero()) return std::numeric_limits<double>::infinity();
  mpfr_div(dmag.get(), dmag.get(), rmag.get(), MPFR_RNDN);
  return dmag.to_double();
}

// ---------------------------------------------------------------------------
// Square roots

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

}  // namespace

std::optional<Scalar> square_root(const Scalar& value) {
  if (value.is_exact()) {
    const mpq_class& a = value.exact().re;
    const mpq_class& b = value.exact().im;
    const auto modulus = rational_sqrt(a * a + b * b);
    if (!modulus) return std::nullopt;
    const auto u = rational_sqrt((a + *modulus) / 2);
    if (!u) return std::nullopt;
    auto v = rational_sqrt((*modulus - a) / 2);
    if (!v) return std::nullopt;
    if (sgn(b) < 0) *v = -*v;
    return Scalar::rational(*u, *v);
  }

  const FloatComplex& w = value.floating();
  const mpfr_prec_t prec = w.precision();
  BigFloat t(prec), abs_re(prec);
  mpfr_hypot(t.get(), w.re.get(), w.im.get(), MPFR_RNDN);
  mpfr_abs(abs_re.get(), w.re.get(), MPFR_RNDN);
  mpfr_add(t.get(), t.get(), abs_re.get(), MPFR_RNDN);
  mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
  mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);  // sqrt((|w| + |re|) / 2)
  FloatComplex out = make_float(prec);
  if (t.is_zero()) return Scalar(std::move(out));
  BigFloat other(prec);
  mpfr_div(other.get(), w.im.get(), t.get(), MPFR_RNDN);
  mpfr_div_2ui(other.get(), other.get(), 1, MPFR_RNDN);  // im / (2 t)
  if (mpfr_sgn(w.re.get()) >= 0) {
    mpfr_set(out.re.get(), t.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), other.get(), MPFR_RNDN);
  } else {
    mpfr_abs(out.re.get(), other.get(), MPFR_RNDN);
    mpfr_setsign(out.im.get(), t.get(), mpfr_signbit(w.im.get()), MPFR_RNDN);
  }
  return Scalar(std::move(out));
}

}  // namespace solvable

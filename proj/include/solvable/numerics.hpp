#pragma once

// Backend-tagged complex scalars and the two evaluation kernels the closed
// forms are built on.
//
// The exact backend is the field of Gaussian rationals (GMP rationals for the
// real and imaginary parts); every operation is exact. The floating backend is
// a pair of MPFR numbers with per-value precision; results take the larger
// precision of their operands. The two never mix implicitly.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace solvable {

/// Discrete time. Non-negativity is carried by the type.
using TimeIndex = std::uint64_t;

enum class Backend { exact, floating };

struct BackendSpec {
  Backend kind = Backend::exact;
  unsigned precision = 53;  // bits; meaningful for the floating backend only

  static BackendSpec exact() { return {Backend::exact, 53}; }
  static BackendSpec floating(unsigned bits = 53) { return {Backend::floating, bits}; }

  friend bool operator==(const BackendSpec& a, const BackendSpec& b) {
    return a.kind == b.kind && (a.kind == Backend::exact || a.precision == b.precision);
  }
};

std::string to_string(const BackendSpec& spec);

// ---------------------------------------------------------------------------
// Digit budget

inline constexpr std::size_t kDefaultDigitBudget = 1'000'000;

/// Largest number of decimal digits any exact numerator or denominator may
/// reach before a ResourceError is raised. Process-wide.
std::size_t digit_budget();
void set_digit_budget(std::size_t digits);

class ScopedDigitBudget {
 public:
  explicit ScopedDigitBudget(std::size_t digits);
  ~ScopedDigitBudget();
  ScopedDigitBudget(const ScopedDigitBudget&) = delete;
  ScopedDigitBudget& operator=(const ScopedDigitBudget&) = delete;

 private:
  std::size_t saved_;
};

// ---------------------------------------------------------------------------
// Representations

/// RAII owner of an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 53);
  BigFloat(double value, mpfr_prec_t precision);
  BigFloat(const mpq_class& value, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

struct GaussianRational {
  mpq_class re;
  mpq_class im;

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

struct FloatComplex {
  BigFloat re;
  BigFloat im;

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  friend bool operator==(const FloatComplex& a, const FloatComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// ---------------------------------------------------------------------------
// Scalar

class Scalar {
 public:
  /// Exact zero.
  Scalar();
  explicit Scalar(GaussianRational value);
  explicit Scalar(FloatComplex value);

  static Scalar rational(const mpq_class& re, const mpq_class& im = 0);
  static Scalar integer(long value, const BackendSpec& spec = BackendSpec::exact());
  static Scalar count(std::uint64_t value, const BackendSpec& spec = BackendSpec::exact());
  static Scalar floating(double re, double im, unsigned precision = 53);

  /// Integer constant in the same backend (and precision) as this value.
  Scalar like(long value) const;

  Backend backend() const { return is_exact() ? Backend::exact : Backend::floating; }
  BackendSpec spec() const;
  bool is_exact() const { return std::holds_alternative<GaussianRational>(value_); }
  const GaussianRational& exact() const;
  const FloatComplex& floating() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Throws DomainError on division by zero.
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Value equality; BackendMismatch when backends differ.
  friend bool operator==(const Scalar& a, const Scalar& b);

  Scalar square() const;
  /// Square-and-multiply integer power; pow(0) == 1 (including 0^0).
  Scalar pow(std::uint64_t exponent) const;

  /// Explicit, total exact -> float (or float -> float) conversion.
  Scalar to_floating(unsigned precision) const;

  /// Nearest doubles of the two parts (saturating to inf / 0).
  std::pair<double, double> to_doubles() const;

  /// Lexicographic total order on (re, im); used to canonicalize unordered pairs.
  friend bool lexicographic_less(const Scalar& a, const Scalar& b);

 private:
  std::variant<GaussianRational, FloatComplex> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& value);

/// Exact: "p/q+r/si" in lowest terms with the sign on the numerator, e.g.
/// "3/4+-1/2i". Floating: "<re>+<im>i" in decimal scientific notation with
/// enough digits to round-trip at the value's precision.
std::string to_string(const Scalar& value);

/// Accepts both serialized forms plus the shorthands "3/4", "-2", "1-2i",
/// "i", "1.5e-3+2i". Exact text is converted when `target` is floating;
/// floating text with an exact target is rejected with BackendMismatch.
Scalar parse_scalar(std::string_view text, std::optional<BackendSpec> target = std::nullopt);

// ---------------------------------------------------------------------------
// Comparisons for the floating backend (evaluated in MPFR, so tiny and huge
// magnitudes do not underflow).

struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
};

/// |a - b| <= max(absolute, relative * max(|a|, |b|)). Either operand may be exact.
bool approximately_equal(const Scalar& a, const Scalar& b, const Tolerance& tol);

/// |approx - reference| / |reference|; 0 when both vanish, +inf when only the
/// reference does.
double relative_error(const Scalar& approx, const Scalar& reference);

// ---------------------------------------------------------------------------
// Kernels

/// base^(2^levels), by `levels` successive squarings.
Scalar pow_tower(const Scalar& base, TimeIndex levels);

inline constexpr double kRatioOneFactor = 8.0;

/// sum_{s=0}^{count-1} ratio^s. Returns `count` when ratio == 1 (exactly, or
/// for floats when |ratio - 1| <= ratio_one_factor * eps * |ratio|), and 0 for
/// count == 0.
Scalar geometric_sum(const Scalar& ratio, TimeIndex count,
                     double ratio_one_factor = kRatioOneFactor);

/// Exact backend: the square root if `value` is a perfect square in Q(i),
/// otherwise nullopt. Floating backend: the principal square root.
std::optional<Scalar> square_root(const Scalar& value);

}  // namespace solvable

#pragma once

// Double-precision ensemble kernels: many initial conditions of the same map
// advanced in lock step. Data is structure-of-arrays, one column per real or
// imaginary part of each component.
//
// Every instruction set variant performs the same IEEE operations in the same
// order as the scalar reference (no fused multiply-add), so all variants are
// bit-identical to each other and to the 53-bit floating Scalar backend while
// values stay in the normal double range.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace solvable::batch {

enum class Isa { scalar, avx2, neon };

std::string_view name(Isa isa);
bool available(Isa isa);

/// Widest available variant; the SOLVABLE_ISA environment variable ("scalar",
/// "avx2", "neon") overrides it when that variant is available.
Isa preferred();

struct Complex {
  double re = 0.0;
  double im = 0.0;
};

/// Columns (u, v) of an ensemble of two-component complex states.
struct Ensemble {
  std::vector<double> u_re, u_im, v_re, v_im;

  explicit Ensemble(std::size_t n = 0) : u_re(n), u_im(n), v_re(n), v_im(n) {}
  std::size_t size() const { return u_re.size(); }

  friend bool operator==(const Ensemble&, const Ensemble&) = default;
};

/// a[n][j] multiplies u^2, v^2, u v in the update of component n.
struct QuadraticMap {
  std::array<std::array<Complex, 3>, 2> a;
};

/// u' = alpha u^2, v' = beta^2 u^2 v + gamma u^4.
struct CoefficientMap {
  Complex alpha;
  Complex beta_sq;  // beta * beta, rounded as one complex product
  Complex gamma;
};

void step(const QuadraticMap& map, Ensemble& states, Isa isa = preferred());
void step(const CoefficientMap& map, Ensemble& states, Isa isa = preferred());

template <class Map>
void iterate(const Map& map, Ensemble& states, std::size_t steps, Isa isa = preferred()) {
  for (std::size_t k = 0; k < steps; ++k) step(map, states, isa);
}

namespace detail {

struct Columns {
  double* u_re;
  double* u_im;
  double* v_re;
  double* v_im;
};

// Each kernel processes the index range [begin, end).
void quadratic_scalar(const QuadraticMap& map, Columns c, std::size_t begin, std::size_t end);
void coefficient_scalar(const CoefficientMap& map, Columns c, std::size_t begin, std::size_t end);
// Return the first index not processed; the caller finishes with the scalar kernel.
std::size_t quadratic_avx2(const QuadraticMap& map, Columns c, std::size_t n);
std::size_t coefficient_avx2(const CoefficientMap& map, Columns c, std::size_t n);
std::size_t quadratic_neon(const QuadraticMap& map, Columns c, std::size_t n);
std::size_t coefficient_neon(const CoefficientMap& map, Columns c, std::size_t n);

}  // namespace detail

}  // namespace solvable::batch

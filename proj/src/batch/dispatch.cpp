#include "solvable/batch.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace solvable::batch {

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SOLVABLE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__) && defined(__ARM_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa preferred() {
  static const Isa choice = [] {
    if (const char* forced = std::getenv("SOLVABLE_ISA")) {
      for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (name(isa) == forced && available(isa)) return isa;
      }
    }
    if (available(Isa::avx2)) return Isa::avx2;
    if (available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return choice;
}

namespace {

detail::Columns columns(Ensemble& e) {
  return {e.u_re.data(), e.u_im.data(), e.v_re.data(), e.v_im.data()};
}

void require(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument("instruction set '" + std::string(name(isa)) +
                                "' is not available on this machine");
  }
}

}  // namespace

void step(const QuadraticMap& map, Ensemble& states, Isa isa) {
  require(isa);
  const detail::Columns c = columns(states);
  const std::size_t n = states.size();
  std::size_t done = 0;
  if (isa == Isa::avx2) done = detail::quadratic_avx2(map, c, n);
  if (isa == Isa::neon) done = detail::quadratic_neon(map, c, n);
  detail::quadratic_scalar(map, c, done, n);
}

void step(const CoefficientMap& map, Ensemble& states, Isa isa) {
  require(isa);
  const detail::Columns c = columns(states);
  const std::size_t n = states.size();
  std::size_t done = 0;
  if (isa == Isa::avx2) done = detail::coefficient_avx2(map, c, n);
  if (isa == Isa::neon) done = detail::coefficient_neon(map, c, n);
  detail::coefficient_scalar(map, c, done, n);
}

}  // namespace solvable::batch

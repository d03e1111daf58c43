#include "solvable/app/random.hpp"

namespace solvable::app {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long InstanceGenerator::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(engine_() % span);
}

mpq_class InstanceGenerator::rational() {
  const long num = integer(-9, 9);
  long den = 0;
  while (den == 0) den = integer(-9, 9);
  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

mpq_class InstanceGenerator::nonzero_rational() {
  mpq_class q = rational();
  while (sgn(q) == 0) q = rational();
  return q;
}

Scalar InstanceGenerator::gaussian() {
  mpq_class re = rational();
  mpq_class im = rational();
  return Scalar::rational(re, im);
}

Scalar InstanceGenerator::nonzero_gaussian() {
  Scalar s = gaussian();
  while (s.is_zero()) s = gaussian();
  return s;
}

LinearChange InstanceGenerator::change() {
  for (;;) {
    Scalar a11 = gaussian(), a12 = gaussian(), a21 = gaussian(), a22 = gaussian();
    if ((a11 * a22 - a12 * a21).is_zero()) continue;
    return LinearChange(a11, a12, a21, a22);
  }
}

}  // namespace solvable::app

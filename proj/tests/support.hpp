#pragma once

#include "solvable/numerics.hpp"

#include <doctest.h>

#include <ostream>
#include <string_view>

namespace test {

inline solvable::Scalar q(std::string_view text) { return solvable::parse_scalar(text); }

inline solvable::Scalar fl(std::string_view text, unsigned bits = 53) {
  return solvable::parse_scalar(text, solvable::BackendSpec::floating(bits));
}

}  // namespace test

namespace doctest {
template <>
struct StringMaker<solvable::Scalar> {
  static String convert(const solvable::Scalar& s) { return solvable::to_string(s).c_str(); }
};
}  // namespace doctest

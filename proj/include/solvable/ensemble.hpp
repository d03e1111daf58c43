#pragma once

// Bridges between the Scalar-based systems and the double-precision ensemble
// kernels.

#include "solvable/batch.hpp"
#include "solvable/ysystem.hpp"
#include "solvable/zsystem.hpp"

#include <span>
#include <vector>

namespace solvable {

batch::Complex to_complex(const Scalar& s);
Scalar from_complex(batch::Complex c);

batch::QuadraticMap quadratic_map(const ZCoefficients& a);
batch::QuadraticMap quadratic_map(const XCoefficients& c);
batch::CoefficientMap coefficient_map(const YParams& p);

batch::Ensemble make_ensemble(std::span<const ZState> states);
batch::Ensemble make_ensemble(std::span<const YState> states);
std::vector<ZState> z_states(const batch::Ensemble& e);
std::vector<YState> y_states(const batch::Ensemble& e);

}  // namespace solvable

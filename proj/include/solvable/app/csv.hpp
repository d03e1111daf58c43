#pragma once

#include "solvable/app/runner.hpp"

#include <ostream>

namespace solvable::app {

/// One row per orbit point (two for an image pair), CRLF line endings, header
///   method,l,kind,c1_re,c1_im,c2_re,c2_im,res1_re,res1_im,res2_re,res2_im
/// Values are nearest doubles; residual cells are empty where absent.
void write_csv(std::ostream& out, const OrbitRecord& record);

}  // namespace solvable::app

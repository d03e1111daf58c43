#include "solvable/app/csv.hpp"

#include <cstdio>

namespace solvable::app {

namespace {

std::string number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

void cells(std::ostream& out, const Scalar& s) {
  const auto [re, im] = s.to_doubles();
  out << ',' << number(re) << ',' << number(im);
}

const char* kind_label(EntryKind k) {
  switch (k) {
    case EntryKind::state: return "state";
    case EntryKind::roots: return "roots";
    case EntryKind::image: return "image";
    case EntryKind::symmetric: return "symmetric";
  }
  return "?";
}

}  // namespace

void write_csv(std::ostream& out, const OrbitRecord& record) {
  out << "method,l,kind,c1_re,c1_im,c2_re,c2_im,res1_re,res1_im,res2_re,res2_im\r\n";
  for (const Orbit& orbit : record.orbits) {
    const char* method = orbit.method == Method::iterated ? "iterated" : "closed";
    for (const OrbitEntry& e : orbit.entries) {
      for (const auto& values : e.values) {
        out << method << ',' << e.l << ',' << kind_label(e.kind);
        cells(out, values[0]);
        cells(out, values[1]);
        if (e.residual) {
          cells(out, (*e.residual)[0]);
          cells(out, (*e.residual)[1]);
        } else {
          out << ",,,,";
        }
        out << "\r\n";
      }
    }
  }
}

}  // namespace solvable::app

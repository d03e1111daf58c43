#include "solvable/app/runner.hpp"

#include "solvable/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace solvable::app {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

using Pair = std::array<Scalar, 2>;

OrbitEntry state_entry(TimeIndex l, const Scalar& a, const Scalar& b) {
  return {l, EntryKind::state, {Pair{a, b}}, std::nullopt};
}

Pair to_pair(const std::pair<Scalar, Scalar>& p) { return {p.first, p.second}; }

// --- iterated --------------------------------------------------------------

Orbit iterated_orbit(const RunConfig& c) {
  Orbit orbit{Method::iterated, {}};
  const Scalar& u0 = c.initial[0];
  const Scalar& v0 = c.initial[1];
  switch (c.system) {
    case SystemKind::y: {
      const auto states = y_orbit(y_params(c), {u0, v0}, c.horizon, Method::iterated);
      for (std::size_t l = 0; l < states.size(); ++l)
        orbit.entries.push_back(state_entry(l, states[l].y1, states[l].y2));
      break;
    }
    case SystemKind::x: {
      const XParams p = x_params(c);
      const auto states = x_orbit(p, {u0, v0}, c.horizon);
      for (std::size_t l = 0; l < states.size(); ++l) {
        OrbitEntry e = state_entry(l, states[l].x1, states[l].x2);
        e.residual = to_pair(step_residual(p, states[l]));
        orbit.entries.push_back(std::move(e));
      }
      break;
    }
    case SystemKind::z: {
      const ZParams p = z_params(c);
      const auto states = z_orbit(p, {u0, v0}, c.horizon);
      for (std::size_t l = 0; l < states.size(); ++l) {
        OrbitEntry e = state_entry(l, states[l].z1, states[l].z2);
        if (p.provenance()) e.residual = to_pair(z_step_residual(p, states[l]));
        orbit.entries.push_back(std::move(e));
      }
      break;
    }
    case SystemKind::w: {
      const auto states = w_orbit(z_params(c), *c.shift, {u0, v0}, c.horizon);
      for (std::size_t l = 0; l < states.size(); ++l)
        orbit.entries.push_back(state_entry(l, states[l].w1, states[l].w2));
      break;
    }
  }
  return orbit;
}

// --- closed ----------------------------------------------------------------

OrbitEntry symmetric_entry(TimeIndex l, const YState& y) {
  return {l, EntryKind::symmetric, {Pair{y.y1, y.y2}}, std::nullopt};
}

template <class State>
OrbitEntry image_entry(TimeIndex l, const StatePair<State>& image) {
  const auto [a1, a2] = components(image.first());
  const auto [b1, b2] = components(image.second());
  return {l, EntryKind::image, {Pair{a1, a2}, Pair{b1, b2}}, std::nullopt};
}

Orbit closed_orbit(const RunConfig& c) {
  Orbit orbit{Method::closed, {}};
  const Scalar& u0 = c.initial[0];
  const Scalar& v0 = c.initial[1];
  for (TimeIndex l = 0; l <= c.horizon; ++l) {
    switch (c.system) {
      case SystemKind::y: {
        const YState s = y_closed(y_params(c), {u0, v0}, l);
        orbit.entries.push_back(state_entry(l, s.y1, s.y2));
        break;
      }
      case SystemKind::x: {
        const XParams p = x_params(c);
        try {
          const RootPair r = x_orbit_closed(p, {u0, v0}, l);
          orbit.entries.push_back({l, EntryKind::roots, {Pair{r.first(), r.second()}}, std::nullopt});
        } catch (const NotPerfectSquare&) {
          orbit.entries.push_back(symmetric_entry(l, y_closed(p.y_params(), vieta({u0, v0}), l)));
        }
        break;
      }
      case SystemKind::z: {
        const ZParams p = z_params(c);
        try {
          orbit.entries.push_back(image_entry(l, z_orbit_closed(p, {u0, v0}, l)));
        } catch (const NotPerfectSquare&) {
          const Provenance& prov = *p.provenance();
          const YState y0 = vieta(z_to_x(prov.change, {u0, v0}));
          orbit.entries.push_back(symmetric_entry(l, y_closed(prov.x_params.y_params(), y0, l)));
        }
        break;
      }
      case SystemKind::w: {
        const ZParams p = z_params(c);
        try {
          orbit.entries.push_back(image_entry(l, w_orbit_closed(p, *c.shift, {u0, v0}, l)));
        } catch (const NotPerfectSquare&) {
          const Provenance& prov = *p.provenance();
          const auto f0 = c.shift->at(0);
          const YState y0 = vieta(z_to_x(prov.change, {u0 + f0.first, v0 + f0.second}));
          orbit.entries.push_back(symmetric_entry(l, y_closed(prov.x_params.y_params(), y0, l)));
        }
        break;
      }
    }
  }
  return orbit;
}

// --- comparison ------------------------------------------------------------

struct Match {
  bool equal = false;   // exact
  double error = 0.0;   // floating
  bool close = false;   // floating
};

Match compare_pair(const Pair& a, const Pair& b, const Tolerance& tol) {
  Match m;
  if (a[0].is_exact()) {
    m.equal = a[0] == b[0] && a[1] == b[1];
    return m;
  }
  m.error = std::max(relative_error(a[0], b[0]), relative_error(a[1], b[1]));
  m.close = approximately_equal(a[0], b[0], tol) && approximately_equal(a[1], b[1], tol);
  return m;
}

Match best_of(const Match& a, const Match& b) {
  return {a.equal || b.equal, std::min(a.error, b.error), a.close || b.close};
}

// Coefficients (y1, y2) of the monic quadratic whose roots are the x-image of
// the iterated state at time l.
Pair symmetric_of(const RunConfig& c, const Pair& state, TimeIndex l) {
  XState x{state[0], state[1]};
  if (c.system == SystemKind::z || c.system == SystemKind::w) {
    const ZParams p = z_params(c);
    ZState z{state[0], state[1]};
    if (c.system == SystemKind::w) {
      const auto f = c.shift->at(l);
      z = {z.z1 + f.first, z.z2 + f.second};
    }
    x = z_to_x(p.provenance()->change, z);
  }
  const YState y = vieta(x);
  return {y.y1, y.y2};
}

Comparison compare(const RunConfig& c, const Orbit& iterated, const Orbit& closed) {
  Comparison out;
  out.exact = c.backend.kind == Backend::exact;
  for (std::size_t k = 0; k < iterated.entries.size(); ++k) {
    const Pair& state = iterated.entries[k].values.front();
    const OrbitEntry& e = closed.entries[k];
    Match m;
    switch (e.kind) {
      case EntryKind::state:
        m = compare_pair(e.values[0], state, c.tolerance);
        break;
      case EntryKind::roots:
        m = best_of(compare_pair(e.values[0], state, c.tolerance),
                    compare_pair({e.values[0][1], e.values[0][0]}, state, c.tolerance));
        break;
      case EntryKind::image:
        m = best_of(compare_pair(e.values[0], state, c.tolerance),
                    compare_pair(e.values[1], state, c.tolerance));
        break;
      case EntryKind::symmetric:
        ++out.symmetric_only;
        m = compare_pair(e.values[0], symmetric_of(c, state, e.l), c.tolerance);
        break;
    }
    if (out.exact) {
      out.equal = out.equal && m.equal;
    } else {
      out.max_relative_error = std::max(out.max_relative_error, m.error);
      out.within_tolerance = out.within_tolerance && m.close;
    }
  }
  if (!out.exact) out.equal = out.within_tolerance;
  return out;
}

// --- JSON ------------------------------------------------------------------

std::string_view kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::state: return "state";
    case EntryKind::roots: return "roots";
    case EntryKind::image: return "image";
    case EntryKind::symmetric: return "symmetric";
  }
  return "?";
}

ordered_json pair_json(const Pair& p) { return {to_string(p[0]), to_string(p[1])}; }

Pair pair_from(const json& j, const BackendSpec& b) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("orbit entry values must be pairs");
  return {parse_scalar(j[0].get<std::string>(), b), parse_scalar(j[1].get<std::string>(), b)};
}

}  // namespace

OrbitRecord run(const RunConfig& config) {
  validate(config);
  ScopedDigitBudget budget(config.digit_budget);
  OrbitRecord record{config, {}, std::nullopt};
  if (config.method != RunMethod::closed) record.orbits.push_back(iterated_orbit(config));
  if (config.method != RunMethod::iterated) record.orbits.push_back(closed_orbit(config));
  if (config.method == RunMethod::both)
    record.comparison = compare(config, record.orbits[0], record.orbits[1]);
  return record;
}

ordered_json to_json(const OrbitRecord& r) {
  ordered_json j;
  j["config"] = to_json(r.config);
  ordered_json orbits = ordered_json::array();
  for (const Orbit& o : r.orbits) {
    ordered_json entries = ordered_json::array();
    for (const OrbitEntry& e : o.entries) {
      ordered_json entry;
      entry["l"] = e.l;
      if (e.kind == EntryKind::image) {
        entry["image"] = ordered_json::array({pair_json(e.values[0]), pair_json(e.values[1])});
      } else {
        entry[std::string(kind_name(e.kind))] = pair_json(e.values[0]);
      }
      if (e.residual) entry["residual"] = pair_json(*e.residual);
      entries.push_back(std::move(entry));
    }
    orbits.push_back({{"method", o.method == Method::iterated ? "iterated" : "closed"},
                      {"entries", std::move(entries)}});
  }
  j["orbits"] = std::move(orbits);
  if (r.comparison) {
    const Comparison& c = *r.comparison;
    ordered_json s;
    if (c.exact) {
      s["exact_equal"] = c.equal;
    } else {
      if (std::isfinite(c.max_relative_error)) {
        s["max_relative_error"] = c.max_relative_error;
      } else {
        s["max_relative_error"] = "inf";
      }
      s["within_tolerance"] = c.within_tolerance;
      s["relative_tolerance"] = r.config.tolerance.relative;
      s["absolute_tolerance"] = r.config.tolerance.absolute;
    }
    s["symmetric_only_points"] = c.symmetric_only;
    j["summary"] = std::move(s);
  }
  return j;
}

OrbitRecord record_from_json(const json& j) {
  try {
    OrbitRecord r;
    r.config = config_from_json(j.at("config"));
    const BackendSpec b = r.config.backend;
    for (const json& o : j.at("orbits")) {
      Orbit orbit;
      orbit.method = o.at("method").get<std::string>() == "closed" ? Method::closed : Method::iterated;
      for (const json& e : o.at("entries")) {
        OrbitEntry entry;
        entry.l = e.at("l").get<TimeIndex>();
        if (e.contains("image")) {
          entry.kind = EntryKind::image;
          entry.values = {pair_from(e.at("image")[0], b), pair_from(e.at("image")[1], b)};
        } else {
          bool found = false;
          for (EntryKind k : {EntryKind::state, EntryKind::roots, EntryKind::symmetric}) {
            const std::string key(kind_name(k));
            if (e.contains(key)) {
              entry.kind = k;
              entry.values = {pair_from(e.at(key), b)};
              found = true;
            }
          }
          if (!found) throw ConfigError("orbit entry without values");
        }
        if (e.contains("residual")) entry.residual = pair_from(e.at("residual"), b);
        orbit.entries.push_back(std::move(entry));
      }
      r.orbits.push_back(std::move(orbit));
    }
    if (j.contains("summary")) {
      const json& s = j.at("summary");
      Comparison c;
      c.exact = s.contains("exact_equal");
      if (c.exact) {
        c.equal = s.at("exact_equal").get<bool>();
      } else {
        const json& err = s.at("max_relative_error");
        c.max_relative_error =
            err.is_number() ? err.get<double>() : std::numeric_limits<double>::infinity();
        c.within_tolerance = s.at("within_tolerance").get<bool>();
        c.equal = c.within_tolerance;
      }
      c.symmetric_only = s.value("symmetric_only_points", std::size_t{0});
      r.comparison = c;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed orbit record: ") + e.what());
  }
}

}  // namespace solvable::app

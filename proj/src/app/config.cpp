#include "solvable/app/config.hpp"

#include "solvable/errors.hpp"

#include <fstream>
#include <sstream>

namespace solvable::app {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::y: return "y";
    case SystemKind::x: return "x";
    case SystemKind::z: return "z";
    case SystemKind::w: return "w";
  }
  return "?";
}

std::string_view to_string(RunMethod method) {
  switch (method) {
    case RunMethod::iterated: return "iterated";
    case RunMethod::closed: return "closed";
    case RunMethod::both: return "both";
  }
  return "?";
}

SystemKind parse_system(std::string_view text) {
  if (text == "y") return SystemKind::y;
  if (text == "x") return SystemKind::x;
  if (text == "z") return SystemKind::z;
  if (text == "w") return SystemKind::w;
  throw ConfigError("unknown system '" + std::string(text) + "' (expected y, x, z or w)");
}

RunMethod parse_method(std::string_view text) {
  if (text == "iterated") return RunMethod::iterated;
  if (text == "closed") return RunMethod::closed;
  if (text == "both") return RunMethod::both;
  throw ConfigError("unknown method '" + std::string(text) + "' (expected iterated, closed or both)");
}

// ---------------------------------------------------------------------------
// Equality

namespace {

bool same(const Scalar& a, const Scalar& b) { return a.spec() == b.spec() && a == b; }

bool same(const std::optional<Scalar>& a, const std::optional<Scalar>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same(*a, *b);
}

template <std::size_t N>
bool same(const std::array<Scalar, N>& a, const std::array<Scalar, N>& b) {
  for (std::size_t k = 0; k < N; ++k)
    if (!same(a[k], b[k])) return false;
  return true;
}

bool same(const ShiftSequence& a, const ShiftSequence& b) {
  if (a.rule().index() != b.rule().index()) return false;
  if (const auto* ta = std::get_if<ShiftSequence::Table>(&a.rule())) {
    const auto& tb = std::get<ShiftSequence::Table>(b.rule());
    if (ta->values.size() != tb.values.size()) return false;
    for (std::size_t k = 0; k < ta->values.size(); ++k) {
      if (!same(ta->values[k].first, tb.values[k].first) ||
          !same(ta->values[k].second, tb.values[k].second))
        return false;
    }
    return true;
  }
  if (const auto* aa = std::get_if<ShiftSequence::Affine>(&a.rule())) {
    const auto& ab = std::get<ShiftSequence::Affine>(b.rule());
    return same(aa->offset, ab.offset) && same(aa->slope, ab.slope);
  }
  const auto& ga = std::get<ShiftSequence::Geometric>(a.rule());
  const auto& gb = std::get<ShiftSequence::Geometric>(b.rule());
  return same(ga.scale, gb.scale) && same(ga.ratio, gb.ratio);
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  if (a.system != b.system || !(a.backend == b.backend) || a.horizon != b.horizon ||
      a.method != b.method || a.seed != b.seed || a.digit_budget != b.digit_budget ||
      a.tolerance.relative != b.tolerance.relative || a.tolerance.absolute != b.tolerance.absolute)
    return false;
  if (!same(a.alpha, b.alpha) || !same(a.beta, b.beta) || !same(a.gamma, b.gamma)) return false;
  if (a.change.has_value() != b.change.has_value() || (a.change && !same(*a.change, *b.change)))
    return false;
  if (a.coefficients.has_value() != b.coefficients.has_value()) return false;
  if (a.coefficients && (!same((*a.coefficients)[0], (*b.coefficients)[0]) ||
                         !same((*a.coefficients)[1], (*b.coefficients)[1])))
    return false;
  if (a.shift.has_value() != b.shift.has_value() || (a.shift && !same(*a.shift, *b.shift)))
    return false;
  return same(a.initial, b.initial);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

[[noreturn]] void invalid(const std::string& why) { throw ConfigError(why); }

void require_nonzero(const std::optional<Scalar>& v, const char* name, std::string_view method) {
  if (v->is_zero()) {
    invalid(std::string("method '") + std::string(method) + "' requires " + name +
            " != 0 (the closed form divides by it); use method 'iterated'");
  }
}

}  // namespace

void validate(const RunConfig& c) {
  const bool wants_closed = c.method != RunMethod::iterated;
  const std::string_view sys = to_string(c.system);

  if (c.backend.kind == Backend::floating && c.backend.precision < 2)
    invalid("floating precision must be at least 2 bits");

  switch (c.system) {
    case SystemKind::y:
      if (!c.alpha || !c.beta || !c.gamma) invalid("system y needs parameters alpha, beta, gamma");
      if (c.change || c.coefficients || c.shift)
        invalid("system y takes only alpha, beta, gamma");
      break;
    case SystemKind::x:
      if (!c.alpha || !c.beta) invalid("system x needs parameters alpha and beta");
      if (c.gamma) invalid("system x derives gamma = (alpha^2 - beta^2)/4; do not set it");
      if (c.change || c.coefficients || c.shift) invalid("system x takes only alpha and beta");
      break;
    case SystemKind::z:
    case SystemKind::w: {
      const bool conjugated = c.change.has_value();
      if (conjugated && c.coefficients)
        invalid("system " + std::string(sys) + " takes either change+alpha+beta or coefficients, not both");
      if (!conjugated && !c.coefficients)
        invalid("system " + std::string(sys) + " needs change+alpha+beta or coefficients");
      if (conjugated && (!c.alpha || !c.beta))
        invalid("a conjugated " + std::string(sys) + " system needs alpha and beta");
      if (!conjugated && (c.alpha || c.beta))
        invalid("alpha/beta are only meaningful together with a change of variables");
      if (c.gamma) invalid("gamma is derived for system " + std::string(sys) + "; do not set it");
      if (c.system == SystemKind::z && c.shift) invalid("system z takes no shift; use system w");
      if (c.system == SystemKind::w) {
        if (!c.shift) invalid("system w needs a shift");
        if (const auto* t = std::get_if<ShiftSequence::Table>(&c.shift->rule())) {
          if (t->values.size() < c.horizon + 1)
            invalid("shift table has " + std::to_string(t->values.size()) +
                    " entries; horizon " + std::to_string(c.horizon) + " needs at least " +
                    std::to_string(c.horizon + 1));
        }
      }
      if (wants_closed && !conjugated)
        invalid("method '" + std::string(to_string(c.method)) + "' for system " +
                std::string(sys) +
                " needs coefficients built from a change of variables (provenance); raw "
                "coefficients support iteration only");
      if (conjugated) {
        const auto& A = *c.change;
        if ((A[0] * A[3] - A[1] * A[2]).is_zero()) invalid("change of variables is singular (D = 0)");
      }
      break;
    }
  }
  if (wants_closed) {
    require_nonzero(c.alpha, "alpha", to_string(c.method));
    require_nonzero(c.beta, "beta", to_string(c.method));
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Scalar scalar_from(const json& j, const BackendSpec& backend) {
  if (j.is_string()) return parse_scalar(j.get<std::string>(), backend);
  if (j.is_number_integer()) {
    return parse_scalar(std::to_string(j.get<long long>()), backend);
  }
  if (j.is_number_float()) {
    if (backend.kind == Backend::exact)
      throw BackendMismatch("floating JSON number " + j.dump() + " cannot be read exactly; quote it as a rational");
    return parse_scalar(j.dump(), backend);
  }
  throw ConfigError("expected a scalar (string or integer), got " + j.dump());
}

template <std::size_t N>
std::array<Scalar, N> scalars_from(const json& j, const BackendSpec& backend, const char* what) {
  if (!j.is_array() || j.size() != N)
    throw ConfigError(std::string(what) + " must be an array of " + std::to_string(N) + " scalars");
  std::array<Scalar, N> out;
  for (std::size_t k = 0; k < N; ++k) out[k] = scalar_from(j[k], backend);
  return out;
}

template <std::size_t N>
ordered_json strings(const std::array<Scalar, N>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::optional<Scalar> optional_scalar(const json& params, const char* key, const BackendSpec& b) {
  if (!params.contains(key)) return std::nullopt;
  return scalar_from(params.at(key), b);
}

}  // namespace

ordered_json to_json(const ShiftSequence& shift) {
  ordered_json out;
  if (const auto* t = std::get_if<ShiftSequence::Table>(&shift.rule())) {
    out["kind"] = "table";
    ordered_json values = ordered_json::array();
    for (const auto& [f1, f2] : t->values) values.push_back({to_string(f1), to_string(f2)});
    out["values"] = values;
  } else if (const auto* a = std::get_if<ShiftSequence::Affine>(&shift.rule())) {
    out["kind"] = "affine";
    out["offset"] = strings(a->offset);
    out["slope"] = strings(a->slope);
  } else {
    const auto& g = std::get<ShiftSequence::Geometric>(shift.rule());
    out["kind"] = "geometric";
    out["scale"] = strings(g.scale);
    out["ratio"] = strings(g.ratio);
  }
  return out;
}

ShiftSequence shift_from_json(const json& j, const BackendSpec& backend) {
  const std::string kind = j.value("kind", "");
  if (kind == "table") {
    std::vector<std::pair<Scalar, Scalar>> values;
    for (const auto& row : j.at("values")) {
      auto pair = scalars_from<2>(row, backend, "shift table row");
      values.emplace_back(std::move(pair[0]), std::move(pair[1]));
    }
    return ShiftSequence::table(std::move(values));
  }
  if (kind == "affine") {
    return ShiftSequence::affine(scalars_from<2>(j.at("offset"), backend, "shift offset"),
                                 scalars_from<2>(j.at("slope"), backend, "shift slope"));
  }
  if (kind == "geometric") {
    return ShiftSequence::geometric(scalars_from<2>(j.at("scale"), backend, "shift scale"),
                                    scalars_from<2>(j.at("ratio"), backend, "shift ratio"));
  }
  throw ConfigError("shift kind must be table, affine or geometric");
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["system"] = std::string(to_string(c.system));
  j["backend"] = c.backend.kind == Backend::exact ? "exact" : "float";
  if (c.backend.kind == Backend::floating) j["precision"] = c.backend.precision;
  ordered_json params = ordered_json::object();
  if (c.alpha) params["alpha"] = to_string(*c.alpha);
  if (c.beta) params["beta"] = to_string(*c.beta);
  if (c.gamma) params["gamma"] = to_string(*c.gamma);
  if (c.change) {
    const auto& A = *c.change;
    params["change"] = ordered_json::array({strings(std::array{A[0], A[1]}), strings(std::array{A[2], A[3]})});
  }
  if (c.coefficients) {
    params["coefficients"] =
        ordered_json::array({strings((*c.coefficients)[0]), strings((*c.coefficients)[1])});
  }
  j["parameters"] = params;
  if (c.shift) j["shift"] = to_json(*c.shift);
  j["initial"] = strings(c.initial);
  j["horizon"] = c.horizon;
  j["method"] = std::string(to_string(c.method));
  j["seed"] = c.seed;
  j["digit_budget"] = c.digit_budget;
  j["tolerance"] = {{"relative", c.tolerance.relative}, {"absolute", c.tolerance.absolute}};
  return j;
}

RunConfig config_from_json(const json& j) {
  try {
    RunConfig c;
    c.system = parse_system(j.at("system").get<std::string>());
    const std::string backend = j.value("backend", "exact");
    if (backend == "exact") {
      c.backend = BackendSpec::exact();
      if (j.contains("precision")) throw ConfigError("precision applies to the float backend only");
    } else if (backend == "float") {
      c.backend = BackendSpec::floating(j.value("precision", 53U));
    } else {
      throw ConfigError("backend must be 'exact' or 'float'");
    }

    const json params = j.value("parameters", json::object());
    for (const auto& [key, _] : params.items()) {
      if (key != "alpha" && key != "beta" && key != "gamma" && key != "change" &&
          key != "coefficients")
        throw ConfigError("unknown parameter '" + key + "'");
    }
    c.alpha = optional_scalar(params, "alpha", c.backend);
    c.beta = optional_scalar(params, "beta", c.backend);
    c.gamma = optional_scalar(params, "gamma", c.backend);
    if (params.contains("change")) {
      const json& A = params.at("change");
      if (!A.is_array() || A.size() != 2) throw ConfigError("change must be a 2x2 array");
      const auto r0 = scalars_from<2>(A[0], c.backend, "change row");
      const auto r1 = scalars_from<2>(A[1], c.backend, "change row");
      c.change = std::array<Scalar, 4>{r0[0], r0[1], r1[0], r1[1]};
    }
    if (params.contains("coefficients")) {
      const json& a = params.at("coefficients");
      if (!a.is_array() || a.size() != 2) throw ConfigError("coefficients must be a 2x3 array");
      c.coefficients = ZCoefficients{scalars_from<3>(a[0], c.backend, "coefficient row"),
                                     scalars_from<3>(a[1], c.backend, "coefficient row")};
    }
    if (j.contains("shift")) c.shift = shift_from_json(j.at("shift"), c.backend);

    c.initial = scalars_from<2>(j.at("initial"), c.backend, "initial");
    const json& horizon = j.value("horizon", json(0));
    if (!horizon.is_number_integer() || horizon.get<long long>() < 0)
      throw ConfigError("horizon must be a non-negative integer");
    c.horizon = horizon.get<TimeIndex>();
    c.method = parse_method(j.value("method", "iterated"));
    c.seed = j.value("seed", std::uint64_t{0});
    c.digit_budget = j.value("digit_budget", kDefaultDigitBudget);
    if (j.contains("tolerance")) {
      c.tolerance.relative = j.at("tolerance").value("relative", c.tolerance.relative);
      c.tolerance.absolute = j.at("tolerance").value("absolute", c.tolerance.absolute);
    }
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  try {
    return config_from_json(json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

YParams y_params(const RunConfig& c) { return {*c.alpha, *c.beta, *c.gamma}; }

XParams x_params(const RunConfig& c) { return XParams(*c.alpha, *c.beta); }

ZParams z_params(const RunConfig& c) {
  if (c.change) {
    const auto& A = *c.change;
    return conjugate_params(LinearChange(A[0], A[1], A[2], A[3]), *c.alpha, *c.beta);
  }
  return ZParams(*c.coefficients);
}

}  // namespace solvable::app

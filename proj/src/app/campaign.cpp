#include "solvable/app/campaign.hpp"

#include "solvable/app/random.hpp"
#include "solvable/ensemble.hpp"
#include "solvable/errors.hpp"
#include "solvable/xsystem.hpp"
#include "solvable/ysystem.hpp"
#include "solvable/zsystem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace solvable::app {

using nlohmann::ordered_json;

namespace {

using Failure = std::optional<ordered_json>;

struct Context {
  InstanceGenerator& gen;
  std::size_t trial;
  TimeIndex max_level;
};

using Check = std::function<Failure(Context&)>;

ordered_json pair_json(const Scalar& a, const Scalar& b) { return {to_string(a), to_string(b)}; }

ordered_json change_json(const LinearChange& A) {
  return ordered_json::array({pair_json(A(0, 0), A(0, 1)), pair_json(A(1, 0), A(1, 1))});
}

// --- numerics ------------------------------------------------------------

Failure pow_tower_naive(Context& c) {
  const Scalar b = c.gen.gaussian();
  const TimeIndex levels = c.gen.integer(0, static_cast<long>(std::min<TimeIndex>(6, c.max_level)));
  Scalar naive = b;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << levels); ++k) naive *= b;
  if (pow_tower(b, levels) == naive) return std::nullopt;
  return ordered_json{{"base", to_string(b)}, {"levels", levels}};
}

Failure geometric_sum_identity(Context& c) {
  Scalar r = c.gen.gaussian();
  while (r.is_one()) r = c.gen.gaussian();
  const TimeIndex n = c.gen.integer(0, 30);
  Scalar power = r.like(1);
  for (TimeIndex k = 0; k < n; ++k) power *= r;
  if (geometric_sum(r, n) * (r - r.like(1)) + r.like(1) == power) return std::nullopt;
  return ordered_json{{"ratio", to_string(r)}, {"count", n}};
}

Failure geometric_sum_recurrence(Context& c) {
  Scalar r = c.gen.gaussian();
  if (c.trial % 4 == 0) r = r.like(1);
  const TimeIndex n = c.gen.integer(0, 30);
  if (geometric_sum(r, n + 1) == geometric_sum(r, n) * r + r.like(1)) return std::nullopt;
  return ordered_json{{"ratio", to_string(r)}, {"count", n}};
}

// --- ysystem -------------------------------------------------------------

YParams random_y_params(Context& c, bool force_degenerate) {
  const Scalar alpha = c.gen.nonzero_gaussian();
  Scalar beta = c.gen.nonzero_gaussian();
  if (force_degenerate) beta = (c.trial % 10 == 0) ? alpha : -alpha;
  return {alpha, beta, c.gen.gaussian()};
}

ordered_json y_instance(const YParams& p, const YState& s0) {
  return {{"alpha", to_string(p.alpha)},
          {"beta", to_string(p.beta)},
          {"gamma", to_string(p.gamma)},
          {"initial", pair_json(s0.y1, s0.y2)}};
}

Failure y_closed_equals_iterated(Context& c) {
  const YParams p = random_y_params(c, c.trial % 5 == 0);
  const YState s0{c.gen.gaussian(), c.gen.gaussian()};
  YState s = s0;
  for (TimeIndex l = 0; l <= c.max_level; ++l) {
    if (!(y_closed(p, s0, l) == s)) {
      ordered_json inst = y_instance(p, s0);
      inst["l"] = l;
      return inst;
    }
    s = y_step(p, s);
  }
  return std::nullopt;
}

Failure y_closed_semigroup(Context& c) {
  const YParams p = random_y_params(c, c.trial % 5 == 1);
  const YState s0{c.gen.gaussian(), c.gen.gaussian()};
  const TimeIndex l1 = c.gen.integer(0, static_cast<long>(c.max_level));
  const TimeIndex l2 = c.gen.integer(0, static_cast<long>(c.max_level - l1));
  if (y_closed(p, s0, l1 + l2) == y_closed(p, y_closed(p, s0, l1), l2)) return std::nullopt;
  ordered_json inst = y_instance(p, s0);
  inst["l1"] = l1;
  inst["l2"] = l2;
  return inst;
}

// --- xsystem -------------------------------------------------------------

struct XInstance {
  XParams p;
  XState s0;
};

XInstance random_x(Context& c) {
  XParams p(c.gen.nonzero_gaussian(), c.gen.nonzero_gaussian());
  XState s0{c.gen.gaussian(), c.gen.gaussian()};
  return {std::move(p), std::move(s0)};
}

ordered_json x_instance(const XInstance& x) {
  return {{"alpha", to_string(x.p.alpha())},
          {"beta", to_string(x.p.beta())},
          {"initial", pair_json(x.s0.x1, x.s0.x2)}};
}

Failure xy_conjugacy(Context& c) {
  const XInstance inst = random_x(c);
  const YParams yp = inst.p.y_params();
  XState x = inst.s0;
  YState y = vieta(x);
  for (TimeIndex l = 0; l <= c.max_level; ++l) {
    if (!(vieta(x) == y)) {
      ordered_json j = x_instance(inst);
      j["l"] = l;
      return j;
    }
    x = x_step(inst.p, x);
    y = y_step(yp, y);
  }
  return std::nullopt;
}

Failure identity_residual_zero(Context& c) {
  const XInstance inst = random_x(c);
  XState x = inst.s0;
  for (TimeIndex l = 0; l < c.max_level; ++l) {
    const auto [r1, r2] = step_residual(inst.p, x);
    if (!r1.is_zero() || !r2.is_zero()) {
      ordered_json j = x_instance(inst);
      j["l"] = l;
      return j;
    }
    x = x_step(inst.p, x);
  }
  return std::nullopt;
}

Failure delta_consistency(Context& c) {
  const XInstance inst = random_x(c);
  if (delta(inst.p, inst.s0).square() == delta_squared_rhs(inst.p, inst.s0)) return std::nullopt;
  return x_instance(inst);
}

Failure swap_covariance(Context& c) {
  const XInstance inst = random_x(c);
  const XState forward = x_step(inst.p, inst.s0);
  const XState swapped = x_step(inst.p, {inst.s0.x2, inst.s0.x1});
  if (swapped == XState{forward.x2, forward.x1}) return std::nullopt;
  return x_instance(inst);
}

Failure x_closed_multiset(Context& c) {
  const XInstance inst = random_x(c);
  XState x = inst.s0;
  for (TimeIndex l = 0; l <= c.max_level; ++l) {
    bool ok = false;
    try {
      ok = x_orbit_closed(inst.p, inst.s0, l) == RootPair(x.x1, x.x2);
    } catch (const NotPerfectSquare&) {
      ok = y_closed(inst.p.y_params(), vieta(inst.s0), l) == vieta(x);
    }
    if (!ok) {
      ordered_json j = x_instance(inst);
      j["l"] = l;
      return j;
    }
    x = x_step(inst.p, x);
  }
  return std::nullopt;
}

// --- zsystem -------------------------------------------------------------

struct ZInstance {
  LinearChange A;
  XParams xp;
  ZParams p;
};

ZInstance random_z(Context& c) {
  LinearChange A = c.gen.change();
  XParams xp(c.gen.nonzero_gaussian(), c.gen.nonzero_gaussian());
  ZParams p = conjugate_params(A, xp.alpha(), xp.beta());
  return {std::move(A), std::move(xp), std::move(p)};
}

ordered_json z_instance(const ZInstance& z) {
  return {{"change", change_json(z.A)},
          {"alpha", to_string(z.xp.alpha())},
          {"beta", to_string(z.xp.beta())}};
}

Failure z_conjugation_pointwise(Context& c) {
  const ZInstance inst = random_z(c);
  const XState x{c.gen.gaussian(), c.gen.gaussian()};
  if (z_to_x(inst.A, z_step(inst.p, x_to_z(inst.A, x))) == x_step(inst.xp, x)) return std::nullopt;
  ordered_json j = z_instance(inst);
  j["x"] = pair_json(x.x1, x.x2);
  return j;
}

Failure z_orbit_conjugacy(Context& c) {
  const ZInstance inst = random_z(c);
  const XState x0{c.gen.gaussian(), c.gen.gaussian()};
  const auto xs = x_orbit(inst.xp, x0, c.max_level);
  const auto zs = z_orbit(inst.p, x_to_z(inst.A, x0), c.max_level);
  for (std::size_t l = 0; l < xs.size(); ++l) {
    if (!(zs[l] == x_to_z(inst.A, xs[l]))) {
      ordered_json j = z_instance(inst);
      j["x0"] = pair_json(x0.x1, x0.x2);
      j["l"] = l;
      return j;
    }
  }
  return std::nullopt;
}

Failure z_closed_multiset(Context& c) {
  const ZInstance inst = random_z(c);
  const ZState z0{c.gen.gaussian(), c.gen.gaussian()};
  const auto zs = z_orbit(inst.p, z0, c.max_level);
  const YState y0 = vieta(z_to_x(inst.A, z0));
  for (TimeIndex l = 0; l < zs.size(); ++l) {
    bool ok = y_closed(inst.xp.y_params(), y0, l) == vieta(z_to_x(inst.A, zs[l]));
    try {
      ok = ok && z_orbit_closed(inst.p, z0, l).contains(zs[l]);
    } catch (const NotPerfectSquare&) {
    }
    if (!ok) {
      ordered_json j = z_instance(inst);
      j["z0"] = pair_json(z0.z1, z0.z2);
      j["l"] = l;
      return j;
    }
  }
  return std::nullopt;
}

Failure w_shift_consistency(Context& c) {
  const ZInstance inst = random_z(c);
  std::vector<std::pair<Scalar, Scalar>> table;
  for (TimeIndex l = 0; l <= c.max_level; ++l) {
    Scalar f1 = c.gen.gaussian();
    table.emplace_back(std::move(f1), c.gen.gaussian());
  }
  const ShiftSequence f = ShiftSequence::table(table);
  const WState w0{c.gen.gaussian(), c.gen.gaussian()};
  const auto ws = w_orbit(inst.p, f, w0, c.max_level);
  const auto zs = z_orbit(inst.p, {w0.w1 + table[0].first, w0.w2 + table[0].second}, c.max_level);
  for (std::size_t l = 0; l < ws.size(); ++l) {
    if (!(ws[l] == WState{zs[l].z1 - table[l].first, zs[l].z2 - table[l].second})) {
      ordered_json j = z_instance(inst);
      j["shift"] = ordered_json::array();
      for (const auto& [a, b] : table) j["shift"].push_back(pair_json(a, b));
      j["w0"] = pair_json(w0.w1, w0.w2);
      j["l"] = l;
      return j;
    }
  }
  return std::nullopt;
}

Failure w_zero_shift(Context& c) {
  const ZInstance inst = random_z(c);
  const ShiftSequence zero = ShiftSequence::zero();
  const WState w0{c.gen.gaussian(), c.gen.gaussian()};
  const auto ws = w_orbit(inst.p, zero, w0, c.max_level);
  const auto zs = z_orbit(inst.p, {w0.w1, w0.w2}, c.max_level);
  for (std::size_t l = 0; l < ws.size(); ++l) {
    if (!(ws[l].w1 == zs[l].z1 && ws[l].w2 == zs[l].z2)) {
      ordered_json j = z_instance(inst);
      j["w0"] = pair_json(w0.w1, w0.w2);
      j["l"] = l;
      return j;
    }
  }
  return std::nullopt;
}

// --- batch kernels ---------------------------------------------------------

bool normal_range(const batch::Ensemble& e) {
  auto ok = [](double v) { return v == 0.0 || (std::isnormal(v) && std::fabs(v) < 1e300); };
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!ok(e.u_re[i]) || !ok(e.u_im[i]) || !ok(e.v_re[i]) || !ok(e.v_im[i])) return false;
  return true;
}

// Ensemble kernels: scalar reference, preferred SIMD variant and the 53-bit
// floating Scalar path must agree bit for bit.
Failure batch_equivalence(Context& c) {
  const ZInstance inst = random_z(c);
  const ZParams fp = conjugate_params(
      LinearChange(inst.A(0, 0).to_floating(53), inst.A(0, 1).to_floating(53),
                   inst.A(1, 0).to_floating(53), inst.A(1, 1).to_floating(53)),
      inst.xp.alpha().to_floating(53), inst.xp.beta().to_floating(53));
  const std::size_t count = 7;  // exercises the vector tail
  std::vector<ZState> start;
  for (std::size_t i = 0; i < count; ++i) {
    Scalar a = c.gen.gaussian();
    start.push_back({a.to_floating(53), c.gen.gaussian().to_floating(53)});
  }
  const TimeIndex steps = std::min<TimeIndex>(c.max_level, 4);

  batch::Ensemble reference = make_ensemble(start);
  batch::Ensemble vector = reference;
  const batch::QuadraticMap map = quadratic_map(fp.a());
  batch::iterate(map, reference, steps, batch::Isa::scalar);
  batch::iterate(map, vector, steps, batch::preferred());
  bool ok = reference == vector;

  if (ok && normal_range(reference)) {
    const auto got = z_states(reference);
    for (std::size_t i = 0; i < count && ok; ++i) {
      const auto zs = z_orbit(fp, start[i], steps);
      ok = zs.back() == got[i];
    }
  }
  if (ok) return std::nullopt;
  ordered_json j = z_instance(inst);
  j["isa"] = std::string(batch::name(batch::preferred()));
  j["steps"] = steps;
  return j;
}

struct Named {
  const char* name;
  Check check;
};

const std::vector<Named>& registry() {
  static const std::vector<Named> checks = {
      {"numerics.pow_tower_naive", pow_tower_naive},
      {"numerics.geometric_sum_identity", geometric_sum_identity},
      {"numerics.geometric_sum_recurrence", geometric_sum_recurrence},
      {"ysystem.closed_equals_iterated", y_closed_equals_iterated},
      {"ysystem.closed_semigroup", y_closed_semigroup},
      {"xsystem.conjugacy", xy_conjugacy},
      {"xsystem.identity_residual", identity_residual_zero},
      {"xsystem.delta_consistency", delta_consistency},
      {"xsystem.swap_covariance", swap_covariance},
      {"xsystem.closed_multiset", x_closed_multiset},
      {"zsystem.conjugation_pointwise", z_conjugation_pointwise},
      {"zsystem.orbit_conjugacy", z_orbit_conjugacy},
      {"zsystem.closed_multiset", z_closed_multiset},
      {"wsystem.shift_consistency", w_shift_consistency},
      {"wsystem.zero_shift", w_zero_shift},
      {"batch.kernel_equivalence", batch_equivalence},
  };
  return checks;
}

std::vector<Failure> run_trial(const CampaignOptions& o, std::size_t trial) {
  InstanceGenerator gen = InstanceGenerator::for_trial(o.seed, trial);
  Context ctx{gen, trial, o.max_level};
  std::vector<Failure> out;
  for (const Named& n : registry()) {
    try {
      out.push_back(n.check(ctx));
    } catch (const std::exception& e) {
      out.push_back(ordered_json{{"error", e.what()}});
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> campaign_invariants() {
  std::vector<std::string> names;
  for (const Named& n : registry()) names.emplace_back(n.name);
  return names;
}

bool CampaignReport::all_passed() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantResult& r) { return r.failed == 0; });
}

const InvariantResult& CampaignReport::find(const std::string& name) const {
  for (const auto& r : invariants)
    if (r.name == name) return r;
  throw std::out_of_range("no invariant named " + name);
}

CampaignReport campaign(const CampaignOptions& options) {
  if (options.trials == 0) throw ConfigError("campaign needs at least one trial");
  ScopedDigitBudget budget(options.digit_budget);

  std::vector<std::vector<Failure>> results(options.trials);
  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, options.trials));
  if (jobs == 1) {
    for (std::size_t t = 0; t < options.trials; ++t) results[t] = run_trial(options, t);
  } else {
    std::vector<std::thread> workers;
    for (unsigned k = 0; k < jobs; ++k) {
      workers.emplace_back([&, k] {
        for (std::size_t t = k; t < options.trials; t += jobs) results[t] = run_trial(options, t);
      });
    }
    for (auto& w : workers) w.join();
  }

  CampaignReport report{options, {}};
  const auto names = campaign_invariants();
  for (std::size_t i = 0; i < names.size(); ++i) {
    InvariantResult r{names[i], 0, 0, std::nullopt};
    for (std::size_t t = 0; t < options.trials; ++t) {
      const Failure& f = results[t][i];
      if (!f) {
        ++r.passed;
        continue;
      }
      ++r.failed;
      if (!r.first_failure) r.first_failure = ordered_json{{"trial", t}, {"instance", *f}};
    }
    report.invariants.push_back(std::move(r));
  }
  return report;
}

ordered_json to_json(const CampaignReport& report) {
  ordered_json j;
  j["seed"] = report.options.seed;
  j["trials"] = report.options.trials;
  j["max_level"] = report.options.max_level;
  j["digit_budget"] = report.options.digit_budget;
  ordered_json list = ordered_json::array();
  for (const auto& r : report.invariants) {
    ordered_json item{{"name", r.name}, {"passed", r.passed}, {"failed", r.failed}};
    if (r.first_failure) item["first_failure"] = *r.first_failure;
    list.push_back(std::move(item));
  }
  j["invariants"] = std::move(list);
  j["all_passed"] = report.all_passed();
  return j;
}

std::string report_text(const CampaignReport& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace solvable::app

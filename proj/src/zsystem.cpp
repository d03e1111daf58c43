#include "solvable/zsystem.hpp"

#include "solvable/errors.hpp"

namespace solvable {

LinearChange::LinearChange(Scalar a11, Scalar a12, Scalar a21, Scalar a22)
    : entries_{{{std::move(a11), std::move(a12)}, {std::move(a21), std::move(a22)}}},
      determinant_(entries_[0][0] * entries_[1][1] - entries_[0][1] * entries_[1][0]) {
  if (determinant_.is_zero()) throw DomainError("change of variables is singular (D = 0)");
}

LinearChange LinearChange::identity(const BackendSpec& spec) {
  return {Scalar::integer(1, spec), Scalar::integer(0, spec), Scalar::integer(0, spec),
          Scalar::integer(1, spec)};
}

ZState x_to_z(const LinearChange& A, const XState& s) {
  return {A(0, 0) * s.x1 + A(0, 1) * s.x2, A(1, 0) * s.x1 + A(1, 1) * s.x2};
}

XState z_to_x(const LinearChange& A, const ZState& s) {
  const Scalar& D = A.determinant();
  return {(A(1, 1) * s.z1 - A(0, 1) * s.z2) / D, (A(0, 0) * s.z2 - A(1, 0) * s.z1) / D};
}

ZParams conjugate_params(const LinearChange& A, const Scalar& alpha, const Scalar& beta) {
  XParams xp(alpha, beta);
  const XCoefficients x = x_coefficients(xp);
  const Scalar inv_d2 = A.determinant().like(1) / A.determinant().square();
  const Scalar two = alpha.like(2);

  ZCoefficients a;
  for (int n = 0; n < 2; ++n) {
    // b[j] = A_n1 a_j^(1) + A_n2 a_j^(2)
    std::array<Scalar, 3> b;
    for (int j = 0; j < 3; ++j) b[j] = A(n, 0) * x.a[0][j] + A(n, 1) * x.a[1][j];

    a[n][0] = inv_d2 * (A(1, 1).square() * b[0] + A(1, 0).square() * b[1] -
                        A(1, 1) * A(1, 0) * b[2]);
    a[n][1] = inv_d2 * (A(0, 1).square() * b[0] + A(0, 0).square() * b[1] -
                        A(0, 0) * A(0, 1) * b[2]);
    a[n][2] = inv_d2 * (-(two * A(0, 1) * A(1, 1) * b[0]) - two * A(1, 0) * A(0, 0) * b[1] +
                        (A(0, 0) * A(1, 1) + A(0, 1) * A(1, 0)) * b[2]);
  }

  ZParams out(std::move(a));
  out.provenance_ = Provenance{A, std::move(xp)};
  return out;
}

namespace {

std::pair<Scalar, Scalar> quadratic_forms(const ZCoefficients& a, const Scalar& u, const Scalar& v) {
  const Scalar sq1 = u.square();
  const Scalar sq2 = v.square();
  const Scalar cross = u * v;
  return {a[0][0] * sq1 + a[0][1] * sq2 + a[0][2] * cross,
          a[1][0] * sq1 + a[1][1] * sq2 + a[1][2] * cross};
}

const Provenance& require_provenance(const ZParams& p, const char* what) {
  if (!p.provenance()) {
    throw DomainError(std::string(what) +
                      " needs coefficients built by conjugation (A, alpha, beta); raw "
                      "coefficients support iteration only");
  }
  return *p.provenance();
}

}  // namespace

ZState z_step(const ZParams& p, const ZState& s) {
  auto [n1, n2] = quadratic_forms(p.a(), s.z1, s.z2);
  return {std::move(n1), std::move(n2)};
}

std::vector<ZState> z_orbit(const ZParams& p, const ZState& s0, TimeIndex horizon) {
  std::vector<ZState> orbit{s0};
  orbit.reserve(static_cast<std::size_t>(horizon) + 1);
  for (TimeIndex l = 0; l < horizon; ++l) orbit.push_back(z_step(p, orbit.back()));
  return orbit;
}

std::pair<Scalar, Scalar> z_step_residual(const ZParams& p, const ZState& s) {
  const Provenance& prov = require_provenance(p, "identity residual");
  return step_residual(prov.x_params, z_to_x(prov.change, s));
}

ZImage z_orbit_closed(const ZParams& p, const ZState& s0, TimeIndex l) {
  const Provenance& prov = require_provenance(p, "closed-form z orbit");
  const RootPair roots = x_orbit_closed(prov.x_params, z_to_x(prov.change, s0), l);
  return ZImage(x_to_z(prov.change, {roots.first(), roots.second()}),
                x_to_z(prov.change, {roots.second(), roots.first()}));
}

// ---------------------------------------------------------------------------

ShiftSequence ShiftSequence::table(std::vector<std::pair<Scalar, Scalar>> values) {
  return ShiftSequence(Table{std::move(values)});
}

ShiftSequence ShiftSequence::affine(std::array<Scalar, 2> offset, std::array<Scalar, 2> slope) {
  return ShiftSequence(Affine{std::move(offset), std::move(slope)});
}

ShiftSequence ShiftSequence::geometric(std::array<Scalar, 2> scale, std::array<Scalar, 2> ratio) {
  return ShiftSequence(Geometric{std::move(scale), std::move(ratio)});
}

ShiftSequence ShiftSequence::zero(const BackendSpec& spec) {
  const Scalar z = Scalar::integer(0, spec);
  return affine({z, z}, {z, z});
}

std::pair<Scalar, Scalar> ShiftSequence::at(TimeIndex l) const {
  if (const auto* t = std::get_if<Table>(&rule_)) {
    if (l >= t->values.size()) {
      throw ShiftExhausted("shift table of length " + std::to_string(t->values.size()) +
                           " queried at l = " + std::to_string(l));
    }
    return t->values[static_cast<std::size_t>(l)];
  }
  if (const auto* a = std::get_if<Affine>(&rule_)) {
    const Scalar ell = Scalar::count(l, a->offset[0].spec());
    return {a->offset[0] + a->slope[0] * ell, a->offset[1] + a->slope[1] * ell};
  }
  const auto& g = std::get<Geometric>(rule_);
  return {g.scale[0] * g.ratio[0].pow(l), g.scale[1] * g.ratio[1].pow(l)};
}

WCoefficients w_coefficients(const ZParams& p, const ShiftSequence& f, TimeIndex l) {
  const auto [f1, f2] = f.at(l);
  const auto next = f.at(l + 1);
  const std::array<const Scalar*, 2> f_next{&next.first, &next.second};
  const Scalar two = f1.like(2);

  WCoefficients out;
  for (int n = 0; n < 2; ++n) {
    out.g[n][0] = two * p.a(n, 0) * f1 + p.a(n, 2) * f2;
    out.g[n][1] = two * p.a(n, 1) * f2 + p.a(n, 2) * f1;
    out.h[n] = p.a(n, 0) * f1.square() + p.a(n, 1) * f2.square() + p.a(n, 2) * f1 * f2 -
               *f_next[n];
  }
  return out;
}

WState w_step(const ZParams& p, const ShiftSequence& f, TimeIndex l, const WState& s) {
  const WCoefficients c = w_coefficients(p, f, l);
  auto [q1, q2] = quadratic_forms(p.a(), s.w1, s.w2);
  return {q1 + c.g[0][0] * s.w1 + c.g[0][1] * s.w2 + c.h[0],
          q2 + c.g[1][0] * s.w1 + c.g[1][1] * s.w2 + c.h[1]};
}

std::vector<WState> w_orbit(const ZParams& p, const ShiftSequence& f, const WState& s0,
                            TimeIndex horizon) {
  std::vector<WState> orbit{s0};
  orbit.reserve(static_cast<std::size_t>(horizon) + 1);
  for (TimeIndex l = 0; l < horizon; ++l) orbit.push_back(w_step(p, f, l, orbit.back()));
  return orbit;
}

WImage w_orbit_closed(const ZParams& p, const ShiftSequence& f, const WState& s0, TimeIndex l) {
  const auto f0 = f.at(0);
  const auto fl = f.at(l);
  const ZImage image = z_orbit_closed(p, {s0.w1 + f0.first, s0.w2 + f0.second}, l);
  auto shift = [&](const ZState& z) { return WState{z.z1 - fl.first, z.z2 - fl.second}; };
  return WImage(shift(image.first()), shift(image.second()));
}

}  // namespace solvable

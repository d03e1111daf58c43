#include "support.hpp"

#include "solvable/app/random.hpp"
#include "solvable/errors.hpp"
#include "solvable/xsystem.hpp"
#include "solvable/zsystem.hpp"

using namespace solvable;
using test::q;

namespace {

struct Instance {
  LinearChange A;
  XParams xp;
  ZParams zp;
};

Instance random_instance(app::InstanceGenerator& gen) {
  LinearChange A = gen.change();
  Scalar alpha = gen.nonzero_gaussian();
  XParams xp(std::move(alpha), gen.nonzero_gaussian());
  ZParams zp = conjugate_params(A, xp.alpha(), xp.beta());
  return {std::move(A), std::move(xp), std::move(zp)};
}

ZState random_z(app::InstanceGenerator& gen) {
  Scalar a = gen.gaussian();
  return {std::move(a), gen.gaussian()};
}

ZState zs(const char* a, const char* b) { return {q(a), q(b)}; }

}  // namespace

TEST_SUITE("linear change") {
  TEST_CASE("singular matrices are rejected") {
    CHECK_THROWS_AS(LinearChange(q("1"), q("2"), q("2"), q("4")), DomainError);
    CHECK(LinearChange(q("1"), q("2"), q("3"), q("4")).determinant() == q("-2"));
  }

  TEST_CASE("coordinate change examples") {
    const ZState s = zs("3/2+i", "-7");
    const XState as_x = z_to_x(LinearChange::identity(), s);
    CHECK(as_x == XState{s.z1, s.z2});
    const LinearChange A(q("1"), q("1"), q("0"), q("1"));
    CHECK(z_to_x(A, zs("3", "2")) == XState{q("1"), q("2")});
    CHECK(x_to_z(A, z_to_x(A, s)) == s);
  }

  TEST_CASE("round trip on random changes") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(41, trial);
      const LinearChange A = gen.change();
      const ZState s = random_z(gen);
      CHECK(x_to_z(A, z_to_x(A, s)) == s);
    }
  }
}

TEST_SUITE("z-system") {
  TEST_CASE("identity conjugation reproduces the x coefficients") {
    const XParams xp(q("3/2"), q("-1+i"));
    const ZParams zp = conjugate_params(LinearChange::identity(), xp.alpha(), xp.beta());
    const XCoefficients c = x_coefficients(xp);
    for (int n = 0; n < 2; ++n)
      for (int j = 0; j < 3; ++j) CHECK(zp.a(n, j) == c.a[n][j]);
  }

  TEST_CASE("scalar conjugation divides the coefficients") {
    const XParams xp(q("2"), q("5/3"));
    const Scalar c = q("3-2i");
    const ZParams zp = conjugate_params(LinearChange(c, q("0"), q("0"), c), xp.alpha(), xp.beta());
    const XCoefficients x = x_coefficients(xp);
    for (int n = 0; n < 2; ++n)
      for (int j = 0; j < 3; ++j) CHECK(zp.a(n, j) == x.a[n][j] / c);
  }

  TEST_CASE("step examples") {
    const ZParams zp = conjugate_params(LinearChange::identity(), q("1"), q("1"));
    CHECK(z_step(zp, zs("0", "0")) == zs("0", "0"));
    CHECK(z_step(zp, zs("1", "1")) == zs("-2", "-2"));
    CHECK(z_step(zp, zs("1", "0")) == zs("0", "-1"));
  }

  TEST_CASE("conjugation holds pointwise") {
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(42, trial);
      const Instance in = random_instance(gen);
      const ZState z = random_z(gen);
      CHECK(z_step(in.zp, z) == x_to_z(in.A, x_step(in.xp, z_to_x(in.A, z))));
    }
  }

  TEST_CASE("orbits are conjugate") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(43, trial);
      const Instance in = random_instance(gen);
      const ZState z0 = random_z(gen);
      const auto z = z_orbit(in.zp, z0, 6);
      const auto x = x_orbit(in.xp, z_to_x(in.A, z0), 6);
      REQUIRE(z.size() == 7);
      for (std::size_t l = 0; l < z.size(); ++l) CHECK(z[l] == x_to_z(in.A, x[l]));
    }
  }

  TEST_CASE("identity residual vanishes along z orbits with provenance") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(44, trial);
      const Instance in = random_instance(gen);
      ZState z = random_z(gen);
      for (int n = 0; n < 5; ++n) {
        const auto [r1, r2] = z_step_residual(in.zp, z);
        CHECK(r1.is_zero());
        CHECK(r2.is_zero());
        z = z_step(in.zp, z);
      }
    }
  }

  TEST_CASE("closed image examples") {
    const ZParams id = conjugate_params(LinearChange::identity(), q("1"), q("1"));
    CHECK(z_orbit_closed(id, zs("1", "0"), 2) == ZImage(zs("-1", "0"), zs("0", "-1")));

    const LinearChange A(q("2"), q("1"), q("1"), q("1"));
    const ZParams zp = conjugate_params(A, q("1"), q("1"));
    const XState x0{q("1"), q("0")};
    // Roots {-1, 0} at l = 2 map to A(-1, 0) and A(0, -1).
    CHECK(z_orbit_closed(zp, x_to_z(A, x0), 0) == ZImage(x_to_z(A, x0), x_to_z(A, {q("0"), q("1")})));
    CHECK(z_orbit_closed(zp, x_to_z(A, x0), 2) ==
          ZImage(x_to_z(A, {q("-1"), q("0")}), x_to_z(A, {q("0"), q("-1")})));
  }

  TEST_CASE("closed image needs provenance") {
    const ZParams raw(ZCoefficients{{{q("1"), q("0"), q("0")}, {q("0"), q("1"), q("0")}}});
    CHECK(z_step(raw, zs("2", "3")) == zs("4", "9"));
    CHECK_THROWS_AS(z_orbit_closed(raw, zs("1", "1"), 1), DomainError);
    CHECK_THROWS_AS(z_step_residual(raw, zs("1", "1")), DomainError);
  }

  TEST_CASE("closed image contains the iterated state") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(45, trial);
      const Instance in = random_instance(gen);
      const ZState z0 = random_z(gen);
      const auto orbit = z_orbit(in.zp, z0, 5);
      for (TimeIndex l = 0; l < orbit.size(); ++l) {
        const ZImage image = z_orbit_closed(in.zp, z0, l);
        CHECK(image.contains(orbit[l]));
        const XState a = z_to_x(in.A, image.first());
        const XState b = z_to_x(in.A, image.second());
        CHECK(RootPair(a.x1, a.x2) == RootPair(b.x2, b.x1));
      }
    }
  }
}

TEST_SUITE("w-system") {
  TEST_CASE("zero shift gives the homogeneous system") {
    const ZParams zp = conjugate_params(LinearChange(q("1"), q("2"), q("0"), q("3")), q("2"), q("1/2"));
    const WCoefficients c = w_coefficients(zp, ShiftSequence::zero(), 4);
    for (int n = 0; n < 2; ++n) {
      CHECK(c.h[n].is_zero());
      for (int m = 0; m < 2; ++m) CHECK(c.g[n][m].is_zero());
    }
    const WState w{q("1/2"), q("-i")};
    const ZState z = z_step(zp, {w.w1, w.w2});
    CHECK(w_step(zp, ShiftSequence::zero(), 0, w) == WState{z.z1, z.z2});
  }

  TEST_CASE("constant shift gives a stationary inhomogeneous term") {
    const ZParams zp = conjugate_params(LinearChange(q("1"), q("1"), q("-1"), q("2")), q("3"), q("1"));
    const Scalar c1 = q("2"), c2 = q("-1/3");
    const ShiftSequence f = ShiftSequence::affine({c1, c2}, {q("0"), q("0")});
    for (TimeIndex l : {0U, 3U}) {
      const WCoefficients w = w_coefficients(zp, f, l);
      for (int n = 0; n < 2; ++n) {
        const Scalar cn = n == 0 ? c1 : c2;
        CHECK(w.h[n] == zp.a(n, 0) * c1 * c1 + zp.a(n, 1) * c2 * c2 + zp.a(n, 2) * c1 * c2 - cn);
      }
    }
  }

  TEST_CASE("one step is the shifted z step") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(46, trial);
      const Instance in = random_instance(gen);
      std::vector<std::pair<Scalar, Scalar>> table;
      for (int k = 0; k < 2; ++k) {
        Scalar a = gen.gaussian();
        table.emplace_back(std::move(a), gen.gaussian());
      }
      const ShiftSequence f = ShiftSequence::table(table);
      const WState w{gen.gaussian(), gen.gaussian()};
      const ZState z = z_step(in.zp, {w.w1 + table[0].first, w.w2 + table[0].second});
      CHECK(w_step(in.zp, f, 0, w) == WState{z.z1 - table[1].first, z.z2 - table[1].second});
    }
  }

  TEST_CASE("the image of the z origin is minus the next shift") {
    const ZParams zp = conjugate_params(LinearChange(q("2"), q("1"), q("1"), q("1")), q("1"), q("2"));
    const ShiftSequence f = ShiftSequence::geometric({q("1"), q("i")}, {q("2"), q("-1/2")});
    const auto [f1, f2] = f.at(3);
    const auto [g1, g2] = f.at(4);
    CHECK(w_step(zp, f, 3, {-f1, -f2}) == WState{-g1, -g2});
  }

  TEST_CASE("orbits are shifted z orbits") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      auto gen = app::InstanceGenerator::for_trial(47, trial);
      const Instance in = random_instance(gen);
      std::vector<std::pair<Scalar, Scalar>> table;
      for (int k = 0; k < 7; ++k) {
        Scalar a = gen.gaussian();
        table.emplace_back(std::move(a), gen.gaussian());
      }
      const ShiftSequence f = ShiftSequence::table(table);
      const WState w0{gen.gaussian(), gen.gaussian()};
      const auto w = w_orbit(in.zp, f, w0, 6);
      const auto z = z_orbit(in.zp, {w0.w1 + table[0].first, w0.w2 + table[0].second}, 6);
      for (std::size_t l = 0; l < w.size(); ++l)
        CHECK(w[l] == WState{z[l].z1 - table[l].first, z[l].z2 - table[l].second});
      const WImage image = w_orbit_closed(in.zp, f, w0, 4);
      CHECK(image.contains(w[4]));
    }
  }

  TEST_CASE("a finite table runs out") {
    const ZParams zp = conjugate_params(LinearChange::identity(), q("1"), q("1"));
    const ShiftSequence f = ShiftSequence::table({{q("0"), q("0")}, {q("1"), q("1")}});
    CHECK_NOTHROW(w_orbit(zp, f, {q("0"), q("0")}, 1));
    CHECK_THROWS_AS(w_orbit(zp, f, {q("0"), q("0")}, 2), ShiftExhausted);
  }
}

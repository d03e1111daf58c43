#include "support.hpp"

#include "solvable/app/random.hpp"
#include "solvable/ensemble.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace solvable;
namespace b = solvable::batch;

namespace {

std::vector<b::Isa> available_isas() {
  std::vector<b::Isa> out;
  for (b::Isa isa : {b::Isa::scalar, b::Isa::avx2, b::Isa::neon})
    if (b::available(isa)) out.push_back(isa);
  return out;
}

b::Ensemble random_ensemble(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  b::Ensemble e(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.u_re[i] = d(rng);
    e.u_im[i] = d(rng);
    e.v_re[i] = d(rng);
    e.v_im[i] = d(rng);
  }
  return e;
}

ZParams float_params(app::InstanceGenerator& gen) {
  const LinearChange A = gen.change();
  auto f = [](const Scalar& s) { return s.to_floating(53); };
  return conjugate_params(LinearChange(f(A(0, 0)), f(A(0, 1)), f(A(1, 0)), f(A(1, 1))),
                          f(gen.nonzero_gaussian()), f(gen.nonzero_gaussian()));
}

}  // namespace

TEST_CASE("scalar variant is always available and preferred is available") {
  CHECK(b::available(b::Isa::scalar));
  CHECK(b::available(b::preferred()));
  CHECK(b::name(b::Isa::avx2) == "avx2");
}

TEST_CASE("requesting an unavailable variant is an error") {
  for (b::Isa isa : {b::Isa::avx2, b::Isa::neon}) {
    if (b::available(isa)) continue;
    b::Ensemble e(3);
    CHECK_THROWS_AS(b::step(b::QuadraticMap{}, e, isa), std::invalid_argument);
  }
}

TEST_CASE("quadratic kernels are bit-identical across variants and sizes") {
  auto gen = app::InstanceGenerator::for_trial(51, 0);
  const b::QuadraticMap map = quadratic_map(float_params(gen).a());
  for (std::size_t n : {0U, 1U, 2U, 3U, 4U, 5U, 7U, 8U, 9U, 33U, 1000U}) {
    CAPTURE(n);
    b::Ensemble reference = random_ensemble(n, n);
    const b::Ensemble start = reference;
    b::iterate(map, reference, 3, b::Isa::scalar);
    for (b::Isa isa : available_isas()) {
      CAPTURE(b::name(isa));
      b::Ensemble e = start;
      b::iterate(map, e, 3, isa);
      CHECK(e == reference);
    }
  }
}

TEST_CASE("coefficient kernels are bit-identical across variants") {
  auto gen = app::InstanceGenerator::for_trial(52, 0);
  const YParams p{gen.nonzero_gaussian().to_floating(53), gen.nonzero_gaussian().to_floating(53),
                  gen.gaussian().to_floating(53)};
  const b::CoefficientMap map = coefficient_map(p);
  for (std::size_t n : {1U, 6U, 17U, 256U}) {
    b::Ensemble reference = random_ensemble(n, 100 + n);
    const b::Ensemble start = reference;
    b::iterate(map, reference, 2, b::Isa::scalar);
    for (b::Isa isa : available_isas()) {
      b::Ensemble e = start;
      b::iterate(map, e, 2, isa);
      CHECK(e == reference);
    }
  }
}

TEST_CASE("ensemble step matches the 53-bit Scalar step exactly") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto gen = app::InstanceGenerator::for_trial(53, trial);
    const ZParams zp = float_params(gen);
    std::vector<ZState> states;
    for (int i = 0; i < 9; ++i) states.push_back({gen.gaussian().to_floating(53), gen.gaussian().to_floating(53)});
    b::Ensemble e = make_ensemble(states);
    b::step(quadratic_map(zp.a()), e);
    const auto got = z_states(e);
    for (std::size_t i = 0; i < states.size(); ++i) CHECK(got[i] == z_step(zp, states[i]));
  }
}

TEST_CASE("ensemble coefficient step matches y_step") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto gen = app::InstanceGenerator::for_trial(54, trial);
    const YParams p{gen.nonzero_gaussian().to_floating(53), gen.nonzero_gaussian().to_floating(53),
                    gen.gaussian().to_floating(53)};
    std::vector<YState> states;
    for (int i = 0; i < 5; ++i) states.push_back({gen.gaussian().to_floating(53), gen.gaussian().to_floating(53)});
    b::Ensemble e = make_ensemble(states);
    b::step(coefficient_map(p), e);
    const auto got = y_states(e);
    for (std::size_t i = 0; i < states.size(); ++i) CHECK(got[i] == y_step(p, states[i]));
  }
}

TEST_CASE("ensemble of exact states is rounded to nearest double") {
  const std::vector<ZState> states{{test::q("1/3"), test::q("-2/7+1/5i")}};
  const b::Ensemble e = make_ensemble(states);
  CHECK(e.u_re[0] == 1.0 / 3.0);
  CHECK(e.v_im[0] == 0.2);
}

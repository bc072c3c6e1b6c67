#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kgsplit/diagnostics.hpp"
#include "kgsplit/errors.hpp"
#include "kgsplit/operators.hpp"
#include "kgsplit/rough_data.hpp"
#include "support/oracles.hpp"

using namespace kgsplit;
using kgsplit::testing::random_field;
using kgsplit::testing::smooth_random_field;

namespace {

const ModelParams kUnit{1.0, -1.0};
constexpr double kPi = std::numbers::pi;

Trajectory random_trajectory(const TorusGrid& grid, int samples, double tau, unsigned seed) {
  Trajectory traj;
  traj.tau = tau;
  for (int n = 0; n < samples; ++n) {
    traj.states.push_back({random_field(grid, seed + static_cast<unsigned>(n)), n * tau, kUnit});
  }
  return traj;
}

}  // namespace

TEST_CASE("energy of simple states") {
  const TorusGrid grid({8, 8});
  CHECK(energy({SpectralField::zeros(grid, Representation::Spectral), 0.0, kUnit}) == 0.0);
  const auto one = SpectralField::sample(grid, [](auto) { return Complex{1.0, 0.0}; });
  CHECK(energy({one, 0.0, kUnit}) ==
        doctest::Approx(1.5 * 4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(1.5 * 4.0 * kPi * kPi == doctest::Approx(59.21763).epsilon(1e-7));

  // z = cos x, z_t = 0 in 1D: int sin^2 + cos^2 + cos^4 / 2 = 2pi + 3pi/8.
  const TorusGrid line({16});
  const auto c = SpectralField::sample(line, [](auto x) { return Complex{std::cos(x[0]), 0.0}; });
  CHECK(energy({c, 0.0, kUnit}) == doctest::Approx(2.0 * kPi + 3.0 * kPi / 8.0).epsilon(1e-14));

  // z = 0, z_t = sin 2x (u = i <grad>^{-1} sin 2x): int sin^2 2x = pi.
  const auto zt = SpectralField::sample(line, [](auto x) { return Complex{std::sin(2 * x[0]), 0.0}; });
  const auto u = u_from_z(SpectralField::zeros(line, Representation::Physical), zt, kUnit);
  CHECK(energy(u) == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("energy is conserved by the linear flow") {
  const TorusGrid grid({32, 32});
  const ModelParams linear{1.0, 0.0};
  const StateU s{smooth_random_field(grid, 3), 0.0, linear};
  const double e0 = energy(s);
  for (double t : {0.1, 1.0, 7.3}) {
    CHECK(std::abs(energy(linear_flow(s, t)) - e0) <= 1e-10 * std::abs(e0));
  }
}

TEST_CASE("Strang energy drift self-converges at second order") {
  RoughDataSpec data;
  data.s = 3.0;
  data.seed = 5;
  data.grid = TorusGrid({32, 32});
  const auto u0 = generate(data);
  std::vector<double> taus, drifts;
  for (int j = 4; j <= 7; ++j) {
    const double tau = std::ldexp(1.0, -j);
    const auto traj = evolve(u0, {SchemeKind::Strang, tau, kUnit, false}, 1 << j, 1);
    taus.push_back(tau);
    drifts.push_back(max_relative_energy_drift(traj));
  }
  const auto fit = fit_order(taus, drifts);
  CHECK(fit.order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("error_norm is a metric") {
  const TorusGrid grid({16, 16});
  const StateU a{random_field(grid, 1), 0.0, kUnit};
  const StateU b{random_field(grid, 2), 0.0, kUnit};
  const StateU c{random_field(grid, 3), 0.0, kUnit};
  const StateU zero{SpectralField::zeros(grid, Representation::Spectral), 0.0, kUnit};
  CHECK(error_norm(a, a, kUnit, 0.5) == 0.0);
  CHECK(error_norm(a, zero, kUnit, 0.5) == sobolev_norm(a.u, kUnit, 0.5));
  CHECK(error_norm(a, b, kUnit, 0.5) == doctest::Approx(error_norm(b, a, kUnit, 0.5)).epsilon(1e-15));
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const StateU x{random_field(grid, rng()), 0.0, kUnit};
    const StateU y{random_field(grid, rng()), 0.0, kUnit};
    const StateU z{random_field(grid, rng()), 0.0, kUnit};
    for (double s : {0.0, 11.0 / 40.0, 1.0}) {
      CHECK(error_norm(x, z, kUnit, s) <= error_norm(x, y, kUnit, s) + error_norm(y, z, kUnit, s));
    }
  }
  const StateU other{random_field(TorusGrid({8, 8}), 1), 0.0, kUnit};
  CHECK_THROWS_AS(error_norm(a, other, kUnit, 0.5), ContractViolation);
  (void)c;
}

TEST_CASE("discrete Bourgain norm at b = 0 is the time-weighted l2 norm") {
  const TorusGrid grid({16, 16});
  for (int samples : {1, 2, 7, 16}) {
    const double tau = 0.125;
    const auto traj = random_trajectory(grid, samples, tau, 100);
    for (double s : {0.0, 0.5, 11.0 / 40.0}) {
      double acc = 0.0;
      for (const auto& st : traj.states) acc += std::pow(sobolev_norm(st.u, kUnit, s), 2);
      const double expected = std::sqrt(tau * acc);
      const double got = discrete_bourgain_norm(traj, {s, 0.0}, kUnit);
      CHECK(std::abs(got - expected) <= 1e-10 * expected);
    }
  }
}

TEST_CASE("discrete Bourgain norm of a single sample") {
  const TorusGrid line({8});
  Trajectory traj;
  traj.tau = 0.01;
  traj.states.push_back(
      {SpectralField::sample(line, [](auto x) { return std::polar(1.0, x[0]); }), 0.0, kUnit});
  CHECK(discrete_bourgain_norm(traj, {0.0, 0.0}, kUnit) ==
        doctest::Approx(std::sqrt(0.01)).epsilon(1e-12));
  CHECK_THROWS_AS(discrete_bourgain_norm(Trajectory{}, {0.0, 0.0}, kUnit), ContractViolation);
}

TEST_CASE("discrete Bourgain norm matches direct summation") {
  const TorusGrid line({8});
  const int samples = 6;
  const double tau = 0.2;
  const auto traj = random_trajectory(line, samples, tau, 300);
  for (bool bracket : {false, true}) {
    for (double b : {0.3, 0.625}) {
      const double s = 0.4;
      double total = 0.0;
      for (std::size_t k = 0; k < line.size(); ++k) {
        const int kk = line.wavevector(k)[0];
        const double omega = bracket ? std::sqrt(1.0 + kk * kk) : std::abs(kk);
        for (int j = 0; j < samples; ++j) {
          const double sigma = 2.0 * kPi * j / (samples * tau);
          Complex ut{};
          for (int n = 0; n < samples; ++n) {
            ut += tau * as_spectral(traj.states[n].u)[k] * std::polar(1.0, -n * tau * sigma);
          }
          const Complex d = (std::polar(1.0, tau * (sigma - omega)) - 1.0) / tau;
          total += (1.0 / (samples * tau)) * std::pow(1.0 + kk * kk, s) *
                   std::pow(1.0 + std::norm(d), b) * std::norm(ut);
        }
      }
      BourgainSpec spec{s, b};
      spec.frequency = bracket ? BourgainFrequency::BracketK : BourgainFrequency::AbsK;
      CHECK(discrete_bourgain_norm(traj, spec, kUnit) ==
            doctest::Approx(std::sqrt(total)).epsilon(1e-12));
    }
  }
}

TEST_CASE("discrete Bourgain norm is nondecreasing in b") {
  const TorusGrid grid({16, 16});
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto traj = random_trajectory(grid, 9, 0.1, seed * 50);
    for (auto window : {BourgainWindow::None, BourgainWindow::SmoothBump}) {
      double previous = 0.0;
      for (double b : {0.0, 0.25, 0.5, 0.625, 1.0}) {
        BourgainSpec spec{0.5, b};
        spec.window = window;
        const double n = discrete_bourgain_norm(traj, spec, kUnit);
        CHECK(n >= previous);
        previous = n;
      }
    }
  }
}

TEST_CASE("time weight is exactly 2pi/tau periodic") {
  for (double tau : {0.1, 1.0 / 64.0, 0.3}) {
    for (long long samples : {5LL, 16LL, 33LL}) {
      for (long long j = -40; j < 40; ++j) {
        for (double omega : {0.0, 1.0, std::sqrt(2.0), 17.5}) {
          const double w = bourgain_time_weight(j, samples, tau, omega, 0.6);
          CHECK(bourgain_time_weight(j + samples, samples, tau, omega, 0.6) == w);
          CHECK(bourgain_time_weight(j - 3 * samples, samples, tau, omega, 0.6) == w);
        }
      }
    }
  }
  // The closed form agrees to roundoff off the lattice.
  const double tau = 0.1;
  for (double sigma : {-3.0, 0.5, 12.0}) {
    CHECK(std::abs(d_tau(sigma + 2.0 * kPi / tau, tau) - d_tau(sigma, tau)) < 1e-12);
    CHECK(std::abs(d_tau(sigma, tau) - (std::polar(1.0, tau * sigma) - 1.0) / tau) < 1e-13);
  }
}

TEST_CASE("smooth bump window") {
  CHECK(smooth_bump(0, 11) == 0.0);
  CHECK(smooth_bump(10, 11) == 0.0);
  CHECK(smooth_bump(5, 11) == doctest::Approx(1.0));
  CHECK(smooth_bump(2, 11) == doctest::Approx(smooth_bump(8, 11)));
}

TEST_CASE("fit_order") {
  std::vector<double> taus;
  for (int j = 2; j <= 9; ++j) taus.push_back(std::ldexp(1.0, -j));
  SUBCASE("exact power laws") {
    std::vector<double> quad, rough;
    for (double t : taus) {
      quad.push_back(t * t);
      rough.push_back(3.0 * std::pow(t, 0.225));
    }
    const auto f2 = fit_order(taus, quad);
    CHECK(f2.order == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(f2.r_squared - 1.0) < 1e-12);
    const auto f3 = fit_order(taus, rough);
    CHECK(f3.order == doctest::Approx(0.225).epsilon(1e-12));
    CHECK(f3.constant == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(f3.r_squared - 1.0) < 1e-12);
  }
  SUBCASE("1% multiplicative noise over a decade") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    std::vector<double> t10, e10;
    for (int i = 0; i <= 10; ++i) t10.push_back(0.1 * std::pow(10.0, -i / 10.0));
    for (double truth : {0.225, 1.0, 2.0}) {
      for (int trial = 0; trial < 50; ++trial) {
        e10.clear();
        for (double t : t10) e10.push_back(2.0 * std::pow(t, truth) * (1.0 + noise(rng)));
        CHECK(std::abs(fit_order(t10, e10).order - truth) < 0.05);
      }
    }
  }
  SUBCASE("rejections") {
    const std::vector<double> two{0.1, 0.05};
    CHECK_THROWS_AS(fit_order(two, two), ContractViolation);
    const std::vector<double> t3{0.1, 0.05, 0.025}, bad{1e-3, 0.0, 1e-4};
    CHECK_THROWS_AS(fit_order(t3, bad), ContractViolation);
    const std::vector<double> up{0.025, 0.05, 0.1}, ok{1e-3, 1e-2, 1e-1};
    CHECK_THROWS_AS(fit_order(up, ok), ContractViolation);
  }
}

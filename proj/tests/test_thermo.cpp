#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qpg/fock.hpp"
#include "qpg/thermo.hpp"
#include "qpg/trace.hpp"

using qpg::QContext;
namespace th = qpg::thermo;

TEST_CASE("partition function: state count, fermion case, geometric sum",
          "[thermo]") {
  REQUIRE(th::partition_single(QContext(2), 1.0, 0.0) == 2.0);
  REQUIRE(th::partition_single(QContext(7), 3.0, 0.0) == 7.0);
  // k = 2 is the two-level system
  for (double x : {0.1, 0.9, 3.0}) {
    REQUIRE(std::abs(th::partition_single(QContext(2), x, 1.0) -
                     (1.0 + std::exp(-x))) < 1e-14);
  }
  // explicit geometric sum at k = 5
  QContext ctx(5);
  const double beta = 0.83, eps = 1.37;
  double expect = 0.0;
  for (int n = 0; n < 5; ++n) expect += std::exp(-beta * eps * n);
  REQUIRE(std::abs(th::partition_single(ctx, eps, beta) - expect) < 1e-13);
}

TEST_CASE("partition function is smooth across the series switchover",
          "[thermo]") {
  for (int k : {2, 3, 10}) {
    QContext ctx(k);
    // just inside the series branch, against the exact geometric ratio
    const double x = 0.999e-6;
    const double exact = std::expm1(-k * x) / std::expm1(-x);
    REQUIRE(std::abs(th::partition_single(ctx, 1.0, x) - exact) <
            1e-12 * exact);
    REQUIRE(std::abs(th::partition_single(ctx, 1.0, 1e-12) - k) < 1e-9);
  }
}

TEST_CASE("partition function equals the symbolic trace of the Boltzmann "
          "weight",
          "[thermo]") {
  const double eps = 1.0;
  for (int k : {2, 3, 5}) {
    for (double beta : {0.3, 0.7, 1.5}) {
      QContext ctx(k);
      qpg::FockOp boltz = qpg::func_of_diagonal(
          qpg::number_op(ctx, 1),
          [&](qpg::Complex x) { return std::exp(-beta * eps * x.real()); });
      REQUIRE(std::abs(qpg::symbolic_trace(boltz) -
                       qpg::Complex{th::partition_single(ctx, eps, beta),
                                    0.0}) < 1e-10);
    }
  }
}

TEST_CASE("spectral sums reproduce the closed forms on the linear spectrum",
          "[thermo]") {
  for (int k : {2, 3, 5, 10}) {
    QContext ctx(k);
    const double eps = 0.9;
    std::vector<double> linear(k);
    for (int n = 0; n < k; ++n) linear[n] = eps * n;
    for (double beta : {0.05, 0.4, 1.1, 4.0}) {
      const double z_closed = th::partition_single(ctx, eps, beta);
      const double e_closed = th::mean_energy_single(ctx, eps, beta);
      const double c_closed = th::specific_heat_single(ctx, eps, beta);
      REQUIRE(std::abs(th::spectral_partition(linear, beta) - z_closed) <
              1e-10 * z_closed);
      REQUIRE(std::abs(th::spectral_mean_energy(linear, beta) - e_closed) <
              1e-9 * (1.0 + e_closed));
      REQUIRE(std::abs(th::spectral_specific_heat(linear, beta) - c_closed) <
              1e-9 * (1.0 + c_closed));
    }
  }
}

TEST_CASE("mean energy saturates at the spectrum midpoint for T -> infinity",
          "[thermo]") {
  REQUIRE(std::abs(th::mean_energy_single(QContext(3), 1.0, 1e-9) - 1.0) <
          1e-7);
  REQUIRE(std::abs(th::mean_energy_single(QContext(5), 2.0, 0.0) - 4.0) <
          1e-12);
  // and dies out at T -> 0
  REQUIRE(th::mean_energy_single(QContext(3), 1.0, 800.0) >= 0.0);
  REQUIRE(th::mean_energy_single(QContext(3), 1.0, 800.0) < 1e-300);
}

TEST_CASE("mean energy is the log-derivative of the partition function",
          "[thermo]") {
  for (int k : {2, 3, 5, 10}) {
    QContext ctx(k);
    const double eps = 1.0;
    for (double beta : {0.2, 0.7, 1.5, 3.0}) {
      const double h = 1e-6 * beta;
      const double fd = -(std::log(th::partition_single(ctx, eps, beta + h)) -
                          std::log(th::partition_single(ctx, eps, beta - h))) /
                        (2.0 * h);
      const double closed = th::mean_energy_single(ctx, eps, beta);
      REQUIRE(std::abs(fd - closed) < 1e-6 * (1.0 + std::abs(closed)));
    }
  }
}

TEST_CASE("specific heat is the temperature derivative of the mean energy",
          "[thermo]") {
  for (int k : {2, 3, 5, 10}) {
    QContext ctx(k);
    const double eps = 1.0;
    for (double t : {0.3, 0.8, 1.5, 4.0}) {
      const double h = 1e-5 * t;
      const double fd = (th::mean_energy_single(ctx, eps, 1.0 / (t + h)) -
                         th::mean_energy_single(ctx, eps, 1.0 / (t - h))) /
                        (2.0 * h);
      const double closed = th::specific_heat_single(ctx, eps, 1.0 / t);
      REQUIRE(std::abs(fd - closed) < 1e-6 * (1.0 + std::abs(closed)));
    }
  }
}

TEST_CASE("specific heat vanishes in both temperature limits", "[thermo]") {
  QContext ctx(4);
  REQUIRE(th::specific_heat_single(ctx, 1.0, 0.0) == 0.0);
  REQUIRE(std::abs(th::specific_heat_single(ctx, 1.0, 1e-8)) < 1e-12);
  REQUIRE(th::specific_heat_single(ctx, 1.0, 2000.0) < 1e-300);
  REQUIRE(th::specific_heat_single(ctx, 1.0, 2000.0) >= 0.0);
}

TEST_CASE("primed partition function sums the q-integer spectrum",
          "[thermo]") {
  // k = 2: [0] = 0, [1] = 1 -- identical to the linear spectrum
  REQUIRE(std::abs(th::partition_single_prime(QContext(2), 1.3, 0.9) -
                   th::partition_single(QContext(2), 1.3, 0.9)) < 1e-14);
  // k = 3: [1] = [2] = 1, so Z' = 1 + 2 e^{-beta eps}
  REQUIRE(std::abs(th::partition_single_prime(QContext(3), 1.0, 0.7) -
                   (1.0 + 2.0 * std::exp(-0.7))) < 1e-13);
  // k = 5: levels {0, 1, phi, phi, 1} with the golden ratio phi
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double beta = 0.4;
  const double expect = 1.0 + 2.0 * std::exp(-beta) + 2.0 * std::exp(-beta * phi);
  REQUIRE(std::abs(th::partition_single_prime(QContext(5), 1.0, beta) -
                   expect) < 1e-13);
  // beta = 0 still counts states
  REQUIRE(th::partition_single_prime(QContext(6), 2.0, 0.0) == 6.0);
}

TEST_CASE("grand partition function: degenerate level, empty gas, product "
          "structure",
          "[thermo]") {
  QContext ctx(4);
  // a level at the chemical potential contributes exactly k
  REQUIRE(std::abs(th::grand_partition(ctx, {1.0}, 1.0, 0.8) - 4.0) < 1e-12);
  // mu -> -infinity empties the gas
  REQUIRE(std::abs(th::grand_partition(ctx, {0.5, 1.0, 1.5}, -2000.0, 1.0) -
                   1.0) < 1e-12);
  // factorisation over levels
  const std::vector<double> levels{0.3, 0.9, 1.7};
  const double mu = 0.5, beta = 0.8;
  double prod = 1.0;
  for (double e : levels) prod *= th::grand_partition(ctx, {e}, mu, beta);
  REQUIRE(std::abs(th::grand_partition(ctx, levels, mu, beta) - prod) <
          1e-12 * prod);
  REQUIRE_THROWS_AS(th::grand_partition(ctx, {}, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("grand partition function matches the multi-mode matrix trace",
          "[thermo]") {
  QContext ctx(3, 3);
  const std::vector<double> levels{0.3, 0.9, 1.7};
  const double mu = 0.5, beta = 0.8;
  // H - mu N = sum_j (eps_j - mu) N_j is diagonal; exponentiate and trace.
  qpg::FockOp h = qpg::scale(qpg::number_op(ctx, 1), {levels[0] - mu, 0.0});
  h = qpg::add(h, qpg::scale(qpg::number_op(ctx, 2), {levels[1] - mu, 0.0}));
  h = qpg::add(h, qpg::scale(qpg::number_op(ctx, 3), {levels[2] - mu, 0.0}));
  qpg::FockOp gibbs = qpg::func_of_diagonal(h, [&](qpg::Complex x) {
    return std::exp(-beta * x.real());
  });
  const double z = th::grand_partition(ctx, levels, mu, beta);
  REQUIRE(std::abs(qpg::matrix_trace(gibbs) - qpg::Complex{z, 0.0}) < 1e-10);
  // ... and through the symbolic trace as well
  REQUIRE(std::abs(qpg::symbolic_trace(gibbs) - qpg::Complex{z, 0.0}) <
          1e-10);
}

TEST_CASE("occupation reduces to Fermi-Dirac at k = 2", "[thermo]") {
  QContext ctx(2);
  for (double x : {-3.0, -1.0, -0.4, -0.1, 0.05, 0.3, 0.9, 1.7, 3.2, 6.0}) {
    const double fd = 1.0 / (std::exp(x) + 1.0);
    REQUIRE(std::abs(th::mean_occupation(ctx, x, 0.0, 1.0) - fd) < 1e-12);
  }
}

TEST_CASE("occupation at the chemical potential is the midpoint (k-1)/2",
          "[thermo]") {
  for (int k : {2, 3, 4, 10}) {
    QContext ctx(k);
    REQUIRE(th::mean_occupation(ctx, 1.0, 1.0, 2.5) == (k - 1) / 2.0);
    // continuity from both sides
    REQUIRE(std::abs(th::mean_occupation(ctx, 1.0 + 1e-7, 1.0, 1.0) -
                     (k - 1) / 2.0) < 1e-5);
    REQUIRE(std::abs(th::mean_occupation(ctx, 1.0 - 1e-7, 1.0, 1.0) -
                     (k - 1) / 2.0) < 1e-5);
  }
}

TEST_CASE("occupation saturates at k-1 below mu and decays above",
          "[thermo]") {
  QContext ctx(5);
  REQUIRE(std::abs(th::mean_occupation(ctx, -50.0, 0.0, 1.0) - 4.0) < 1e-15);
  const double far = th::mean_occupation(ctx, 30.0, 0.0, 1.0);
  REQUIRE(std::abs(far / std::exp(-30.0) - 1.0) < 1e-10);
}

TEST_CASE("occupation approaches Bose-Einstein for large k", "[thermo]") {
  QContext ctx(10000);
  for (double x : {0.12, 0.2, 0.5, 1.0, 2.0, 5.0}) {
    const double bose = th::bose_occupation(x, 0.0, 1.0);
    REQUIRE(std::abs(th::mean_occupation(ctx, x, 0.0, 1.0) - bose) < 1e-3);
  }
}

TEST_CASE("Bose reference forms: limits and domains", "[thermo]") {
  // high-T equipartition: C -> 1, E -> T
  REQUIRE(th::bose_specific_heat(1.0, 0.0) == 1.0);
  REQUIRE(std::abs(th::bose_specific_heat(1.0, 1e-8) - 1.0) < 1e-12);
  REQUIRE(std::abs(th::bose_mean_energy(1.0, 1e-6) - 1e6) < 1.0);
  REQUIRE_THROWS_AS(th::bose_mean_energy(-1.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(th::bose_occupation(0.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("negative inverse temperatures are rejected", "[thermo]") {
  QContext ctx(3);
  REQUIRE_THROWS_AS(th::partition_single(ctx, 1.0, -0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(th::mean_occupation(ctx, 1.0, 0.0, -1.0),
                    std::invalid_argument);
}

TEST_CASE("curves align with their grids and carry beta", "[thermo]") {
  QContext ctx(3);
  th::CurveParams params;
  params.eps = 1.0;
  const std::vector<double> temps{0.5, 1.0, 2.0, 4.0};
  auto pts = th::emit_curve(ctx, th::CurveKind::mean_energy, params, temps);
  REQUIRE(pts.size() == temps.size());
  for (std::size_t i = 0; i < temps.size(); ++i) {
    REQUIRE(pts[i].beta == 1.0 / temps[i]);
    REQUIRE(pts[i].value ==
            th::mean_energy_single(ctx, params.eps, 1.0 / temps[i]));
  }
  // occupation curves sweep the level energy at fixed beta
  params.beta = 2.0;
  params.mu = 0.5;
  const std::vector<double> eps_grid{0.0, 0.5, 1.0, 1.5};
  auto occ = th::emit_curve(ctx, th::CurveKind::occupation, params, eps_grid);
  REQUIRE(occ.size() == eps_grid.size());
  for (std::size_t i = 0; i < occ.size(); ++i) {
    REQUIRE(occ[i].beta == 2.0);
    REQUIRE(occ[i].value ==
            th::mean_occupation(ctx, eps_grid[i], params.mu, params.beta));
  }
}

TEST_CASE("curve grids are validated", "[thermo]") {
  QContext ctx(3);
  th::CurveParams params;
  REQUIRE_THROWS_AS(
      th::emit_curve(ctx, th::CurveKind::mean_energy, params, {}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      th::emit_curve(ctx, th::CurveKind::mean_energy, params, {1.0, 1.0}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      th::emit_curve(ctx, th::CurveKind::mean_energy, params,
                     {1.0, 2.0, 1.5}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      th::emit_curve(ctx, th::CurveKind::specific_heat, params, {-1.0, 1.0}),
      std::invalid_argument);
  // decreasing grids are fine
  REQUIRE_NOTHROW(
      th::emit_curve(ctx, th::CurveKind::mean_energy, params, {2.0, 1.0}));
}

TEST_CASE("curve shapes: saturation, single hump, monotone occupation",
          "[thermo]") {
  QContext ctx(4);
  th::CurveParams params;
  params.eps = 1.0;
  std::vector<double> temps;
  for (int i = 0; i <= 200; ++i) temps.push_back(0.05 + i * (20.0 - 0.05) / 200);

  auto energy = th::emit_curve(ctx, th::CurveKind::mean_energy, params, temps);
  for (std::size_t i = 1; i < energy.size(); ++i)
    REQUIRE(energy[i].value > energy[i - 1].value);
  REQUIRE(energy.back().value < (4 - 1) / 2.0);
  REQUIRE(energy.back().value > 0.9 * (4 - 1) / 2.0);

  auto heat = th::emit_curve(ctx, th::CurveKind::specific_heat, params, temps);
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < heat.size(); ++i)
    if (heat[i].value > heat[argmax].value) argmax = i;
  REQUIRE(argmax > 0);
  REQUIRE(argmax < heat.size() - 1);
  for (std::size_t i = argmax + 1; i < heat.size(); ++i)
    REQUIRE(heat[i].value < heat[i - 1].value + 1e-12);

  params.beta = 10.0;
  params.mu = 1.0;
  std::vector<double> eps_grid;
  for (int i = 0; i <= 100; ++i) eps_grid.push_back(i * 0.02);
  auto occ = th::emit_curve(ctx, th::CurveKind::occupation, params, eps_grid);
  for (std::size_t i = 1; i < occ.size(); ++i)
    REQUIRE(occ[i].value < occ[i - 1].value + 1e-12);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stripbound/delta1d.hpp"

using namespace stripbound;

TEST_CASE("config validation") {
  CHECK_NOTHROW((DeltaConfig{{-1, 0, 1}, {1, 1, 1}, 10.0, 0.01}.validate()));
  CHECK_THROWS_AS((DeltaConfig{{0, 0}, {1, 1}, 10.0, 0.01}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DeltaConfig{{1, 0}, {1, 1}, 10.0, 0.01}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DeltaConfig{{0}, {0.0}, 10.0, 0.01}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DeltaConfig{{0}, {1, 2}, 10.0, 0.01}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DeltaConfig{{9.95}, {1}, 10.0, 0.01}.validate()), std::invalid_argument);
}

TEST_CASE("assembly") {
  const DeltaForm free = assemble_delta_form(DeltaConfig{{}, {}, 5.0, 0.01});
  CHECK(free.panels == 1000);
  CHECK(count_negative(free) == 0);
  CHECK(free.diag.size() == 1001);
  CHECK(free.off.size() == 1000);

  const double alpha = 0.75;
  const DeltaForm one = assemble_delta_form(DeltaConfig{{0.0}, {alpha}, 5.0, 0.01});
  REQUIRE(one.nodes.size() == 1);
  CHECK(one.nodes[0] == 500);
  int differing = 0;
  for (std::size_t i = 0; i < free.diag.size(); ++i) {
    if (free.diag[i] != one.diag[i]) {
      ++differing;
      CHECK(free.diag[i] - one.diag[i] == doctest::Approx(alpha));
    }
  }
  CHECK(differing == 1);
  CHECK(one.off == free.off);

  const SparseMatrix m = one.to_sparse();
  CHECK(m.nonZeros() == 1001 + 2 * 1000);
  CHECK(SparseMatrix(m - SparseMatrix(m.transpose())).norm() == 0.0);

  // Two points on one node.
  CHECK_THROWS_AS(assemble_delta_form(DeltaConfig{{0.0, 0.001}, {1, 1}, 5.0, 0.01}),
                  std::invalid_argument);
}

TEST_CASE("off-node points are snapped with a recorded error") {
  const DeltaForm f = assemble_delta_form(DeltaConfig{{0.013}, {1.0}, 5.0, 0.01});
  CHECK(f.node(f.nodes[0]) == doctest::Approx(0.01));
  CHECK(f.snap_errors[0] == doctest::Approx(0.003));
}

TEST_CASE("single delta well") {
  const DeltaConfig c{{0.0}, {1.0}, 40.0, 1e-3};
  CHECK(count_negative_delta(c) == 1);
  const double e = lowest_eigenvalue(assemble_delta_form(c));
  CHECK(e == doctest::Approx(-0.25).epsilon(0.01));
  // Doubling L does not move the eigenvalue once L alpha > 20.
  const double e2 = lowest_eigenvalue(assemble_delta_form(DeltaConfig{{0.0}, {1.0}, 80.0, 1e-3}));
  CHECK(std::abs(e2 - e) < 1e-6 * std::abs(e));
}

TEST_CASE("decoupled wells") {
  const DeltaConfig c{{-100, -50, 0, 50, 100}, {1, 1, 1, 1, 1}, 140.0, 0.01};
  CHECK(count_negative_delta(c) == 5);
  const DeltaConfig faint{{-100, -50, 0, 50, 100}, {1e-8, 1e-8, 1e-8, 1e-8, 1e-8}, 140.0, 0.01};
  CHECK(count_negative_delta(faint) == 0);
}

TEST_CASE("count grows with spacing and intensity") {
  // Close wells share states; far wells each bind one.
  int previous = 0;
  for (double spacing : {0.05, 0.5, 2.0, 8.0, 30.0}) {
    const DeltaConfig c{{-spacing, 0.0, spacing}, {1, 1, 1}, 80.0, 0.005};
    const int n = count_negative_delta(c);
    CHECK(n >= previous);
    previous = n;
  }
  CHECK(previous == 3);

  std::mt19937 rng(51);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    DeltaConfig c{{-3, -1, 0.5, 2, 4}, {}, 30.0, 0.01};
    for (int k = 0; k < 5; ++k) c.intensities.push_back(u(rng));
    const int before = count_negative_delta(c);
    c.intensities[trial % 5] *= 3.0;
    CHECK(count_negative_delta(c) >= before);
  }
}

TEST_CASE("bump function") {
  CHECK(BumpFunction::profile(0.0) == 1.0);
  CHECK(BumpFunction::profile(0.5) == 1.0);
  CHECK(BumpFunction::profile(-0.49) == 1.0);
  CHECK(BumpFunction::profile(1.0) == 0.0);
  CHECK(BumpFunction::profile(-1.3) == 0.0);
  CHECK(BumpFunction::profile(0.75) == doctest::Approx(0.5));
  for (double t = -1.2; t <= 1.2; t += 0.01) {
    CHECK(BumpFunction::profile(t) >= 0.0);
    CHECK(BumpFunction::profile(t) <= 1.0);
    const double fd = (BumpFunction::profile(t + 1e-6) - BumpFunction::profile(t - 1e-6)) / 2e-6;
    CHECK(BumpFunction::derivative(t) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
  }
  const double e = BumpFunction::dirichlet_energy();
  CHECK(e > 0.0);
  CHECK(std::isfinite(e));
  // Independent trapezoid estimate of int |psi'|^2 over (1/2, 1), doubled.
  double check = 0.0;
  const int n = 400000;
  for (int i = 0; i <= n; ++i) {
    const double t = 0.5 + 0.5 * i / n;
    const double d = BumpFunction::derivative(t);
    check += (i == 0 || i == n ? 0.5 : 1.0) * d * d * (0.5 / n);
  }
  CHECK(e == doctest::Approx(2.0 * check).epsilon(1e-8));
  CHECK(BumpFunction::dirichlet_energy() == e);
}

TEST_CASE("spacing construction") {
  const double e = BumpFunction::dirichlet_energy();
  const SpacingConstruction one = spaced_wells({1.0}, 2.0);
  REQUIRE(one.certificates.size() == 1);
  CHECK(one.certificates[0].gap == doctest::Approx(4.0 * e));
  CHECK(one.certificates[0].analytic == doctest::Approx(1.0 * (1.0 / 2.0 - 1.0)));

  std::vector<double> alphas;
  for (int k = 1; k <= 8; ++k) alphas.push_back(1.0 / k);
  const SpacingConstruction s = spaced_wells(alphas, 2.0);
  CHECK(s.all_negative);
  for (const auto& c : s.certificates) {
    CHECK(c.analytic < 0.0);
    CHECK(c.discrete < 0.0);
    CHECK(c.discrete == doctest::Approx(c.analytic).epsilon(1e-3));
  }
  CHECK(count_negative_delta(s.config) >= 8);

  // margin -> 1+: certificates -> 0-.
  const SpacingConstruction tight = spaced_wells({1.0, 0.5}, 1.0001);
  for (const auto& c : tight.certificates) {
    CHECK(c.analytic < 0.0);
    CHECK(c.analytic > -1e-3);
  }
  CHECK_THROWS_AS(spaced_wells({1.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(spaced_wells({1.0}, 0.5), std::domain_error);
}

TEST_CASE("finite point sets bind at most one state per point") {
  CHECK(finite_sigma_count_check(DeltaConfig{{}, {}, 10.0, 0.01}).count == 0);
  CHECK(finite_sigma_count_check(DeltaConfig{{}, {}, 10.0, 0.01}).pass);
  CHECK(finite_sigma_count_check(DeltaConfig{{0.3}, {50.0}, 10.0, 0.01}).count <= 1);
  std::mt19937 rng(52);
  std::uniform_real_distribution<double> u(0.01, 20.0);
  for (int trial = 0; trial < 20; ++trial) {
    DeltaConfig c{{-4, -1, 0, 3, 7}, {}, 20.0, 0.01};
    for (int k = 0; k < 5; ++k) c.intensities.push_back(u(rng));
    const FiniteSigmaCheck r = finite_sigma_count_check(c);
    CHECK(r.points == 5);
    CHECK(r.count <= 5);
    CHECK(r.pass);
  }
}

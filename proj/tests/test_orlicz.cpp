#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "stripbound/dyadic.hpp"
#include "stripbound/oracle.hpp"
#include "stripbound/orlicz.hpp"
#include "test_support.hpp"

using namespace stripbound;
using testsupport::close_rel;

namespace {

const NFunction A = NFunction::exp_minus();
const NFunction B = NFunction::llogl();

MeasuredFunction constant(double c, double mu) { return MeasuredFunction({{c, mu}}); }

MeasuredFunction random_f(std::mt19937& rng, int max_atoms = 6, double value_max = 4.0) {
  return random_measured_function(rng, max_atoms, value_max);
}

/// Random pair on a common set of weights, so pointwise operations make sense.
std::pair<MeasuredFunction, MeasuredFunction> random_pair(std::mt19937& rng, double value_max) {
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = count(rng);
  std::vector<Atom> f, g;
  for (int i = 0; i < n; ++i) {
    const double w = 0.05 + 0.95 * u(rng);
    f.push_back({value_max * u(rng), w});
    g.push_back({value_max * u(rng), w});
  }
  return {MeasuredFunction(f), MeasuredFunction(g)};
}

MeasuredFunction pointwise(const MeasuredFunction& f, const MeasuredFunction& g, double sf,
                           double sg) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < f.atoms().size(); ++i) {
    out.push_back({std::abs(sf * f.atoms()[i].value + sg * g.atoms()[i].value),
                   f.atoms()[i].weight});
  }
  return MeasuredFunction(out);
}

}  // namespace

TEST_CASE("N-function values") {
  CHECK(A(0.0) == 0.0);
  CHECK(B(0.0) == 0.0);
  CHECK(A(1.0) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-15));
  CHECK(B(1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
  CHECK(A.complement() == B);
  CHECK(B.complement() == A);
  CHECK(A.complement().complement() == A);
}

TEST_CASE("small arguments keep full relative accuracy") {
  for (double t : {1e-12, 1e-9, 1e-6, 1e-5, 1e-4, 3e-3, 1e-2, 0.05, 0.3}) {
    CAPTURE(t);
    CHECK(close_rel(A(t), static_cast<double>(testsupport::ref_exp_minus(t)), 1e-12));
    CHECK(close_rel(B(t), static_cast<double>(testsupport::ref_llogl(t)), 1e-12));
  }
}

TEST_CASE("N-function limits at 0 and infinity") {
  CHECK(A(1e-8) / 1e-8 < 1e-7);
  CHECK(B(1e-8) / 1e-8 < 1e-7);
  CHECK(B(1e8) / 1e8 > 10.0);
  CHECK(std::isinf(A(1e8)));
}

TEST_CASE("N-function domain errors") {
  CHECK_THROWS_AS(A(-1.0), std::domain_error);
  CHECK_THROWS_AS(B(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(B(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("convexity and monotonicity on random pairs") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = u(rng), t = u(rng);
    for (NFunction psi : {A, B}) {
      CHECK(psi(0.5 * (s + t)) <= 0.5 * (psi(s) + psi(t)) * (1 + 1e-14));
      CHECK((s <= t) == (psi(s) <= psi(t)));
    }
  }
}

TEST_CASE("Young inequality for the complementary pair") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    const double s = u(rng), t = u(rng);
    CHECK(s * t <= A(s) + B(t) + 1e-12);
  }
  // Equality at t = A'(s).
  CHECK(2.0 * A.derivative(2.0) == doctest::Approx(A(2.0) + B(A.derivative(2.0))));
}

TEST_CASE("modular") {
  CHECK(modular(MeasuredFunction({{0.0, 0.3}, {0.0, 2.0}}), B, 0.7) == 0.0);
  CHECK(modular(constant(3.0, 1.0), B, 3.0) == doctest::Approx(B(1.0)));
  const MeasuredFunction f({{1.0, 0.5}, {2.0, 0.5}});
  CHECK(modular(f, B, 1.0) == doctest::Approx(0.5 * B(1.0) + 0.5 * B(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(modular(f, B, 0.0), std::domain_error);
  CHECK_THROWS_AS(modular(f, B, -1.0), std::domain_error);
  CHECK(std::isinf(modular(constant(1000.0, 1.0), A, 1.0)));
  CHECK(modular(f, A, 1.0) >= modular(f, A, 1.5));
}

TEST_CASE("measured function validation") {
  CHECK_THROWS_AS(MeasuredFunction({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MeasuredFunction({{-1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MeasuredFunction({{std::nan(""), 1.0}}), std::invalid_argument);
  const std::vector<double> v = {-2.0, 1.0};
  const std::vector<double> w = {0.25, 0.5};
  const auto f = MeasuredFunction::from_samples(v, w);
  CHECK(f.atoms()[0].value == 2.0);
  CHECK(f.total_measure() == doctest::Approx(0.75));
}

TEST_CASE("Luxemburg norm examples") {
  CHECK(luxemburg_norm(constant(0.0, 1.0), B) == 0.0);
  // f = 1 on measure 1: kappa solves B(1/kappa) = 1.
  const double t_star = testsupport::bisect([](double t) { return B(t); }, 0.0, 100.0, 1.0);
  CHECK(luxemburg_norm(constant(1.0, 1.0), B) == doctest::Approx(1.0 / t_star).epsilon(1e-9));
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_f(rng);
    for (NFunction psi : {A, B}) {
      CHECK(luxemburg_norm(f.scaled(2.0), psi) ==
            doctest::Approx(2.0 * luxemburg_norm(f, psi)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Orlicz norm examples") {
  CHECK(orlicz_norm(constant(0.0, 1.0), B) == 0.0);
  // Closed route: ||1||_{B,(0,1)} = ln(1 + k*), k* - ln(1 + k*) = 1.
  CHECK(orlicz_norm(constant(1.0, 1.0), B) ==
        doctest::Approx(testsupport::constant_one_norm(1.0, 1.0)).epsilon(1e-8));
  // Constant c on measure mu at level 1: c times the same closed route.
  CHECK(orlicz_norm(constant(2.5, 0.4), B) ==
        doctest::Approx(2.5 * testsupport::constant_one_norm(0.4, 1.0)).epsilon(1e-8));

  std::mt19937 rng(14);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_measured_function(rng, 4, 3.0);
    const double brute = brute_force_dual_norm(f, B, 1.0);
    CHECK(std::abs(orlicz_norm(f, B) - brute) <= 1e-3 * orlicz_norm(f, B));
  }
}

TEST_CASE("averaged norm examples") {
  CHECK(average_orlicz_norm(constant(0.0, 2.0), B) == 0.0);
  std::mt19937 rng(15);
  // Weights summing to exactly 1: identical computations.
  const MeasuredFunction unit({{0.3, 0.25}, {2.0, 0.5}, {1.1, 0.25}});
  CHECK(average_orlicz_norm(unit, B) == orlicz_norm(unit, B));
  for (int i = 0; i < 20; ++i) {
    const auto f = random_measured_function(rng, 6, 3.0, 1.0);
    CHECK(average_orlicz_norm(f, B) == doctest::Approx(orlicz_norm(f, B)).epsilon(1e-12));
  }
  for (int i = 0; i < 5; ++i) {
    const auto f = random_measured_function(rng, 4, 3.0, 2.0);
    CHECK(f.total_measure() == doctest::Approx(2.0));
    const double brute = brute_force_dual_norm(f, B, 2.0);
    CHECK(std::abs(average_orlicz_norm(f, B) - brute) <= 1e-3 * brute);
  }
  CHECK(average_orlicz_norm(constant(1.0, 0.3), B) ==
        doctest::Approx(testsupport::constant_one_norm(0.3, 0.3)).epsilon(1e-8));
  CHECK_THROWS_AS(average_orlicz_norm(MeasuredFunction(), B), std::domain_error);
}

TEST_CASE("norm equivalence Lux <= Orlicz <= 2 Lux") {
  std::mt19937 rng(16);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_f(rng, 6, 6.0);
    for (NFunction psi : {A, B}) {
      const double lux = luxemburg_norm(f, psi);
      const double orl = orlicz_norm(f, psi);
      CHECK(lux <= orl + 1e-9);
      CHECK(orl <= 2.0 * lux + 1e-9);
    }
  }
}

TEST_CASE("Luxemburg implications") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_f(rng);
    for (NFunction psi : {A, B}) {
      const double kappa0 = u(rng);
      const double c0 = std::max(1.0, modular(f, psi, kappa0));
      if (std::isfinite(c0)) CHECK(luxemburg_norm(f, psi) <= c0 * kappa0 + 1e-9);
      const double m1 = modular(f, psi, 1.0);
      if (std::isfinite(m1)) CHECK(luxemburg_norm(f, psi) <= std::max(1.0, m1) + 1e-9);
    }
  }
}

TEST_CASE("Orlicz-Holder inequality") {
  std::mt19937 rng(18);
  for (int i = 0; i < 100; ++i) {
    const auto [f, g] = random_pair(rng, 3.0);
    double pairing = 0.0;
    for (std::size_t k = 0; k < f.atoms().size(); ++k) {
      pairing += f.atoms()[k].value * g.atoms()[k].value * f.atoms()[k].weight;
    }
    CHECK(pairing <= orlicz_norm(f, B) * luxemburg_norm(g, A) * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("triangle inequality, homogeneity and monotonicity") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  using NormFn = double (*)(const MeasuredFunction&, NFunction);
  const NormFn norms[] = {luxemburg_norm, orlicz_norm, average_orlicz_norm};
  for (int i = 0; i < 100; ++i) {
    const auto [f, g] = random_pair(rng, 3.0);
    const auto sum = pointwise(f, g, 1.0, 1.0);
    const auto upper = pointwise(f, g, 1.0, 0.5);  // f + g/2 >= f
    const double t = scale(rng);
    for (NormFn norm : norms) {
      for (NFunction psi : {A, B}) {
        const double nf = norm(f, psi);
        CHECK(norm(sum, psi) <= nf + norm(g, psi) + 1e-9 * (1 + nf));
        CHECK(norm(f.scaled(t), psi) == doctest::Approx(t * nf).epsilon(1e-7));
        CHECK(nf <= norm(upper, psi) + 1e-9 * (1 + nf));
      }
    }
  }
}

TEST_CASE("mixed norm") {
  const QuadratureSpec quad{64, 64, 8, 4096};
  CHECK(mixed_norm_L1_LB(PotentialSpec::zero(1.0), {0, 1}, {0, 1}, quad) == 0.0);
  const double one = testsupport::constant_one_norm(1.0, 1.0);
  CHECK(mixed_norm_L1_LB(PotentialSpec::box(1.0, 1.0, {-1, 3}), {0, 1}, {0, 1}, quad) ==
        doctest::Approx(one).epsilon(1e-8));

  // Separable V = g(x1) h(x2): (int g) ||h||_B.
  const auto v = PotentialSpec::gaussian(2.0, 3.0, 0.3, 0.5, Profile::Cos2);
  const QuadratureSpec fine{256, 512, 8, 8192};
  const double lhs = mixed_norm_L1_LB(v, {0, 1}, {0, 2}, fine);
  std::vector<Atom> h;
  for (const auto& node : transverse_nodes(v, fine)) {
    h.push_back({profile_value(Profile::Cos2, node.x, 2.0), node.w});
  }
  double int_g = 0.0;
  for (const auto& node : midpoint_rule({0, 1}, {}, 512, 8, 8192)) {
    int_g += node.w * 3.0 * std::exp(-std::pow((node.x - 0.3) / 0.5, 2));
  }
  CHECK(lhs == doctest::Approx(int_g * orlicz_norm(MeasuredFunction(h), B)).epsilon(1e-9));

  CHECK_THROWS_AS(
      mixed_norm_L1_LB(PotentialSpec::box(1.0, 1.0, {0, 1}).scaled(-1.0), {0, 1}, {0, 1}, quad),
      std::domain_error);
}

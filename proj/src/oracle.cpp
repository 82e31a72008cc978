#include "stripbound/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "stripbound/inertia.hpp"

namespace stripbound {

double brute_force_dual_norm(const MeasuredFunction& f, NFunction psi, double level,
                             int grid_points) {
  if (!(level > 0.0)) throw std::domain_error("brute_force_dual_norm: level must be > 0");
  if (f.empty() || f.is_zero()) return 0.0;
  const NFunction phi = psi.complement();
  double min_w = std::numeric_limits<double>::infinity();
  for (const auto& a : f.atoms()) min_w = std::min(min_w, a.weight);
  const double g_max = phi.inverse(level / min_w);
  const double step = g_max / grid_points;

  // Grid argmax of value * g - mu * Phi(g): the sequence is concave in the
  // grid index, so the peak is where the forward difference changes sign.
  const auto best_index = [&](double value, double mu) {
    int lo = 0;
    int hi = grid_points;
    const auto gain = [&](int k) {
      const double g0 = k * step;
      const double g1 = (k + 1) * step;
      return value * step - mu * (phi(g1) - phi(g0));
    };
    while (lo < hi) {
      const int mid = lo + (hi - lo) / 2;
      if (gain(mid) > 0.0) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  };
  const auto evaluate = [&](double mu, double& objective) {
    double used = 0.0;
    objective = 0.0;
    for (const auto& a : f.atoms()) {
      const double g = best_index(a.value, mu) * step;
      used += phi(g) * a.weight;
      objective += a.value * g * a.weight;
    }
    return used;
  };

  double lo = -40.0;  // log mu
  double hi = 40.0;
  double best = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double objective = 0.0;
    if (evaluate(std::exp(mid), objective) <= level) {
      best = std::max(best, objective);
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return best;
}

MeasuredFunction random_measured_function(std::mt19937& rng, int max_atoms, double value_max,
                                          double total) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> value(0.0, value_max);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const int n = count(rng);
  std::vector<Atom> atoms(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& a : atoms) {
    a.value = value(rng);
    a.weight = weight(rng);
    sum += a.weight;
  }
  if (total > 0.0) {
    for (auto& a : atoms) a.weight *= total / sum;
  }
  return MeasuredFunction(std::move(atoms));
}

namespace {

double relative_gap(double computed, double reference) {
  const double scale = std::max(std::abs(reference), 1e-300);
  return std::abs(computed - reference) / scale;
}

}  // namespace

std::vector<OracleLine> run_orlicz_oracle(std::uint32_t seed, int cases) {
  std::vector<OracleLine> lines;
  const NFunction b = NFunction::llogl();
  const auto start = std::chrono::steady_clock::now();
  {
    std::mt19937 rng(seed);
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
      const auto f = random_measured_function(rng, 6, 5.0);
      worst = std::max(worst, relative_gap(orlicz_norm(f, b), brute_force_dual_norm(f, b, 1.0)));
    }
    std::ostringstream d;
    d << cases << " cases, worst relative gap " << worst;
    lines.push_back({"orlicz norm vs dual ball", worst <= 1e-3, d.str()});
  }
  for (double mu : {0.5, 1.0, 2.0}) {
    std::mt19937 rng(seed + static_cast<std::uint32_t>(mu * 1000));
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
      const auto f = random_measured_function(rng, 6, 5.0, mu);
      worst = std::max(worst, relative_gap(average_orlicz_norm(f, b),
                                           brute_force_dual_norm(f, b, f.total_measure())));
    }
    std::ostringstream name;
    name << "averaged norm vs dual ball, mu = " << mu;
    std::ostringstream d;
    d << cases << " cases, worst relative gap " << worst;
    lines.push_back({name.str(), worst <= 1e-3, d.str()});
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << seconds << " s";
  lines.push_back({"orlicz oracle runtime < 10 s", seconds < 10.0, d.str()});
  return lines;
}

std::vector<OracleLine> run_inertia_oracle(std::uint32_t seed, int cases) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(1, 200);
  std::normal_distribution<double> entry(0.0, 1.0);
  int agree_sparse = 0;
  int agree_dense = 0;
  for (int c = 0; c < cases; ++c) {
    const int n = size(rng);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = entry(rng);
    }
    const int reference = count_negative_spectral(a);
    const SparseMatrix s = a.sparseView();
    if (count_negative_sparse(s).negative == reference) ++agree_sparse;
    if (count_negative_dense(a) == reference) ++agree_dense;
  }
  std::ostringstream d1;
  d1 << agree_sparse << "/" << cases << " agree";
  std::ostringstream d2;
  d2 << agree_dense << "/" << cases << " agree";
  return {{"sparse LDL^T vs dense eigensolver", agree_sparse == cases, d1.str()},
          {"Bunch-Kaufman vs dense eigensolver", agree_dense == cases, d2.str()}};
}

}  // namespace stripbound

#include "stripbound/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stripbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this argument both N-functions are differences of nearly equal
// quantities; the Taylor series is used instead.
constexpr double kSeriesThreshold = 1e-2;
// e^t overflows a double past ln(DBL_MAX) ~ 709.78.
constexpr double kExpOverflow = 709.0;

// A(t) = sum_{k>=2} t^k / k!
double exp_minus_series(double t) {
  double term = t * t / 2.0;
  double sum = 0.0;
  for (int k = 2; k <= 12; ++k) {
    sum += term;
    term *= t / (k + 1);
  }
  return sum;
}

// B(t) = sum_{k>=2} (-1)^k t^k / (k (k - 1))
double llogl_series(double t) {
  double power = t * t;
  double sum = 0.0;
  for (int k = 2; k <= 12; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * power / (k * (k - 1.0));
    power *= t;
  }
  return sum;
}

void check_argument(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("N-function argument must be finite and >= 0");
  }
}

}  // namespace

double NFunction::operator()(double t) const {
  check_argument(t);
  if (t < kSeriesThreshold) {
    return kind_ == Kind::ExpMinus ? exp_minus_series(t) : llogl_series(t);
  }
  if (kind_ == Kind::ExpMinus) {
    if (t > kExpOverflow) return kInf;
    return std::expm1(t) - t;
  }
  return (1.0 + t) * std::log1p(t) - t;
}

double NFunction::derivative(double t) const {
  check_argument(t);
  if (kind_ == Kind::ExpMinus) {
    if (t > kExpOverflow) return kInf;
    return std::expm1(t);
  }
  return std::log1p(t);
}

double NFunction::inverse(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw std::domain_error("NFunction::inverse needs a finite y >= 0");
  }
  if (y == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while ((*this)(hi) < y) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

MeasuredFunction::MeasuredFunction(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  for (const auto& atom : atoms_) {
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      throw std::invalid_argument("atom weights must be finite and > 0");
    }
    if (!std::isfinite(atom.value) || atom.value < 0.0) {
      throw std::invalid_argument("atom values must be finite and >= 0");
    }
    total_measure_ += atom.weight;
    sup_ = std::max(sup_, atom.value);
  }
}

MeasuredFunction MeasuredFunction::from_samples(std::span<const double> values,
                                                std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("values and weights differ in length");
  }
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    atoms.push_back({std::abs(values[i]), weights[i]});
  }
  return MeasuredFunction(std::move(atoms));
}

MeasuredFunction MeasuredFunction::scaled(double factor) const {
  std::vector<Atom> atoms(atoms_.begin(), atoms_.end());
  for (auto& atom : atoms) atom.value *= std::abs(factor);
  return MeasuredFunction(std::move(atoms));
}

double modular(const MeasuredFunction& f, NFunction psi, double kappa) {
  if (!(kappa > 0.0)) {
    throw std::domain_error("modular: kappa must be > 0");
  }
  double sum = 0.0;
  for (const auto& atom : f.atoms()) {
    if (atom.value == 0.0) continue;
    const double v = psi(atom.value / kappa);
    if (std::isinf(v)) return kInf;
    sum += v * atom.weight;
  }
  return sum;
}

double luxemburg_norm(const MeasuredFunction& f, NFunction psi) {
  if (f.empty()) {
    throw std::invalid_argument("luxemburg_norm: no atoms");
  }
  if (f.is_zero()) return 0.0;

  const double mu = f.total_measure();
  double lo = f.sup() / psi.inverse(1.0 / mu + 1.0);
  double hi = f.sup() * mu + 1.0;
  while (modular(f, psi, lo) <= 1.0) lo *= 0.5;
  while (modular(f, psi, hi) > 1.0) hi *= 2.0;

  for (int it = 0; it < 300 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modular(f, psi, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double amemiya_norm(const MeasuredFunction& f, NFunction psi, double level) {
  if (f.empty()) {
    throw std::invalid_argument("amemiya_norm: no atoms");
  }
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw std::domain_error("amemiya_norm: level must be finite and > 0");
  }
  if (f.is_zero()) return 0.0;

  // (level + M(k)) / k is minimized where k M'(k) - M(k) = level; the
  // left-hand side is nondecreasing in k, which brackets the minimizer.
  const auto stationarity = [&](double k) {
    double m = 0.0;
    double dm = 0.0;
    for (const auto& atom : f.atoms()) {
      if (atom.value == 0.0) continue;
      const double t = k * atom.value;
      const double v = psi(t);
      if (std::isinf(v)) return kInf;
      m += v * atom.weight;
      dm += t * psi.derivative(t) * atom.weight;
    }
    return dm - m - level;
  };
  const auto objective = [&](double log_k) {
    const double k = std::exp(log_k);
    const double m = modular(f, psi, 1.0 / k);
    return (level + m) / k;
  };

  double k_lo = 1.0 / f.sup();
  double k_hi = k_lo;
  while (stationarity(k_lo) >= 0.0) k_lo *= 0.25;
  while (stationarity(k_hi) <= 0.0) k_hi *= 4.0;

  constexpr double kInvPhi = 0.6180339887498949;
  double a = std::log(k_lo);
  double b = std::log(k_hi);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  return std::min({fc, fd, objective(0.5 * (a + b))});
}

double orlicz_norm(const MeasuredFunction& f, NFunction psi) {
  return amemiya_norm(f, psi, 1.0);
}

double average_orlicz_norm(const MeasuredFunction& f, NFunction psi) {
  if (!(f.total_measure() > 0.0) || !std::isfinite(f.total_measure())) {
    throw std::domain_error("average_orlicz_norm: total measure must be finite and > 0");
  }
  return amemiya_norm(f, psi, f.total_measure());
}

}  // namespace stripbound

#pragma once

#include <span>
#include <vector>

namespace stripbound {

/// The two mutually complementary N-functions used throughout:
///   ExpMinus: A(t) = e^t - 1 - t
///   LLogL:    B(t) = (1 + t) ln(1 + t) - t
/// A and B are Legendre conjugates of each other.
class NFunction {
 public:
  enum class Kind { ExpMinus, LLogL };

  constexpr explicit NFunction(Kind kind) : kind_(kind) {}

  static constexpr NFunction exp_minus() { return NFunction(Kind::ExpMinus); }
  static constexpr NFunction llogl() { return NFunction(Kind::LLogL); }

  constexpr Kind kind() const { return kind_; }
  constexpr NFunction complement() const {
    return NFunction(kind_ == Kind::ExpMinus ? Kind::LLogL : Kind::ExpMinus);
  }

  /// Psi(t) for t >= 0. ExpMinus saturates to +inf once e^t overflows.
  /// Throws std::domain_error for negative or non-finite t.
  double operator()(double t) const;

  /// Psi'(t): e^t - 1 or ln(1 + t).
  double derivative(double t) const;

  /// Smallest t >= 0 with Psi(t) >= y, by bisection.
  double inverse(double y) const;

  friend constexpr bool operator==(NFunction, NFunction) = default;

 private:
  Kind kind_;
};

struct Atom {
  double value;
  double weight;
};

/// A nonnegative function on a finite discrete measure space, usually the
/// output of a quadrature rule.
class MeasuredFunction {
 public:
  MeasuredFunction() = default;
  /// Throws std::invalid_argument unless every weight is > 0 and every value
  /// is finite and >= 0.
  explicit MeasuredFunction(std::vector<Atom> atoms);

  /// Takes |values[i]|, so signed samples are accepted.
  static MeasuredFunction from_samples(std::span<const double> values,
                                       std::span<const double> weights);

  std::span<const Atom> atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_measure() const { return total_measure_; }
  double sup() const { return sup_; }
  bool is_zero() const { return sup_ == 0.0; }

  MeasuredFunction scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
  double total_measure_ = 0.0;
  double sup_ = 0.0;
};

/// sum Psi(value / kappa) * weight. The result is +inf when A overflows.
double modular(const MeasuredFunction& f, NFunction psi, double kappa);

/// inf{kappa > 0 : modular(f, psi, kappa) <= 1}.
double luxemburg_norm(const MeasuredFunction& f, NFunction psi);

/// Dual-ball norm sup{|int f g| : int Phi(|g|) <= 1}, Phi the complement of
/// psi, evaluated through the Amemiya formula
///   inf_{k > 0} (1 + int Psi(k |f|)) / k.
double orlicz_norm(const MeasuredFunction& f, NFunction psi);

/// Same as orlicz_norm with the dual constraint level mu(Omega) instead of 1:
///   inf_{k > 0} (mu(Omega) + int Psi(k |f|)) / k.
double average_orlicz_norm(const MeasuredFunction& f, NFunction psi);

/// inf_{k > 0} (level + int Psi(k |f|)) / k for an arbitrary level > 0.
/// orlicz_norm and average_orlicz_norm are the level = 1 and level = mu cases.
double amemiya_norm(const MeasuredFunction& f, NFunction psi, double level);

}  // namespace stripbound

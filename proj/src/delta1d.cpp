#include "stripbound/delta1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stripbound {

void DeltaConfig::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("delta: L must be > 0");
  if (!(h > 0.0) || !(h < L)) throw std::invalid_argument("delta: need 0 < h < L");
  if (points.size() != intensities.size()) {
    throw std::invalid_argument("delta: points and intensities differ in length");
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!std::isfinite(points[k])) throw std::invalid_argument("delta: point not finite");
    if (k > 0 && !(points[k] > points[k - 1])) {
      throw std::invalid_argument("delta: points must increase strictly");
    }
    if (!(intensities[k] > 0.0) || !std::isfinite(intensities[k])) {
      throw std::invalid_argument("delta: intensities must be finite and > 0");
    }
    if (std::abs(points[k]) > L - 10.0 * h) {
      throw std::invalid_argument("delta: point closer than 10 h to the window end");
    }
  }
}

SparseMatrix DeltaForm::to_sparse() const {
  const int n = static_cast<int>(diag.size());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(3 * diag.size());
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, diag[i]);
    if (i + 1 < n) {
      t.emplace_back(i, i + 1, off[i]);
      t.emplace_back(i + 1, i, off[i]);
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

DeltaForm assemble_delta_form(const DeltaConfig& config) {
  config.validate();
  DeltaForm f;
  f.L = config.L;
  f.panels = static_cast<int>(std::ceil(2.0 * config.L / config.h - 1e-9));
  f.h = 2.0 * config.L / f.panels;
  const int n = f.panels + 1;
  f.diag.assign(n, 0.0);
  f.off.assign(n - 1, -1.0 / f.h);
  f.mass.assign(n, f.h);
  f.mass.front() = f.mass.back() = 0.5 * f.h;
  for (int i = 0; i + 1 < n; ++i) {
    f.diag[i] += 1.0 / f.h;
    f.diag[i + 1] += 1.0 / f.h;
  }
  for (std::size_t k = 0; k < config.points.size(); ++k) {
    const int i = static_cast<int>(std::lround((config.points[k] + f.L) / f.h));
    if (!f.nodes.empty() && i == f.nodes.back()) {
      std::ostringstream msg;
      msg << "delta: points " << k - 1 << " and " << k << " snap to the same node; mesh too coarse";
      throw std::invalid_argument(msg.str());
    }
    const double err = std::abs(config.points[k] - f.node(i));
    if (err > 0.5 * f.h * (1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "delta: point " << k << " snapped by " << err << " > h/2";
      f.warnings.push_back(msg.str());
    }
    f.nodes.push_back(i);
    f.snap_errors.push_back(err);
    f.diag[i] -= config.intensities[k];
  }
  return f;
}

int count_negative(const DeltaForm& form) {
  return count_negative_tridiagonal(form.diag, form.off);
}

int count_negative_delta(const DeltaConfig& config) {
  return count_negative(assemble_delta_form(config));
}

double lowest_eigenvalue(const DeltaForm& form) {
  const std::size_t n = form.diag.size();
  if (n == 0) throw std::invalid_argument("lowest_eigenvalue: empty form");
  // Gershgorin discs of M^(-1/2) T M^(-1/2).
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(form.off[i - 1]) / std::sqrt(form.mass[i - 1] * form.mass[i]);
    if (i + 1 < n) r += std::abs(form.off[i]) / std::sqrt(form.mass[i] * form.mass[i + 1]);
    const double c = form.diag[i] / form.mass[i];
    lo = std::min(lo, c - r);
    hi = std::max(hi, c + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 300 && hi - lo > 1e-15 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_pencil(form.diag, form.off, form.mass, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

namespace {

double smooth_f(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double smooth_f_prime(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

}  // namespace

double BumpFunction::profile(double t) {
  const double r = std::abs(t);
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double p = smooth_f(1.0 - r);
  const double q = smooth_f(r - 0.5);
  return p / (p + q);
}

double BumpFunction::derivative(double t) {
  const double r = std::abs(t);
  if (r <= 0.5 || r >= 1.0) return 0.0;
  const double p = smooth_f(1.0 - r);
  const double q = smooth_f(r - 0.5);
  const double dp = -smooth_f_prime(1.0 - r);
  const double dq = smooth_f_prime(r - 0.5);
  const double d_r = (dp * q - p * dq) / ((p + q) * (p + q));
  return t > 0.0 ? d_r : -d_r;
}

double BumpFunction::dirichlet_energy() {
  static const double energy = [] {
    // Two symmetric transition layers on 1/2 < |t| < 1.
    constexpr int panels = 200000;
    const double h = 0.5 / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
      const double d = derivative(0.5 + (i + 0.5) * h);
      s += d * d;
    }
    return 2.0 * s * h;
  }();
  return energy;
}

SpacingConstruction spaced_wells(const std::vector<double>& intensities, double margin) {
  if (!(margin > 1.0) || !std::isfinite(margin)) {
    throw std::domain_error("spaced_wells: margin must be > 1");
  }
  if (intensities.empty()) throw std::invalid_argument("spaced_wells: need K >= 1");
  const double energy = BumpFunction::dirichlet_energy();

  SpacingConstruction out;
  std::vector<double> gaps;
  double x = 0.0;
  for (std::size_t k = 0; k < intensities.size(); ++k) {
    const double alpha = intensities[k];
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("spaced_wells: intensities must be finite and > 0");
    }
    double gap = margin * 2.0 * energy / alpha;
    if (!gaps.empty()) gap = std::max(gap, gaps.back());
    gaps.push_back(gap);
    x += gap;
    out.config.points.push_back(x);
    out.config.intensities.push_back(alpha);
    SpacingCertificate c;
    c.k = static_cast<int>(k) + 1;
    c.x = x;
    c.gap = gap;
    c.analytic = 2.0 * energy / gap - alpha;
    out.certificates.push_back(c);
  }
  out.config.L = x + gaps.back();
  out.config.h = *std::min_element(gaps.begin(), gaps.end()) / 400.0;

  const DeltaForm form = assemble_delta_form(out.config);
  const int n = static_cast<int>(form.diag.size());
  for (auto& c : out.certificates) {
    // Nodal interpolant of phi_k over its support, evaluated in the discrete form.
    const int lo = std::max(0, static_cast<int>(std::floor((c.x - 0.5 * c.gap + form.L) / form.h)));
    const int hi = std::min(n - 1, static_cast<int>(std::ceil((c.x + 0.5 * c.gap + form.L) / form.h)));
    double q = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double wi = BumpFunction::profile(2.0 * (form.node(i) - c.x) / c.gap);
      q += form.diag[i] * wi * wi;
      if (i + 1 < n) {
        const double wj = BumpFunction::profile(2.0 * (form.node(i + 1) - c.x) / c.gap);
        q += 2.0 * form.off[i] * wi * wj;
      }
    }
    c.discrete = q;
    if (!(c.analytic < 0.0) || !(c.discrete < 0.0)) out.all_negative = false;
  }
  return out;
}

FiniteSigmaCheck finite_sigma_count_check(const DeltaConfig& config) {
  FiniteSigmaCheck out;
  out.points = static_cast<int>(config.points.size());
  out.count = count_negative_delta(config);
  out.pass = out.count <= out.points;
  return out;
}

}  // namespace stripbound

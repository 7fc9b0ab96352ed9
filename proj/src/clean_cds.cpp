#include "cdsxva/clean_cds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdsxva/errors.hpp"
#include "cdsxva/parallel.hpp"

namespace cdsxva {

namespace {

// Even interval count for composite Simpson.
int quadrature_intervals(double span, double quad_step) {
  int m = static_cast<int>(std::ceil(span / quad_step - 1e-12));
  if (m < 2) m = 2;
  if (m % 2 != 0) ++m;
  return m;
}

}  // namespace

CleanCurve::CleanCurve(const CirParams& factor, double a1, double t, double x,
                       double maturity, double rate, double quad_step)
    : factor_(factor), a1_(a1), t_(t), x_(x), maturity_(maturity), rate_(rate) {
  factor.validate();
  if (!(a1 >= 0.0)) throw std::invalid_argument("CleanCurve: a1 must be >= 0");
  if (!(x >= 0.0)) throw std::invalid_argument("CleanCurve: x must be >= 0");
  if (!(t >= 0.0 && t <= maturity)) {
    throw std::invalid_argument("CleanCurve: need 0 <= t <= maturity");
  }
  if (!(quad_step > 0.0)) {
    throw std::invalid_argument("CleanCurve: quad_step must be > 0");
  }
  const double span = maturity - t;
  if (span <= 0.0) return;  // empty curve at expiry

  const int m = quadrature_intervals(span, quad_step);
  const double h = span / m;
  nodes_.resize(m + 1);
  survival_.resize(m + 1);
  weights_.resize(m + 1);
  for (int j = 0; j <= m; ++j) {
    nodes_[j] = t + span * (static_cast<double>(j) / m);
    survival_[j] = survival(nodes_[j]);
    const double simpson = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    weights_[j] = simpson * h / 3.0;
  }
}

double CleanCurve::survival(double u) const {
  if (u < t_) throw std::invalid_argument("CleanCurve::survival: u < t");
  return std::exp(-a1_ * (u - t_)) * affine_transform(factor_, 0.0, t_, u, x_);
}

namespace {

// Integral_t^T discount(u) P(t,u) du on the curve's Simpson grid.
double discounted_survival_integral(const CleanCurve& curve) {
  const auto& nodes = curve.nodes();
  const auto& surv = curve.node_survival();
  const auto& w = curve.weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    acc += w[j] * curve.discount(nodes[j]) * surv[j];
  }
  return acc;
}

}  // namespace

double protection_leg(const CleanCurve& curve, const ContractSpec& spec) {
  spec.validate();
  if (curve.nodes().empty()) return 0.0;  // at expiry
  // Integration by parts of Integral disc(u) (-dP):
  //   PL = lgd * (1 - disc(T) P(t,T) - r * Integral disc(u) P(t,u) du),
  // exact in the r = 0 case.
  const double t_end = curve.maturity();
  double value = 1.0 - curve.discount(t_end) * curve.node_survival().back();
  if (curve.rate() != 0.0) {
    value -= curve.rate() * discounted_survival_integral(curve);
  }
  return spec.lgd * value;
}

double risky_annuity(const CleanCurve& curve, const ContractSpec& spec) {
  spec.validate();
  if (curve.nodes().empty()) return 0.0;
  return discounted_survival_integral(curve);
}

double clean_price(const CleanCurve& curve, const ContractSpec& spec) {
  return protection_leg(curve, spec) - spec.spread * risky_annuity(curve, spec);
}

double fair_spread(const CleanCurve& curve, const ContractSpec& spec) {
  const double annuity = risky_annuity(curve, spec);
  if (!(annuity > 0.0)) {
    throw PricingError("fair_spread: risky annuity is not positive");
  }
  return protection_leg(curve, spec) / annuity;
}

CleanPriceTable::CleanPriceTable(const CirParams& factor, double a1,
                                 const ContractSpec& spec, const TimeGrid& grid,
                                 double quad_step)
    : factor_(factor),
      a1_(a1),
      spec_(spec),
      grid_(grid),
      quad_step_(quad_step) {
  spec.validate();
  factor.validate();

  // Factor range wide enough that falling back to exact evaluation is rare:
  // running mean + 30 sd, probed at a few horizons.
  double x_max = std::max(factor.x0, factor.mu);
  for (double frac : {0.25, 0.5, 1.0}) {
    const CirMoments m = cir_moments(factor, frac * grid.end());
    x_max = std::max(x_max, m.mean + 30.0 * std::sqrt(m.variance));
  }
  x_max_ = std::max(x_max, 0.25);
  n_x_ = 513;
  dx_ = x_max_ / (n_x_ - 1);

  // One ghost column on each side keeps the cubic stencil full near the
  // boundaries; the row formula extends smoothly to x slightly below zero.
  const int row_len = n_x_ + 2;
  const int n_nodes = grid.n_nodes();
  values_.assign(static_cast<std::size_t>(n_nodes) * row_len, 0.0);
  parallel_for(n_nodes, [&](int k) {
    const double t = grid_.node(k);
    const double span = grid_.end() - t;
    double* row = values_.data() + static_cast<std::size_t>(k) * row_len;
    if (span <= 1e-14) return;  // S~(T, x) = 0

    // S~(t,x) = lgd - beta e^{-B_m x} - sum_j alpha_j e^{-B_j x} with all
    // time-dependent coefficients precomputed per row.
    const int m = quadrature_intervals(span, quad_step_);
    const double h = span / m;
    std::vector<double> alpha(m + 1), bcoef(m + 1);
    for (int j = 0; j <= m; ++j) {
      const double s = span * (static_cast<double>(j) / m);
      const double w = ((j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0)) * h / 3.0;
      const double disc = std::exp(-spec_.rate * s);
      const double affine_at_zero = affine_transform(factor_, 0.0, 0.0, s, 0.0);
      // survival factorizes as e^{-a1 s} A(s) e^{-B(s) x}; recover B via a
      // second evaluation at x = 1.
      const double affine_at_one = affine_transform(factor_, 0.0, 0.0, s, 1.0);
      bcoef[j] = -std::log(affine_at_one / affine_at_zero);
      alpha[j] = (spec_.lgd * spec_.rate + spec_.spread) * w * disc *
                 std::exp(-a1_ * s) * affine_at_zero;
    }
    const double disc_m = std::exp(-spec_.rate * span);
    const double beta = spec_.lgd * disc_m *
                        std::exp(-a1_ * span) *
                        affine_transform(factor_, 0.0, 0.0, span, 0.0);
    const double b_m = bcoef[m];

    for (int jx = -1; jx <= n_x_; ++jx) {
      const double x = jx * dx_;
      double acc = 0.0;
      for (int j = 0; j <= m; ++j) acc += alpha[j] * std::exp(-bcoef[j] * x);
      row[jx + 1] = spec_.lgd - beta * std::exp(-b_m * x) - acc;
    }
  });
}

double CleanPriceTable::price(int node, double x) const {
  if (node < 0 || node > grid_.n_steps()) {
    throw std::invalid_argument("CleanPriceTable::price: node out of range");
  }
  if (node == grid_.n_steps()) return 0.0;
  if (!(x >= 0.0)) {
    throw std::invalid_argument("CleanPriceTable::price: x must be >= 0");
  }
  if (x >= x_max_) return price_exact(grid_.node(node), x);

  const double* row =
      values_.data() + static_cast<std::size_t>(node) * (n_x_ + 2) + 1;
  const double pos = x / dx_;
  int i = static_cast<int>(pos);
  if (i > n_x_ - 2) i = n_x_ - 2;
  const double u = pos - i;
  // Catmull-Rom; the ghost columns make the stencil complete at both ends.
  const double p0 = row[i - 1];
  const double p1 = row[i];
  const double p2 = row[i + 1];
  const double p3 = row[i + 2];
  const double c1 = 0.5 * (p2 - p0);
  const double c2 = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  const double c3 = 0.5 * (p3 - p0) + 1.5 * (p1 - p2);
  return p1 + u * (c1 + u * (c2 + u * c3));
}

double CleanPriceTable::price_exact(double t, double x) const {
  if (t >= grid_.end() - 1e-14) return 0.0;
  const CleanCurve curve(factor_, a1_, t, x, grid_.end(), spec_.rate, quad_step_);
  return clean_price(curve, spec_);
}

}  // namespace cdsxva

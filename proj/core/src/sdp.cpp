#include "curenet/sdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "curenet/errors.hpp"

namespace curenet {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd laplacian(std::size_t n, const std::vector<SdpEdge>& edges,
                   const std::vector<double>& weights) {
  MatrixXd lap = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto i = static_cast<Eigen::Index>(edges[e].i);
    auto j = static_cast<Eigen::Index>(edges[e].j);
    lap(i, i) += weights[e];
    lap(j, j) += weights[e];
    lap(i, j) -= weights[e];
    lap(j, i) -= weights[e];
  }
  return lap;
}

double lambda_max(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

// Best reply of the reduction player against a fixed X: fractional knapsack
// on g_e = <L_e, X>.
double dual_value(const std::vector<SdpEdge>& edges, const MatrixXd& x, double budget) {
  std::vector<std::pair<double, double>> items;  // (g_e, w_e)
  double total = 0;
  for (const auto& e : edges) {
    auto i = static_cast<Eigen::Index>(e.i);
    auto j = static_cast<Eigen::Index>(e.j);
    double g = std::max(0.0, x(i, i) + x(j, j) - 2 * x(i, j));
    items.push_back({g, e.w});
    total += e.w * g;
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double left = budget;
  for (const auto& [g, w] : items) {
    if (left <= 0) break;
    double take = std::min(w, left);
    total -= take * g;
    left -= take;
  }
  return total / 4.0;
}

class Barrier {
 public:
  Barrier(std::size_t n, const std::vector<SdpEdge>& edges, double budget, bool reduce)
      : n_(n), edges_(edges), budget_(budget), reduce_(reduce) {
    m_ = reduce ? edges.size() : 0;
    vars_ = m_ + (n_ - 1) + 1;
    c_ = static_cast<double>(n_) / 4.0;
  }

  std::size_t size() const { return vars_; }
  std::size_t t_index() const { return vars_ - 1; }

  std::vector<double> reduction(const VectorXd& x) const {
    std::vector<double> d(edges_.size(), 0.0);
    for (std::size_t e = 0; e < m_; ++e) d[e] = x(static_cast<Eigen::Index>(e));
    return d;
  }

  std::vector<double> shift(const VectorXd& x) const {
    std::vector<double> u(n_, 0.0);
    double sum = 0;
    for (std::size_t j = 0; j + 1 < n_; ++j) {
      u[j] = x(static_cast<Eigen::Index>(m_ + j));
      sum += u[j];
    }
    u[n_ - 1] = -sum;
    return u;
  }

  std::vector<double> residual_weights(const VectorXd& x) const {
    auto d = reduction(x);
    std::vector<double> w(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) w[e] = edges_[e].w - d[e];
    return w;
  }

  // S = t I - L_{w - delta} - diag u
  MatrixXd slack(const VectorXd& x) const {
    MatrixXd s = -laplacian(n_, edges_, residual_weights(x));
    auto u = shift(x);
    for (std::size_t i = 0; i < n_; ++i) {
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +=
          x(static_cast<Eigen::Index>(t_index())) - u[i];
    }
    return s;
  }

  bool scalar_interior(const VectorXd& x) const {
    double sum = 0;
    for (std::size_t e = 0; e < m_; ++e) {
      double d = x(static_cast<Eigen::Index>(e));
      if (!(d > 0 && d < edges_[e].w)) return false;
      sum += d;
    }
    return m_ == 0 || sum < budget_;
  }

  // Returns +inf outside the domain.
  double value(const VectorXd& x, double sigma) const {
    if (!scalar_interior(x)) return INFINITY;
    Eigen::LLT<MatrixXd> llt(slack(x));
    if (llt.info() != Eigen::Success) return INFINITY;
    double logdet = 0;
    const MatrixXd& l = llt.matrixL();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      if (!(l(i, i) > 0)) return INFINITY;
      logdet += 2 * std::log(l(i, i));
    }
    double f = sigma * c_ * x(static_cast<Eigen::Index>(t_index())) - logdet;
    double sum = 0;
    for (std::size_t e = 0; e < m_; ++e) {
      double d = x(static_cast<Eigen::Index>(e));
      f -= std::log(d) + std::log(edges_[e].w - d);
      sum += d;
    }
    if (m_ > 0) f -= std::log(budget_ - sum);
    return f;
  }

  // Gradient and Hessian at an interior point. Also returns S^{-1}.
  void derivatives(const VectorXd& x, double sigma, VectorXd& grad, MatrixXd& hess,
                   MatrixXd& inverse) const {
    MatrixXd s = slack(x);
    inverse = s.llt().solve(MatrixXd::Identity(s.rows(), s.cols()));
    const MatrixXd& r = inverse;
    const auto ni = static_cast<Eigen::Index>(n_);
    const auto nm = static_cast<Eigen::Index>(m_);
    const Eigen::Index last = ni - 1;
    const Eigen::Index ti = static_cast<Eigen::Index>(t_index());

    // dS/d delta_e = a_e a_e^T, dS/d u_j = E_nn - E_jj, dS/dt = I. Every entry
    // tr(R F_k R F_l) reduces to products of R with the incidence vectors.
    MatrixXd ra(ni, nm);
    for (std::size_t e = 0; e < m_; ++e) {
      auto i = static_cast<Eigen::Index>(edges_[e].i);
      auto j = static_cast<Eigen::Index>(edges_[e].j);
      ra.col(static_cast<Eigen::Index>(e)) = r.col(i) - r.col(j);
    }
    MatrixXd p(nm, nm);  // a_e^T R a_f
    for (std::size_t f = 0; f < m_; ++f) {
      auto i = static_cast<Eigen::Index>(edges_[f].i);
      auto j = static_cast<Eigen::Index>(edges_[f].j);
      p.row(static_cast<Eigen::Index>(f)) = ra.row(i) - ra.row(j);
    }
    const MatrixXd r2 = r * r;

    const auto nv = static_cast<Eigen::Index>(vars_);
    grad = VectorXd::Zero(nv);
    hess = MatrixXd::Zero(nv, nv);
    for (Eigen::Index e = 0; e < nm; ++e) {
      grad(e) = -p(e, e);
      for (Eigen::Index f = 0; f <= e; ++f) hess(e, f) = p(e, f) * p(e, f);
      hess(ti, e) = ra.col(e).squaredNorm();
    }
    for (Eigen::Index j = 0; j < last; ++j) {
      const Eigen::Index uj = nm + j;
      grad(uj) = r(j, j) - r(last, last);
      for (Eigen::Index e = 0; e < nm; ++e) {
        hess(uj, e) = ra(last, e) * ra(last, e) - ra(j, e) * ra(j, e);
      }
      for (Eigen::Index k = 0; k <= j; ++k) {
        hess(uj, nm + k) = r(j, k) * r(j, k) - r(j, last) * r(j, last) -
                           r(last, k) * r(last, k) + r(last, last) * r(last, last);
      }
      hess(ti, uj) = r2(last, last) - r2(j, j);
    }
    grad(ti) = -r.trace();
    hess(ti, ti) = r.squaredNorm();
    hess.triangularView<Eigen::StrictlyUpper>() = hess.transpose();

    grad(static_cast<Eigen::Index>(t_index())) += sigma * c_;

    double sum = 0;
    for (std::size_t e = 0; e < m_; ++e) sum += x(static_cast<Eigen::Index>(e));
    const double slack_b = budget_ - sum;
    for (std::size_t e = 0; e < m_; ++e) {
      auto ei = static_cast<Eigen::Index>(e);
      double d = x(ei);
      double rest = edges_[e].w - d;
      grad(ei) += -1 / d + 1 / rest + 1 / slack_b;
      hess(ei, ei) += 1 / (d * d) + 1 / (rest * rest);
      for (std::size_t f = 0; f < m_; ++f) {
        hess(ei, static_cast<Eigen::Index>(f)) += 1 / (slack_b * slack_b);
      }
    }
  }

  // Largest step keeping the box and budget strictly feasible.
  double max_step(const VectorXd& x, const VectorXd& dx) const {
    double step = INFINITY;
    double sum = 0;
    double dsum = 0;
    for (std::size_t e = 0; e < m_; ++e) {
      auto ei = static_cast<Eigen::Index>(e);
      if (dx(ei) < 0) step = std::min(step, -x(ei) / dx(ei));
      if (dx(ei) > 0) step = std::min(step, (edges_[e].w - x(ei)) / dx(ei));
      sum += x(ei);
      dsum += dx(ei);
    }
    if (dsum > 0) step = std::min(step, (budget_ - sum) / dsum);
    return step;
  }

  double c() const { return c_; }
  std::size_t reducible() const { return m_; }

 private:
  std::size_t n_;
  const std::vector<SdpEdge>& edges_;
  double budget_;
  bool reduce_;
  std::size_t m_ = 0;
  std::size_t vars_ = 0;
  double c_ = 0;
};

}  // namespace

double gw_upper_bound(std::size_t node_count, const std::vector<SdpEdge>& edges,
                      const std::vector<double>& u) {
  if (node_count == 0) return 0;
  std::vector<double> w;
  for (const auto& e : edges) w.push_back(e.w);
  MatrixXd m = laplacian(node_count, edges, w);
  for (std::size_t i = 0; i < node_count && i < u.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += u[i];
  }
  return static_cast<double>(node_count) / 4.0 * lambda_max(m);
}

SdpResult solve_minimax_sdp(std::size_t node_count, const std::vector<SdpEdge>& edges,
                            double budget, const SdpOptions& options) {
  SdpResult out;
  double total = 0;
  for (const auto& e : edges) {
    if (e.i >= node_count || e.j >= node_count || e.i == e.j) {
      throw DomainError("SDP edge endpoint out of range");
    }
    if (!(e.w > 0)) throw DomainError("SDP edges must have positive weight");
    total += e.w;
  }
  if (budget < 0) throw DomainError("reduction budget must be nonnegative");
  out.delta.assign(edges.size(), 0.0);
  out.u.assign(node_count, 0.0);
  if (edges.empty() || node_count < 2) return out;
  if (budget >= total) {
    for (std::size_t e = 0; e < edges.size(); ++e) out.delta[e] = edges[e].w;
    return out;
  }

  const bool reduce = budget > 0;
  Barrier barrier(node_count, edges, budget, reduce);
  const auto nv = static_cast<Eigen::Index>(barrier.size());
  VectorXd x = VectorXd::Zero(nv);
  for (std::size_t e = 0; e < barrier.reducible(); ++e) {
    x(static_cast<Eigen::Index>(e)) = edges[e].w * budget / (2 * total);
  }
  {
    auto w = barrier.residual_weights(x);
    x(nv - 1) = lambda_max(laplacian(node_count, edges, w)) + 1.0;
  }

  double sigma = options.initial_sigma;
  VectorXd grad;
  MatrixXd hess;
  MatrixXd inverse;
  double gap = INFINITY;
  double best_lower = -INFINITY;
  while (true) {
    // Centering.
    for (std::size_t inner = 0;; ++inner) {
      if (out.newton_steps >= options.newton_limit) {
        std::ostringstream msg;
        msg << "SDP barrier did not converge within " << options.newton_limit
            << " Newton steps (gap " << gap << ", sigma " << sigma << ")";
        throw NumericError(msg.str());
      }
      barrier.derivatives(x, sigma, grad, hess, inverse);
      Eigen::LDLT<MatrixXd> ldlt(hess);
      VectorXd dx = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !dx.allFinite()) {
        hess.diagonal().array() += 1e-12 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
        dx = hess.ldlt().solve(-grad);
      }
      ++out.newton_steps;
      double decrement = -grad.dot(dx);
      if (!(decrement > 1e-12)) break;
      const double lambda = std::sqrt(decrement);
      const double f0 = barrier.value(x, sigma);
      const double reach = 0.99 * barrier.max_step(x, dx);
      bool moved = false;
      // Backtracking from the full step while function values still resolve
      // the decrease (strict: at large sigma the Armijo term drops below one ulp).
      double step = std::min(1.0, reach);
      for (int tries = 0; tries < 40; ++tries, step *= 0.5) {
        VectorXd trial = x + step * dx;
        double f1 = barrier.value(trial, sigma);
        if (std::isfinite(f1) && f1 < f0 && f1 <= f0 - 0.25 * step * decrement) {
          x = std::move(trial);
          moved = true;
          break;
        }
      }
      // Otherwise the damped step 1/(1 + lambda) of self-concordant theory,
      // which needs only a feasibility check.
      step = std::min(lambda < 0.25 ? 1.0 : 1.0 / (1.0 + lambda), reach);
      for (int tries = 0; !moved && tries < 60; ++tries, step *= 0.5) {
        VectorXd trial = x + step * dx;
        if (std::isfinite(barrier.value(trial, sigma))) {
          x = std::move(trial);
          moved = true;
        }
      }
      // Tight centring keeps S^{-1} a good dual; once it stops paying off at
      // large sigma, accept a looser point after a few extra steps.
      if (!moved || lambda < 1e-8 || (lambda < 1e-3 && inner >= 12)) break;
    }

    // Certificate: primal bound from lambda_max, dual from the normalised S^{-1}.
    auto w = barrier.residual_weights(x);
    auto u = barrier.shift(x);
    MatrixXd m = laplacian(node_count, edges, w);
    for (std::size_t i = 0; i < node_count; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += u[i];
    }
    double upper = barrier.c() * lambda_max(m);
    MatrixXd xmat = inverse;
    VectorXd scale = xmat.diagonal().cwiseSqrt().cwiseInverse();
    xmat = scale.asDiagonal() * xmat * scale.asDiagonal();
    // Any unit-diagonal X bounds the optimum from below, so the best one seen
    // so far stays valid; S^{-1} loses accuracy as sigma grows.
    best_lower = std::max(best_lower, dual_value(edges, xmat, reduce ? budget : 0.0));
    gap = upper - best_lower;
    out.delta = barrier.reduction(x);
    out.u = std::move(u);
    out.upper_bound = upper;
    out.lower_bound = best_lower;
    if (gap <= options.gap_tolerance) return out;
    if (sigma > 1e13) {
      std::ostringstream msg;
      msg << "SDP barrier stalled at gap " << gap << " (tolerance " << options.gap_tolerance << ")";
      throw NumericError(msg.str());
    }
    sigma *= options.sigma_growth;
  }
}

}  // namespace curenet

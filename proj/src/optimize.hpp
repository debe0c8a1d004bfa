#pragma once

// Small dense optimizers used by the polynomial-path search. Internal.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace algpaths::detail {

struct MinimizeResult {
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Limited-memory BFGS with Armijo backtracking. `fg(x, grad)` returns f(x)
/// and writes the gradient. Stops once f <= f_target.
template <typename ObjectiveGrad>
MinimizeResult lbfgs_minimize(Eigen::VectorXd& x, ObjectiveGrad&& fg, int max_iter,
                              double f_target, int memory = 10) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g(n), g_new(n), x_new(n);
  double f = fg(x, g);
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  int it = 0;
  for (; it < max_iter && f > f_target; ++it) {
    if (!(g.squaredNorm() > 0.0)) break;

    // two-loop recursion
    Eigen::VectorXd q = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(q);
      q -= alpha[k] * y_hist[k];
    }
    double gamma = 1.0 / std::max(1.0, g.norm());
    if (!s_hist.empty()) gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    Eigen::VectorXd dir = gamma * q;
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * y_hist[k].dot(dir);
      dir += s_hist[k] * (alpha[k] - beta);
    }
    dir = -dir;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      dir = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = x + step * dir;
      f_new = fg(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    x = x_new;
    g = g_new;
    const double f_old = f;
    f = f_new;
    if (sy > 1e-300) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    if (f_old - f <= 1e-16 * f_old && f < 1e-20) break;
  }
  return {f, it};
}

/// Levenberg-Marquardt on a least-squares problem 0.5 * ||r(x)||^2.
/// `rj(x, r, J)` fills the residual vector and its Jacobian.
template <typename ResidualJacobian>
MinimizeResult levenberg_marquardt(Eigen::VectorXd& x, ResidualJacobian&& rj, int max_iter,
                                   double f_target) {
  Eigen::VectorXd r, r_new;
  Eigen::MatrixXd J, J_new;
  rj(x, r, J);
  double f = r.squaredNorm();
  double mu = 1e-3;
  int it = 0;
  for (; it < max_iter && f > f_target; ++it) {
    const Eigen::MatrixXd jtj = J.transpose() * J;
    const Eigen::VectorXd jtr = J.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = lhs.ldlt().solve(-jtr);
      Eigen::VectorXd x_new = x + delta;
      rj(x_new, r_new, J_new);
      const double f_new = r_new.squaredNorm();
      if (std::isfinite(f_new) && f_new < f) {
        x = std::move(x_new);
        r = r_new;
        J = J_new;
        f = f_new;
        mu = std::max(mu / 10.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return {f, it};
}

}  // namespace algpaths::detail

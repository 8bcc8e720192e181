// Copyright 2026 The Regolith Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gaussian-process regression with a squared-exponential ARD kernel.
//
//   k(a, b) = s2 * exp(-0.5 * sum_k (a_k - b_k)^2 / l_k^2)
//
// The prior mean is a constant. Hyperparameters are either fixed or fitted by
// maximizing the log marginal likelihood over log-parameters.

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "regolith/bo/param_space.hpp"
#include "regolith/core.hpp"

namespace regolith::bo {

struct Observation {
  std::vector<double> x;  // unit cube
  double value = 0.0;     // ignored when failed
  bool failed = false;

  bool operator==(const Observation&) const = default;
};

struct GPHyperparams {
  std::vector<double> lengthscales;  // one per dimension, > 0
  double signal_variance = 1.0;
  double noise_variance = 0.0;
  double mean = 0.0;

  void validate(std::size_t d) const {
    std::vector<std::string> bad;
    if (lengthscales.size() != d) bad.push_back("lengthscales");
    for (double l : lengthscales) {
      if (!(std::isfinite(l) && l > 0.0)) {
        bad.push_back("lengthscales");
        break;
      }
    }
    if (!(std::isfinite(signal_variance) && signal_variance > 0.0)) {
      bad.push_back("signal_variance");
    }
    if (!(std::isfinite(noise_variance) && noise_variance >= 0.0)) {
      bad.push_back("noise_variance");
    }
    if (!std::isfinite(mean)) bad.push_back("mean");
    if (!bad.empty()) throw InvalidInput("invalid GP hyperparameters", bad);
  }

  bool operator==(const GPHyperparams&) const = default;
};

/// Hyperparameters held as given.
struct Fixed {
  GPHyperparams params;
};

/// Multi-start gradient ascent on the log marginal likelihood. The prior mean
/// is pinned to the sample mean of the targets; `initial` (or a data-scaled
/// default) is always one of the starts and is kept if nothing beats it.
struct MaximizeLikelihood {
  std::optional<GPHyperparams> initial;
  int max_iterations = 80;
  double min_lengthscale = 0.02;
  double max_lengthscale = 20.0;
  double min_noise_ratio = 1e-8;  // relative to the target variance
  double max_noise_ratio = 1.0;
};

using HyperMode = std::variant<Fixed, MaximizeLikelihood>;

inline constexpr double kJitterLadder[] = {0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};

struct GPModel {
  GPHyperparams hyper;
  Eigen::MatrixXd X;  // n x d training inputs
  Eigen::VectorXd y;  // n training targets
  Eigen::LLT<Eigen::MatrixXd> chol;
  Eigen::VectorXd alpha;  // (K + (noise + jitter) I)^-1 (y - mean)
  double jitter = 0.0;    // added diagonal, relative to signal_variance
  double log_marginal_likelihood = 0.0;

  std::size_t n() const { return static_cast<std::size_t>(X.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(X.cols()); }
  double best_observed() const { return y.maxCoeff(); }
};

namespace detail {

inline double se_kernel(const double* a, const double* b, const std::vector<double>& ls,
                        double s2) {
  double r2 = 0.0;
  for (std::size_t k = 0; k < ls.size(); ++k) {
    const double u = (a[k] - b[k]) / ls[k];
    r2 += u * u;
  }
  return s2 * std::exp(-0.5 * r2);
}

inline Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const GPHyperparams& h) {
  const Eigen::Index n = X.rows();
  // Row-major copy so each point is contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Xr = X;
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = h.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      K(i, j) = K(j, i) =
          se_kernel(Xr.row(i).data(), Xr.row(j).data(), h.lengthscales, h.signal_variance);
    }
  }
  return K;
}

struct Factorization {
  Eigen::LLT<Eigen::MatrixXd> chol;
  double jitter = 0.0;
};

/// Cholesky of K + noise I, escalating a diagonal jitter (relative to the
/// signal variance) until the factorization succeeds.
inline Factorization factorize(Eigen::MatrixXd K, const GPHyperparams& h) {
  const Eigen::Index n = K.rows();
  K.diagonal().array() += h.noise_variance;
  for (double rel : kJitterLadder) {
    Eigen::MatrixXd A = K;
    A.diagonal().array() += rel * h.signal_variance;
    Factorization f{Eigen::LLT<Eigen::MatrixXd>(A), rel};
    if (f.chol.info() != Eigen::Success) continue;
    const auto diag = f.chol.matrixLLT().diagonal();
    bool ok = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(std::isfinite(diag(i)) && diag(i) > 0.0)) ok = false;
    }
    if (ok) return f;
  }
  throw ConditioningError("kernel matrix is not positive definite even with jitter " +
                          std::to_string(kJitterLadder[std::size(kJitterLadder) - 1]));
}

inline double log_likelihood_of(const Factorization& f, const Eigen::VectorXd& centered,
                                 const Eigen::VectorXd& alpha) {
  const double n = static_cast<double>(centered.size());
  const double log_det = 2.0 * f.chol.matrixLLT().diagonal().array().log().sum();
  return -0.5 * centered.dot(alpha) - 0.5 * log_det -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

inline void collect_training(const std::vector<Observation>& obs, Eigen::MatrixXd& X,
                             Eigen::VectorXd& y) {
  std::vector<const Observation*> used;
  std::size_t d = 0;
  for (const auto& o : obs) {
    if (o.failed) continue;
    if (used.empty()) d = o.x.size();
    if (o.x.size() != d) throw InvalidInput("observations have mixed dimensions", {"x"});
    if (!in_unit_cube(o.x)) throw RangeError("observation outside the unit cube", {"x"});
    if (!std::isfinite(o.value)) throw InvalidInput("observation value must be finite", {"value"});
    used.push_back(&o);
  }
  if (used.empty()) throw EmptyModelError("no successful observations to fit");
  if (d == 0) throw InvalidInput("observations have zero dimensions", {"x"});
  X.resize(static_cast<Eigen::Index>(used.size()), static_cast<Eigen::Index>(d));
  y.resize(static_cast<Eigen::Index>(used.size()));
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = used[i]->x[k];
    }
    y(static_cast<Eigen::Index>(i)) = used[i]->value;
  }
}

inline GPModel assemble(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const GPHyperparams& h) {
  GPModel m;
  m.hyper = h;
  m.X = X;
  m.y = y;
  Factorization f = factorize(kernel_matrix(X, h), h);
  const Eigen::VectorXd centered = (y.array() - h.mean).matrix();
  m.alpha = f.chol.solve(centered);
  m.log_marginal_likelihood = log_likelihood_of(f, centered, m.alpha);
  m.chol = std::move(f.chol);
  m.jitter = f.jitter;
  return m;
}

// Log-parameter vector: [log l_1 .. log l_d, log s2, log noise].
struct LogParams {
  Eigen::VectorXd theta;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

inline GPHyperparams from_theta(const Eigen::VectorXd& theta, std::size_t d, double mean) {
  GPHyperparams h;
  h.lengthscales.resize(d);
  for (std::size_t k = 0; k < d; ++k) h.lengthscales[k] = std::exp(theta(static_cast<Eigen::Index>(k)));
  h.signal_variance = std::exp(theta(static_cast<Eigen::Index>(d)));
  h.noise_variance = std::exp(theta(static_cast<Eigen::Index>(d + 1)));
  h.mean = mean;
  return h;
}

/// Log marginal likelihood and its gradient in log-parameters. Returns -inf
/// when the matrix cannot be factorized.
inline double lml_and_grad(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& theta, double mean, Eigen::VectorXd& grad) {
  const std::size_t d = static_cast<std::size_t>(X.cols());
  const Eigen::Index n = X.rows();
  const GPHyperparams h = from_theta(theta, d, mean);
  const Eigen::MatrixXd Ks = kernel_matrix(X, h);
  Factorization f;
  try {
    f = factorize(Ks, h);
  } catch (const ConditioningError&) {
    return -std::numeric_limits<double>::infinity();
  }
  const Eigen::VectorXd centered = (y.array() - mean).matrix();
  const Eigen::VectorXd alpha = f.chol.solve(centered);
  const double ll = log_likelihood_of(f, centered, alpha);
  const Eigen::MatrixXd Kinv = f.chol.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd W = alpha * alpha.transpose() - Kinv;  // d ll / dK = W / 2
  grad.resize(theta.size());
  for (std::size_t k = 0; k < d; ++k) {
    const double inv_l2 = 1.0 / (h.lengthscales[k] * h.lengthscales[k]);
    double g = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        const double diff = X(i, static_cast<Eigen::Index>(k)) - X(j, static_cast<Eigen::Index>(k));
        g += W(i, j) * Ks(i, j) * diff * diff * inv_l2;
      }
    }
    grad(static_cast<Eigen::Index>(k)) = g;  // symmetric pairs: 2 * (1/2)
  }
  grad(static_cast<Eigen::Index>(d)) = 0.5 * (W.cwiseProduct(Ks)).sum();
  grad(static_cast<Eigen::Index>(d + 1)) = 0.5 * h.noise_variance * W.trace();
  return ll;
}

/// Projected gradient ascent with backtracking inside the box [lo, hi].
inline std::pair<Eigen::VectorXd, double> ascend(const Eigen::MatrixXd& X,
                                                 const Eigen::VectorXd& y, double mean,
                                                 Eigen::VectorXd theta,
                                                 const Eigen::VectorXd& lo,
                                                 const Eigen::VectorXd& hi, int iterations) {
  theta = theta.cwiseMax(lo).cwiseMin(hi);
  Eigen::VectorXd grad;
  double ll = lml_and_grad(X, y, theta, mean, grad);
  if (!std::isfinite(ll)) return {theta, ll};
  double step = 0.5;
  for (int it = 0; it < iterations; ++it) {
    const double gnorm = grad.norm();
    if (!(gnorm > 1e-9)) break;
    bool moved = false;
    while (step > 1e-6) {
      const Eigen::VectorXd cand = (theta + step * grad / gnorm).cwiseMax(lo).cwiseMin(hi);
      if ((cand - theta).norm() < 1e-12) break;
      Eigen::VectorXd cand_grad;
      const double cand_ll = lml_and_grad(X, y, cand, mean, cand_grad);
      if (std::isfinite(cand_ll) && cand_ll > ll) {
        moved = cand_ll - ll > 1e-10;
        theta = cand;
        ll = cand_ll;
        grad = cand_grad;
        step = std::min(step * 2.0, 4.0);
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {theta, ll};
}

inline GPModel fit_max_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const MaximizeLikelihood& mode) {
  const std::size_t d = static_cast<std::size_t>(X.cols());
  const Eigen::Index p = static_cast<Eigen::Index>(d + 2);
  const double mean = y.mean();
  double var = (y.array() - mean).square().mean();
  if (!(var > 1e-12)) var = 1.0;

  GPHyperparams init;
  if (mode.initial) {
    mode.initial->validate(d);
    init = *mode.initial;
    init.mean = mean;
    init.noise_variance = std::max(init.noise_variance, mode.min_noise_ratio * var);
  } else {
    init.lengthscales.assign(d, 0.3 * std::sqrt(static_cast<double>(d)));
    init.signal_variance = var;
    init.noise_variance = 1e-4 * var;
    init.mean = mean;
  }

  Eigen::VectorXd lo(p), hi(p);
  lo.head(static_cast<Eigen::Index>(d)).setConstant(std::log(mode.min_lengthscale));
  hi.head(static_cast<Eigen::Index>(d)).setConstant(std::log(mode.max_lengthscale));
  lo(static_cast<Eigen::Index>(d)) = std::log(1e-3 * var);
  hi(static_cast<Eigen::Index>(d)) = std::log(1e3 * var);
  lo(static_cast<Eigen::Index>(d + 1)) = std::log(mode.min_noise_ratio * var);
  hi(static_cast<Eigen::Index>(d + 1)) = std::log(mode.max_noise_ratio * var);

  auto to_theta = [&](const GPHyperparams& h) {
    Eigen::VectorXd t(p);
    for (std::size_t k = 0; k < d; ++k) t(static_cast<Eigen::Index>(k)) = std::log(h.lengthscales[k]);
    t(static_cast<Eigen::Index>(d)) = std::log(h.signal_variance);
    t(static_cast<Eigen::Index>(d + 1)) = std::log(std::max(h.noise_variance, 1e-300));
    return t;
  };

  // A caller-supplied initial point is the floor every start must beat, taken
  // exactly as given (its own mean and noise).
  GPHyperparams best_h = init;
  double best_ll = -std::numeric_limits<double>::infinity();
  if (mode.initial) {
    try {
      best_h = *mode.initial;
      best_ll = assemble(X, y, best_h).log_marginal_likelihood;
    } catch (const ConditioningError&) {
      best_ll = -std::numeric_limits<double>::infinity();
    }
  }

  std::vector<Eigen::VectorXd> starts = {to_theta(init)};
  for (double scale : {0.1, 1.0}) {
    GPHyperparams alt = init;
    alt.lengthscales.assign(d, scale * std::sqrt(static_cast<double>(d)));
    starts.push_back(to_theta(alt));
  }
  for (const auto& s : starts) {
    auto [theta, ll] = ascend(X, y, mean, s, lo, hi, mode.max_iterations);
    if (std::isfinite(ll) && ll > best_ll) {
      best_ll = ll;
      best_h = from_theta(theta, d, mean);
    }
  }
  if (!std::isfinite(best_ll)) {
    throw ConditioningError("no hyperparameters give a factorizable kernel matrix");
  }
  return assemble(X, y, best_h);
}

}  // namespace detail

/// Fits a GP to the successful observations. Throws EmptyModelError when every
/// observation failed and ConditioningError if jitter escalation is exhausted.
inline GPModel gp_fit(const std::vector<Observation>& observations, const HyperMode& mode) {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  detail::collect_training(observations, X, y);
  if (const auto* fixed = std::get_if<Fixed>(&mode)) {
    fixed->params.validate(static_cast<std::size_t>(X.cols()));
    return detail::assemble(X, y, fixed->params);
  }
  return detail::fit_max_likelihood(X, y, std::get<MaximizeLikelihood>(mode));
}

/// Log marginal likelihood of the data under the given hyperparameters.
inline double log_marginal_likelihood(const std::vector<Observation>& observations,
                                      const GPHyperparams& h) {
  return gp_fit(observations, Fixed{h}).log_marginal_likelihood;
}

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;
};

/// Predictive mean and latent variance at x. Variance is clamped at zero.
inline Posterior gp_posterior(const GPModel& model, const std::vector<double>& x) {
  if (x.size() != model.d()) {
    throw InvalidInput("query has " + std::to_string(x.size()) + " coordinates, model has " +
                       std::to_string(model.d()));
  }
  if (!in_unit_cube(x)) throw RangeError("query point outside the unit cube", {"x"});
  const Eigen::Index n = model.X.rows();
  Eigen::VectorXd k(n);
  Eigen::VectorXd xi(static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) xi(static_cast<Eigen::Index>(j)) = x[j];
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd row = model.X.row(i).transpose();
    k(i) = detail::se_kernel(row.data(), xi.data(), model.hyper.lengthscales,
                             model.hyper.signal_variance);
  }
  Posterior post;
  post.mean = model.hyper.mean + k.dot(model.alpha);
  const Eigen::VectorXd v = model.chol.matrixL().solve(k);
  post.variance = std::max(0.0, model.hyper.signal_variance - v.squaredNorm());
  return post;
}

}  // namespace regolith::bo

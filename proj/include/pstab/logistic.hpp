// Copyright (c) 2026 The pstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary logistic regression with per-feature standardization, trained by
// full-batch gradient descent on the mean log-loss.

#ifndef PSTAB_LOGISTIC_HPP_
#define PSTAB_LOGISTIC_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pstab/error.hpp"

namespace pstab {

inline double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
inline double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

/// Row-major design matrix with 0/1 labels.
struct Dataset {
  std::size_t n_features = 0;
  std::vector<double> x;  // size = rows * n_features
  std::vector<int> y;

  std::size_t rows() const noexcept { return y.size(); }
  std::span<const double> row(std::size_t i) const {
    return {x.data() + i * n_features, n_features};
  }
  void Add(std::span<const double> features, int label) {
    x.insert(x.end(), features.begin(), features.end());
    y.push_back(label);
  }
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> means;
  std::vector<double> stddevs;

  static LogisticModel Identity(std::size_t n) {
    return {std::vector<double>(n, 0.0), 0.0, std::vector<double>(n, 0.0),
            std::vector<double>(n, 1.0)};
  }

  std::size_t n_features() const noexcept { return weights.size(); }

  /// Linear predictor on already-standardized features.
  double Margin(std::span<const double> z) const {
    double m = bias;
    for (std::size_t k = 0; k < weights.size(); ++k) m += weights[k] * z[k];
    return m;
  }

  /// P(stable | x) for raw (unstandardized) features.
  double Score(std::span<const double> x) const {
    if (x.size() != weights.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "expected " + std::to_string(weights.size()) +
                      " features, got " + std::to_string(x.size()));
    }
    double m = bias;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (!std::isfinite(x[k])) {
        throw Error(ErrorCode::kNonFiniteFeature,
                    "feature " + std::to_string(k) + " is not finite");
      }
      m += weights[k] * (x[k] - means[k]) / stddevs[k];
    }
    return Sigmoid(m);
  }
};

inline constexpr double kStddevFloor = 1e-9;

/// Applies the model's standardization to every row.
inline Dataset Standardize(const Dataset& data, const LogisticModel& model) {
  Dataset out = data;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t k = 0; k < out.n_features; ++k) {
      double& v = out.x[i * out.n_features + k];
      v = (v - model.means[k]) / model.stddevs[k];
    }
  }
  return out;
}

/// Mean binary log-loss of `model`'s weights/bias on standardized data.
inline double LogLoss(const LogisticModel& model, const Dataset& z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const double m = model.Margin(z.row(i));
    sum += Softplus(m) - (z.y[i] ? m : 0.0);
  }
  return sum / static_cast<double>(z.rows());
}

/// Gradient of LogLoss: weights first, bias last.
inline std::vector<double> LogLossGradient(const LogisticModel& model,
                                           const Dataset& z) {
  std::vector<double> g(model.n_features() + 1, 0.0);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const auto r = z.row(i);
    const double err = Sigmoid(model.Margin(r)) - static_cast<double>(z.y[i]);
    for (std::size_t k = 0; k < model.n_features(); ++k) g[k] += err * r[k];
    g.back() += err;
  }
  for (auto& v : g) v /= static_cast<double>(z.rows());
  return g;
}

struct TrainOptions {
  int epochs = 500;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;
};

struct TrainResult {
  LogisticModel model;
  /// loss_history[e] is the loss before update e; the last entry is the
  /// loss of the returned model.
  std::vector<double> loss_history;
};

/// Uniform double in [0, 1) from the top 53 bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline double UnitDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline TrainResult TrainLogistic(const Dataset& data, const TrainOptions& opts) {
  if (opts.epochs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 1");
  }
  if (!(opts.learning_rate > 0) || !std::isfinite(opts.learning_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "learning rate must be > 0");
  }
  std::size_t positives = 0;
  for (int label : data.y) positives += label ? 1 : 0;
  if (positives == 0 || positives == data.rows()) {
    throw Error(ErrorCode::kSingleClass,
                "training set needs both stable and unstable examples (" +
                    std::to_string(positives) + " of " +
                    std::to_string(data.rows()) + " positive)");
  }

  const std::size_t n = data.n_features;
  const double rows = static_cast<double>(data.rows());
  TrainResult result;
  LogisticModel& model = result.model;
  model.means.assign(n, 0.0);
  model.stddevs.assign(n, 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < n; ++k) model.means[k] += data.row(i)[k];
  }
  for (auto& m : model.means) m /= rows;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = data.row(i)[k] - model.means[k];
      model.stddevs[k] += d * d;
    }
  }
  for (auto& s : model.stddevs) s = std::max(std::sqrt(s / rows), kStddevFloor);

  std::mt19937_64 rng(opts.seed);
  model.weights.resize(n);
  for (auto& w : model.weights) w = (UnitDouble(rng) - 0.5) * 0.02;
  model.bias = 0.0;

  const Dataset z = Standardize(data, model);
  result.loss_history.reserve(static_cast<std::size_t>(opts.epochs) + 1);
  for (int epoch = 0; epoch <= opts.epochs; ++epoch) {
    const double loss = LogLoss(model, z);
    if (!std::isfinite(loss)) {
      throw Error(ErrorCode::kNonFiniteLoss,
                  "loss diverged at epoch " + std::to_string(epoch));
    }
    result.loss_history.push_back(loss);
    if (epoch == opts.epochs) break;
    const auto g = LogLossGradient(model, z);
    for (std::size_t k = 0; k < n; ++k) model.weights[k] -= opts.learning_rate * g[k];
    model.bias -= opts.learning_rate * g.back();
  }
  return result;
}

}  // namespace pstab

#endif  // PSTAB_LOGISTIC_HPP_

// aessi/nncore.h

// Copyright 2026  AESSI Project Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Minimal fully-connected network engine: forward pass, backpropagation of
// the MSE + L2 objective, Adam updates, seeded initialization, training with
// early stopping, and model (de)serialization.  Template parameter Real is
// float for production models and double for the numeric test paths.

#ifndef AESSI_NNCORE_H_
#define AESSI_NNCORE_H_

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aessi/io-util.h"
#include "aessi/rng.h"

namespace aessi {

enum class Activation : std::uint8_t { kLinear = 0, kSwish = 1 };

struct LayerSpec {
  int input_dim = 0;
  int output_dim = 0;
  Activation activation = Activation::kLinear;
  double swish_beta = 1.0;  // used only when activation == kSwish
};

// Validates dims > 0, beta > 0 for swish, and that consecutive layers chain.
void ValidateLayerSpecs(const std::vector<LayerSpec>& layers);

// Weight-matrix entries only; biases are excluded.  This is the convention
// under which the published model sizes for this architecture family add up.
std::int64_t CountWeights(const std::vector<LayerSpec>& layers);
std::int64_t CountWeights(const std::vector<int>& dims);

template <typename Real>
struct Mlp {
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  std::vector<LayerSpec> layers;
  std::vector<Matrix> weights;  // per layer, output_dim x input_dim
  std::vector<Vector> biases;   // per layer, output_dim

  int NumLayers() const { return static_cast<int>(layers.size()); }
  int InputDim() const { return layers.empty() ? 0 : layers.front().input_dim; }
  int OutputDim() const {
    return layers.empty() ? 0 : layers.back().output_dim;
  }
};

using MlpModel = Mlp<float>;

// x * logistic(beta * x).
template <typename Real>
Real Swish(Real x, Real beta) {
  return x / (Real(1) + std::exp(-beta * x));
}

// d/dx Swish(x) = s + beta*x*s*(1-s), s = logistic(beta*x).
template <typename Real>
Real SwishDeriv(Real x, Real beta) {
  const Real s = Real(1) / (Real(1) + std::exp(-beta * x));
  return s * (Real(1) + beta * x * (Real(1) - s));
}

// Mean of squared component differences.
template <typename Real>
Real MseLoss(const typename Mlp<Real>::Vector& pred,
             const typename Mlp<Real>::Vector& target);

template <typename Real>
Mlp<Real> BuildMlp(const std::vector<LayerSpec>& layers);

// He-style uniform init scaled by fan-in: W ~ U(-sqrt(6/fan_in), +sqrt(6/fan_in)),
// biases zero.  Deterministic in seed.
template <typename Real>
void InitHeUniform(Mlp<Real>* model, std::uint64_t seed);

// Columns are samples.
template <typename Real>
typename Mlp<Real>::Matrix ForwardBatch(const Mlp<Real>& model,
                                        const typename Mlp<Real>::Matrix& in);

template <typename Real>
typename Mlp<Real>::Vector Forward(const Mlp<Real>& model,
                                   const typename Mlp<Real>::Vector& in);

template <typename Real>
struct Gradients {
  std::vector<typename Mlp<Real>::Matrix> weights;
  std::vector<typename Mlp<Real>::Vector> biases;
};

// Gradients of  mean_samples[ (1/dim) * ||pred - target||^2 ] + l2 * sum ||W||_F^2
// with respect to every weight and bias.  The L2 term contributes 2*l2*W to
// the weight gradients.  Returns the data-term loss (without the L2 penalty).
template <typename Real>
Real Backward(const Mlp<Real>& model, const typename Mlp<Real>::Matrix& in,
              const typename Mlp<Real>::Matrix& target, Real l2_lambda,
              Gradients<Real>* grads);

struct TrainConfig {
  double learning_rate = 1e-4;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double l2_lambda = 1e-5;
  int batch_size = 128;
  int max_epochs = 100;
  int patience = 5;  // epochs without dev improvement before stopping
  std::uint64_t seed = 0;
};

void ValidateTrainConfig(const TrainConfig& cfg);

template <typename Real>
struct AdamState {
  std::vector<typename Mlp<Real>::Matrix> m_weights, v_weights;
  std::vector<typename Mlp<Real>::Vector> m_biases, v_biases;
  std::int64_t step = 0;
};

template <typename Real>
AdamState<Real> MakeAdamState(const Mlp<Real>& model);

// Standard bias-corrected Adam step; increments state.step.
template <typename Real>
void AdamStep(Mlp<Real>* model, AdamState<Real>* state,
              const Gradients<Real>& grads, const TrainConfig& cfg);

template <typename Real>
struct Dataset {
  typename Mlp<Real>::Matrix inputs;   // dim x n
  typename Mlp<Real>::Matrix targets;  // dim x n
  Eigen::Index NumSamples() const { return inputs.cols(); }
};

// Called after every epoch with the dev-set predictions of the current
// (post-update) parameters; used by callers that track additional metrics.
template <typename Real>
using EpochObserver =
    std::function<void(int epoch, Real train_loss, Real dev_loss,
                       const typename Mlp<Real>::Matrix& dev_pred)>;

template <typename Real>
struct TrainResult {
  Mlp<Real> best_model;
  std::vector<Real> train_loss;  // objective (data term + L2), per epoch
  std::vector<Real> dev_loss;    // plain MSE on the dev set, per epoch
  int best_epoch = 0;            // 0 = the initial parameters
};

// Minibatch Adam with early stopping on dev loss.  The model passed in is the
// initialization; the best-dev snapshot (which may be the initialization) is
// returned.  Deterministic given cfg.seed.  Throws on NaN loss.
template <typename Real>
TrainResult<Real> Train(const Mlp<Real>& model, const Dataset<Real>& train,
                        const Dataset<Real>& dev, const TrainConfig& cfg,
                        const EpochObserver<Real>& observer = nullptr);

// Model file: magic "AESSI", version byte, layer table, then per-layer
// weights (row-major) and biases as little-endian float32.
void SaveModel(const MlpModel& model, const std::string& path);
MlpModel LoadModel(const std::string& path);

}  // namespace aessi

#include "aessi/nncore-inl.h"

#endif  // AESSI_NNCORE_H_

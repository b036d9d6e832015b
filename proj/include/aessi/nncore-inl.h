// aessi/nncore-inl.h

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

// Template definitions for nncore.h.  Do not include directly.

#ifndef AESSI_NNCORE_INL_H_
#define AESSI_NNCORE_INL_H_

#include <algorithm>
#include <limits>
#include <numeric>

namespace aessi {

template <typename Real>
Real MseLoss(const typename Mlp<Real>::Vector& pred,
             const typename Mlp<Real>::Vector& target) {
  Require(pred.size() == target.size(),
          StrCat("mse_loss: length mismatch ", pred.size(), " vs ",
                 target.size()));
  return (pred - target).squaredNorm() / static_cast<Real>(pred.size());
}

template <typename Real>
Mlp<Real> BuildMlp(const std::vector<LayerSpec>& layers) {
  using Matrix = typename Mlp<Real>::Matrix;
  using Vector = typename Mlp<Real>::Vector;
  ValidateLayerSpecs(layers);
  Mlp<Real> model;
  model.layers = layers;
  model.weights.reserve(layers.size());
  model.biases.reserve(layers.size());
  for (const auto& l : layers) {
    model.weights.emplace_back(Matrix::Zero(l.output_dim, l.input_dim));
    model.biases.emplace_back(Vector::Zero(l.output_dim));
  }
  return model;
}

template <typename Real>
void InitHeUniform(Mlp<Real>* model, std::uint64_t seed) {
  for (std::size_t k = 0; k < model->weights.size(); ++k) {
    Rng rng(MixSeed(seed, k));
    auto& w = model->weights[k];
    const double limit = std::sqrt(6.0 / model->layers[k].input_dim);
    // Column-major fill order is part of the determinism contract.
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        w(i, j) = static_cast<Real>(rng.Uniform(-limit, limit));
    model->biases[k].setZero();
  }
}

namespace internal {

template <typename Real>
void ApplyActivation(const LayerSpec& spec,
                     typename Mlp<Real>::Matrix* z /* in: pre-act, out: act */) {
  if (spec.activation == Activation::kLinear) return;
  const Real beta = static_cast<Real>(spec.swish_beta);
  *z = z->unaryExpr([beta](Real x) { return Swish(x, beta); });
}

}  // namespace internal

template <typename Real>
typename Mlp<Real>::Matrix ForwardBatch(const Mlp<Real>& model,
                                        const typename Mlp<Real>::Matrix& in) {
  Require(!model.layers.empty(), "forward: model has no layers");
  Require(in.rows() == model.InputDim(),
          StrCat("forward: input has ", in.rows(), " rows, model expects ",
                 model.InputDim()));
  typename Mlp<Real>::Matrix a = in;
  for (int k = 0; k < model.NumLayers(); ++k) {
    typename Mlp<Real>::Matrix z = (model.weights[k] * a).colwise() +
                                   model.biases[k];
    internal::ApplyActivation<Real>(model.layers[k], &z);
    a = std::move(z);
  }
  return a;
}

template <typename Real>
typename Mlp<Real>::Vector Forward(const Mlp<Real>& model,
                                   const typename Mlp<Real>::Vector& in) {
  return ForwardBatch(model, typename Mlp<Real>::Matrix(in)).col(0);
}

template <typename Real>
Real Backward(const Mlp<Real>& model, const typename Mlp<Real>::Matrix& in,
              const typename Mlp<Real>::Matrix& target, Real l2_lambda,
              Gradients<Real>* grads) {
  using Matrix = typename Mlp<Real>::Matrix;
  const int n_layers = model.NumLayers();
  Require(n_layers > 0, "backward: model has no layers");
  Require(in.rows() == model.InputDim(),
          StrCat("backward: input has ", in.rows(), " rows, model expects ",
                 model.InputDim()));
  Require(target.rows() == model.OutputDim(),
          StrCat("backward: target has ", target.rows(),
                 " rows, model produces ", model.OutputDim()));
  Require(in.cols() == target.cols(),
          StrCat("backward: ", in.cols(), " inputs vs ", target.cols(),
                 " targets"));

  grads->weights.resize(n_layers);
  grads->biases.resize(n_layers);

  // Forward pass keeping pre-activations (needed for the Swish derivative)
  // and activations (needed for the weight gradients).
  std::vector<Matrix> pre(n_layers);
  std::vector<Matrix> act(n_layers + 1);
  act[0] = in;
  for (int k = 0; k < n_layers; ++k) {
    pre[k].noalias() = model.weights[k] * act[k];
    pre[k].colwise() += model.biases[k];
    act[k + 1] = pre[k];
    internal::ApplyActivation<Real>(model.layers[k], &act[k + 1]);
  }

  const Real n = static_cast<Real>(in.cols());
  const Real out_dim = static_cast<Real>(model.OutputDim());
  const Real loss =
      (act[n_layers] - target).squaredNorm() / (n * out_dim);

  // delta = dLoss/dPreActivation of the current layer.
  Matrix delta = (act[n_layers] - target) * (Real(2) / (n * out_dim));
  for (int k = n_layers - 1; k >= 0; --k) {
    if (model.layers[k].activation == Activation::kSwish) {
      const Real beta = static_cast<Real>(model.layers[k].swish_beta);
      delta.array() *=
          pre[k].unaryExpr([beta](Real x) { return SwishDeriv(x, beta); })
              .array();
    }
    grads->weights[k].noalias() = delta * act[k].transpose();
    if (l2_lambda != Real(0))
      grads->weights[k] += (Real(2) * l2_lambda) * model.weights[k];
    grads->biases[k] = delta.rowwise().sum();
    if (k > 0) delta = model.weights[k].transpose() * delta;
  }
  return loss;
}

template <typename Real>
AdamState<Real> MakeAdamState(const Mlp<Real>& model) {
  using Matrix = typename Mlp<Real>::Matrix;
  using Vector = typename Mlp<Real>::Vector;
  AdamState<Real> s;
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    s.m_weights.push_back(
        Matrix::Zero(model.weights[k].rows(), model.weights[k].cols()));
    s.v_weights.push_back(
        Matrix::Zero(model.weights[k].rows(), model.weights[k].cols()));
    s.m_biases.push_back(Vector::Zero(model.biases[k].size()));
    s.v_biases.push_back(Vector::Zero(model.biases[k].size()));
  }
  return s;
}

template <typename Real>
void AdamStep(Mlp<Real>* model, AdamState<Real>* state,
              const Gradients<Real>& grads, const TrainConfig& cfg) {
  Require(grads.weights.size() == model->weights.size() &&
              grads.biases.size() == model->biases.size(),
          "adam_step: gradient shapes do not match the model");
  const Real b1 = static_cast<Real>(cfg.adam_beta1);
  const Real b2 = static_cast<Real>(cfg.adam_beta2);
  const Real eps = static_cast<Real>(cfg.adam_epsilon);
  const Real lr = static_cast<Real>(cfg.learning_rate);
  state->step += 1;
  const Real corr1 =
      Real(1) - static_cast<Real>(std::pow(cfg.adam_beta1, state->step));
  const Real corr2 =
      Real(1) - static_cast<Real>(std::pow(cfg.adam_beta2, state->step));

  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = b1 * m + (Real(1) - b1) * g;
    v.array() = b2 * v.array() + (Real(1) - b2) * g.array().square();
    param.array() -=
        lr * (m.array() / corr1) /
        ((v.array() / corr2).sqrt() + eps);
  };
  for (std::size_t k = 0; k < model->weights.size(); ++k) {
    Require(grads.weights[k].rows() == model->weights[k].rows() &&
                grads.weights[k].cols() == model->weights[k].cols(),
            StrCat("adam_step: weight gradient shape mismatch in layer ", k));
    update(model->weights[k], state->m_weights[k], state->v_weights[k],
           grads.weights[k]);
    update(model->biases[k], state->m_biases[k], state->v_biases[k],
           grads.biases[k]);
  }
}

namespace internal {

// Dev loss = plain MSE (no L2), evaluated in chunks to bound memory.
template <typename Real>
Real DevLoss(const Mlp<Real>& model, const Dataset<Real>& dev,
             typename Mlp<Real>::Matrix* pred_out) {
  const Eigen::Index n = dev.NumSamples();
  pred_out->resize(model.OutputDim(), n);
  const Eigen::Index chunk = 512;
  for (Eigen::Index a = 0; a < n; a += chunk) {
    const Eigen::Index b = std::min(n, a + chunk);
    pred_out->middleCols(a, b - a) =
        ForwardBatch(model, dev.inputs.middleCols(a, b - a));
  }
  return (*pred_out - dev.targets).squaredNorm() /
         static_cast<Real>(n * model.OutputDim());
}

}  // namespace internal

template <typename Real>
TrainResult<Real> Train(const Mlp<Real>& model, const Dataset<Real>& train,
                        const Dataset<Real>& dev, const TrainConfig& cfg,
                        const EpochObserver<Real>& observer) {
  using Matrix = typename Mlp<Real>::Matrix;
  ValidateTrainConfig(cfg);
  const Eigen::Index n = train.NumSamples();
  Require(n > 0, "train: empty dataset");
  Require(dev.NumSamples() > 0, "train: empty validation set");
  Require(cfg.batch_size <= n,
          StrCat("train: batch_size ", cfg.batch_size, " exceeds dataset size ",
                 n));
  Require(train.inputs.rows() == model.InputDim() &&
              train.targets.rows() == model.OutputDim() &&
              dev.inputs.rows() == model.InputDim() &&
              dev.targets.rows() == model.OutputDim(),
          "train: dataset dimensions do not match the model");

  TrainResult<Real> result;
  Mlp<Real> current = model;
  Matrix dev_pred;
  Real best_dev = internal::DevLoss(current, dev, &dev_pred);
  result.best_model = current;
  result.best_epoch = 0;

  AdamState<Real> adam = MakeAdamState(current);
  Gradients<Real> grads;
  Rng rng(MixSeed(cfg.seed, 0x7261696eULL));  // shuffle stream
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  Matrix batch_in(train.inputs.rows(), cfg.batch_size);
  Matrix batch_tgt(train.targets.rows(), cfg.batch_size);

  int since_best = 0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    // Fisher-Yates with our own rng so the visit order is reproducible.
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.Below(i));
      std::swap(order[i - 1], order[j]);
    }
    Real epoch_loss = 0;
    Eigen::Index covered = 0;
    for (Eigen::Index start = 0; start + cfg.batch_size <= n;
         start += cfg.batch_size) {
      const Eigen::Index bs = cfg.batch_size;
      for (Eigen::Index c = 0; c < bs; ++c) {
        batch_in.col(c) = train.inputs.col(order[start + c]);
        batch_tgt.col(c) = train.targets.col(order[start + c]);
      }
      const Real data_loss = Backward(current, batch_in, batch_tgt,
                                      static_cast<Real>(cfg.l2_lambda), &grads);
      epoch_loss += data_loss * static_cast<Real>(bs);
      covered += bs;
      AdamStep(&current, &adam, grads, cfg);
    }
    Real l2_term = 0;
    if (cfg.l2_lambda != 0) {
      for (const auto& w : current.weights)
        l2_term += static_cast<Real>(cfg.l2_lambda) * w.squaredNorm();
    }
    const Real train_loss = epoch_loss / static_cast<Real>(covered) + l2_term;
    const Real dev_loss = internal::DevLoss(current, dev, &dev_pred);
    if (!std::isfinite(train_loss) || !std::isfinite(dev_loss))
      throw std::runtime_error(
          StrCat("train: non-finite loss at epoch ", epoch, " (train=",
                 train_loss, ", dev=", dev_loss, "); aborting"));
    result.train_loss.push_back(train_loss);
    result.dev_loss.push_back(dev_loss);
    if (observer) observer(epoch, train_loss, dev_loss, dev_pred);

    if (dev_loss < best_dev) {
      best_dev = dev_loss;
      result.best_model = current;
      result.best_epoch = epoch;
      since_best = 0;
    } else {
      ++since_best;
      if (since_best > cfg.patience) break;
    }
  }
  return result;
}

}  // namespace aessi

#endif  // AESSI_NNCORE_INL_H_

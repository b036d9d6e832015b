// nncore.cc

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

#include "aessi/nncore.h"

#include <array>
#include <cstring>

namespace aessi {

namespace {
constexpr std::array<char, 5> kMagic = {'A', 'E', 'S', 'S', 'I'};
constexpr std::uint8_t kFormatVersion = 1;
}  // namespace

void ValidateLayerSpecs(const std::vector<LayerSpec>& layers) {
  Require(!layers.empty(), "model must have at least one layer");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& l = layers[k];
    Require(l.input_dim > 0 && l.output_dim > 0,
            StrCat("layer ", k, ": dims must be positive (", l.input_dim,
                   " -> ", l.output_dim, ")"));
    if (l.activation == Activation::kSwish)
      Require(l.swish_beta > 0,
              StrCat("layer ", k, ": swish beta must be > 0"));
    if (k > 0)
      Require(layers[k - 1].output_dim == l.input_dim,
              StrCat("layer ", k, ": input dim ", l.input_dim,
                     " does not chain with previous output dim ",
                     layers[k - 1].output_dim));
  }
}

std::int64_t CountWeights(const std::vector<LayerSpec>& layers) {
  ValidateLayerSpecs(layers);
  std::int64_t total = 0;
  for (const auto& l : layers)
    total += static_cast<std::int64_t>(l.input_dim) * l.output_dim;
  return total;
}

std::int64_t CountWeights(const std::vector<int>& dims) {
  Require(dims.size() >= 2, "count_weights: need at least two dims");
  std::int64_t total = 0;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    Require(dims[k] > 0 && dims[k + 1] > 0,
            "count_weights: dims must be positive");
    total += static_cast<std::int64_t>(dims[k]) * dims[k + 1];
  }
  return total;
}

void ValidateTrainConfig(const TrainConfig& cfg) {
  Require(cfg.learning_rate >= 0, "learning_rate must be >= 0");
  Require(cfg.adam_beta1 > 0 && cfg.adam_beta1 < 1, "adam_beta1 not in (0,1)");
  Require(cfg.adam_beta2 > 0 && cfg.adam_beta2 < 1, "adam_beta2 not in (0,1)");
  Require(cfg.adam_epsilon > 0, "adam_epsilon must be > 0");
  Require(cfg.l2_lambda >= 0, "l2_lambda must be >= 0");
  Require(cfg.batch_size > 0, "batch_size must be positive");
  Require(cfg.max_epochs > 0, "max_epochs must be positive");
  Require(cfg.patience >= 0, "patience must be >= 0");
}

void SaveModel(const MlpModel& model, const std::string& path) {
  ValidateLayerSpecs(model.layers);
  auto os = OpenOut(path);
  WriteBytes(os, kMagic.data(), kMagic.size());
  WritePod(os, kFormatVersion);
  WritePod(os, static_cast<std::uint32_t>(model.layers.size()));
  for (const auto& l : model.layers) {
    WritePod(os, static_cast<std::uint32_t>(l.input_dim));
    WritePod(os, static_cast<std::uint32_t>(l.output_dim));
    WritePod(os, static_cast<std::uint8_t>(l.activation));
    WritePod(os, static_cast<float>(l.swish_beta));
  }
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    // Row-major on disk: all input weights of one output unit together.
    const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic,
                        Eigen::RowMajor>
        row_major = model.weights[k];
    WriteBytes(os, row_major.data(), sizeof(float) * row_major.size());
    WriteBytes(os, model.biases[k].data(),
               sizeof(float) * model.biases[k].size());
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

MlpModel LoadModel(const std::string& path) {
  auto is = OpenIn(path);
  std::array<char, 5> magic;
  ReadBytes(is, magic.data(), magic.size(), path + " (magic)");
  if (magic != kMagic)
    throw std::runtime_error(path + ": bad magic, not a model file");
  const auto version = ReadPod<std::uint8_t>(is, path + " (version)");
  if (version != kFormatVersion)
    throw std::runtime_error(
        StrCat(path, ": unsupported format version ", int(version)));
  const auto n_layers = ReadPod<std::uint32_t>(is, path + " (layer count)");
  if (n_layers == 0 || n_layers > 1024)
    throw std::runtime_error(
        StrCat(path, ": implausible layer count ", n_layers));
  std::vector<LayerSpec> layers(n_layers);
  for (auto& l : layers) {
    l.input_dim =
        static_cast<int>(ReadPod<std::uint32_t>(is, path + " (layer dims)"));
    l.output_dim =
        static_cast<int>(ReadPod<std::uint32_t>(is, path + " (layer dims)"));
    const auto act = ReadPod<std::uint8_t>(is, path + " (activation)");
    if (act > 1)
      throw std::runtime_error(
          StrCat(path, ": unknown activation tag ", int(act)));
    l.activation = static_cast<Activation>(act);
    l.swish_beta = ReadPod<float>(is, path + " (beta)");
  }
  MlpModel model = BuildMlp<float>(layers);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
        row_major(layers[k].output_dim, layers[k].input_dim);
    ReadBytes(is, row_major.data(), sizeof(float) * row_major.size(),
              path + " (weights)");
    model.weights[k] = row_major;
    ReadBytes(is, model.biases[k].data(),
              sizeof(float) * model.biases[k].size(), path + " (biases)");
  }
  // A well-formed file ends exactly here.
  char extra;
  is.read(&extra, 1);
  if (is.gcount() != 0)
    throw std::runtime_error(path + ": trailing bytes after model data");
  return model;
}

}  // namespace aessi

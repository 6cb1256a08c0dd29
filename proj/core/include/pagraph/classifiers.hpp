#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pagraph/labels.hpp"
#include "pagraph/matrix.hpp"
#include "pagraph/propagation.hpp"
#include "pagraph/rng.hpp"
#include "pagraph/sparse.hpp"

namespace pagraph {

enum class ModelKind { kSgc, kGcn };

const char* to_string(ModelKind kind);

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  int hidden_width = 16;  // GCN hidden layers
  int k_layers = 2;       // propagation depth K (SGC smoothing power, GCN layers)
  std::uint64_t seed = 0;
  int early_stop_patience = 0;  // 0 disables validation early stopping
  double momentum = 0.0;        // 0 = plain full-batch gradient descent
  bool bias = true;
};

// Trained weights. SGC holds exactly one layer (d x C); a GCN with K layers
// chains d -> hidden -> ... -> C. k_layers is stored so prediction and
// checkpoints are self-contained.
struct ModelParams {
  struct Layer {
    Matrix weight;             // fan_in x fan_out
    std::vector<double> bias;  // fan_out, empty when has_bias is false
  };

  ModelKind kind = ModelKind::kSgc;
  int k_layers = 2;
  bool has_bias = true;
  std::vector<Layer> layers;

  // Throws std::invalid_argument unless layer shapes chain from input_dim to
  // num_classes and all entries are finite.
  void validate(std::int64_t input_dim, std::int64_t num_classes) const;
};

// Per-layer gradients, same shapes as the params they differentiate.
using Gradients = std::vector<ModelParams::Layer>;

struct EpochStats {
  double train_loss = 0.0;  // data loss + weight-decay penalty
  double valid_loss = 0.0;  // data loss on the valid rows; NaN without them
};

struct FitResult {
  ModelParams params;
  std::vector<EpochStats> history;
};

// --- loss -------------------------------------------------------------

struct LossGrad {
  double loss = 0.0;
  Matrix grad;  // d(loss)/d(logits), shape of logits
};

// Numerically stable mean softmax cross entropy over the rows of logits.
// grad = (softmax - onehot) / m.
LossGrad softmax_xent(const Matrix& logits, std::span<const std::int32_t> targets);

// Same loss with the L2 weight-decay penalty added: (wd/2) * sum ||W||^2,
// biases excluded. The returned gradient is still with respect to the
// logits; the penalty's wd*W term enters the parameter update directly.
LossGrad softmax_xent(const Matrix& logits, std::span<const std::int32_t> targets,
                      double weight_decay, const ModelParams& params);

double l2_penalty(const ModelParams& params, double weight_decay);

Matrix softmax_rows(const Matrix& logits);

// Row-wise argmax; ties resolve to the lowest column id.
std::vector<std::int32_t> argmax_rows(const Matrix& logits);

// --- objectives at fixed parameters ------------------------------------

// Full SGC objective (cross entropy over the rows of xbar_train + weight
// decay) and, when grads is non-null, its analytic gradient. xbar_train is
// the pre-smoothed feature matrix restricted to the train rows.
double sgc_loss_grad(const ModelParams& params, const Matrix& xbar_train,
                     std::span<const std::int32_t> targets, double weight_decay,
                     Gradients* grads);

// Full GCN objective: forward pass H <- ReLU(Abar H W) with a linear output
// layer, cross entropy on the train rows, weight decay; hand-derived
// backpropagation through the shared normalized adjacency when grads is
// non-null. full_logits, when given, receives the output-layer logits for
// every node (used for validation loss without a second forward pass).
double gcn_loss_grad(const ModelParams& params, const NormalizedAdjacency& abar,
                     const Matrix& x, std::span<const NodeId> train_rows,
                     std::span<const std::int32_t> targets, double weight_decay,
                     Gradients* grads, Matrix* full_logits = nullptr);

// --- training and inference ---------------------------------------------

// Smooths features once (Xbar = Abar^K X), then minimizes cross entropy over
// the train rows with full-batch gradient descent. Throws
// std::invalid_argument on an empty train set and NumericError if the loss
// stops being finite.
FitResult sgc_fit(const Matrix& x, const SparseAdjacency& adj,
                  const LabelAssignment& labels, const TrainConfig& cfg);

// K-layer GCN with ReLU hidden activations trained by the same optimizer and
// loss. Requires cfg.k_layers >= 1.
FitResult gcn_fit(const Matrix& x, const SparseAdjacency& adj,
                  const LabelAssignment& labels, const TrainConfig& cfg);

// The epoch loops behind the fits, with the propagation precompute done by
// the caller. These let harnesses time the precompute and train phases
// separately; note that SGC epochs touch no sparse operator at all while
// every GCN epoch propagates through abar.
FitResult sgc_fit_precomputed(const Matrix& xbar, const LabelAssignment& labels,
                              const TrainConfig& cfg);
FitResult gcn_fit_precomputed(const NormalizedAdjacency& abar, const Matrix& x,
                              const LabelAssignment& labels,
                              const TrainConfig& cfg);

// Class id per node: argmax of the model's softmax output, ties to the
// lowest class id. Rejects shape mismatches.
std::vector<std::int32_t> predict(const ModelParams& params, const Matrix& x,
                                  const SparseAdjacency& adj);

// Node logits under the model (the pre-softmax output layer).
Matrix model_logits(const ModelParams& params, const Matrix& x,
                    const SparseAdjacency& adj);

// Fresh parameters with uniform +-sqrt(6 / (fan_in + fan_out)) weights drawn
// from seed and zero biases.
ModelParams init_params(ModelKind kind, std::int64_t input_dim,
                        std::int64_t num_classes, const TrainConfig& cfg);

// --- checkpoints ----------------------------------------------------------
//
// Format: magic "PGCK", u32 version, u64 header length, JSON header (kind,
// k_layers, bias flag, layer shapes), then raw little-endian float64 payload:
// per layer the row-major weight matrix followed by the bias vector.

void save_checkpoint(const std::string& path, const ModelParams& params);
ModelParams load_checkpoint(const std::string& path);

}  // namespace pagraph

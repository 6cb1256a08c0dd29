#include "pagraph/classifiers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "pagraph/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint payload assumes a little-endian host");

namespace pagraph {

const char* to_string(ModelKind kind) {
  return kind == ModelKind::kSgc ? "sgc" : "gcn";
}

void ModelParams::validate(std::int64_t input_dim, std::int64_t num_classes) const {
  if (layers.empty())
    throw std::invalid_argument("ModelParams: no layers");
  if (kind == ModelKind::kSgc && layers.size() != 1)
    throw std::invalid_argument("ModelParams: sgc must have exactly one layer");
  if (kind == ModelKind::kGcn &&
      layers.size() != static_cast<std::size_t>(k_layers))
    throw std::invalid_argument("ModelParams: gcn layer count " +
                                std::to_string(layers.size()) +
                                " != k_layers = " + std::to_string(k_layers));
  std::int64_t dim = input_dim;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const Layer& l = layers[k];
    if (l.weight.rows() != dim)
      throw std::invalid_argument(
          "ModelParams: layer " + std::to_string(k) + " expects fan_in " +
          std::to_string(l.weight.rows()) + " but gets " + std::to_string(dim));
    if (has_bias &&
        l.bias.size() != static_cast<std::size_t>(l.weight.cols()))
      throw std::invalid_argument("ModelParams: layer " + std::to_string(k) +
                                  " bias size mismatch");
    if (!has_bias && !l.bias.empty())
      throw std::invalid_argument("ModelParams: bias present on bias-free model");
    if (!l.weight.all_finite())
      throw std::invalid_argument("ModelParams: non-finite weight in layer " +
                                  std::to_string(k));
    for (double b : l.bias)
      if (!std::isfinite(b))
        throw std::invalid_argument("ModelParams: non-finite bias in layer " +
                                    std::to_string(k));
    dim = l.weight.cols();
  }
  if (dim != num_classes)
    throw std::invalid_argument("ModelParams: output width " +
                                std::to_string(dim) + " != class count " +
                                std::to_string(num_classes));
}

// --- loss -------------------------------------------------------------

LossGrad softmax_xent(const Matrix& logits, std::span<const std::int32_t> targets) {
  const std::int64_t m = logits.rows();
  const std::int64_t c = logits.cols();
  if (m == 0) throw std::invalid_argument("softmax_xent: no rows");
  if (targets.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("softmax_xent: " + std::to_string(m) +
                                " logit rows vs " +
                                std::to_string(targets.size()) + " targets");
  LossGrad out;
  out.grad = Matrix(m, c);
  double total = 0.0;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int32_t t = targets[static_cast<std::size_t>(i)];
    if (t < 0 || t >= c)
      throw std::invalid_argument("softmax_xent: target " + std::to_string(t) +
                                  " outside [0, " + std::to_string(c) + ")");
    auto row = logits.row(i);
    double mx = row[0];
    for (std::int64_t j = 1; j < c; ++j) mx = std::max(mx, row[j]);
    double sumexp = 0.0;
    for (std::int64_t j = 0; j < c; ++j) sumexp += std::exp(row[j] - mx);
    total += mx + std::log(sumexp) - row[t];
    auto g = out.grad.row(i);
    for (std::int64_t j = 0; j < c; ++j)
      g[j] = std::exp(row[j] - mx) / sumexp * inv_m;
    g[t] -= inv_m;
  }
  out.loss = total * inv_m;
  return out;
}

LossGrad softmax_xent(const Matrix& logits, std::span<const std::int32_t> targets,
                      double weight_decay, const ModelParams& params) {
  LossGrad out = softmax_xent(logits, targets);
  out.loss += l2_penalty(params, weight_decay);
  return out;
}

double l2_penalty(const ModelParams& params, double weight_decay) {
  if (weight_decay == 0.0) return 0.0;
  double sq = 0.0;
  for (const auto& layer : params.layers)
    for (double w : layer.weight.data()) sq += w * w;
  return 0.5 * weight_decay * sq;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (std::int64_t i = 0; i < logits.rows(); ++i) {
    auto row = logits.row(i);
    auto pi = p.row(i);
    double mx = row[0];
    for (std::int64_t j = 1; j < logits.cols(); ++j) mx = std::max(mx, row[j]);
    double sumexp = 0.0;
    for (std::int64_t j = 0; j < logits.cols(); ++j) {
      pi[j] = std::exp(row[j] - mx);
      sumexp += pi[j];
    }
    for (std::int64_t j = 0; j < logits.cols(); ++j) pi[j] /= sumexp;
  }
  return p;
}

std::vector<std::int32_t> argmax_rows(const Matrix& logits) {
  std::vector<std::int32_t> out(static_cast<std::size_t>(logits.rows()));
  for (std::int64_t i = 0; i < logits.rows(); ++i) {
    auto row = logits.row(i);
    std::int64_t arg = 0;
    for (std::int64_t j = 1; j < logits.cols(); ++j)
      if (row[j] > row[arg]) arg = j;  // strict: ties keep the lowest id
    out[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(arg);
  }
  return out;
}

// --- shared pieces -------------------------------------------------------

namespace {

Matrix linear(const Matrix& x, const ModelParams::Layer& layer) {
  Matrix y = matmul(x, layer.weight);
  if (!layer.bias.empty())
    for (std::int64_t i = 0; i < y.rows(); ++i) {
      auto yi = y.row(i);
      for (std::int64_t j = 0; j < y.cols(); ++j) yi[j] += layer.bias[static_cast<std::size_t>(j)];
    }
  return y;
}

std::vector<double> column_sums(const Matrix& m) {
  std::vector<double> s(static_cast<std::size_t>(m.cols()), 0.0);
  for (std::int64_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    for (std::int64_t j = 0; j < m.cols(); ++j) s[static_cast<std::size_t>(j)] += row[j];
  }
  return s;
}

void add_weight_decay(Matrix& grad, const Matrix& weight, double wd) {
  if (wd == 0.0) return;
  for (std::int64_t i = 0; i < grad.size(); ++i)
    grad.data()[i] += wd * weight.data()[i];
}

Matrix relu(const Matrix& z) {
  Matrix h = z;
  for (double& v : h.data()) v = v > 0.0 ? v : 0.0;
  return h;
}

std::vector<std::int32_t> train_targets(const LabelAssignment& labels,
                                        std::span<const NodeId> rows) {
  std::vector<std::int32_t> t(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) t[i] = labels.labels[rows[i]];
  return t;
}

}  // namespace

// --- objectives ------------------------------------------------------------

double sgc_loss_grad(const ModelParams& params, const Matrix& xbar_train,
                     std::span<const std::int32_t> targets, double weight_decay,
                     Gradients* grads) {
  const ModelParams::Layer& layer = params.layers.front();
  const Matrix logits = linear(xbar_train, layer);
  LossGrad lg = softmax_xent(logits, targets);
  const double loss = lg.loss + l2_penalty(params, weight_decay);
  if (grads) {
    grads->clear();
    ModelParams::Layer g;
    g.weight = matmul_at_b(xbar_train, lg.grad);
    add_weight_decay(g.weight, layer.weight, weight_decay);
    if (!layer.bias.empty()) g.bias = column_sums(lg.grad);
    grads->push_back(std::move(g));
  }
  return loss;
}

double gcn_loss_grad(const ModelParams& params, const NormalizedAdjacency& abar,
                     const Matrix& x, std::span<const NodeId> train_rows,
                     std::span<const std::int32_t> targets, double weight_decay,
                     Gradients* grads, Matrix* full_logits) {
  const std::size_t depth = params.layers.size();
  std::vector<Matrix> propagated(depth);  // P_k = Abar * H_k
  std::vector<Matrix> pre_act(depth);     // Z_k = P_k W_k + b_k

  Matrix hidden;  // H_k for k >= 1
  for (std::size_t k = 0; k < depth; ++k) {
    propagated[k] = abar.apply(k == 0 ? x : hidden);
    pre_act[k] = linear(propagated[k], params.layers[k]);
    if (k + 1 < depth) hidden = relu(pre_act[k]);
  }

  const Matrix& logits_full = pre_act[depth - 1];
  const Matrix logits_train = gather_rows(logits_full, train_rows);
  LossGrad lg = softmax_xent(logits_train, targets);
  const double loss = lg.loss + l2_penalty(params, weight_decay);
  if (full_logits) *full_logits = logits_full;
  if (!grads) return loss;

  // dL/dZ for the output layer: the train-row gradients scattered into an
  // all-nodes matrix (other rows contribute nothing).
  Matrix g(logits_full.rows(), logits_full.cols());
  for (std::size_t r = 0; r < train_rows.size(); ++r) {
    auto src = lg.grad.row(static_cast<std::int64_t>(r));
    auto dst = g.row(train_rows[r]);
    std::copy(src.begin(), src.end(), dst.begin());
  }

  grads->assign(depth, {});
  for (std::size_t k = depth; k-- > 0;) {
    ModelParams::Layer& gl = (*grads)[k];
    gl.weight = matmul_at_b(propagated[k], g);
    add_weight_decay(gl.weight, params.layers[k].weight, weight_decay);
    if (!params.layers[k].bias.empty()) gl.bias = column_sums(g);
    if (k == 0) break;
    // dH_k = Abar (g W_k^T), then gate through ReLU'(Z_{k-1}).
    Matrix dh = abar.apply(matmul_a_bt(g, params.layers[k].weight));
    const Matrix& z = pre_act[k - 1];
    for (std::int64_t i = 0; i < dh.size(); ++i)
      dh.data()[i] = z.data()[i] > 0.0 ? dh.data()[i] : 0.0;
    g = std::move(dh);
  }
  return loss;
}

// --- init -------------------------------------------------------------------

ModelParams init_params(ModelKind kind, std::int64_t input_dim,
                        std::int64_t num_classes, const TrainConfig& cfg) {
  std::vector<std::pair<std::int64_t, std::int64_t>> dims;
  if (kind == ModelKind::kSgc) {
    dims.emplace_back(input_dim, num_classes);
  } else {
    const int k = cfg.k_layers;
    if (k < 1) throw std::invalid_argument("init_params: gcn needs k_layers >= 1");
    std::int64_t in = input_dim;
    for (int layer = 0; layer < k; ++layer) {
      const std::int64_t out = layer + 1 == k ? num_classes : cfg.hidden_width;
      dims.emplace_back(in, out);
      in = out;
    }
  }

  Rng rng(cfg.seed);
  ModelParams params;
  params.kind = kind;
  params.k_layers = cfg.k_layers;
  params.has_bias = cfg.bias;
  for (auto [fan_in, fan_out] : dims) {
    ModelParams::Layer layer;
    layer.weight = Matrix(fan_in, fan_out);
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& w : layer.weight.data()) w = rng.uniform(-bound, bound);
    if (cfg.bias) layer.bias.assign(static_cast<std::size_t>(fan_out), 0.0);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

// --- training ----------------------------------------------------------------

namespace {

// Plain gradient descent with an optional momentum buffer.
class Optimizer {
 public:
  Optimizer(double lr, double momentum) : lr_(lr), momentum_(momentum) {}

  void step(ModelParams& params, const Gradients& grads) {
    if (momentum_ != 0.0 && velocity_.empty()) {
      velocity_.resize(grads.size());
      for (std::size_t k = 0; k < grads.size(); ++k) {
        velocity_[k].weight = Matrix(grads[k].weight.rows(), grads[k].weight.cols());
        velocity_[k].bias.assign(grads[k].bias.size(), 0.0);
      }
    }
    for (std::size_t k = 0; k < grads.size(); ++k) {
      ModelParams::Layer& layer = params.layers[k];
      if (momentum_ == 0.0) {
        for (std::int64_t i = 0; i < layer.weight.size(); ++i)
          layer.weight.data()[i] -= lr_ * grads[k].weight.data()[i];
        for (std::size_t i = 0; i < layer.bias.size(); ++i)
          layer.bias[i] -= lr_ * grads[k].bias[i];
      } else {
        ModelParams::Layer& v = velocity_[k];
        for (std::int64_t i = 0; i < layer.weight.size(); ++i) {
          double& vi = v.weight.data()[i];
          vi = momentum_ * vi + grads[k].weight.data()[i];
          layer.weight.data()[i] -= lr_ * vi;
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
          v.bias[i] = momentum_ * v.bias[i] + grads[k].bias[i];
          layer.bias[i] -= lr_ * v.bias[i];
        }
      }
    }
  }

 private:
  double lr_;
  double momentum_;
  Gradients velocity_;
};

void check_fit_inputs(const Matrix& x, const LabelAssignment& labels,
                      const TrainConfig& cfg, const char* who) {
  labels.validate();
  if (labels.train.empty())
    throw std::invalid_argument(std::string(who) + ": train set is empty");
  if (labels.n != static_cast<NodeId>(x.rows()))
    throw std::invalid_argument(std::string(who) + ": labels cover " +
                                std::to_string(labels.n) +
                                " nodes but features have " +
                                std::to_string(x.rows()) + " rows");
  if (cfg.epochs < 1)
    throw std::invalid_argument(std::string(who) + ": epochs must be >= 1");
  if (cfg.learning_rate <= 0.0)
    throw std::invalid_argument(std::string(who) + ": learning_rate must be > 0");
  if (cfg.k_layers < 0)
    throw std::invalid_argument(std::string(who) + ": k_layers must be >= 0");
}

// Epoch loop shared by both heads: `train_step` evaluates the objective and
// gradients at the current params, `eval_valid` returns the validation data
// loss (NaN when there is no validation set).
template <typename TrainStep, typename EvalValid>
FitResult run_epochs(ModelParams params, const TrainConfig& cfg,
                     bool has_valid, const char* who, TrainStep train_step,
                     EvalValid eval_valid) {
  Optimizer opt(cfg.learning_rate, cfg.momentum);
  FitResult result;
  result.history.reserve(static_cast<std::size_t>(cfg.epochs));

  const bool early_stop = cfg.early_stop_patience > 0 && has_valid;
  ModelParams best = params;
  double best_valid = std::numeric_limits<double>::infinity();
  int since_best = 0;

  Gradients grads;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double train_loss = train_step(params, &grads);
    if (!std::isfinite(train_loss))
      throw NumericError(std::string(who) + ": non-finite loss at epoch " +
                         std::to_string(epoch) +
                         " (diverged; lower the learning rate)");
    const double valid_loss =
        has_valid ? eval_valid(params) : std::numeric_limits<double>::quiet_NaN();
    result.history.push_back({train_loss, valid_loss});

    if (early_stop) {
      if (valid_loss < best_valid) {
        best_valid = valid_loss;
        best = params;
        since_best = 0;
      } else if (++since_best >= cfg.early_stop_patience) {
        result.params = std::move(best);
        return result;
      }
    }
    opt.step(params, grads);
  }
  result.params = early_stop ? std::move(best) : std::move(params);
  return result;
}

}  // namespace

FitResult sgc_fit_precomputed(const Matrix& xbar, const LabelAssignment& labels,
                              const TrainConfig& cfg) {
  check_fit_inputs(xbar, labels, cfg, "sgc_fit");

  const Matrix xbar_train = gather_rows(xbar, labels.train);
  const std::vector<std::int32_t> y_train = train_targets(labels, labels.train);
  const Matrix xbar_valid = gather_rows(xbar, labels.valid);
  const std::vector<std::int32_t> y_valid = train_targets(labels, labels.valid);

  ModelParams params =
      init_params(ModelKind::kSgc, xbar.cols(), labels.num_classes(), cfg);

  return run_epochs(
      std::move(params), cfg, !labels.valid.empty(), "sgc_fit",
      [&](const ModelParams& p, Gradients* g) {
        return sgc_loss_grad(p, xbar_train, y_train, cfg.weight_decay, g);
      },
      [&](const ModelParams& p) {
        return softmax_xent(linear(xbar_valid, p.layers.front()), y_valid).loss;
      });
}

FitResult sgc_fit(const Matrix& x, const SparseAdjacency& adj,
                  const LabelAssignment& labels, const TrainConfig& cfg) {
  if (adj.num_nodes() != static_cast<NodeId>(x.rows()))
    throw std::invalid_argument("sgc_fit: adjacency over " +
                                std::to_string(adj.num_nodes()) +
                                " nodes but features have " +
                                std::to_string(x.rows()) + " rows");
  if (cfg.k_layers < 0)
    throw std::invalid_argument("sgc_fit: k_layers must be >= 0");
  const Matrix xbar = smooth(normalize(adj), x, cfg.k_layers);
  return sgc_fit_precomputed(xbar, labels, cfg);
}

FitResult gcn_fit_precomputed(const NormalizedAdjacency& abar, const Matrix& x,
                              const LabelAssignment& labels,
                              const TrainConfig& cfg) {
  check_fit_inputs(x, labels, cfg, "gcn_fit");
  if (cfg.k_layers < 1)
    throw std::invalid_argument("gcn_fit: k_layers must be >= 1");
  if (abar.num_nodes() != static_cast<NodeId>(x.rows()))
    throw std::invalid_argument("gcn_fit: operator over " +
                                std::to_string(abar.num_nodes()) +
                                " nodes but features have " +
                                std::to_string(x.rows()) + " rows");

  const std::vector<std::int32_t> y_train = train_targets(labels, labels.train);
  const std::vector<std::int32_t> y_valid = train_targets(labels, labels.valid);

  ModelParams params =
      init_params(ModelKind::kGcn, x.cols(), labels.num_classes(), cfg);

  Matrix epoch_logits;  // filled by the train step, reused for validation
  return run_epochs(
      std::move(params), cfg, !labels.valid.empty(), "gcn_fit",
      [&](const ModelParams& p, Gradients* g) {
        return gcn_loss_grad(p, abar, x, labels.train, y_train,
                             cfg.weight_decay, g, &epoch_logits);
      },
      [&](const ModelParams&) {
        return softmax_xent(gather_rows(epoch_logits, labels.valid), y_valid).loss;
      });
}

FitResult gcn_fit(const Matrix& x, const SparseAdjacency& adj,
                  const LabelAssignment& labels, const TrainConfig& cfg) {
  if (adj.num_nodes() != static_cast<NodeId>(x.rows()))
    throw std::invalid_argument("gcn_fit: adjacency over " +
                                std::to_string(adj.num_nodes()) +
                                " nodes but features have " +
                                std::to_string(x.rows()) + " rows");
  return gcn_fit_precomputed(normalize(adj), x, labels, cfg);
}

// --- inference ----------------------------------------------------------------

Matrix model_logits(const ModelParams& params, const Matrix& x,
                    const SparseAdjacency& adj) {
  if (params.layers.empty())
    throw std::invalid_argument("model_logits: empty model");
  if (params.layers.front().weight.rows() != x.cols())
    throw std::invalid_argument(
        "model_logits: model expects " +
        std::to_string(params.layers.front().weight.rows()) +
        " features but input has " + std::to_string(x.cols()));
  const NormalizedAdjacency abar = normalize(adj);
  if (params.kind == ModelKind::kSgc) {
    const Matrix xbar = smooth(abar, x, params.k_layers);
    return linear(xbar, params.layers.front());
  }
  Matrix h = x;
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    Matrix z = linear(abar.apply(h), params.layers[k]);
    h = k + 1 < params.layers.size() ? relu(z) : std::move(z);
  }
  return h;
}

std::vector<std::int32_t> predict(const ModelParams& params, const Matrix& x,
                                  const SparseAdjacency& adj) {
  return argmax_rows(model_logits(params, x, adj));
}

// --- checkpoints ----------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'P', 'G', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& params) {
  nlohmann::json header;
  header["kind"] = to_string(params.kind);
  header["k_layers"] = params.k_layers;
  header["bias"] = params.has_bias;
  auto& layers = header["layers"] = nlohmann::json::array();
  for (const auto& layer : params.layers)
    layers.push_back({{"in", layer.weight.rows()}, {"out", layer.weight.cols()}});
  const std::string head = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("save_checkpoint: cannot open '" + path + "'");
  out.write(kMagic, 4);
  const std::uint32_t version = kVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  const std::uint64_t head_len = head.size();
  out.write(reinterpret_cast<const char*>(&head_len), sizeof head_len);
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  for (const auto& layer : params.layers) {
    out.write(reinterpret_cast<const char*>(layer.weight.data().data()),
              static_cast<std::streamsize>(layer.weight.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(layer.bias.data()),
              static_cast<std::streamsize>(layer.bias.size() * sizeof(double)));
  }
  if (!out) throw ParseError("save_checkpoint: write failed for '" + path + "'");
}

ModelParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("load_checkpoint: cannot open '" + path + "'");
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t head_len = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&head_len), sizeof head_len);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("load_checkpoint: '" + path + "' is not a checkpoint");
  if (version != kVersion)
    throw ParseError("load_checkpoint: unsupported version " +
                     std::to_string(version));
  std::string head(head_len, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head_len));
  if (!in) throw ParseError("load_checkpoint: truncated header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(head);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("load_checkpoint: bad header: ") + e.what());
  }

  ModelParams params;
  try {
    const std::string kind = header.at("kind").get<std::string>();
    if (kind == "sgc") params.kind = ModelKind::kSgc;
    else if (kind == "gcn") params.kind = ModelKind::kGcn;
    else throw ParseError("load_checkpoint: unknown kind '" + kind + "'");
    params.k_layers = header.at("k_layers").get<int>();
    params.has_bias = header.at("bias").get<bool>();
    for (const auto& l : header.at("layers")) {
      ModelParams::Layer layer;
      layer.weight =
          Matrix(l.at("in").get<std::int64_t>(), l.at("out").get<std::int64_t>());
      if (params.has_bias)
        layer.bias.assign(static_cast<std::size_t>(layer.weight.cols()), 0.0);
      params.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("load_checkpoint: bad header: ") + e.what());
  }
  if (params.layers.empty())
    throw ParseError("load_checkpoint: header declares no layers");

  for (auto& layer : params.layers) {
    in.read(reinterpret_cast<char*>(layer.weight.data().data()),
            static_cast<std::streamsize>(layer.weight.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(layer.bias.data()),
            static_cast<std::streamsize>(layer.bias.size() * sizeof(double)));
  }
  if (!in) throw ParseError("load_checkpoint: truncated payload");
  in.peek();
  if (!in.eof()) throw ParseError("load_checkpoint: trailing bytes after payload");

  // Shape-chain validation; infers dimensions from the stored layers.
  params.validate(params.layers.front().weight.rows(),
                  params.layers.back().weight.cols());
  return params;
}

}  // namespace pagraph

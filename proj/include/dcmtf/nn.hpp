#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dcmtf/rng.hpp"
#include "dcmtf/types.hpp"

namespace dcmtf::nn {

enum class Activation { Identity, ReLU, Sigmoid, Tanh };

struct Layer {
  Matrix w;  // in x out
  Vector b;  // out
  Activation act = Activation::Identity;
};

struct DenseNet {
  std::vector<Layer> layers;
  // Optional fixed final linear map (no bias). It routes gradient to its
  // input but never receives parameter updates.
  std::optional<Matrix> frozen_last;

  Index in_dim() const { return layers.front().w.rows(); }
  Index out_dim() const {
    return frozen_last ? frozen_last->cols() : layers.back().w.cols();
  }
};

/// Builds a net with the given layer widths (dims.size() == acts.size()+1)
/// and uniform +-sqrt(6/(fan_in+fan_out)) weights; biases start at zero.
DenseNet make_dense(const std::vector<Index>& dims,
                    const std::vector<Activation>& acts, Rng& rng);

struct ForwardCache {
  Matrix input;
  std::vector<Matrix> pre;   // affine outputs per layer
  std::vector<Matrix> post;  // activated outputs per layer
};

/// Batch forward pass (rows are instances). The cache, when requested,
/// suffices to run backward.
Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache = nullptr);

struct Gradients {
  std::vector<Matrix> dw;
  std::vector<Vector> db;

  static Gradients zeros_like(const DenseNet& net);
  bool all_zero(double tol = 0.0) const;
};

/// Reverse-mode pass. Accumulates parameter gradients into `grads`
/// (shapes must match the net) and returns the gradient with respect to
/// the input batch. frozen_last contributes input gradient only.
Matrix backward(const DenseNet& net, const Matrix& upstream,
                const ForwardCache& cache, Gradients& grads);

/// p <- p - lr * (g + weight_decay * p), in layer order; frozen_last is
/// left untouched.
void sgd_step(DenseNet& net, const Gradients& grads, double lr,
              double weight_decay);

struct ParamBlock {
  double* data = nullptr;
  const double* grad = nullptr;
  Index size = 0;
};

/// Parameter/gradient views over a net, in update order.
std::vector<ParamBlock> param_blocks(DenseNet& net, const Gradients& grads);

/// Central finite differences on a random subsample of at most
/// `max_coords` coordinates. Returns the max relative error with
/// denominator max(|analytic|, |numeric|, 1e-8). `loss_fn` must be
/// deterministic and re-evaluate the loss at the current parameters.
double grad_check(const std::function<double()>& loss_fn,
                  const std::vector<ParamBlock>& blocks, double h,
                  std::uint64_t seed = 0, int max_coords = 200);

}  // namespace dcmtf::nn

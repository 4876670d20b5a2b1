#include "dcmtf/nn.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dcmtf/errors.hpp"

namespace dcmtf::nn {

namespace {

Matrix activate(const Matrix& z, Activation act) {
  switch (act) {
    case Activation::Identity:
      return z;
    case Activation::ReLU:
      return z.cwiseMax(0.0);
    case Activation::Sigmoid:
      return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
    case Activation::Tanh:
      return z.array().tanh().matrix();
  }
  return z;
}

// Derivative expressed from pre-activation z and post-activation a.
Matrix activate_grad(const Matrix& z, const Matrix& a, Activation act) {
  switch (act) {
    case Activation::Identity:
      return Matrix::Ones(z.rows(), z.cols());
    case Activation::ReLU:
      return (z.array() > 0.0).cast<double>().matrix();
    case Activation::Sigmoid:
      return (a.array() * (1.0 - a.array())).matrix();
    case Activation::Tanh:
      return (1.0 - a.array().square()).matrix();
  }
  return Matrix::Ones(z.rows(), z.cols());
}

}  // namespace

DenseNet make_dense(const std::vector<Index>& dims,
                    const std::vector<Activation>& acts, Rng& rng) {
  if (dims.size() != acts.size() + 1 || dims.size() < 2)
    throw ShapeMismatch("make_dense: dims/acts lengths inconsistent");
  DenseNet net;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    Layer layer;
    const double bound = std::sqrt(6.0 / static_cast<double>(dims[l] + dims[l + 1]));
    layer.w.resize(dims[l], dims[l + 1]);
    for (Index j = 0; j < layer.w.cols(); ++j)
      for (Index i = 0; i < layer.w.rows(); ++i)
        layer.w(i, j) = rng.uniform(-bound, bound);
    layer.b = Vector::Zero(dims[l + 1]);
    layer.act = acts[l];
    net.layers.push_back(std::move(layer));
  }
  return net;
}

Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache) {
  if (x.cols() != net.in_dim())
    throw ShapeMismatch("forward: input width " + std::to_string(x.cols()) +
                        " != " + std::to_string(net.in_dim()));
  if (cache) {
    cache->input = x;
    cache->pre.clear();
    cache->post.clear();
  }
  Matrix a = x;
  for (const Layer& layer : net.layers) {
    Matrix z = (a * layer.w).rowwise() + layer.b.transpose();
    a = activate(z, layer.act);
    if (cache) {
      cache->pre.push_back(std::move(z));
      cache->post.push_back(a);
    }
  }
  if (net.frozen_last) a = a * (*net.frozen_last);
  return a;
}

Gradients Gradients::zeros_like(const DenseNet& net) {
  Gradients g;
  for (const Layer& layer : net.layers) {
    g.dw.push_back(Matrix::Zero(layer.w.rows(), layer.w.cols()));
    g.db.push_back(Vector::Zero(layer.b.size()));
  }
  return g;
}

bool Gradients::all_zero(double tol) const {
  for (const Matrix& m : dw)
    if (m.cwiseAbs().maxCoeff() > tol) return false;
  for (const Vector& v : db)
    if (v.size() > 0 && v.cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

Matrix backward(const DenseNet& net, const Matrix& upstream,
                const ForwardCache& cache, Gradients& grads) {
  if (cache.pre.size() != net.layers.size() || grads.dw.size() != net.layers.size())
    throw StaleCache("backward: cache does not match this net");
  if (upstream.cols() != net.out_dim() || upstream.rows() != cache.input.rows())
    throw StaleCache("backward: upstream gradient shape mismatch");

  Matrix delta = upstream;
  if (net.frozen_last) delta = delta * net.frozen_last->transpose();

  for (size_t l = net.layers.size(); l-- > 0;) {
    const Layer& layer = net.layers[l];
    delta = delta.cwiseProduct(activate_grad(cache.pre[l], cache.post[l], layer.act));
    const Matrix& below = (l == 0) ? cache.input : cache.post[l - 1];
    grads.dw[l].noalias() += below.transpose() * delta;
    grads.db[l] += delta.colwise().sum().transpose();
    if (l > 0) delta = delta * layer.w.transpose();
    else return delta * layer.w.transpose();
  }
  return delta;  // unreachable for non-empty nets
}

void sgd_step(DenseNet& net, const Gradients& grads, double lr,
              double weight_decay) {
  if (grads.dw.size() != net.layers.size())
    throw StaleCache("sgd_step: gradient/net layer count mismatch");
  for (size_t l = 0; l < net.layers.size(); ++l) {
    Layer& layer = net.layers[l];
    layer.w -= lr * (grads.dw[l] + weight_decay * layer.w);
    layer.b -= lr * (grads.db[l] + weight_decay * layer.b);
  }
}

std::vector<ParamBlock> param_blocks(DenseNet& net, const Gradients& grads) {
  std::vector<ParamBlock> out;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    out.push_back({net.layers[l].w.data(), grads.dw[l].data(), net.layers[l].w.size()});
    out.push_back({net.layers[l].b.data(), grads.db[l].data(), net.layers[l].b.size()});
  }
  return out;
}

double grad_check(const std::function<double()>& loss_fn,
                  const std::vector<ParamBlock>& blocks, double h,
                  std::uint64_t seed, int max_coords) {
  Index total = 0;
  for (const ParamBlock& b : blocks) total += b.size;
  if (total == 0) return 0.0;

  std::vector<Index> coords;
  if (total <= max_coords) {
    coords.resize(static_cast<size_t>(total));
    for (Index i = 0; i < total; ++i) coords[static_cast<size_t>(i)] = i;
  } else {
    Rng rng(Rng::derive(seed, 0x67636865636bULL));
    std::set<Index> picked;
    while (static_cast<int>(picked.size()) < max_coords)
      picked.insert(static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(total))));
    coords.assign(picked.begin(), picked.end());
  }

  double max_rel = 0.0;
  for (Index flat : coords) {
    Index off = flat;
    size_t bi = 0;
    while (off >= blocks[bi].size) {
      off -= blocks[bi].size;
      ++bi;
    }
    double* p = blocks[bi].data + off;
    const double analytic = blocks[bi].grad[off];
    const double saved = *p;
    *p = saved + h;
    const double up = loss_fn();
    *p = saved - h;
    const double down = loss_fn();
    *p = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::abs(numeric - analytic) /
                       std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    max_rel = std::max(max_rel, rel);
  }
  return max_rel;
}

}  // namespace dcmtf::nn

#include "dcmtf/vae.hpp"

#include <cmath>

#include "dcmtf/errors.hpp"

namespace dcmtf::nn {

namespace {
constexpr double kProbClamp = 1e-7;

// BCE mean over all elements against clamped probabilities; gradient wrt
// the probabilities (zero where the clamp is active).
double bce_mean(const Matrix& y, const Matrix& p, Matrix* dp) {
  const double count = static_cast<double>(p.size());
  double loss = 0.0;
  if (dp) dp->setZero(p.rows(), p.cols());
  for (Index j = 0; j < p.cols(); ++j)
    for (Index i = 0; i < p.rows(); ++i) {
      const double raw = p(i, j);
      const double pc = std::min(std::max(raw, kProbClamp), 1.0 - kProbClamp);
      loss -= y(i, j) * std::log(pc) + (1.0 - y(i, j)) * std::log(1.0 - pc);
      if (dp && raw > kProbClamp && raw < 1.0 - kProbClamp)
        (*dp)(i, j) = (-y(i, j) / pc + (1.0 - y(i, j)) / (1.0 - pc)) / count;
    }
  return loss / count;
}
}  // namespace

Vae make_vae(Index input_width, Index latent, int hidden_layers,
             core::DataType datatype, bool variational, Rng& rng) {
  if (input_width < 1 || latent < 1 || hidden_layers < 0)
    throw ShapeMismatch("make_vae: bad dimensions");
  Vae v;
  v.datatype = datatype;
  v.variational = variational;
  v.latent = latent;

  const Index hidden = 2 * latent;
  std::vector<Index> enc_dims{input_width};
  std::vector<Activation> enc_acts;
  for (int h = 0; h < hidden_layers; ++h) {
    enc_dims.push_back(hidden);
    enc_acts.push_back(Activation::ReLU);
  }
  enc_dims.push_back(variational ? 2 * latent : latent);
  enc_acts.push_back(Activation::Identity);
  v.encoder = make_dense(enc_dims, enc_acts, rng);

  std::vector<Index> dec_dims{latent};
  std::vector<Activation> dec_acts;
  for (int h = 0; h < hidden_layers; ++h) {
    dec_dims.push_back(hidden);
    dec_acts.push_back(Activation::ReLU);
  }
  dec_dims.push_back(input_width);
  dec_acts.push_back(datatype == core::DataType::Binary ? Activation::Sigmoid
                                                        : Activation::Identity);
  v.decoder = make_dense(dec_dims, dec_acts, rng);
  return v;
}

VaeForward vae_forward(const Vae& v, const Matrix& y, NoiseMode mode, Rng* rng) {
  VaeForward fwd;
  const Matrix enc_out = forward(v.encoder, y, &fwd.enc_cache);
  if (v.variational) {
    fwd.mu = enc_out.leftCols(v.latent);
    fwd.logvar = enc_out.rightCols(v.latent);
  } else {
    fwd.mu = enc_out;
    fwd.logvar = Matrix::Zero(enc_out.rows(), v.latent);
  }

  if (v.variational && mode == NoiseMode::Sampled) {
    if (!rng) throw ShapeMismatch("vae_forward: Sampled mode needs an rng");
    fwd.xi.resize(fwd.mu.rows(), fwd.mu.cols());
    for (Index j = 0; j < fwd.xi.cols(); ++j)
      for (Index i = 0; i < fwd.xi.rows(); ++i) fwd.xi(i, j) = rng->normal();
    fwd.z = fwd.mu + ((fwd.logvar * 0.5).array().exp() * fwd.xi.array()).matrix();
  } else {
    fwd.xi = Matrix::Zero(fwd.mu.rows(), fwd.mu.cols());
    fwd.z = fwd.mu;
  }
  fwd.recon = forward(v.decoder, fwd.z, &fwd.dec_cache);
  return fwd;
}

VaeLoss loss_vae(const Vae& v, const Matrix& y, const VaeForward& fwd,
                 Gradients* enc_grads, Gradients* dec_grads) {
  if (fwd.recon.rows() != y.rows() || fwd.recon.cols() != y.cols())
    throw StaleCache("loss_vae: forward output does not match input");

  VaeLoss loss;
  Matrix d_recon;
  if (v.datatype == core::DataType::Binary) {
    loss.recon = bce_mean(y, fwd.recon, (enc_grads || dec_grads) ? &d_recon : nullptr);
  } else {
    const double count = static_cast<double>(y.size());
    const Matrix diff = fwd.recon - y;
    loss.recon = diff.squaredNorm() / count;
    if (enc_grads || dec_grads) d_recon = 2.0 * diff / count;
  }

  Matrix d_mu, d_logvar;
  if (v.variational) {
    const double count = static_cast<double>(fwd.mu.size());
    const Matrix ev = fwd.logvar.array().exp().matrix();
    loss.kl = -0.5 *
              (1.0 + fwd.logvar.array() - fwd.mu.array().square() - ev.array())
                  .sum() /
              count;
    if (enc_grads) {
      d_mu = fwd.mu / count;
      d_logvar = (ev - Matrix::Ones(ev.rows(), ev.cols())) / (2.0 * count);
    }
  }
  loss.value = loss.recon + loss.kl;
  if (!enc_grads && !dec_grads) return loss;

  // Decoder backward routes the reconstruction gradient to z; parameter
  // grads are discarded when the caller did not ask for them.
  Gradients dec_scratch = Gradients::zeros_like(v.decoder);
  const Matrix dz =
      backward(v.decoder, d_recon, fwd.dec_cache, dec_grads ? *dec_grads : dec_scratch);

  if (enc_grads) {
    if (v.variational) {
      d_mu += dz;
      // z = mu + exp(logvar/2) * xi
      d_logvar +=
          (dz.array() * fwd.xi.array() * (fwd.logvar * 0.5).array().exp() * 0.5)
              .matrix();
      Matrix upstream(d_mu.rows(), 2 * v.latent);
      upstream << d_mu, d_logvar;
      backward(v.encoder, upstream, fwd.enc_cache, *enc_grads);
    } else {
      backward(v.encoder, dz, fwd.enc_cache, *enc_grads);
    }
  }
  return loss;
}

double loss_matrix_recon(const Matrix& x, core::DataType datatype,
                         const Matrix& u_r, const Matrix& u_c, Matrix* du_r,
                         Matrix* du_c) {
  if (u_r.cols() != u_c.cols())
    throw ShapeMismatch("loss_matrix_recon: latent widths differ");
  if (u_r.rows() != x.rows() || u_c.rows() != x.cols())
    throw ShapeMismatch("loss_matrix_recon: factor shapes do not match x");

  const Matrix z = u_r * u_c.transpose();
  double value;
  Matrix dz;
  if (datatype == core::DataType::Real) {
    const Matrix diff = z - x;
    value = diff.squaredNorm();
    if (du_r || du_c) dz = 2.0 * diff;
  } else {
    // Stable BCE-with-logits: sum of softplus(z) - x z, gradient sigmoid(z) - x.
    value = 0.0;
    if (du_r || du_c) dz.resize(z.rows(), z.cols());
    for (Index j = 0; j < z.cols(); ++j)
      for (Index i = 0; i < z.rows(); ++i) {
        const double zij = z(i, j);
        const double sp = (zij > 0.0) ? zij + std::log1p(std::exp(-zij))
                                      : std::log1p(std::exp(zij));
        value += sp - x(i, j) * zij;
        if (du_r || du_c) dz(i, j) = 1.0 / (1.0 + std::exp(-zij)) - x(i, j);
      }
  }
  if (du_r) du_r->noalias() += dz * u_c;
  if (du_c) du_c->noalias() += dz.transpose() * u_r;
  return value;
}

double loss_trace(const Matrix& c, const linalg::LaplacianPair& lap,
                  const Matrix& h_inv_t, Matrix* dc_tilde) {
  if (lap.l.rows() != c.rows() || h_inv_t.rows() != c.cols())
    throw StaleCache("loss_trace: orthogonalization cache mismatch");
  const double value = (c.transpose() * lap.l * c).trace();
  if (dc_tilde) dc_tilde->noalias() += 2.0 * lap.l * c * h_inv_t.transpose();
  return value;
}

}  // namespace dcmtf::nn

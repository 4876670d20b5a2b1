#pragma once

#include "dcmtf/core_model.hpp"
#include "dcmtf/linalg.hpp"
#include "dcmtf/nn.hpp"
#include "dcmtf/types.hpp"

namespace dcmtf::nn {

struct Vae {
  DenseNet encoder;  // outputs [mu | logvar] when variational, the code otherwise
  DenseNet decoder;  // Sigmoid tail for Binary data, Identity for Real
  core::DataType datatype = core::DataType::Real;
  bool variational = true;  // false: plain autoencoder (no sampling, no KL)
  Index latent = 0;
};

/// Encoder [input -> hidden(2l, ReLU) x hidden_layers -> 2l or l], decoder
/// mirrored back to the input width.
Vae make_vae(Index input_width, Index latent, int hidden_layers,
             core::DataType datatype, bool variational, Rng& rng);

enum class NoiseMode { Deterministic, Sampled };

struct VaeForward {
  Matrix mu;      // d x l
  Matrix logvar;  // d x l (zero when not variational)
  Matrix xi;      // the standard-normal draw (zero in Deterministic mode)
  Matrix z;       // mu + exp(logvar/2) .* xi
  Matrix recon;
  ForwardCache enc_cache, dec_cache;
};

/// Reparameterized forward pass; `rng` is only consulted in Sampled mode.
VaeForward vae_forward(const Vae& v, const Matrix& y, NoiseMode mode,
                       Rng* rng = nullptr);

struct VaeLoss {
  double value = 0.0;
  double recon = 0.0;  // BCE mean (Binary) or MSE mean (Real)
  double kl = 0.0;     // -1/2 mean(1 + logvar - mu^2 - exp(logvar))
};

/// Loss and full backward pass through decoder and encoder. Gradient
/// sinks may be null when only the value is needed.
VaeLoss loss_vae(const Vae& v, const Matrix& y, const VaeForward& fwd,
                 Gradients* enc_grads, Gradients* dec_grads);

/// Matrix-factor reconstruction loss on X'' = u_r u_c^T: squared Frobenius
/// error for Real data, elementwise BCE through a sigmoid for Binary.
/// Gradient sinks accumulate d/d(u_r), d/d(u_c).
double loss_matrix_recon(const Matrix& x, core::DataType datatype,
                         const Matrix& u_r, const Matrix& u_c,
                         Matrix* du_r = nullptr, Matrix* du_c = nullptr);

/// Trace loss Tr(C^T L C) for an orthogonalized output c = c_tilde *
/// h_inv_t with frozen h_inv_t. Accumulates the gradient with respect to
/// c_tilde (2 L C H^-1); the frozen map itself receives none.
double loss_trace(const Matrix& c, const linalg::LaplacianPair& lap,
                  const Matrix& h_inv_t, Matrix* dc_tilde = nullptr);

}  // namespace dcmtf::nn

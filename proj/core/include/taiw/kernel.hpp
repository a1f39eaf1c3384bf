#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "taiw/data.hpp"

namespace taiw {

// Slots of the per-item raw parameter block.
enum KernelParam : std::size_t {
  kRawPi = 0,     // mixture weight, logistic
  kRawBeta = 1,   // exponential rate (1/day), softplus
  kRawMu = 2,     // Gaussian mean (days), softplus
  kRawSigma = 3,  // Gaussian scale (days), softplus
  kRawExcite = 4, // repurchase weight alpha_i, softplus; transductive model only
  kNumKernelParams = 5,
};

using KernelGradient = std::array<double, kNumKernelParams>;

double logistic(double x);
double softplus(double x);
// Inverse of softplus for y > 0.
double inverse_softplus(double y);

// beta * exp(-beta * dt)
double exp_pdf(double dt, double beta);
// Normal density of dt with mean mu and scale sigma.
double gauss_pdf(double dt, double mu, double sigma);

// Constrained view of one item's kernel.
struct ItemKernel {
  double pi = 0.5;
  double beta = 1.0;
  double mu = 7.0;
  double sigma = 1.0;
  double excite = 1.0;

  // pi * Exp(dt | beta) + (1 - pi) * N(dt | mu, sigma)
  double operator()(double dt) const;
};

// Unconstrained trainables for every item, stored item-major in one flat array so the
// optimizer can address them by offset.
class KernelParams {
 public:
  KernelParams() = default;
  // Every raw value starts at zero.
  explicit KernelParams(std::size_t num_items);

  std::size_t num_items() const { return raw_.size() / kNumKernelParams; }

  double raw(ItemId item, KernelParam p) const { return raw_[item * kNumKernelParams + p]; }
  double& raw(ItemId item, KernelParam p) { return raw_[item * kNumKernelParams + p]; }

  std::span<double> raw_values() { return raw_; }
  std::span<const double> raw_values() const { return raw_; }

  ItemKernel constrained(ItemId item) const;
  // Sets raw values so that constrained(item) reproduces `k` (pi in (0,1), the rest > 0).
  void set_constrained(ItemId item, const ItemKernel& k);

  friend bool operator==(const KernelParams&, const KernelParams&) = default;

 private:
  std::vector<double> raw_;
};

double gamma(ItemId item, double dt, const KernelParams& params);

// d gamma / d raw for the four shape parameters; the kRawExcite slot is always zero because
// alpha_i scales the kernel sum outside gamma.
KernelGradient gamma_grad(ItemId item, double dt, const KernelParams& params);

// d gamma / d (pi, beta, mu, sigma) at constrained values. Multiplying slot-wise by
// reparam_derivatives() gives gamma_grad().
KernelGradient gamma_grad_constrained(const ItemKernel& k, double dt);
// d constrained / d raw for each slot (logistic' for pi, logistic for the softplus slots).
KernelGradient reparam_derivatives(ItemId item, const KernelParams& params);

// Data-driven start: pi = 0.5, beta = 1 / mean gap, mu = median gap,
// sigma = max(1, IQR / 2), alpha = 1. Gaps are consecutive repurchase intervals of the same
// user; items without any repurchase fall back to global statistics.
KernelParams initialize_kernels(std::span<const UserHistory> train, std::size_t num_items);

struct KernelSample {
  ItemId item;
  double dt;
  double value;
};

// gamma on the grid 0, step, 2*step, ..., up to and including dt_max.
std::vector<KernelSample> sample_kernel(ItemId item, const KernelParams& params, double dt_max,
                                        double step = 1.0);

// Location of the highest value of gamma on (0, dt_max], searched on a `step` grid.
double kernel_mode(ItemId item, const KernelParams& params, double dt_max, double step = 0.01);

}  // namespace taiw

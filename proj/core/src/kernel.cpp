#include "taiw/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace taiw {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1 / sqrt(2 pi)

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct GapStats {
  double mean;
  double median;
  double iqr;
};

GapStats gap_stats(std::vector<double> gaps) {
  std::sort(gaps.begin(), gaps.end());
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  return {mean, quantile(gaps, 0.5), quantile(gaps, 0.75) - quantile(gaps, 0.25)};
}

}  // namespace

double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) {
    return x + std::log1p(std::exp(-x));
  }
  return std::log1p(std::exp(x));
}

double inverse_softplus(double y) {
  if (!(y > 0.0)) {
    throw std::domain_error("inverse_softplus needs a positive argument");
  }
  return y + std::log(-std::expm1(-y));
}

double exp_pdf(double dt, double beta) { return beta * std::exp(-beta * dt); }

double gauss_pdf(double dt, double mu, double sigma) {
  const double z = (dt - mu) / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

double ItemKernel::operator()(double dt) const {
  return pi * exp_pdf(dt, beta) + (1.0 - pi) * gauss_pdf(dt, mu, sigma);
}

KernelParams::KernelParams(std::size_t num_items) : raw_(num_items * kNumKernelParams, 0.0) {}

ItemKernel KernelParams::constrained(ItemId item) const {
  const double* r = &raw_[item * kNumKernelParams];
  return ItemKernel{logistic(r[kRawPi]), softplus(r[kRawBeta]), softplus(r[kRawMu]),
                    softplus(r[kRawSigma]), softplus(r[kRawExcite])};
}

void KernelParams::set_constrained(ItemId item, const ItemKernel& k) {
  if (!(k.pi > 0.0 && k.pi < 1.0)) {
    throw std::domain_error("kernel pi must lie in (0, 1)");
  }
  double* r = &raw_[item * kNumKernelParams];
  r[kRawPi] = std::log(k.pi / (1.0 - k.pi));
  r[kRawBeta] = inverse_softplus(k.beta);
  r[kRawMu] = inverse_softplus(k.mu);
  r[kRawSigma] = inverse_softplus(k.sigma);
  r[kRawExcite] = inverse_softplus(k.excite);
}

double gamma(ItemId item, double dt, const KernelParams& params) {
  return params.constrained(item)(dt);
}

KernelGradient gamma_grad_constrained(const ItemKernel& k, double dt) {
  const double decay = std::exp(-k.beta * dt);
  const double e = k.beta * decay;
  const double n = gauss_pdf(dt, k.mu, k.sigma);
  const double z = (dt - k.mu) / k.sigma;

  KernelGradient g{};
  g[kRawPi] = e - n;
  g[kRawBeta] = k.pi * decay * (1.0 - k.beta * dt);
  g[kRawMu] = (1.0 - k.pi) * n * z / k.sigma;
  g[kRawSigma] = (1.0 - k.pi) * n * (z * z - 1.0) / k.sigma;
  g[kRawExcite] = 0.0;
  return g;
}

KernelGradient reparam_derivatives(ItemId item, const KernelParams& params) {
  const double pi = logistic(params.raw(item, kRawPi));
  KernelGradient d{};
  d[kRawPi] = pi * (1.0 - pi);
  d[kRawBeta] = logistic(params.raw(item, kRawBeta));
  d[kRawMu] = logistic(params.raw(item, kRawMu));
  d[kRawSigma] = logistic(params.raw(item, kRawSigma));
  d[kRawExcite] = logistic(params.raw(item, kRawExcite));
  return d;
}

KernelGradient gamma_grad(ItemId item, double dt, const KernelParams& params) {
  KernelGradient g = gamma_grad_constrained(params.constrained(item), dt);
  const KernelGradient d = reparam_derivatives(item, params);
  for (std::size_t p = 0; p < kRawExcite; ++p) {
    g[p] *= d[p];
  }
  return g;
}

KernelParams initialize_kernels(std::span<const UserHistory> train, std::size_t num_items) {
  std::vector<std::vector<double>> gaps(num_items);
  std::vector<double> all_gaps;
  for (const UserHistory& h : train) {
    PurchaseIndex index(h);
    for (ItemId item : index.items()) {
      auto times = index.all(item);
      for (std::size_t k = 1; k < times.size(); ++k) {
        gaps[item].push_back(times[k] - times[k - 1]);
        all_gaps.push_back(times[k] - times[k - 1]);
      }
    }
  }
  const GapStats global = all_gaps.empty() ? GapStats{7.0, 7.0, 2.0} : gap_stats(all_gaps);

  KernelParams params(num_items);
  for (ItemId item = 0; item < num_items; ++item) {
    const GapStats s = gaps[item].empty() ? global : gap_stats(gaps[item]);
    ItemKernel k;
    k.pi = 0.5;
    k.beta = 1.0 / std::max(s.mean, 1e-3);
    k.mu = std::max(s.median, 1e-3);
    k.sigma = std::max(1.0, s.iqr / 2.0);
    k.excite = 1.0;
    params.set_constrained(item, k);
  }
  return params;
}

std::vector<KernelSample> sample_kernel(ItemId item, const KernelParams& params, double dt_max,
                                        double step) {
  if (!(step > 0.0) || dt_max < 0.0) {
    throw std::invalid_argument("sample_kernel needs step > 0 and dt_max >= 0");
  }
  const ItemKernel k = params.constrained(item);
  std::vector<KernelSample> out;
  const auto n = static_cast<std::size_t>(std::floor(dt_max / step + 1e-9));
  for (std::size_t s = 0; s <= n; ++s) {
    const double dt = static_cast<double>(s) * step;
    out.push_back({item, dt, k(dt)});
  }
  return out;
}

double kernel_mode(ItemId item, const KernelParams& params, double dt_max, double step) {
  const ItemKernel k = params.constrained(item);
  double best_dt = step;
  double best = -1.0;
  const auto n = static_cast<std::size_t>(std::floor(dt_max / step));
  for (std::size_t s = 1; s <= n; ++s) {
    const double dt = static_cast<double>(s) * step;
    const double v = k(dt);
    if (v > best) {
      best = v;
      best_dt = dt;
    }
  }
  return best_dt;
}

}  // namespace taiw

#include "ltlab/gaussian/sampler.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "ltlab/core/numeric.hpp"

namespace ltlab::gaussian {
namespace {

// FFTW's planner is not thread safe; execution on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

double fgn_lag_covariance(std::size_t k, double hurst) {
  const double h2 = 2.0 * hurst;
  const double kk = static_cast<double>(k);
  return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(std::abs(kk - 1.0), h2));
}

}  // namespace

struct GaussianSampler::FftPlan {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  explicit FftPlan(std::size_t m) {
    std::vector<std::complex<double>> a(m), b(m);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_FORWARD, flags);
    backward = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_BACKWARD, flags);
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  void run(fftw_plan p, std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
  }
};

GaussianSampler::GaussianSampler(CovarianceSpec cov, TimeGrid grid, SamplingMethod method)
    : cov_(std::move(cov)), grid_(grid), method_(method) {
  const bool circulant_ok = cov_.kind == CovarianceKind::fbm && grid_.t_start() == 0.0;
  switch (method) {
    case SamplingMethod::cholesky:
      build_cholesky();
      break;
    case SamplingMethod::circulant_embedding:
      if (!circulant_ok)
        throw std::invalid_argument("circulant embedding needs an fBm covariance on a grid starting at 0");
      build_circulant(false);
      break;
    case SamplingMethod::automatic:
      if (circulant_ok && grid_.n_points() > kCirculantThreshold && build_circulant(true)) {
        method_ = SamplingMethod::circulant_embedding;
      } else {
        method_ = SamplingMethod::cholesky;
        build_cholesky();
      }
      break;
  }
}

GaussianSampler::~GaussianSampler() = default;
GaussianSampler::GaussianSampler(GaussianSampler&&) noexcept = default;
GaussianSampler& GaussianSampler::operator=(GaussianSampler&&) noexcept = default;

void GaussianSampler::build_cholesky() {
  const std::vector<double> times = grid_.points();
  active_.clear();
  for (std::size_t k = 0; k < times.size(); ++k)
    if (cov_(times[k], times[k]) > 0.0) active_.push_back(k);
  std::vector<double> active_times;
  active_times.reserve(active_.size());
  for (std::size_t k : active_) active_times.push_back(times[k]);
  const Eigen::MatrixXd c = covariance_matrix(cov_, active_times);
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success)
    throw NotPsdError("covariance '" + cov_.name + "' is not positive definite on the grid");
  chol_ = llt.matrixL();
}

bool GaussianSampler::build_circulant(bool allow_fallback) {
  const std::size_t n = grid_.n_steps();
  const std::size_t m = 2 * n;
  const double scale = std::pow(grid_.step(), 2.0 * cov_.hurst);
  std::vector<std::complex<double>> row(m), eig(m);
  for (std::size_t k = 0; k <= n; ++k) row[k] = scale * fgn_lag_covariance(k, cov_.hurst);
  for (std::size_t k = n + 1; k < m; ++k) row[k] = row[m - k];
  auto plan = std::make_unique<FftPlan>(m);
  plan->run(plan->forward, row, eig);

  double lmax = 0.0, lmin = 0.0;
  for (const auto& v : eig) {
    lmax = std::max(lmax, v.real());
    lmin = std::min(lmin, v.real());
  }
  if (lmin < -1e-9 * lmax) {
    if (allow_fallback) return false;
    throw EmbeddingFallbackNeeded("circulant embedding has eigenvalue " + std::to_string(lmin) +
                                  " below the clipping tolerance");
  }
  embed_size_ = m;
  eig_.resize(m);
  sqrt_eig_.resize(m);
  clipped_mass_ = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double l = eig[k].real();
    if (l < 0.0) {
      clipped_mass_ += -l;
      l = 0.0;
    }
    eig_[k] = l;
    sqrt_eig_[k] = std::sqrt(l / static_cast<double>(m));
  }
  plan_ = std::move(plan);
  return true;
}

void GaussianSampler::sample_components(RngStream& rng, std::span<std::vector<double>> out) const {
  const std::size_t n = grid_.n_steps();
  if (method_ == SamplingMethod::cholesky) {
    Eigen::VectorXd z(static_cast<Eigen::Index>(active_.size()));
    for (auto& path : out) {
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
      const Eigen::VectorXd x = chol_.triangularView<Eigen::Lower>() * z;
      path.assign(n + 1, 0.0);
      for (std::size_t i = 0; i < active_.size(); ++i) path[active_[i]] = x(static_cast<Eigen::Index>(i));
    }
    return;
  }
  if (out.size() > 2) throw std::invalid_argument("sample_components: at most two paths per transform");
  std::vector<std::complex<double>> w(embed_size_), y(embed_size_);
  for (std::size_t k = 0; k < embed_size_; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    w[k] = sqrt_eig_[k] * std::complex<double>(re, im);
  }
  plan_->run(plan_->forward, w, y);
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto& path = out[c];
    path.assign(n + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) {
      acc.add(c == 0 ? y[k].real() : y[k].imag());
      path[k + 1] = acc.value();
    }
  }
}

SamplePath GaussianSampler::sample(int d, RngStream& rng, const ProcessSpec& spec) const {
  if (d < 1) throw std::invalid_argument("sample: d must be >= 1");
  const std::size_t np = grid_.n_points();
  std::vector<double> values(np * static_cast<std::size_t>(d));
  std::vector<std::vector<double>> comps(2);
  for (int l = 0; l < d;) {
    const std::size_t take =
        (method_ == SamplingMethod::circulant_embedding) ? std::min<std::size_t>(2, static_cast<std::size_t>(d - l)) : 1;
    std::span<std::vector<double>> slots(comps.data(), take);
    sample_components(rng, slots);
    for (std::size_t c = 0; c < take; ++c, ++l)
      for (std::size_t k = 0; k < np; ++k) values[k * d + l] = comps[c][k];
  }
  return SamplePath(grid_, d, std::move(values), rng.master_seed(), spec);
}

Eigen::MatrixXd GaussianSampler::implied_covariance() const {
  const std::size_t np = grid_.n_points();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(np));
  if (method_ == SamplingMethod::cholesky) {
    const Eigen::MatrixXd c = chol_ * chol_.transpose();
    for (std::size_t i = 0; i < active_.size(); ++i)
      for (std::size_t j = 0; j < active_.size(); ++j)
        out(static_cast<Eigen::Index>(active_[i]), static_cast<Eigen::Index>(active_[j])) =
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
  }
  // Increment covariance = first row of the circulant rebuilt from the (clipped) spectrum.
  std::vector<std::complex<double>> lam(embed_size_), row(embed_size_);
  for (std::size_t k = 0; k < embed_size_; ++k) lam[k] = eig_[k];
  plan_->run(plan_->backward, lam, row);
  const std::size_t n = grid_.n_steps();
  auto lag = [&](std::size_t a, std::size_t b) {
    const std::size_t k = a > b ? a - b : b - a;
    return row[k].real() / static_cast<double>(embed_size_);
  };
  // Cov(X_i, X_j) = Σ_{a<i} Σ_{b<j} lag(a, b), built by 2-D prefix sums.
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      out(i, j) = out(i - 1, j) + out(i, j - 1) - out(i - 1, j - 1) + lag(i - 1, j - 1);
  return out;
}

SamplePath sample_gaussian_path(const CovarianceSpec& cov, int d, const TimeGrid& grid, RngStream& rng,
                                SamplingMethod method) {
  GaussianSampler sampler(cov, grid, method);
  ProcessSpec spec = ProcessSpec::defaults(
      cov.kind == CovarianceKind::fbm ? ProcessClass::fbm : ProcessClass::quasi_helix, d, cov.hurst);
  spec.covariance = cov.name;
  return sampler.sample(d, rng, spec);
}

}  // namespace ltlab::gaussian

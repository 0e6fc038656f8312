#include "gbe/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gbe/error.hpp"
#include "gbe/parallel.hpp"
#include "integrate.hpp"

namespace gbe {

void EnsembleSpec::validate() const {
  if (!(beta > 0) || !std::isfinite(beta)) throw DomainError("beta must be a positive finite number");
  if (N < 1) throw DomainError("N must be at least 1");
  if (rank() > N) throw DomainError("source rank exceeds N");
  for (double f : source)
    if (!std::isfinite(f)) throw DomainError("source entries must be finite");
}

std::vector<double> EnsembleSpec::padded_source() const {
  std::vector<double> f(source);
  f.resize(N, 0.0);
  return f;
}

double log_norm_constant(double beta, int N) {
  if (!(beta > 0)) throw DomainError("beta must be positive");
  if (N < 1) throw DomainError("N must be at least 1");
  double v = (-N / 2.0 - beta * N * (N - 1) / 4.0) * std::log(beta) + N / 2.0 * std::log(2 * std::numbers::pi);
  for (int j = 0; j < N; ++j) v += std::lgamma(1 + beta / 2 + j * beta / 2) - std::lgamma(1 + beta / 2);
  return v;
}

double norm_constant(double beta, int N) { return std::exp(log_norm_constant(beta, N)); }

double log_gamma_const(double beta, int n) {
  if (!(beta > 0)) throw DomainError("beta must be positive");
  if (n < 0) throw DomainError("n must be non-negative");
  double v = n / 2.0 * std::log(2 * std::numbers::pi);
  for (int j = 1; j <= n; ++j) v += std::lgamma(1 + j * beta / 2) - std::lgamma(1 + beta / 2);
  return v;
}

double gamma_const(double beta, int n) { return std::exp(log_gamma_const(beta, n)); }

namespace {

// Everything but the |Δ|^β factor.
double log_density_core(const EnsembleSpec& spec, const std::vector<double>& f, std::span<const double> x,
                        const SeriesControl& ctrl) {
  const double beta = spec.beta;
  double v = -log_norm_constant(beta, spec.N);
  for (int i = 0; i < spec.N; ++i) v -= beta / 2 * (x[i] * x[i] + f[i] * f[i]);
  if (std::all_of(f.begin(), f.end(), [](double t) { return t == 0.0; })) return v;
  std::vector<cplx> bx(x.begin(), x.end()), fy(f.begin(), f.end());
  for (auto& t : bx) t *= beta;
  auto r = log_f00(bx, fy, 2.0 / beta, ctrl);
  if (!std::isfinite(r.log_value.real()) || std::abs(wrap_phase(r.log_value.imag())) > 1e-6)
    throw PositivityError("hypergeometric factor of the density is not positive at a real point");
  return v + r.log_value.real();
}

double log_abs_vandermonde(std::span<const double> x) {
  double v = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j) v += std::log(std::abs(x[j] - x[i]));
  return v;
}

// Upper bound from the trace inequality, sorted pairing of x and f.
double log_density_bound(const EnsembleSpec& spec, std::vector<double> f, std::vector<double> x) {
  std::sort(f.begin(), f.end());
  std::sort(x.begin(), x.end());
  double v = -log_norm_constant(spec.beta, spec.N);
  for (int i = 0; i < spec.N; ++i) v += -spec.beta / 2 * (x[i] * x[i] + f[i] * f[i]) + spec.beta * x[i] * f[i];
  return v;
}

cplx log_char_product(std::span<const cplx> s, std::span<const double> x) {
  cplx v = 0.0;
  for (cplx sj : s)
    for (double xi : x) v += std::log(sj - xi);
  return v;
}

}  // namespace

double log_density(const EnsembleSpec& spec, std::span<const double> x, const SeriesControl& ctrl) {
  spec.validate();
  if (static_cast<int>(x.size()) != spec.N) throw DomainError("x must have N entries");
  for (double t : x)
    if (!std::isfinite(t)) throw DomainError("x entries must be finite");
  auto f = spec.padded_source();
  return log_density_core(spec, f, x, ctrl) + spec.beta * log_abs_vandermonde(x);
}

std::vector<cplx> direct_K_batch(const EnsembleSpec& spec, const std::vector<std::vector<cplx>>& s_lists,
                                 int resolution) {
  spec.validate();
  if (spec.N > 3) throw DomainError("direct quadrature is an oracle for N <= 3 only");
  if (s_lists.empty()) return {};
  if (resolution < 0 || resolution == 1) throw DomainError("resolution must be 0 (automatic) or at least 2");
  auto f = spec.padded_source();
  double fmax = 0.0;
  for (double t : f) fmax = std::max(fmax, std::abs(t));
  const double R = fmax + std::sqrt(2.0 * spec.N / spec.beta) + std::sqrt(96.0 / spec.beta);
  SeriesControl ctrl{120, 1e-15, 3};
  const int outputs = static_cast<int>(s_lists.size());
  auto log_f = [&](std::span<const double> x, std::span<cplx> out) {
    double base = log_density_core(spec, f, x, ctrl);
    for (int o = 0; o < outputs; ++o) out[o] = base + log_char_product(s_lists[o], x);
  };
  auto bound = [&](std::span<const double> x) {
    return log_density_bound(spec, f, std::vector<double>(x.begin(), x.end()));
  };
  auto res = detail::chamber_multi(spec.N, spec.beta, -R, R, 2 * R, outputs, 36, 125, 1e-10, resolution, log_f,
                                   bound);
  std::vector<cplx> out;
  for (const auto& r : res) out.push_back(r.value.value());
  return out;
}

cplx direct_K(const EnsembleSpec& spec, std::span<const cplx> s, int resolution) {
  return direct_K_batch(spec, {std::vector<cplx>(s.begin(), s.end())}, resolution)[0];
}

void McConfig::validate() const {
  if (chain_length < 1) throw DomainError("chain_length must be positive");
  if (burn_in < 0) throw DomainError("burn_in must be non-negative");
  if (batches < 2) throw DomainError("need at least 2 batches");
  if (chain_length < batches) throw DomainError("chain shorter than the batch count");
  if (chains < 1) throw DomainError("need at least one chain");
  if (!std::isfinite(proposal_scale)) throw DomainError("proposal_scale must be finite");
}

namespace {

struct ChainOut {
  std::vector<LogSum> batches;
  long accepted = 0;
  long steps = 0;
  double scale = 0.0;
};

ChainOut run_chain(const EnsembleSpec& spec, const std::vector<double>& f, std::span<const cplx> s,
                   const McConfig& cfg, const SeriesControl& ctrl, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  const int N = spec.N;
  std::vector<double> x(N), y(N);
  for (int i = 0; i < N; ++i) x[i] = f[i] + 0.1 * (i - (N - 1) / 2.0);
  double lp = log_density(spec, x, ctrl);
  if (!std::isfinite(lp)) throw ConvergenceError("starting point has zero density");
  double h = cfg.proposal_scale > 0 ? cfg.proposal_scale : 1.0 / std::sqrt(spec.beta * N);
  const bool tune = !(cfg.proposal_scale > 0);

  auto step = [&]() {
    for (int i = 0; i < N; ++i) y[i] = x[i] + h * gauss(rng);
    double lq = log_density(spec, y, ctrl);
    if (std::isnan(lq)) throw ConvergenceError("density evaluated to NaN along the chain");
    if (std::log(unif(rng)) < lq - lp) {
      x.swap(y);
      lp = lq;
      return true;
    }
    return false;
  };

  long window = 0, window_acc = 0;
  for (long t = 0; t < cfg.burn_in; ++t) {
    window_acc += step();
    if (tune && ++window == 100) {
      double rate = window_acc / 100.0;
      if (rate < 0.2) h *= 0.8;
      if (rate > 0.4) h *= 1.25;
      window = window_acc = 0;
    }
  }

  ChainOut out;
  out.scale = h;
  out.batches.resize(cfg.batches);
  const long per = cfg.chain_length / cfg.batches;
  for (long t = 0; t < per * cfg.batches; ++t) {
    out.accepted += step();
    ++out.steps;
    cplx g = log_char_product(s, x);
    if (!std::isfinite(g.real()) && g.real() != -INFINITY) throw ConvergenceError("non-finite integrand");
    out.batches[t / per].add(g);
  }
  return out;
}

}  // namespace

McResult mc_estimate_K(const EnsembleSpec& spec, std::span<const cplx> s, const McConfig& cfg,
                       const SeriesControl& ctrl) {
  spec.validate();
  cfg.validate();
  if (s.empty()) throw DomainError("need at least one spectral argument");
  auto f = spec.padded_source();
  std::vector<ChainOut> chains(cfg.chains);
  for_each_chunk(cfg.chains, 1, [&](std::size_t c, std::size_t, std::size_t) {
    chains[c] = run_chain(spec, f, s, cfg, ctrl, cfg.seed + 0x9E3779B97F4A7C15ULL * c);
  });
  const double per = static_cast<double>(cfg.chain_length / cfg.batches);
  std::vector<cplx> means;
  long acc = 0, steps = 0;
  for (const auto& ch : chains) {
    for (const auto& b : ch.batches) means.push_back((b.result() / LogComplex(std::log(per), 0.0)).value());
    acc += ch.accepted;
    steps += ch.steps;
  }
  cplx mean = 0.0;
  for (cplx m : means) mean += m;
  mean /= double(means.size());
  double var = 0.0;
  for (cplx m : means) var += std::norm(m - mean);
  const double B = means.size();
  McResult r;
  r.estimate = mean;
  r.std_error = std::sqrt(var / (B * (B - 1)));
  r.acceptance_rate = double(acc) / steps;
  r.proposal_scale = chains[0].scale;
  return r;
}

}  // namespace gbe

#include "integrate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gbe/error.hpp"
#include "gbe/parallel.hpp"
#include "gbe/quadrature.hpp"

namespace gbe::detail {

namespace {

constexpr std::size_t kChunk = 2048;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

IntegralResult finish(const LogSum& sum, double log_weight_peak, int nodes) {
  IntegralResult r;
  r.value = sum.result();
  r.nodes = nodes;
  if (!r.value.is_zero()) r.lost_digits = (sum.peak() + log_weight_peak - r.value.log_mag) / std::log(10.0);
  return r;
}

IntegralResult trapezoid_level(int dim, double center, double shift, double hw, int m,
                               const std::function<cplx(std::span<const cplx>)>& log_f,
                               const std::function<double(std::span<const cplx>)>& log_bound) {
  const std::size_t side = static_cast<std::size_t>(m) + 1;
  const std::size_t total = ipow(side, dim);
  const double h = 2 * hw / m;
  auto point = [&](std::size_t idx, std::vector<cplx>& w) {
    std::size_t rem = idx;
    for (int d = 0; d < dim; ++d) {
      std::size_t j = rem % side;
      rem /= side;
      w[d] = cplx(center - hw + h * j, shift);
    }
  };
  double cutoff = -INFINITY;
  if (log_bound) {
    std::vector<double> peaks(chunk_count(total, kChunk), -INFINITY);
    for_each_chunk(total, kChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
      std::vector<cplx> w(dim);
      for (std::size_t idx = begin; idx < end; ++idx) {
        point(idx, w);
        peaks[c] = std::max(peaks[c], log_bound(w));
      }
    });
    cutoff = *std::max_element(peaks.begin(), peaks.end()) - 46.0;
  }
  std::vector<LogSum> parts(chunk_count(total, kChunk));
  for_each_chunk(total, kChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::vector<cplx> w(dim);
    for (std::size_t idx = begin; idx < end; ++idx) {
      point(idx, w);
      if (log_bound && log_bound(w) < cutoff) continue;
      parts[c].add(log_f(w));
    }
  });
  LogSum sum;
  for (const auto& p : parts) sum.merge(p);
  return finish(sum, dim * std::log(h), m);
}

}  // namespace

namespace {
int grow(int m) { return (m * 3 / 2 + 1) / 2 * 2; }
}  // namespace

IntegralResult trapezoid_nd(int dim, double center, double shift, double half_width, int start_nodes,
                            int max_nodes, double tol, int fixed_nodes,
                            const std::function<cplx(std::span<const cplx>)>& log_f,
                            const std::function<double(std::span<const cplx>)>& log_bound) {
  if (dim < 1) throw DomainError("integration dimension must be positive");
  if (!(half_width > 0)) throw DomainError("half_width must be positive");
  auto scaled = [&](int m) {
    auto r = trapezoid_level(dim, center, shift, half_width, m, log_f, log_bound);
    r.value *= LogComplex(dim * std::log(2 * half_width / m), 0.0);
    return r;
  };
  if (fixed_nodes > 0) {
    if (fixed_nodes < 2) throw DomainError("need at least 2 nodes");
    auto fine = scaled(fixed_nodes);
    auto coarse = scaled(std::max(1, fixed_nodes / 2));
    fine.change = relative_deviation(coarse.value, fine.value);
    return fine;
  }
  auto prev = scaled(start_nodes);
  for (int m = grow(start_nodes); m <= max_nodes; m = grow(m)) {
    auto cur = scaled(m);
    cur.change = relative_deviation(prev.value, cur.value);
    if (cur.change <= tol) return cur;
    prev = cur;
  }
  return prev;
}

namespace {

std::vector<IntegralResult> chamber_level(int dim, double c, double lo, double hi, double gap_max, int outputs,
                                          int m,
                                          const std::function<void(std::span<const double>, std::span<cplx>)>& log_f,
                                          const std::function<double(std::span<const double>)>& log_bound) {
  const auto& base = gauss_legendre(m);
  const auto& gap = gauss_jacobi(m, 0.0, c);
  const double half = (hi - lo) / 2, mid = (hi + lo) / 2;
  const double gscale = gap_max / 2;
  double log_const = std::lgamma(dim + 1.0) + std::log(half) + (dim - 1) * (c + 1) * std::log(gscale);
  const std::size_t total = ipow(m, dim);

  auto point = [&](std::size_t idx, std::vector<double>& x, double& logw) {
    std::size_t rem = idx;
    std::size_t j = rem % m;
    rem /= m;
    x[0] = mid + half * base.nodes[j];
    logw = std::log(base.weights[j]);
    for (int d = 1; d < dim; ++d) {
      std::size_t g = rem % m;
      rem /= m;
      x[d] = x[d - 1] + gscale * (1 + gap.nodes[g]);
      logw += std::log(gap.weights[g]);
    }
    // Non-adjacent Vandermonde factors; adjacent ones live in the Jacobi weight.
    for (int a = 0; a < dim; ++a)
      for (int b = a + 2; b < dim; ++b) logw += c * std::log(x[b] - x[a]);
  };
  auto adjacent = [&](const std::vector<double>& x) {
    double adj = 0.0;
    for (int d = 1; d < dim; ++d) adj += c * std::log(x[d] - x[d - 1]);
    return adj;
  };

  double cutoff = -INFINITY;
  if (log_bound) {
    double peak = -INFINITY;
    std::vector<double> x(dim);
    double logw;
    for (std::size_t idx = 0; idx < total; ++idx) {
      point(idx, x, logw);
      peak = std::max(peak, log_bound(x) + logw + adjacent(x));
    }
    cutoff = peak - 46.0;
  }

  const std::size_t nch = chunk_count(total, kChunk);
  std::vector<std::vector<LogSum>> parts(nch, std::vector<LogSum>(outputs));
  for_each_chunk(total, kChunk, [&](std::size_t ch, std::size_t begin, std::size_t end) {
    std::vector<double> x(dim);
    std::vector<cplx> out(outputs);
    double logw;
    for (std::size_t idx = begin; idx < end; ++idx) {
      point(idx, x, logw);
      if (log_bound && log_bound(x) + logw + adjacent(x) < cutoff) continue;
      log_f(x, out);
      for (int o = 0; o < outputs; ++o) parts[ch][o].add(out[o] + logw);
    }
  });
  std::vector<IntegralResult> res(outputs);
  for (int o = 0; o < outputs; ++o) {
    LogSum sum;
    for (const auto& p : parts) sum.merge(p[o]);
    res[o] = finish(sum, 0.0, m);
    res[o].value *= LogComplex(log_const, 0.0);
  }
  return res;
}

}  // namespace

std::vector<IntegralResult> chamber_multi(int dim, double c, double lo, double hi, double gap_max, int outputs,
                                          int start_nodes, int max_nodes, double tol, int fixed_nodes,
                                          const std::function<void(std::span<const double>, std::span<cplx>)>& log_f,
                                          const std::function<double(std::span<const double>)>& log_bound) {
  if (dim < 1 || dim > 4) throw DomainError("chamber integration supports 1 to 4 variables");
  if (!(hi > lo) || !(gap_max > 0)) throw DomainError("empty integration box");
  if (outputs < 1) throw DomainError("no integrands");
  if (fixed_nodes > 0) return chamber_level(dim, c, lo, hi, gap_max, outputs, fixed_nodes, log_f, log_bound);
  auto prev = chamber_level(dim, c, lo, hi, gap_max, outputs, start_nodes, log_f, log_bound);
  for (int m = start_nodes * 3 / 2; m <= max_nodes; m = m * 3 / 2) {
    auto cur = chamber_level(dim, c, lo, hi, gap_max, outputs, m, log_f, log_bound);
    double worst = 0.0;
    for (int o = 0; o < outputs; ++o) {
      cur[o].change = relative_deviation(prev[o].value, cur[o].value);
      worst = std::max(worst, cur[o].change);
    }
    if (worst <= tol) return cur;
    prev = cur;
  }
  return prev;
}

IntegralResult chamber_nd(int dim, double c, double lo, double hi, double gap_max, int start_nodes, int max_nodes,
                          double tol, int fixed_nodes, const std::function<cplx(std::span<const double>)>& log_f,
                          const std::function<double(std::span<const double>)>& log_bound) {
  auto wrapped = [&](std::span<const double> x, std::span<cplx> out) { out[0] = log_f(x); };
  return chamber_multi(dim, c, lo, hi, gap_max, 1, start_nodes, max_nodes, tol, fixed_nodes, wrapped,
                       log_bound)[0];
}

void profile_window(const std::function<double(double)>& prof, double X, double margin, double& center,
                    double& half_width) {
  const int M = 6000;
  std::vector<double> v(M + 1);
  double peak = -INFINITY;
  for (int j = 0; j <= M; ++j) {
    v[j] = prof(-X + 2 * X * j / M);
    if (std::isfinite(v[j])) peak = std::max(peak, v[j]);
  }
  if (!std::isfinite(peak)) throw ConvergenceError("integrand vanishes on the whole search range");
  int lo = M, hi = 0;
  for (int j = 0; j <= M; ++j)
    if (v[j] >= peak - 45.0) {
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  double xl = -X + 2 * X * lo / M, xh = -X + 2 * X * hi / M;
  center = (xl + xh) / 2;
  half_width = (xh - xl) / 2 * margin + 1.0;
}

bool even_integer(double c) {
  double r = std::round(c);
  return std::abs(c - r) < 1e-12 && static_cast<long>(r) % 2 == 0;
}

}  // namespace gbe::detail

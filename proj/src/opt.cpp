#include "diamond/opt.hpp"

#include <algorithm>
#include <cmath>

namespace diamond {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t mix_key(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = mix64(seed);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

double mix_unit(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return (mix_key(seed, a, b, c) >> 11) * 0x1.0p-53;
}

uint64_t SplitMix::next() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

double SplitMix::unit() { return (next() >> 11) * 0x1.0p-53; }

namespace {

// theta -> blockwise softmax probabilities
void softmax_blocks(const std::vector<double>& theta,
                    const std::vector<int>& blocks, std::vector<double>& p) {
  p.resize(theta.size());
  int off = 0;
  for (int n : blocks) {
    double mx = theta[off];
    for (int i = 1; i < n; ++i) mx = std::max(mx, theta[off + i]);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      p[off + i] = std::exp(theta[off + i] - mx);
      sum += p[off + i];
    }
    for (int i = 0; i < n; ++i) p[off + i] /= sum;
    off += n;
  }
}

double ascend(const std::function<double(const std::vector<double>&)>& f,
              const std::vector<int>& blocks, std::vector<double> theta,
              int iters, std::vector<double>& best_p) {
  const int dim = static_cast<int>(theta.size());
  std::vector<double> p, grad(dim), trial(dim), ptrial;
  softmax_blocks(theta, blocks, p);
  double val = f(p);
  double step = 0.5;
  const double fd = 1e-6;
  for (int it = 0; it < iters; ++it) {
    for (int i = 0; i < dim; ++i) {
      trial = theta;
      trial[i] += fd;
      softmax_blocks(trial, blocks, ptrial);
      grad[i] = (f(ptrial) - val) / fd;
    }
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-12) break;
    bool improved = false;
    double s = step;
    for (int bt = 0; bt < 25; ++bt) {
      for (int i = 0; i < dim; ++i) trial[i] = theta[i] + s * grad[i] / gnorm;
      softmax_blocks(trial, blocks, ptrial);
      double v = f(ptrial);
      if (v > val + 1e-14) {
        theta = trial;
        p = ptrial;
        val = v;
        step = std::min(s * 2.0, 4.0);
        improved = true;
        break;
      }
      s *= 0.5;
    }
    if (!improved) break;
  }
  best_p = p;
  return val;
}

}  // namespace

std::vector<double> simplex_maximize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<int>& block_sizes, const OptimConfig& config,
    const std::vector<std::vector<double>>& starts) {
  int dim = 0;
  for (int n : block_sizes) dim += n;

  std::vector<std::vector<double>> thetas;
  thetas.emplace_back(dim, 0.0);  // uniform start
  for (const auto& s : starts) {
    std::vector<double> th(dim);
    for (int i = 0; i < dim; ++i)
      th[i] = std::log(std::max(s[i], 1e-12));  // logits of the given pmf
    thetas.push_back(std::move(th));
  }
  SplitMix rng(config.seed);
  for (int r = 0; r < config.restarts; ++r) {
    std::vector<double> th(dim);
    for (int i = 0; i < dim; ++i) th[i] = 4.0 * (rng.unit() - 0.5);
    thetas.push_back(std::move(th));
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_p;
  for (auto& th : thetas) {
    std::vector<double> p;
    double v = ascend(f, block_sizes, std::move(th), config.iters, p);
    if (v > best + 1e-15) {
      best = v;
      best_p = std::move(p);
    }
  }
  return best_p;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  // Iteration cap: once the interval reaches the ulp spacing of the
  // endpoints an absolute tolerance may be unreachable.
  for (int it = 0; it < 220 && b - a > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double bisect_increasing(const std::function<double(double)>& g, double lo,
                         double hi, int iters) {
  for (int it = 0; it < iters; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace diamond

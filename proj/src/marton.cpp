#include "diamond/marton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "diamond/opt.hpp"
#include "json.hpp"

namespace diamond {

namespace {

// Counter-based draw roles so every random symbol has a unique key.
enum Role : uint64_t {
  kRoleU = 1,
  kRoleX1 = 2,
  kRoleX2 = 3,
  kRoleMsg = 4,
  kRoleNoise = 5,
};

long message_count(double rate, int n) {
  double m = std::exp2(double(n) * rate);
  if (m > 4e9) throw BudgetError("codebook dimension exceeds 2^32");
  return std::max(1L, std::lround(m));
}

std::size_t sample(const double* pmf, std::size_t size, double unit) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < size; ++i) {
    acc += pmf[i];
    if (unit < acc) return i;
  }
  return size - 1;
}

}  // namespace

bool strongly_typical(const std::vector<int>& counts,
                      const std::vector<double>& pmf, int n, double eps) {
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    double dev = std::abs(counts[i] - n * pmf[i]);
    if (dev > eps * n * pmf[i] + 1e-12) return false;
  }
  return true;
}

Codebook build_codebook(const SimConfig& config) {
  if (config.n < 1) throw std::invalid_argument("build_codebook: n < 1");
  if (config.eps <= 0.0) throw std::invalid_argument("build_codebook: eps <= 0");
  const Joint3PMF& joint = config.joint;
  const std::size_t nu = joint.nu(), nx1 = joint.nx1(), nx2 = joint.nx2();
  const int n = config.n;

  Codebook book;
  book.m12 = message_count(config.rates.r12, n);
  book.m1 = message_count(config.rates.r1, n);
  book.m1p = message_count(config.rates.r1p, n);
  book.m2 = message_count(config.rates.r2, n);
  book.m2p = message_count(config.rates.r2p, n);

  double bytes = double(book.m12) * n +
                 double(book.m12) * book.m1 * book.m1p * n +
                 double(book.m12) * book.m2 * book.m2p * n;
  if (bytes > double(config.budget))
    throw BudgetError("codebook storage exceeds the memory budget");

  std::vector<double> p_u = joint.marginal_u();
  // Conditional superposition pmfs p(x1|u), p(x2|u).
  std::vector<double> p_x1_u(nu * nx1, 0.0), p_x2_u(nu * nx2, 0.0);
  for (std::size_t u = 0; u < nu; ++u) {
    if (p_u[u] <= 0.0) continue;
    for (std::size_t a = 0; a < nx1; ++a)
      for (std::size_t b = 0; b < nx2; ++b) {
        p_x1_u[u * nx1 + a] += joint.at(u, a, b) / p_u[u];
        p_x2_u[u * nx2 + b] += joint.at(u, a, b) / p_u[u];
      }
  }

  book.u.resize(std::size_t(book.m12) * n);
  book.x1.resize(std::size_t(book.m12) * book.m1 * book.m1p * n);
  book.x2.resize(std::size_t(book.m12) * book.m2 * book.m2p * n);

  for (long w = 0; w < book.m12; ++w)
    for (int l = 0; l < n; ++l)
      book.u[std::size_t(w) * n + l] = uint8_t(
          sample(p_u.data(), nu, mix_unit(config.seed, kRoleU, w, l)));

  for (long w = 0; w < book.m12; ++w)
    for (long a = 0; a < book.m1; ++a)
      for (long ap = 0; ap < book.m1p; ++ap) {
        std::size_t row = (std::size_t(w) * book.m1 + a) * book.m1p + ap;
        for (int l = 0; l < n; ++l) {
          uint8_t u = book.u[std::size_t(w) * n + l];
          book.x1[row * n + l] = uint8_t(
              sample(&p_x1_u[u * nx1], nx1,
                     mix_unit(config.seed, kRoleX1, row, l)));
        }
      }

  for (long w = 0; w < book.m12; ++w)
    for (long b = 0; b < book.m2; ++b)
      for (long bp = 0; bp < book.m2p; ++bp) {
        std::size_t row = (std::size_t(w) * book.m2 + b) * book.m2p + bp;
        for (int l = 0; l < n; ++l) {
          uint8_t u = book.u[std::size_t(w) * n + l];
          book.x2[row * n + l] = uint8_t(
              sample(&p_x2_u[u * nx2], nx2,
                     mix_unit(config.seed, kRoleX2, row, l)));
        }
      }

  // Mutual covering: first jointly typical (x1, x2) pair per bin.
  book.pair1.assign(std::size_t(book.m12) * book.m1 * book.m2, -1);
  book.pair2.assign(book.pair1.size(), -1);
  std::vector<int> counts(nu * nx1 * nx2);
  for (long w = 0; w < book.m12; ++w) {
    const uint8_t* useq = &book.u[std::size_t(w) * n];
    for (long a = 0; a < book.m1; ++a)
      for (long b = 0; b < book.m2; ++b) {
        std::size_t bin = (std::size_t(w) * book.m1 + a) * book.m2 + b;
        bool found = false;
        for (long ap = 0; ap < book.m1p && !found; ++ap) {
          const uint8_t* s1 =
              &book.x1[((std::size_t(w) * book.m1 + a) * book.m1p + ap) * n];
          for (long bp = 0; bp < book.m2p && !found; ++bp) {
            const uint8_t* s2 =
                &book.x2[((std::size_t(w) * book.m2 + b) * book.m2p + bp) * n];
            std::fill(counts.begin(), counts.end(), 0);
            for (int l = 0; l < n; ++l)
              ++counts[(useq[l] * nx1 + s1[l]) * nx2 + s2[l]];
            if (strongly_typical(counts, joint.mass(), n, config.eps)) {
              book.pair1[bin] = int32_t(ap);
              book.pair2[bin] = int32_t(bp);
              found = true;
            }
          }
        }
        if (!found) ++book.covering_failures;
      }
  }
  return book;
}

SimOutcome run_trials(const SimConfig& config) {
  Codebook book = build_codebook(config);
  const Joint3PMF& joint = config.joint;
  const MacChannel& mac = config.mac;
  const std::size_t nu = joint.nu(), nx1 = joint.nx1(), nx2 = joint.nx2();
  const std::size_t ny = mac.ny();
  const int n = config.n;

  // Reference pmfs for the decoder's typicality tests. Joint typicality
  // implies every marginal is typical at the same slack, so candidates can
  // be pruned stage by stage before the full four-way check.
  std::vector<double> p_full(nu * nx1 * nx2 * ny, 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t a = 0; a < nx1; ++a)
      for (std::size_t b = 0; b < nx2; ++b)
        for (std::size_t y = 0; y < ny; ++y)
          p_full[((u * nx1 + a) * nx2 + b) * ny + y] =
              joint.at(u, a, b) * mac.at(a, b, y);
  std::vector<double> p_uy(nu * ny, 0.0), p_ux1y(nu * nx1 * ny, 0.0),
      p_ux2y(nu * nx2 * ny, 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t a = 0; a < nx1; ++a)
      for (std::size_t b = 0; b < nx2; ++b)
        for (std::size_t y = 0; y < ny; ++y) {
          double m = p_full[((u * nx1 + a) * nx2 + b) * ny + y];
          p_uy[u * ny + y] += m;
          p_ux1y[(u * nx1 + a) * ny + y] += m;
          p_ux2y[(u * nx2 + b) * ny + y] += m;
        }

  SimOutcome out;
  out.trials = config.trials;
  long bins = book.m12 * book.m1 * book.m2;
  out.covering_failure_rate = double(book.covering_failures) / double(bins);

  long errors = 0, e1 = 0;
  long e2[4] = {0, 0, 0, 0};
  std::vector<int> c_uy(nu * ny), c_ux1y(nu * nx1 * ny), c_ux2y(nu * nx2 * ny),
      c_full(nu * nx1 * nx2 * ny);
  std::vector<uint8_t> yseq(n);
  std::vector<std::pair<long, long>> cand1, cand2;  // (m, m')

  for (long trial = 0; trial < config.trials; ++trial) {
    uint64_t pick = uint64_t(mix_unit(config.seed, kRoleMsg, trial) * bins);
    if (pick >= uint64_t(bins)) pick = bins - 1;
    long tw = long(pick) / (book.m1 * book.m2);
    long ta = (long(pick) / book.m2) % book.m1;
    long tb = long(pick) % book.m2;
    std::size_t bin = (std::size_t(tw) * book.m1 + ta) * book.m2 + tb;
    if (book.pair1[bin] < 0) {
      ++e1;
      ++errors;
      continue;
    }
    const uint8_t* s1 = &book.x1[((std::size_t(tw) * book.m1 + ta) * book.m1p +
                                  book.pair1[bin]) * n];
    const uint8_t* s2 = &book.x2[((std::size_t(tw) * book.m2 + tb) * book.m2p +
                                  book.pair2[bin]) * n];
    for (int l = 0; l < n; ++l) {
      const double* row = nullptr;
      static thread_local std::vector<double> rowbuf;
      rowbuf.resize(ny);
      for (std::size_t y = 0; y < ny; ++y) rowbuf[y] = mac.at(s1[l], s2[l], y);
      row = rowbuf.data();
      yseq[l] = uint8_t(
          sample(row, ny, mix_unit(config.seed, kRoleNoise, trial, l)));
    }

    bool hit_self = false;
    bool wrong[4] = {false, false, false, false};
    long decoded = 0;
    for (long w = 0; w < book.m12; ++w) {
      const uint8_t* useq = &book.u[std::size_t(w) * n];
      std::fill(c_uy.begin(), c_uy.end(), 0);
      for (int l = 0; l < n; ++l) ++c_uy[useq[l] * ny + yseq[l]];
      if (!strongly_typical(c_uy, p_uy, n, config.eps)) continue;

      cand1.clear();
      for (long a = 0; a < book.m1; ++a)
        for (long ap = 0; ap < book.m1p; ++ap) {
          const uint8_t* q1 =
              &book.x1[((std::size_t(w) * book.m1 + a) * book.m1p + ap) * n];
          std::fill(c_ux1y.begin(), c_ux1y.end(), 0);
          for (int l = 0; l < n; ++l)
            ++c_ux1y[(useq[l] * nx1 + q1[l]) * ny + yseq[l]];
          if (strongly_typical(c_ux1y, p_ux1y, n, config.eps))
            cand1.emplace_back(a, ap);
        }
      if (cand1.empty()) continue;
      cand2.clear();
      for (long b = 0; b < book.m2; ++b)
        for (long bp = 0; bp < book.m2p; ++bp) {
          const uint8_t* q2 =
              &book.x2[((std::size_t(w) * book.m2 + b) * book.m2p + bp) * n];
          std::fill(c_ux2y.begin(), c_ux2y.end(), 0);
          for (int l = 0; l < n; ++l)
            ++c_ux2y[(useq[l] * nx2 + q2[l]) * ny + yseq[l]];
          if (strongly_typical(c_ux2y, p_ux2y, n, config.eps))
            cand2.emplace_back(b, bp);
        }
      for (auto [a, ap] : cand1)
        for (auto [b, bp] : cand2) {
          const uint8_t* q1 =
              &book.x1[((std::size_t(w) * book.m1 + a) * book.m1p + ap) * n];
          const uint8_t* q2 =
              &book.x2[((std::size_t(w) * book.m2 + b) * book.m2p + bp) * n];
          std::fill(c_full.begin(), c_full.end(), 0);
          for (int l = 0; l < n; ++l)
            ++c_full[((useq[l] * nx1 + q1[l]) * nx2 + q2[l]) * ny + yseq[l]];
          if (!strongly_typical(c_full, p_full, n, config.eps)) continue;
          ++decoded;
          if (w == tw && a == ta && b == tb) {
            hit_self = true;
          } else if (w != tw) {
            wrong[0] = true;
          } else if (a != ta && b != tb) {
            wrong[1] = true;
          } else if (a == ta && b != tb) {
            wrong[2] = true;
          } else {
            wrong[3] = true;
          }
        }
    }
    bool ok = hit_self && decoded == 1;
    if (!ok) ++errors;
    for (int k = 0; k < 4; ++k)
      if (wrong[k]) ++e2[k];
  }

  if (config.trials > 0) {
    double t = double(config.trials);
    out.error_estimate = errors / t;
    out.e1_rate = e1 / t;
    for (int k = 0; k < 4; ++k) out.e2_rate[k] = e2[k] / t;
    const double z = 1.959963985;
    double p = out.error_estimate;
    out.wilson_radius = z *
                        std::sqrt(p * (1.0 - p) / t + z * z / (4.0 * t * t)) /
                        (1.0 + z * z / t);
  }
  return out;
}

SimConfig SimConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto jj = j.at("joint");
  Joint3PMF joint(jj.at("u_size").get<std::size_t>(),
                  jj.at("x1_size").get<std::size_t>(),
                  jj.at("x2_size").get<std::size_t>(),
                  jj.at("mass").get<std::vector<double>>());
  MacChannel mac = MacChannel::from_json(j.at("channel").dump());
  SimConfig config(std::move(joint), std::move(mac));
  config.n = j.at("n").get<int>();
  auto jr = j.at("rates");
  config.rates.r12 = jr.value("r12", 0.0);
  config.rates.r1 = jr.value("r1", 0.0);
  config.rates.r2 = jr.value("r2", 0.0);
  config.rates.r1p = jr.value("r1p", 0.0);
  config.rates.r2p = jr.value("r2p", 0.0);
  config.eps = j.value("epsilon", 0.2);
  config.trials = j.value("trials", 1000L);
  config.seed = j.value("seed", uint64_t(1));
  if (j.contains("budget")) config.budget = j.at("budget").get<std::size_t>();
  return config;
}

std::string SimConfig::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["rates"] = {{"r12", rates.r12}, {"r1", rates.r1}, {"r2", rates.r2},
                {"r1p", rates.r1p}, {"r2p", rates.r2p}};
  j["joint"] = {{"u_size", joint.nu()},
                {"x1_size", joint.nx1()},
                {"x2_size", joint.nx2()},
                {"mass", joint.mass()}};
  j["channel"] = nlohmann::json::parse(mac.to_json());
  j["epsilon"] = eps;
  j["trials"] = trials;
  j["seed"] = seed;
  j["budget"] = budget;
  return j.dump(2);
}

std::string SimOutcome::to_json(const SimConfig& config) const {
  nlohmann::json j;
  j["n"] = config.n;
  j["epsilon"] = config.eps;
  j["typicality"] = "strong";
  j["seed"] = config.seed;
  j["trials"] = trials;
  j["error_estimate"] = error_estimate;
  j["covering_failure_rate"] = covering_failure_rate;
  j["e1_rate"] = e1_rate;
  j["e2_rates"] = {e2_rate[0], e2_rate[1], e2_rate[2], e2_rate[3]};
  j["wilson_radius"] = wilson_radius;
  return j.dump(2);
}

}  // namespace diamond

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "diamond/adder.hpp"
#include "diamond/dmc.hpp"
#include "diamond/entropy.hpp"
#include "diamond/fme.hpp"
#include "diamond/gaussian.hpp"
#include "diamond/mac.hpp"
#include "diamond/marton.hpp"
#include "diamond/opt.hpp"

namespace {

using namespace diamond;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("DIAMOND_THREADS")) {
    long v = std::atol(env);
    if (v >= 1 && (unsigned long)v < n) n = unsigned(v);
  }
  return int(n);
}

// Runs fn(i) for i in [0, count) on the worker pool; results must be
// written by index so the output order is independent of scheduling.
void parallel_for(long count, const std::function<void(long)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto drain = [&] {
    for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

std::string num9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

const char* kCsvHeader =
    "c1,c2,lower_jg,lower_best,upper_cutset,upper_cor,upper_thm3,"
    "capacity_if_known,regime,binding_constraint\n";

struct Row {
  double c1, c2;
  double lower_jg, lower_best, cutset, cor, thm3;
  bool has_capacity = false;
  double capacity = 0.0;
  std::string regime, binding;

  std::string csv() const {
    std::string line = num9(c1) + "," + num9(c2) + "," + num9(lower_jg) + "," +
                       num9(lower_best) + "," + num9(cutset) + "," + num9(cor) +
                       "," + num9(thm3) + ",";
    if (has_capacity) line += num9(capacity);
    line += "," + regime + "," + binding + "\n";
    return line;
  }
};

int write_rows(const std::vector<Row>& rows, const std::string& path) {
  for (const Row& r : rows) {
    double up = std::min({r.cutset, r.cor, r.thm3});
    if (r.lower_best > up + 1e-6) {
      std::cerr << "sandwich violation at c1=" << r.c1 << " c2=" << r.c2
                << ": lower " << r.lower_best << " > upper " << up << "\n";
      return kExitVerifyFail;
    }
  }
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output path: " << path << "\n";
      return kExitUsage;
    }
    out = &file;
  }
  *out << kCsvHeader;
  for (const Row& r : rows) *out << r.csv();
  return kExitOk;
}

long grid_size(double lo, double hi, double step) {
  if (step <= 0.0 || hi < lo - 1e-12) return -1;
  return std::lround((hi - lo) / step) + 1;
}

Bits gauss_cutset(const GaussianNet& net) {
  auto at = [&](double rho) {
    double omr = 1.0 - rho * rho;
    return std::min({net.c1 + net.c2,
                     net.c1 + 0.5 * std::log2(1.0 + net.p2 * omr),
                     net.c2 + 0.5 * std::log2(1.0 + net.p1 * omr),
                     0.5 * std::log2(1.0 + net.p1 + net.p2 +
                                     2.0 * rho * std::sqrt(net.p1 * net.p2))});
  };
  double rho = golden_max(at, 0.0, 1.0, 1e-10);
  return std::max({at(rho), at(0.0), at(1.0)});
}

int cmd_sweep_gaussian(double power, double c_min, double c_max, double step,
                       double c2, bool has_c2, const std::string& path) {
  long count = grid_size(c_min, c_max, step);
  if (count <= 0) {
    std::cerr << "invalid sweep range\n";
    return kExitUsage;
  }
  std::vector<Row> rows(count);
  parallel_for(count, [&](long i) {
    Row& r = rows[i];
    r.c1 = c_min + double(i) * step;
    r.c2 = has_c2 ? c2 : r.c1;
    GaussianNet net{power, power, r.c1, r.c2};
    BoundReport jg = gauss_lower_best(net, GaussLowerMode::kJointlyGaussian);
    BoundReport best = gauss_lower_best(net);
    BoundReport cor = gauss_upper_cor1(net);
    BoundReport thm3 = gauss_upper_thm3(net);
    r.lower_jg = jg.value;
    r.lower_best = std::max(jg.value, best.value);
    r.cutset = gauss_cutset(net);
    r.cor = cor.value;
    r.thm3 = thm3.value;
    GaussRegime regime = gauss_regime(net);
    r.regime = regime.label;
    if (regime.matching) {
      r.has_capacity = true;
      r.capacity = r.lower_best;
    }
    r.binding = thm3.binding.empty() ? "" : thm3.binding.front();
  });
  return write_rows(rows, path);
}

int cmd_sweep_adder(double c_min, double c_max, double step, double c2,
                    bool has_c2, const std::string& path) {
  long count = grid_size(c_min, c_max, step);
  if (count <= 0) {
    std::cerr << "invalid sweep range\n";
    return kExitUsage;
  }
  std::vector<Row> rows(count);
  parallel_for(count, [&](long i) {
    Row& r = rows[i];
    r.c1 = c_min + double(i) * step;
    r.c2 = has_c2 ? c2 : r.c1;
    AdderNet net{r.c1, r.c2};
    BoundReport cap = adder_capacity(net);
    BoundReport cor = adder_upper_cor2(net);
    BoundReport thm3 = adder_upper_thm3(net);
    r.lower_jg = adder_lower(net, 0.5).value;  // independent-input baseline
    r.lower_best = cap.value;
    r.cutset = std::min({r.c1 + r.c2, r.c1 + 1.0, r.c2 + 1.0, std::log2(3.0)});
    r.cor = cor.value;
    r.thm3 = thm3.value;
    r.has_capacity = true;
    r.capacity = cap.value;
    r.regime = cap.regime;
    r.binding = cap.binding.empty() ? "" : cap.binding.front();
  });
  return write_rows(rows, path);
}

int cmd_bound_dmc(const std::string& channel_path, double c1, double c2) {
  std::ifstream in(channel_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read channel file: " << channel_path << "\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  MacChannel mac = MacChannel::from_json(buf.str());
  BitPipes pipes{c1, c2};
  std::size_t nu = std::min(mac.nx1() * mac.nx2() + 3, mac.ny() + 4);

  BoundReport lower = lower_bound_optimize(mac, pipes, nu);
  BoundReport cut = cutset_bound(mac, pipes);
  BoundReport thm2 = upper_bound_thm2(mac, pipes, mac.ny());
  BoundReport thm3 =
      upper_bound_thm3_loose(mac, pipes, AuxChannelU::identity(mac.ny()));

  auto dump = [](const BoundReport& rep) {
    nlohmann::json j;
    j["value"] = rep.value;
    for (auto& [k, v] : rep.constraints) j["constraints"][k] = v;
    j["binding"] = rep.binding;
    for (auto& [k, v] : rep.witness) j["witness"][k] = v;
    if (!rep.regime.empty()) j["regime"] = rep.regime;
    return j;
  };
  nlohmann::json out;
  out["c1"] = c1;
  out["c2"] = c2;
  out["lower"] = dump(lower);
  out["cutset"] = dump(cut);
  out["upper_saddle"] = dump(thm2);
  out["upper_fixed_aux"] = dump(thm3);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// ---- verification suites ----

struct Check {
  std::string name;
  bool pass;
  double detail;
};

void suite_identities(std::vector<Check>& checks) {
  SplitMix rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::size_t nu = 1 + rng.next() % 3, n1 = 2 + rng.next() % 2,
                n2 = 2 + rng.next() % 2;
    std::vector<double> mass(nu * n1 * n2);
    double sum = 0.0;
    for (double& m : mass) sum += (m = rng.unit() + 1e-4);
    for (double& m : mass) m /= sum;
    Joint3PMF joint(nu, n1, n2, mass);
    worst = std::max(worst, mi_identity_residual(joint));
  }
  checks.push_back({"identity-residual-100", worst <= 1e-10, worst});
}

void suite_gaussian(std::vector<Check>& checks) {
  // regime boundaries for P=1 as pipe capacities (published to 4 digits)
  GaussConstants k = gauss_constants({1.0, 1.0, 0.5, 0.5});
  auto edge = [](double r) {
    return 0.25 * std::log2((1.0 + 2.0 * (1.0 + r)) / (1.0 - r * r));
  };
  auto near = [&](const char* name, double got, double want) {
    checks.push_back({name, std::abs(got - want) <= 5e-4, got});
  };
  near("threshold-coop-onset", 0.25 * std::log2(3.0), 0.3962);
  near("threshold-rho1", edge(k.rho1), 0.4807);
  near("threshold-rho2", edge(k.rho2), 0.6942);
  near("threshold-full-coop", 0.5 * std::log2(5.0), 1.1610);
  // closed-form vs bisected implicit constraint
  double worst = 0.0;
  GaussianNet net{1.0, 1.0, 0.45, 0.45};
  for (double rho : {0.1, 0.3, 0.5, 0.7})
    for (double n : {0.0, 0.2, 1.0, 3.0})
      worst = std::max(worst,
                       std::abs(gauss_thm3_fixed_point(net, rho, n) -
                                gauss_thm3_fixed_point_bisect(net, rho, n)));
  checks.push_back({"fixed-point-cross-check", worst <= 1e-9, worst});
}

void suite_adder(std::vector<Check>& checks) {
  auto near = [&](const char* name, double got, double want, double tol) {
    checks.push_back({name, std::abs(got - want) <= tol, got});
  };
  near("capacity-0.7", adder_capacity({0.7, 0.7}).value, 1.4, 1e-9);
  near("capacity-0.9", adder_capacity({0.9, 0.9}).value, std::log2(3.0), 1e-9);
  near("capacity-0.8", adder_capacity({0.8, 0.8}).value, 1.570950594454669,
       1e-9);
  near("capacity-asym", adder_capacity({0.3, 1.5}).value, 1.3, 1e-9);
  double gap = adder_upper_cor2({0.78, 0.78}).value -
               adder_capacity({0.78, 0.78}).value;
  checks.push_back({"cor2-gap-0.78", gap >= 1.5e-3 && gap <= 2.5e-3, gap});
  near("thm3-0.8", adder_upper_thm3({0.8, 0.8}).value, 1.570950594454669,
       1e-6);
}

void suite_ordering(std::vector<Check>& checks) {
  MacChannel mac = MacChannel::binary_adder();
  bool ok = true;
  double worst = 0.0;
  for (double c : {0.6, 0.8, 1.2}) {
    AdderNet net{c, c};
    double cut = std::min({2.0 * c, c + 1.0, std::log2(3.0)});
    double cor = adder_upper_cor2(net).value;
    double thm3 = adder_upper_thm3(net).value;
    double low = adder_capacity(net).value;
    double slack =
        std::min({cut - cor, cor - thm3 + 1e-9, thm3 - low + 1e-9});
    worst = std::min(worst, slack);
    ok = ok && thm3 <= cor + 1e-9 && cor <= cut + 1e-9 && low <= thm3 + 1e-9;
  }
  checks.push_back({"adder-chain", ok, worst});
  BitPipes pipes{0.7, 0.7};
  BoundReport thm2 = upper_bound_thm2(mac, pipes, 2);
  BoundReport low = lower_bound_optimize(mac, pipes, 2);
  double safe = thm2.value;
  for (auto& [k, v] : thm2.constraints)
    if (k == "safe") safe = v;
  BoundReport cut = cutset_bound(mac, pipes);
  checks.push_back({"dmc-chain", low.value <= safe + 1e-9 &&
                                     safe <= cut.value + 1e-6,
                    safe - low.value});
}

void suite_gerber(std::vector<Check>& checks) {
  double fmin = 1e9;
  for (double y = 0.01; y < 0.995; y += 0.02)
    for (double z = 0.01; z < 0.495; z += 0.01)
      fmin = std::min(fmin, gerber_kernels(0.0, y, z).f);
  checks.push_back({"f-grid-nonneg", fmin >= -1e-9, fmin});
  bool mono = true;
  for (double y : {0.1, 0.3, 0.6})
    for (double z : {0.05, 0.2, 0.4}) {
      double prev = gerber_kernels(0.0, y, z).t;
      for (int i = 1; i <= 24; ++i) {  // stay clear of the alpha=1/2 pole
        double t = gerber_kernels(i * 0.02, y, z).t;
        if (t < prev - 1e-12) mono = false;
        prev = t;
      }
    }
  checks.push_back({"t-monotone-alpha", mono, 0.0});
  SplitMix rng(77);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    double y = rng.unit() * 0.98 + 0.01;
    double alpha = rng.unit() * 0.49;
    double hy = h2(y);
    double xa = hy + rng.unit() * (1.0 - y);
    double xb = hy + rng.unit() * (1.0 - y);
    double mid = gerber_g(0.5 * (xa + xb), y, alpha);
    double chord = 0.5 * (gerber_g(xa, y, alpha) + gerber_g(xb, y, alpha));
    worst = std::max(worst, mid - chord);
  }
  checks.push_back({"lemma-convexity-200", worst <= 1e-9, worst});
}

void suite_fme(std::vector<Check>& checks) {
  SplitMix rng(4242);
  double worst = 0.0;
  bool flips = true;
  for (int k = 0; k < 50; ++k) {
    std::size_t nu = 1 + rng.next() % 2;
    std::vector<double> mass(nu * 4);
    double sum = 0.0;
    for (double& m : mass) sum += (m = rng.unit() + 1e-3);
    for (double& m : mass) m /= sum;
    Joint3PMF joint(nu, 2, 2, mass);
    MacChannel mac = MacChannel::binary_adder();
    BitPipes pipes{0.2 + rng.unit() * 1.3, 0.2 + rng.unit() * 1.3};
    double value = lower_region_value(joint, mac, pipes).value;
    double lo = 0.0, hi = pipes.c1 + pipes.c2 + 2.0;
    for (int it = 0; it < 40; ++it) {
      double mid = 0.5 * (lo + hi);
      (pre_fme_feasible(mid, joint, mac, pipes).feasible ? lo : hi) = mid;
    }
    worst = std::max(worst, std::abs(lo - value));
    flips = flips && pre_fme_feasible(value - 1e-6, joint, mac, pipes).feasible;
    if (value + 1e-6 < pipes.c1 + pipes.c2 + 2.0)
      flips = flips &&
              !pre_fme_feasible(value + 1e-6, joint, mac, pipes).feasible;
  }
  checks.push_back({"fme-vs-region-50", worst <= 1e-8, worst});
  checks.push_back({"fme-feasibility-flip", flips, 0.0});
}

int cmd_verify(const std::string& suite) {
  std::vector<Check> checks;
  if (suite == "identities")
    suite_identities(checks);
  else if (suite == "gaussian")
    suite_gaussian(checks);
  else if (suite == "adder")
    suite_adder(checks);
  else if (suite == "ordering")
    suite_ordering(checks);
  else if (suite == "gerber")
    suite_gerber(checks);
  else if (suite == "fme")
    suite_fme(checks);
  else {
    std::cerr << "unknown suite: " << suite << "\n";
    return kExitUsage;
  }
  bool all = true;
  nlohmann::json j;
  j["suite"] = suite;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks) {
    all = all && c.pass;
    j["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["passed"] = all;
  std::cout << j.dump(2) << "\n";
  return all ? kExitOk : kExitVerifyFail;
}

int cmd_simulate(const std::string& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read config file: " << config_path << "\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  SimConfig config = SimConfig::from_json(buf.str());
  SimOutcome outcome = run_trials(config);
  std::cout << outcome.to_json(config) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diamond network capacity bounds"};
  app.require_subcommand(1);

  double power = 1.0, c_min = 0.0, c_max = 1.0, step = 0.1, c2 = 0.0;
  double c1_arg = 0.0, c2_arg = 0.0;
  std::string output, channel_path, suite, config_path;

  auto* sg = app.add_subcommand("sweep-gaussian", "gaussian network sweep");
  sg->add_option("--power", power)->required();
  sg->add_option("--c-min", c_min)->required();
  sg->add_option("--c-max", c_max)->required();
  sg->add_option("--step", step)->required();
  auto* sg_c2 = sg->add_option("--c2", c2);
  sg->add_option("--output", output);

  auto* sa = app.add_subcommand("sweep-adder", "binary adder sweep");
  sa->add_option("--c-min", c_min)->required();
  sa->add_option("--c-max", c_max)->required();
  sa->add_option("--step", step)->required();
  auto* sa_c2 = sa->add_option("--c2", c2);
  sa->add_option("--output", output);

  auto* bd = app.add_subcommand("bound-dmc", "bounds for a channel file");
  bd->add_option("--channel", channel_path)->required();
  bd->add_option("--c1", c1_arg)->required();
  bd->add_option("--c2", c2_arg)->required();

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("--suite", suite)->required();

  auto* sm = app.add_subcommand("simulate", "run the coding-scheme simulator");
  sm->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sg->parsed())
      return cmd_sweep_gaussian(power, c_min, c_max, step, c2, !sg_c2->empty(),
                                output);
    if (sa->parsed())
      return cmd_sweep_adder(c_min, c_max, step, c2, !sa_c2->empty(), output);
    if (bd->parsed()) return cmd_bound_dmc(channel_path, c1_arg, c2_arg);
    if (vf->parsed()) return cmd_verify(suite);
    if (sm->parsed()) return cmd_simulate(config_path);
  } catch (const diamond::BudgetError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: allocation failed\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

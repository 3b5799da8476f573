// tsketch — command-line front end for the Toeplitz sketching library.
//
// Subcommands:
//   gen        generate a reproducible synthetic instance (JSON)
//   recover    run the two-stage sampled recovery on an instance/matrix
//   baseline   dense best-rank-k error (full-access oracle)
//   verify     run the structural invariant suites, emit pass/fail JSON
//   levscores  universal leverage bounds + domination report
//   bench      sweep instances and emit a CSV of query/error trade-offs
//
// Exit codes: 0 success (and --help); 1 runtime error; 2 bad flags;
// 3 infeasible exhaustive search (explosion guard).

#include <CLI11.hpp>
#include <json.hpp>

#include <tsketch/errors.hpp>
#include <tsketch/generate.hpp>
#include <tsketch/json_io.hpp>
#include <tsketch/leverage.hpp>
#include <tsketch/recovery.hpp>
#include <tsketch/rng.hpp>
#include <tsketch/spectral.hpp>
#include <tsketch/structure.hpp>
#include <tsketch/toeplitz.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
using namespace tsketch;

/// Thrown for flag values that parse as strings but fail semantic checks.
struct BadFlagValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<int> parse_d_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw BadFlagValue("--d: '" + item + "' is not an integer");
    }
    if (pos != item.size() || value < 2)
      throw BadFlagValue("--d: '" + item + "' is not an integer >= 2");
    out.push_back(value);
  }
  if (out.empty()) throw BadFlagValue("--d: empty list");
  return out;
}

int thread_cap(int jobs) {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("TSKETCH_THREADS")) {
    try {
      cap = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      // Unparseable values fall back to hardware concurrency.
    }
  }
  return std::min(cap, std::max(1, jobs));
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out_path, j);
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::FILE* f = std::fopen(out_path.c_str(), "w");
    if (f == nullptr) throw Error("cannot open for writing: " + out_path);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
}

RecoveryMode mode_from_string(const std::string& mode) {
  return mode == "greedy" ? RecoveryMode::kGreedy : RecoveryMode::kExhaustive;
}

// ---------------------------------------------------------------------------
// gen

struct GenOpts {
  std::string family = "circulant";
  std::string d_list = "64";
  int k = 2;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenOpts& o) {
  const std::vector<int> ds = parse_d_list(o.d_list);
  if (ds.size() != 1) throw BadFlagValue("gen expects a single --d value");
  InstanceSpec spec;
  spec.family = family_from_string(o.family);
  spec.d = ds[0];
  spec.k = o.k;
  spec.sigma = o.sigma;
  spec.seed = o.seed;
  emit_json(instance_to_json(gen_instance(spec)), o.out);
  return 0;
}

// ---------------------------------------------------------------------------
// recover

struct RecoverOpts {
  std::string in, out;
  int k = 1;
  double eps = 0.5;
  double delta = 1e-3;
  std::uint64_t seed = 0;
  std::string mode = "exhaustive";
  int m1 = 0, m2 = 0, r1 = 0, r2 = 0;
  double gamma = 0.0;
  bool project_psd = false;
};

int run_recover(const RecoverOpts& o) {
  const SymToeplitz T = matrix_from_any_json(load_json_file(o.in));
  RecoveryConfig cfg;
  cfg.k = o.k;
  cfg.eps = o.eps;
  cfg.delta = o.delta;
  cfg.mode = mode_from_string(o.mode);
  cfg.m1 = o.m1;
  cfg.m2 = o.m2;
  cfg.r1 = o.r1;
  cfg.r2 = o.r2;
  cfg.gamma = o.gamma;
  cfg.seed = o.seed;
  cfg.project_psd = o.project_psd;
  emit_json(recovered_to_json(recover(T, cfg)), o.out);
  return 0;
}

// ---------------------------------------------------------------------------
// baseline

struct BaselineOpts {
  std::string in, out;
  int k = 1;
};

int run_baseline(const BaselineOpts& o) {
  const SymToeplitz T = matrix_from_any_json(load_json_file(o.in));
  const RankKApprox approx = best_rank_k(T, o.k);
  json j;
  j["d"] = T.d;
  j["k"] = o.k;
  j["error"] = approx.error;
  emit_json(j, o.out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::uint64_t seed = 0;
  std::string out;
};

json suite_norm_identity(std::uint64_t base) {
  int ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(derive_seed(base + 500, static_cast<std::uint64_t>(t)));
    const int d = 2 + static_cast<int>(rng.uniform_index(127));
    Eigen::VectorXd c1(d), c2(d);
    for (int i = 0; i < d; ++i) {
      c1(i) = rng.gaussian();
      c2(i) = rng.gaussian();
    }
    const SymToeplitz A(d, c1), B(d, c2);
    const double direct = (A.dense() - B.dense()).norm();
    const double via = frobenius_via_weighted_column(A, B);
    const double rel = std::abs(direct - via) / std::max(direct, 1e-300);
    worst = std::max(worst, rel);
    if (rel <= 1e-10) ++ok;
  }
  return {{"name", "norm_identity"}, {"pass", ok == 20}, {"ok", ok}, {"trials", 20},
          {"worst_rel", worst}};
}

json suite_trace_identity(std::uint64_t base) {
  int ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(derive_seed(base + 501, static_cast<std::uint64_t>(t)));
    const int d = 4 + static_cast<int>(rng.uniform_index(125));
    const int s = 1 + static_cast<int>(rng.uniform_index(6));
    std::vector<double> freqs;
    while (static_cast<int>(freqs.size()) < s) {
      const double f = rng.uniform(1e-3, 0.5 - 1e-3);
      bool distinct = true;
      for (double g : freqs) distinct = distinct && std::abs(f - g) > 1e-6;
      if (distinct) freqs.push_back(f);
    }
    Eigen::VectorXd w(s);
    for (int i = 0; i < s; ++i) w(i) = rng.uniform(0.5, 1.5);
    const FourierFactor factor(d, FrequencySet(freqs), w);
    const SymToeplitz T = vandermonde_synthesize(factor);
    const double expected = 2.0 * d * w.sum();
    const double rel = std::abs(T.trace() - expected) / T.trace();
    worst = std::max(worst, rel);
    if (rel <= 1e-10) ++ok;
  }
  return {{"name", "trace_identity"}, {"pass", ok == 20}, {"ok", ok}, {"trials", 20},
          {"worst_rel", worst}};
}

json suite_leverage_domination(std::uint64_t base) {
  int ok = 0;
  double worst_gap = -1.0, worst_constant = 0.0;
  for (int t = 0; t < 30; ++t) {
    Rng rng(derive_seed(base + 502, static_cast<std::uint64_t>(t)));
    const int d = (t % 2 == 0) ? 64 : 256;
    const int s = 1 + t % 4;
    const int r = 2 * s;
    const WeightVector wv = weight_vector(d);
    std::vector<double> freqs;
    while (static_cast<int>(freqs.size()) < s) {
      const double f = rng.uniform(1e-4, 0.5 - 1e-4);
      bool distinct = true;
      for (double g : freqs) distinct = distinct && std::abs(f - g) > 1e-7;
      if (distinct) freqs.push_back(f);
    }
    Eigen::MatrixXd A(d, r);
    for (int j = 0; j < s; ++j)
      for (int row = 0; row < d; ++row) {
        const double ang = 2.0 * M_PI * freqs[static_cast<std::size_t>(j)] * row;
        A(row, 2 * j) = wv.w(row) * std::cos(ang);
        A(row, 2 * j + 1) = wv.w(row) * std::sin(ang);
      }
    const Eigen::VectorXd tau = exact_leverage_scores(A);
    const LevBounds bounds = universal_tau_bounds(d, r);
    const double gap = (tau - bounds.tau).maxCoeff();
    const double constant =
        bounds.total / (r * std::log2(r + 1.0) * std::log2(static_cast<double>(d)));
    worst_gap = std::max(worst_gap, gap);
    worst_constant = std::max(worst_constant, constant);
    if (gap <= 1e-9 && constant <= 64.0) ++ok;
  }
  return {{"name", "leverage_domination"}, {"pass", ok == 30}, {"ok", ok}, {"trials", 30},
          {"worst_gap", worst_gap}, {"worst_constant", worst_constant}};
}

json suite_unbiasedness(std::uint64_t base) {
  const int d = 64;
  Rng xr(derive_seed(base + 700, 0));
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x(i) = xr.gaussian();
  const double truth = x.squaredNorm();
  const LevBounds bounds = universal_tau_bounds(d, 8);
  double acc = 0.0;
  const int plans = 10000;
  for (int t = 0; t < plans; ++t) {
    const SamplingPlan plan =
        draw_sampling_plan(bounds, 16, derive_seed(base + 3000, static_cast<std::uint64_t>(t)));
    acc += apply_sampling(plan, x).squaredNorm();
  }
  const double rel = std::abs(acc / plans - truth) / truth;
  return {{"name", "unbiasedness"}, {"pass", rel <= 0.02}, {"plans", plans},
          {"rel_deviation", rel}};
}

json suite_embedding(std::uint64_t base) {
  const int d = 256, s = 4, r = 8;
  const double beta = 0.5, eta = 0.01;
  const LevBounds bounds = universal_tau_bounds(d, r);
  const int m =
      static_cast<int>(std::ceil(bounds.total * std::log(1.0 / eta) / (beta * beta)));
  const WeightVector wv = weight_vector(d);
  int ok = 0;
  double worst_lo = 10.0, worst_hi = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(derive_seed(base + 4242, static_cast<std::uint64_t>(t)));
    std::vector<double> freqs;
    while (static_cast<int>(freqs.size()) < s) {
      const double f = rng.uniform(1e-3, 0.5 - 1e-3);
      bool distinct = true;
      for (double g : freqs) distinct = distinct && std::abs(f - g) > 1e-6;
      if (distinct) freqs.push_back(f);
    }
    Eigen::MatrixXd A(d, r);
    for (int j = 0; j < s; ++j)
      for (int row = 0; row < d; ++row) {
        const double ang = 2.0 * M_PI * freqs[static_cast<std::size_t>(j)] * row;
        A(row, 2 * j) = wv.w(row) * std::cos(ang);
        A(row, 2 * j + 1) = wv.w(row) * std::sin(ang);
      }
    const SamplingPlan plan =
        draw_sampling_plan(bounds, m, derive_seed(base + 777, static_cast<std::uint64_t>(t)));
    const EmbeddingCheck chk = subspace_embedding_check(plan, A, beta);
    if (chk.pass) ++ok;
    worst_lo = std::min(worst_lo, chk.worst_low);
    worst_hi = std::max(worst_hi, chk.worst_high);
  }
  return {{"name", "embedding"}, {"pass", ok == 20}, {"ok", ok}, {"trials", 20}, {"m", m},
          {"worst_low", worst_lo}, {"worst_high", worst_hi}};
}

json suite_gershgorin(std::uint64_t base) {
  int ok = 0;
  double worst_slack = 1e300;
  for (int t = 0; t < 30; ++t) {
    Rng rng(derive_seed(base + 600, static_cast<std::uint64_t>(t)));
    const int nb = 2 + static_cast<int>(rng.uniform_index(3));
    std::vector<int> sizes;
    int n = 0;
    for (int b = 0; b < nb; ++b) {
      const int sz = 2 + static_cast<int>(rng.uniform_index(5));
      sizes.push_back(sz);
      n += sz;
    }
    Eigen::MatrixXcd B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
    const Eigen::MatrixXcd A = 0.5 * (B + B.adjoint());
    const double bound = block_gershgorin_bound(A, sizes);
    const double norm2 = A.jacobiSvd().singularValues()(0);
    worst_slack = std::min(worst_slack, bound - norm2);
    if (bound >= norm2 * (1.0 - 1e-12)) ++ok;
  }
  return {{"name", "gershgorin"}, {"pass", ok == 30}, {"ok", ok}, {"trials", 30},
          {"worst_slack", worst_slack}};
}

json suite_inner_product(std::uint64_t base) {
  int ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    Rng rng(derive_seed(base + 601, static_cast<std::uint64_t>(t)));
    const int d = 2 + static_cast<int>(rng.uniform_index(511));
    const double f = rng.uniform(0.0, 1.0);
    const double g = rng.uniform(0.0, 1.0);
    const double closed = inner_product_magnitude(f, g, d);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < d; ++i) {
      const double ang = 2.0 * M_PI * (g - f) * i;
      acc += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    const double direct = std::abs(acc);
    const double err = std::abs(closed - direct) / std::max(1.0, direct);
    worst = std::max(worst, err);
    if (err <= 1e-9) ++ok;
  }
  return {{"name", "inner_product"}, {"pass", ok == 200}, {"ok", ok}, {"trials", 200},
          {"worst_mixed_err", worst}};
}

json suite_bucket_eigen(std::uint64_t base) {
  int ok = 0;
  double worst_c = 0.0, worst_light = 0.0;
  for (int t = 0; t < 5; ++t) {
    InstanceSpec spec;
    spec.family = InstanceFamily::kClustered;
    spec.d = 256;
    spec.k = 1 + t % 4;
    spec.sigma = 0.0;
    spec.seed = base + 2000 + static_cast<std::uint64_t>(t);
    const GeneratedInstance inst = gen_instance(spec);
    const BucketEigenReport rep = verify_bucket_eigen_bounds(inst.truth, 16.0, 16.0);
    if (rep.pass) ++ok;
    for (const auto& row : rep.heavy)
      if (std::isfinite(row.empirical_c)) worst_c = std::max(worst_c, row.empirical_c);
    worst_light = std::max(worst_light, rep.light_ratio);
  }
  return {{"name", "bucket_eigen"}, {"pass", ok == 5}, {"ok", ok}, {"trials", 5},
          {"worst_empirical_c", worst_c}, {"worst_light_ratio", worst_light}};
}

int run_verify(const VerifyOpts& o) {
  json suites = json::array();
  suites.push_back(suite_norm_identity(o.seed));
  suites.push_back(suite_trace_identity(o.seed));
  suites.push_back(suite_leverage_domination(o.seed));
  suites.push_back(suite_unbiasedness(o.seed));
  suites.push_back(suite_embedding(o.seed));
  suites.push_back(suite_gershgorin(o.seed));
  suites.push_back(suite_inner_product(o.seed));
  suites.push_back(suite_bucket_eigen(o.seed));
  bool all = true;
  for (const auto& s : suites) all = all && s.at("pass").get<bool>();
  json j;
  j["pass"] = all;
  j["suites"] = suites;
  emit_json(j, o.out);
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// levscores

struct LevscoresOpts {
  std::string d_list = "64";
  int k = 4;
  std::uint64_t seed = 0;
  std::string out;
};

int run_levscores(const LevscoresOpts& o) {
  const std::vector<int> ds = parse_d_list(o.d_list);
  if (o.k < 1) throw BadFlagValue("--k must be >= 1");
  json reports = json::array();
  for (int d : ds) {
    const int s = o.k;
    const int r = 2 * s;
    if (r > d) throw BadFlagValue("--k too large: need 2k <= d");
    const LevBounds bounds = universal_tau_bounds(d, r);
    const WeightVector wv = weight_vector(d);
    double worst_gap = -1.0;
    const int trials = 50;
    int ok = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(o.seed + 900 + static_cast<std::uint64_t>(d),
                          static_cast<std::uint64_t>(t)));
      std::vector<double> freqs;
      while (static_cast<int>(freqs.size()) < s) {
        const double f = rng.uniform(1e-4, 0.5 - 1e-4);
        bool distinct = true;
        for (double g : freqs) distinct = distinct && std::abs(f - g) > 1e-7;
        if (distinct) freqs.push_back(f);
      }
      Eigen::MatrixXd A(d, r);
      for (int j = 0; j < s; ++j)
        for (int row = 0; row < d; ++row) {
          const double ang = 2.0 * M_PI * freqs[static_cast<std::size_t>(j)] * row;
          A(row, 2 * j) = wv.w(row) * std::cos(ang);
          A(row, 2 * j + 1) = wv.w(row) * std::sin(ang);
        }
      const double gap = (exact_leverage_scores(A) - bounds.tau).maxCoeff();
      worst_gap = std::max(worst_gap, gap);
      if (gap <= 1e-9) ++ok;
    }
    json rep = bounds_to_json(bounds);
    rep["constant"] =
        bounds.total / (r * std::log2(r + 1.0) * std::log2(static_cast<double>(d)));
    rep["domination"] = {{"trials", trials}, {"ok", ok}, {"worst_gap", worst_gap},
                         {"pass", ok == trials}};
    reports.push_back(rep);
  }
  emit_json(reports, o.out);
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOpts {
  std::string family = "circulant";
  std::string d_list = "256,1024,4096";
  int k = 2;
  double eps = 0.5;
  double delta = 1e-3;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string mode = "greedy";
  int m1 = 96, m2 = 160, r1 = 2, r2 = 4;
  double gamma = 0.0;
  std::string out;
};

struct BenchRow {
  int d = 0;
  std::int64_t distinct = 0;
  double err = 0.0, opt_err = 0.0, ratio = 0.0;
  std::int64_t wall_ms = 0;
};

// Exact rank-k error of an on-grid (circulant) factor: each frequency pair
// contributes the eigenvalue d * a_f twice.
double circulant_opt_error(const FourierFactor& truth, int k) {
  std::vector<double> eigs;
  for (int i = 0; i < truth.weights.size(); ++i) {
    eigs.push_back(truth.d * truth.weights(i));
    eigs.push_back(truth.d * truth.weights(i));
  }
  std::sort(eigs.begin(), eigs.end(), std::greater<double>());
  double acc = 0.0;
  for (std::size_t i = static_cast<std::size_t>(k); i < eigs.size(); ++i) acc += eigs[i] * eigs[i];
  return std::sqrt(acc);
}

int run_bench(const BenchOpts& o) {
  const std::vector<int> ds = parse_d_list(o.d_list);
  const InstanceFamily family = family_from_string(o.family);
  std::vector<BenchRow> rows(ds.size());
  std::atomic<std::size_t> next{0};
  const int workers = thread_cap(static_cast<int>(ds.size()));
  std::vector<std::string> errors(ds.size());

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ds.size()) return;
      try {
        InstanceSpec spec;
        spec.family = family;
        spec.d = ds[i];
        spec.k = o.k;
        spec.sigma = o.sigma;
        spec.seed = o.seed;
        const GeneratedInstance inst = gen_instance(spec);

        RecoveryConfig cfg;
        cfg.k = o.k;
        cfg.eps = o.eps;
        cfg.delta = o.delta;
        cfg.mode = mode_from_string(o.mode);
        cfg.m1 = o.m1;
        cfg.m2 = o.m2;
        cfg.r1 = o.r1;
        cfg.r2 = o.r2;
        cfg.gamma = o.gamma;
        cfg.seed = o.seed;

        const auto t0 = std::chrono::steady_clock::now();
        const RecoveredFactor rec = recover(inst.matrix, cfg);
        const auto t1 = std::chrono::steady_clock::now();

        BenchRow row;
        row.d = ds[i];
        row.distinct = rec.ledger.distinct_lags();
        row.err = evaluate_true_error(inst.matrix, rec.factor);
        row.opt_err = (family == InstanceFamily::kCirculant && o.sigma == 0.0)
                          ? circulant_opt_error(inst.truth, o.k)
                          : best_rank_k(inst.matrix, o.k).error;
        row.ratio = static_cast<double>(row.distinct) / ds[i];
        row.wall_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        rows[i] = row;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& msg : errors)
    if (!msg.empty()) throw Error("bench row failed: " + msg);

  std::string csv = "d,k,eps,mode,distinct_lags,err,opt_err,ratio,wall_ms\n";
  for (const BenchRow& row : rows) {
    csv += std::to_string(row.d) + "," + std::to_string(o.k) + "," + fmt17(o.eps) + "," +
           o.mode + "," + std::to_string(row.distinct) + "," + fmt17(row.err) + "," +
           fmt17(row.opt_err) + "," + fmt17(row.ratio) + "," + std::to_string(row.wall_ms) +
           "\n";
  }
  emit_text(csv, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsketch: structure-preserving low-rank Toeplitz fitting from sampled entries"};
  app.require_subcommand(1);

  GenOpts gen_o;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic instance (JSON)");
  gen->add_option("--family", gen_o.family, "circulant|clustered|random-vandermonde")
      ->check(CLI::IsMember({"circulant", "clustered", "random-vandermonde"}));
  gen->add_option("--d", gen_o.d_list, "dimension");
  gen->add_option("--k", gen_o.k, "target rank parameter");
  gen->add_option("--sigma", gen_o.sigma, "relative noise level");
  gen->add_option("--seed", gen_o.seed, "RNG seed");
  gen->add_option("--out", gen_o.out, "output path (default stdout)");

  RecoverOpts rec_o;
  CLI::App* rec = app.add_subcommand("recover", "Two-stage sampled recovery");
  rec->add_option("--in", rec_o.in, "instance or matrix JSON")->required();
  rec->add_option("--out", rec_o.out, "output path (default stdout)");
  rec->add_option("--k", rec_o.k, "target rank parameter");
  rec->add_option("--eps", rec_o.eps, "accuracy parameter");
  rec->add_option("--delta", rec_o.delta, "failure/accuracy parameter");
  rec->add_option("--seed", rec_o.seed, "RNG seed");
  rec->add_option("--mode", rec_o.mode, "exhaustive|greedy")
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  rec->add_option("--m1", rec_o.m1, "stage-1 sample count (0 = default formula)");
  rec->add_option("--m2", rec_o.m2, "stage-2 sample count (0 = default formula)");
  rec->add_option("--r1", rec_o.r1, "cluster-center budget (0 = default formula)");
  rec->add_option("--r2", rec_o.r2, "per-center expansion count (0 = default formula)");
  rec->add_option("--gamma", rec_o.gamma, "search-grid spacing (0 = default formula)");
  rec->add_flag("--project-psd", rec_o.project_psd, "clip negative weights and re-solve");

  BaselineOpts base_o;
  CLI::App* base = app.add_subcommand("baseline", "Dense best-rank-k error (oracle)");
  base->add_option("--in", base_o.in, "instance or matrix JSON")->required();
  base->add_option("--out", base_o.out, "output path (default stdout)");
  base->add_option("--k", base_o.k, "target rank");

  VerifyOpts ver_o;
  CLI::App* ver = app.add_subcommand("verify", "Run structural invariant suites");
  ver->add_option("--seed", ver_o.seed, "base seed offset for all suites");
  ver->add_option("--out", ver_o.out, "output path (default stdout)");

  LevscoresOpts lev_o;
  CLI::App* lev = app.add_subcommand("levscores", "Universal leverage bounds + domination");
  lev->add_option("--d", lev_o.d_list, "dimension(s), comma separated");
  lev->add_option("--k", lev_o.k, "frequency count (bounds built for r = 2k)");
  lev->add_option("--seed", lev_o.seed, "RNG seed");
  lev->add_option("--out", lev_o.out, "output path (default stdout)");

  BenchOpts ben_o;
  CLI::App* ben = app.add_subcommand("bench", "Sweep instances, emit CSV");
  ben->add_option("--family", ben_o.family, "circulant|clustered|random-vandermonde")
      ->check(CLI::IsMember({"circulant", "clustered", "random-vandermonde"}));
  ben->add_option("--d", ben_o.d_list, "dimensions, comma separated");
  ben->add_option("--k", ben_o.k, "target rank parameter");
  ben->add_option("--eps", ben_o.eps, "accuracy parameter");
  ben->add_option("--delta", ben_o.delta, "failure/accuracy parameter");
  ben->add_option("--sigma", ben_o.sigma, "relative noise level");
  ben->add_option("--seed", ben_o.seed, "RNG seed (instance and recovery)");
  ben->add_option("--mode", ben_o.mode, "exhaustive|greedy")
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  ben->add_option("--m1", ben_o.m1, "stage-1 sample count, fixed across the sweep");
  ben->add_option("--m2", ben_o.m2, "stage-2 sample count, fixed across the sweep");
  ben->add_option("--r1", ben_o.r1, "cluster-center budget");
  ben->add_option("--r2", ben_o.r2, "per-center expansion count");
  ben->add_option("--gamma", ben_o.gamma, "search-grid spacing (0 = default formula)");
  ben->add_option("--out", ben_o.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_o);
    if (rec->parsed()) return run_recover(rec_o);
    if (base->parsed()) return run_baseline(base_o);
    if (ver->parsed()) return run_verify(ver_o);
    if (lev->parsed()) return run_levscores(lev_o);
    if (ben->parsed()) return run_bench(ben_o);
  } catch (const BadFlagValue& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExplosionGuard& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

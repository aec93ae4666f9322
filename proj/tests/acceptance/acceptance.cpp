#include "segscan/cli.hpp"
#include "segscan/segscan.hpp"
#include "support/oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace segscan;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

// AC1: 200 random instances, T <= 14, d <= 2, costs {L2, rbf}, m, j in {1, 2}.
Verdict exact_solvers() {
  Verdict v;
  const auto start = Clock::now();
  Rng rng(0xAC1);
  int dynp_checks = 0;
  int pelt_checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(13));
    const Index dims = 1 + static_cast<Index>(rng.below(2));
    const Signal y = oracle::random_signal(rng, n, dims);
    const FittedCost fitted = fit(trial % 2 == 0 ? CostSpec::l2() : CostSpec::rbf(), y);
    const SearchConfig cfg{.min_size = 1 + static_cast<Index>(rng.below(2)),
                           .jump = 1 + static_cast<Index>(rng.below(2))};
    const std::string where = "trial " + std::to_string(trial);
    const Index most = admissible_grid(fitted, cfg).max_changes();

    DynpEngine engine;
    for (Index k = 0; k <= 3; ++k) {
      const auto best = oracle::brute_force(fitted, cfg.min_size, cfg.jump, k);
      if (!best.found) {
        v.require(k > most, where + ": enumeration empty at K=" + std::to_string(k));
        bool thrown = false;
        try {
          engine.solve(fitted, k, cfg);
        } catch (const Error& e) {
          thrown = e.kind() == ErrorKind::Infeasible;
        }
        v.require(thrown, where + ": expected Infeasible");
        continue;
      }
      const DetectionResult r = engine.solve(fitted, k, cfg);
      v.require(r.bkps.ends() == best.ends, where + ": dynp ends differ at K=" + std::to_string(k));
      v.require(r.contrast == best.value, where + ": dynp value differs");
      ++dynp_checks;
    }
    for (double beta : {0.1, 1.0, 10.0}) {
      const auto best = oracle::brute_force(fitted, cfg.min_size, cfg.jump, -1, beta);
      if (!best.found) continue;
      const DetectionResult r = pelt(fitted, beta, cfg);
      v.require(std::abs(penalized_objective(r, beta) - best.value) <= 1e-9,
                where + ": pelt objective differs");
      ++pelt_checks;
    }
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
  if (v.pass) {
    v.detail = std::to_string(dynp_checks) + " dynp and " + std::to_string(pelt_checks) +
               " pelt comparisons, " + std::to_string(elapsed) + " s";
  }
  return v;
}

// AC2: 1,000 random (a,b) queries per family against direct evaluation.
Verdict cost_formulas() {
  Verdict v;
  Rng rng(0xAC2);
  const Index n = 120;
  const Signal y = oracle::random_signal(rng, n, 3);
  const std::vector<CostSpec> specs = {CostSpec::l2(),          CostSpec::normal(),
                                       CostSpec::linear(),      CostSpec::autoregressive(2),
                                       CostSpec::rbf(),         CostSpec::kernel_linear(),
                                       CostSpec::mahalanobis()};
  int queries = 0;
  for (const CostSpec& spec : specs) {
    const FittedCost fitted = fit(spec, y);
    const Index m = fitted.min_seg_len();
    for (int q = 0; q < 1000; ++q) {
      const Index a = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - m + 1)));
      const Index b = a + m + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - a - m + 1)));
      const double fast = fitted.cost(a, b);
      const double direct = oracle::direct_cost(fitted, a, b);
      v.require(oracle::close(fast, direct), std::string(family_name(spec.family)) + " c(" +
                                                 std::to_string(a) + "," + std::to_string(b) +
                                                 ") mismatch");
      ++queries;
    }
  }

  const FittedCost l2 = fit(CostSpec::l2(), y);
  const FittedCost linear_kernel = fit(CostSpec::kernel_linear(), y);
  const FittedCost identity = fit(CostSpec::mahalanobis(Eigen::MatrixXd::Identity(3, 3)), y);
  for (int q = 0; q < 1000; ++q) {
    const Index a = static_cast<Index>(rng.below(n));
    const Index b = a + 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - a)));
    const double ref = l2.cost(a, b);
    v.require(std::abs(linear_kernel.cost(a, b) - ref) <= 1e-9 * (1.0 + ref),
              "linear kernel differs from L2");
    v.require(std::abs(identity.cost(a, b) - ref) <= 1e-9 * (1.0 + ref),
              "Mahalanobis(I) differs from L2");
    queries += 2;
  }
  if (v.pass) v.detail = std::to_string(queries) + " queries";
  return v;
}

// AC3: noiseless recovery at T = 200, K = 3. The window score exists only on
// [w/2, T - w/2] and resolves changes at least w apart, so the primary
// instances use segments of at least w = 40; the exact and greedy methods are
// also held to exact recovery at the generator's default spacing.
Verdict noiseless_recovery() {
  Verdict v;
  const Index width = 40;
  const int seeds = 20;
  int window_ok = 0;
  int window_default_ok = 0;
  for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(seeds); ++seed) {
    for (Index gap : {width, Index{0}}) {
      const GeneratedSignal g = pw_constant(
          {.n_samples = 200, .n_dims = 1, .n_bkps = 3, .noise_std = 0.0, .seed = seed,
           .min_gap = gap});
      const FittedCost fitted = fit(CostSpec::l2(), g.signal);
      const std::string where = "seed " + std::to_string(seed) + " min_gap " + std::to_string(gap);
      const auto stop = StoppingRule::n_bkps(3);
      v.require(dynp(fitted, 3).bkps == g.bkps, where + ": dynp");
      v.require(pelt(fitted, 0.5).bkps == g.bkps, where + ": pelt");
      v.require(binseg(fitted, stop).bkps == g.bkps, where + ": binseg");
      v.require(bottomup(fitted, stop).bkps == g.bkps, where + ": bottomup");
      bool ok = false;
      try {
        ok = hausdorff(window(fitted, stop, {.window_width = width}).bkps, g.bkps) <= 1;
      } catch (const Error&) {
      }
      if (gap == width) {
        window_ok += ok;
      } else {
        window_default_ok += ok;
      }
    }
  }
  v.require(window_ok == seeds, "window within Hausdorff 1 on " + std::to_string(window_ok) +
                                    "/" + std::to_string(seeds) + " seeds with segments >= w");
  if (v.pass) {
    v.detail = std::to_string(seeds) + " seeds x 2 spacings exact for dynp/pelt/binseg/bottomup; " +
               "window " + std::to_string(window_ok) + "/" + std::to_string(seeds) +
               " with segments >= w, " + std::to_string(window_default_ok) + "/" +
               std::to_string(seeds) + " at default spacing (informational)";
  }
  return v;
}

// AC4: approximation dominance at equal K and monotone V*(K).
Verdict dominance() {
  Verdict v;
  Rng rng(0xAC4);
  for (int trial = 0; trial < 100; ++trial) {
    const GenSpec spec{.n_samples = 80 + static_cast<Index>(rng.below(81)),
                       .n_dims = 1 + static_cast<Index>(rng.below(3)),
                       .n_bkps = 3,
                       .noise_std = 1.0,
                       .seed = rng.next_u64()};
    const GeneratedSignal g = pw_constant(spec);
    const FittedCost fitted = fit(trial % 4 == 3 ? CostSpec::rbf() : CostSpec::l2(), g.signal);
    const SearchConfig cfg{.min_size = 1 + static_cast<Index>(rng.below(3)),
                           .jump = 1 + static_cast<Index>(rng.below(3)),
                           .window_width = 16};
    const std::string where = "trial " + std::to_string(trial);
    DynpEngine engine;
    double previous = std::numeric_limits<double>::infinity();
    for (Index k = 0; k <= 5; ++k) {
      const double value = engine.solve(fitted, k, cfg).contrast;
      v.require(value <= previous + 1e-9, where + ": V*(K) increased at K=" + std::to_string(k));
      previous = value;
    }
    const double optimum = engine.solve(fitted, 3, cfg).contrast;
    const auto stop = StoppingRule::n_bkps(3);
    v.require(binseg(fitted, stop, cfg).contrast >= optimum - 1e-9, where + ": binseg below dynp");
    v.require(bottomup(fitted, stop, cfg).contrast >= optimum - 1e-9,
              where + ": bottomup below dynp");
    v.require(window(fitted, stop, cfg).contrast >= optimum - 1e-9, where + ": window below dynp");
  }
  if (v.pass) v.detail = "100 instances";
  return v;
}

// AC5: bivariate covariance changes, rbf kernel with median-heuristic bandwidth.
Verdict covariance_reproduction() {
  Verdict v;
  const auto start = Clock::now();
  int recovered = 0;
  std::string misses;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GeneratedSignal g = pw_normal(500, 3, seed, 80);
    const FittedCost fitted = fit(CostSpec::rbf(), g.signal);
    const DetectionResult r = dynp(fitted, 3);
    const PrecisionRecall pr = precision_recall(g.bkps, r.bkps, 10);
    if (pr.precision == 1.0 && pr.recall == 1.0) {
      ++recovered;
    } else {
      misses += " " + std::to_string(seed);
    }
  }
  const double elapsed = seconds_since(start);
  v.require(recovered >= 18, std::to_string(recovered) + "/20 recovered; missed seeds" + misses);
  v.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
  if (v.pass) {
    v.detail = std::to_string(recovered) + "/20 seeds recovered, " + std::to_string(elapsed) + " s";
    if (!misses.empty()) v.detail += "; missed seeds" + misses;
  }
  return v;
}

// AC6: the retained table answers smaller and repeated K without new cost evaluations.
Verdict cache_reuse() {
  Verdict v;
  const GeneratedSignal g =
      pw_constant({.n_samples = 2000, .n_dims = 2, .n_bkps = 5, .noise_std = 1.0, .seed = 6});
  const FittedCost fitted = fit(CostSpec::l2(), g.signal);
  DynpEngine engine;

  auto t0 = Clock::now();
  const DetectionResult first = engine.solve(fitted, 5);
  const double first_time = seconds_since(t0);
  const std::uint64_t evals = fitted.eval_count();

  const DetectionResult three = engine.solve(fitted, 3);
  t0 = Clock::now();
  const DetectionResult repeat = engine.solve(fitted, 5);
  const double repeat_time = seconds_since(t0);

  v.require(three.n_cost_evals == 0 && repeat.n_cost_evals == 0, "reported new evaluations");
  v.require(fitted.eval_count() == evals, "cost counter advanced");
  v.require(repeat.bkps == first.bkps, "repeat differs");
  v.require(repeat_time <= 0.1 * first_time, "repeat took " + std::to_string(repeat_time) +
                                                 " s vs " + std::to_string(first_time) + " s");
  if (v.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "first %.3f ms, repeat %.4f ms, 0 new evaluations",
                  first_time * 1e3, repeat_time * 1e3);
    v.detail = buf;
  }
  return v;
}

// AC7: metric axioms on 500 random pairs/triples with T <= 50.
Verdict metric_axioms() {
  Verdict v;
  Rng rng(0xAC7);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(50));
    const double density = 0.05 + 0.3 * rng.uniform();
    const Breakpoints a = oracle::random_bkps(rng, n, density);
    const Breakpoints b = oracle::random_bkps(rng, n, density);
    const Breakpoints c = oracle::random_bkps(rng, n, density);
    const std::string where = "trial " + std::to_string(trial);

    v.require(hausdorff(a, b) == hausdorff(b, a), where + ": hausdorff asymmetric");
    v.require((hausdorff(a, b) == 0) == (a == b), where + ": hausdorff identity");
    v.require(hausdorff(a, a) == 0, where + ": hausdorff self");
    v.require(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c), where + ": triangle");
    v.require(randindex(a, b) == oracle::randindex_pairs(a, b), where + ": rand index formula");
    v.require(randindex(a, b) == randindex(b, a), where + ": rand index asymmetric");
    v.require((randindex(a, b) == 1.0) == (a == b) || n == 1, where + ": rand index identity");

    Index previous = -1;
    for (Index margin = 0; margin <= 10; ++margin) {
      const Index tp = precision_recall(a, b, margin).true_positives;
      v.require(tp >= previous, where + ": TP decreased at margin " + std::to_string(margin));
      previous = tp;
    }
  }
  if (v.pass) v.detail = "500 random triples";
  return v;
}

// --- AC8 helpers -------------------------------------------------------------

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "segscan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Minimal XML well-formedness: balanced, properly nested elements with quoted
// attributes, plus an <svg> root.
bool well_formed_svg(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  bool saw_root = false;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    if (text.compare(pos, 2, "<?") == 0) {
      pos = text.find("?>", pos);
      if (pos == std::string::npos) return false;
      continue;
    }
    if (text.compare(pos, 4, "<!--") == 0) {
      pos = text.find("-->", pos);
      if (pos == std::string::npos) return false;
      continue;
    }
    const std::size_t end = text.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
    if (!tag.empty() && tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = !tag.empty() && tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (name.empty()) return false;
    if (stack.empty()) {
      if (saw_root || name != "svg") return false;
      saw_root = true;
    }
    if (!self_closing) stack.push_back(name);
  }
  return saw_root && stack.empty();
}

bool bkps_schema(const json& doc, Index n) {
  if (!doc.is_object() || !doc.contains("bkps") || !doc["bkps"].is_array()) return false;
  if (doc["bkps"].empty() || doc["bkps"].back() != n) return false;
  for (const auto& e : doc["bkps"]) {
    if (!e.is_number_integer()) return false;
  }
  return true;
}

bool report_schema(const json& r, Index n) {
  return bkps_schema(r, n) && r["T"] == n && r["contrast"].is_number() &&
         r["method"].is_string() && r["cost"].is_string() &&
         r["n_cost_evals"].is_number_integer() && r["elapsed_ms"].is_number();
}

bool metrics_schema(const json& m) {
  if (!m.is_object() || m.size() != 4) return false;
  for (const char* key : {"hausdorff", "rand_index", "precision", "recall"}) {
    if (!m.contains(key) || !m[key].is_number()) return false;
  }
  return true;
}

struct Pipeline {
  std::string signal;
  std::string truth;
  json report;
  json metrics;
  std::string svg;
  bool ok = false;
  std::string failure;
};

Pipeline run_pipeline(const fs::path& dir) {
  Pipeline p;
  const Outcome gen = invoke({"generate", "--kind", "constant", "--T", "300", "--d", "2",
                              "--n-bkps", "4", "--noise", "0", "--seed", "2024", "--out",
                              dir.string()});
  if (gen.code != 0) {
    p.failure = "generate exited " + std::to_string(gen.code) + ": " + gen.err;
    return p;
  }
  p.signal = slurp(dir / "signal.csv");
  p.truth = slurp(dir / "truth.json");

  const Outcome det = invoke({"detect", "--input", (dir / "signal.csv").string(), "--method",
                              "dynp", "--cost", "l2", "--n-bkps", "4"});
  if (det.code != 0) {
    p.failure = "detect exited " + std::to_string(det.code) + ": " + det.err;
    return p;
  }
  p.report = json::parse(det.out, nullptr, false);
  {
    std::ofstream(dir / "pred.json") << det.out;
  }

  const Outcome ev = invoke({"eval", "--truth", (dir / "truth.json").string(), "--pred",
                             (dir / "pred.json").string(), "--margin", "5"});
  if (ev.code != 0) {
    p.failure = "eval exited " + std::to_string(ev.code) + ": " + ev.err;
    return p;
  }
  p.metrics = json::parse(ev.out, nullptr, false);

  const Outcome pl = invoke({"plot", "--input", (dir / "signal.csv").string(), "--bkps",
                             (dir / "pred.json").string(), "--truth",
                             (dir / "truth.json").string(), "--out", (dir / "fig.svg").string()});
  if (pl.code != 0) {
    p.failure = "plot exited " + std::to_string(pl.code) + ": " + pl.err;
    return p;
  }
  p.svg = slurp(dir / "fig.svg");
  p.ok = true;
  return p;
}

// AC8: generate -> detect -> eval -> plot, twice.
Verdict cli_round_trip() {
  Verdict v;
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() / ("segscan-acceptance-" + std::to_string(rd()));
  const Pipeline first = run_pipeline(root / "first");
  const Pipeline second = run_pipeline(root / "second");
  fs::remove_all(root);

  v.require(first.ok, first.failure);
  v.require(second.ok, second.failure);
  if (!v.pass) return v;

  const json truth = json::parse(first.truth, nullptr, false);
  v.require(bkps_schema(truth, 300) && truth["T"] == 300, "truth.json schema");
  v.require(report_schema(first.report, 300), "detect report schema");
  v.require(metrics_schema(first.metrics), "eval metrics schema");
  v.require(first.metrics["hausdorff"] == 0.0, "hausdorff " + first.metrics.dump());
  v.require(well_formed_svg(first.svg), "SVG not well formed");

  v.require(first.signal == second.signal, "signal.csv differs between runs");
  v.require(first.truth == second.truth, "truth.json differs between runs");
  json a = first.report;
  json b = second.report;
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  v.require(a.dump() == b.dump(), "detect reports differ between runs");
  v.require(first.metrics.dump() == second.metrics.dump(), "eval output differs between runs");
  v.require(first.svg == second.svg, "SVG differs between runs");
  if (v.pass) v.detail = "hausdorff 0, byte-identical rerun";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 exact-solver oracle suite", exact_solvers},
      {"AC2 cost-formula ground truth", cost_formulas},
      {"AC3 noiseless recovery", noiseless_recovery},
      {"AC4 approximation dominance and monotonicity", dominance},
      {"AC5 covariance-change reproduction", covariance_reproduction},
      {"AC6 cache reuse", cache_reuse},
      {"AC7 metric axioms", metric_axioms},
      {"AC8 CLI round trip", cli_round_trip},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict verdict;
    try {
      verdict = check();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s (%s)\n", verdict.pass ? "PASS" : "FAIL", name, verdict.detail.c_str());
    std::fflush(stdout);
    if (!verdict.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

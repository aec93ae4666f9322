#include "segscan/cli.hpp"

#include "segscan/cost.hpp"
#include "segscan/error.hpp"
#include "segscan/evaluation.hpp"
#include "segscan/generators.hpp"
#include "segscan/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <ostream>

namespace segscan::cli {
namespace {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::BudgetUnreachable: return kExitSearch;
    case ErrorKind::MismatchedLength: return kExitMismatch;
    case ErrorKind::NonFiniteValue:
    case ErrorKind::EmptySignal:
    case ErrorKind::RaggedInput: return kExitIo;
    default: return kExitUsage;
  }
}

// Runs a command body, turning the library's exceptions into exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

// A breakpoint file checked against the signal length it must describe.
Breakpoints load_bkps(const BkpsDocument& doc, Index n_samples, const std::string& what) {
  if (doc.n_samples && *doc.n_samples != n_samples) {
    throw Error(ErrorKind::MismatchedLength, what + " declares T = " +
                                                 std::to_string(*doc.n_samples) + ", expected " +
                                                 std::to_string(n_samples));
  }
  try {
    return validate_breakpoints(doc.ends, n_samples);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OutOfRange || e.kind() == ErrorKind::MissingTerminal) {
      throw Error(ErrorKind::MismatchedLength, what + ": " + e.what());
    }
    throw IoError(what + ": " + e.what());
  }
}

struct GenerateArgs {
  std::string kind = "constant";
  Index n_samples = 0;
  Index n_dims = 1;
  Index n_bkps = 0;
  double noise = 1.0;
  std::uint64_t seed = 0;
  Index min_gap = 0;
  std::string out_dir;
  bool header = false;
};

int cmd_generate(const GenerateArgs& args, bool dims_given, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    std::optional<GeneratedSignal> generated;
    try {
      if (args.kind == "normal") {
        if (dims_given && args.n_dims != 2) {
          err << "error: --kind normal generates 2 dimensions\n";
          return static_cast<int>(kExitUsage);
        }
        generated.emplace(pw_normal(args.n_samples, args.n_bkps, args.seed, args.min_gap));
      } else {
        const GenSpec spec{.n_samples = args.n_samples,
                           .n_dims = args.n_dims,
                           .n_bkps = args.n_bkps,
                           .noise_std = args.noise,
                           .seed = args.seed,
                           .min_gap = args.min_gap};
        generated.emplace(args.kind == "constant" ? pw_constant(spec) : pw_linear(spec));
      }
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return static_cast<int>(kExitUsage);
    }

    const std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream csv;
    write_csv(csv, generated->signal, args.header);
    write_file(dir / "signal.csv", csv.str());
    write_file(dir / "truth.json", bkps_document(generated->bkps));

    const json summary = {{"signal", (dir / "signal.csv").string()},
                          {"truth", (dir / "truth.json").string()},
                          {"T", generated->bkps.n_samples()},
                          {"bkps", generated->bkps.ends()}};
    out << summary.dump() << '\n';
    return static_cast<int>(kExitOk);
  });
}

struct DetectArgs {
  std::string input;
  bool header = false;
  std::string method;
  std::string cost;
  Index n_bkps = 0;
  double pen = 0.0;
  double epsilon = 0.0;
  Index min_size = 1;
  Index jump = 1;
  double gamma = 0.0;
  Index order = 4;
  Index window_width = 0;
};

struct DetectFlags {
  bool n_bkps = false;
  bool pen = false;
  bool epsilon = false;
  bool gamma = false;
  bool order = false;
  bool window_width = false;
};

CostSpec cost_spec(const DetectArgs& args, const DetectFlags& given) {
  if (given.gamma && args.cost != "rbf") throw UsageError("--gamma applies to --cost rbf only");
  if (given.order && args.cost != "ar") throw UsageError("--order applies to --cost ar only");
  if (args.cost == "l2") return CostSpec::l2();
  if (args.cost == "normal") return CostSpec::normal();
  if (args.cost == "linear") return CostSpec::linear();
  if (args.cost == "ar") return CostSpec::autoregressive(args.order);
  if (args.cost == "rbf") {
    return CostSpec::rbf(given.gamma ? std::optional<double>(args.gamma) : std::nullopt);
  }
  return CostSpec::mahalanobis();
}

StoppingRule stopping_rule(const DetectArgs& args, const DetectFlags& given) {
  const int count = int{given.n_bkps} + int{given.pen} + int{given.epsilon};
  if (count != 1) {
    throw UsageError("exactly one of --n-bkps, --pen, --epsilon is required");
  }
  if (args.method == "pelt" && !given.pen) throw UsageError("pelt takes --pen only");
  if (args.method == "dynp" && given.pen) throw UsageError("dynp takes --n-bkps or --epsilon");
  if (given.window_width && args.method != "window") {
    throw UsageError("--window-width applies to --method window only");
  }
  if (args.method == "window" && !given.window_width) {
    throw UsageError("--method window requires --window-width");
  }
  if (given.n_bkps) return StoppingRule::n_bkps(args.n_bkps);
  if (given.pen) return StoppingRule::penalty(args.pen);
  return StoppingRule::budget(args.epsilon);
}

json stop_json(const StoppingRule& stop) {
  if (const auto* k = stop.get_if<NBkps>()) return {{"n_bkps", k->count}};
  if (const auto* p = stop.get_if<Penalty>()) return {{"pen", p->beta}};
  return {{"epsilon", stop.get_if<Budget>()->epsilon}};
}

int cmd_detect(const DetectArgs& args, const DetectFlags& given, std::ostream& out,
               std::ostream& err) {
  CostSpec spec;
  std::optional<StoppingRule> stop;
  try {
    spec = cost_spec(args, given);
    stop.emplace(stopping_rule(args, given));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  return guarded(err, [&] {
    const Signal signal = read_csv(std::filesystem::path(args.input), args.header);
    const FittedCost fitted = fit(spec, signal);
    const SearchConfig cfg{
        .min_size = args.min_size, .jump = args.jump, .window_width = args.window_width};

    const auto started = std::chrono::steady_clock::now();
    DetectionResult result = [&] {
      if (args.method == "dynp") {
        if (const auto* k = stop->get_if<NBkps>()) return dynp(fitted, k->count, cfg);
        return solve_budget(fitted, stop->get_if<Budget>()->epsilon, cfg);
      }
      if (args.method == "pelt") return pelt(fitted, stop->get_if<Penalty>()->beta, cfg);
      if (args.method == "binseg") return binseg(fitted, *stop, cfg);
      if (args.method == "bottomup") return bottomup(fitted, *stop, cfg);
      return window(fitted, *stop, cfg);
    }();
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - started;

    json report = {{"T", signal.n_samples()},
                   {"bkps", result.bkps.ends()},
                   {"contrast", result.contrast},
                   {"method", args.method},
                   {"cost", args.cost},
                   {"stop", stop_json(*stop)},
                   {"n_cost_evals", result.n_cost_evals},
                   {"n_pruned", result.n_pruned},
                   {"elapsed_ms", elapsed.count()}};
    if (spec.family == CostFamily::Kernel) report["gamma"] = fitted.bandwidth().gamma;
    out << report.dump() << '\n';
    return static_cast<int>(kExitOk);
  });
}

struct EvalArgs {
  std::string truth;
  std::string pred;
  Index margin = 5;
  Index n_samples = 0;
};

int cmd_eval(const EvalArgs& args, bool length_given, std::ostream& out, std::ostream& err) {
  if (args.margin < 0) {
    err << "error: --margin must be nonnegative\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const BkpsDocument truth_doc = read_bkps_document(args.truth);
    const BkpsDocument pred_doc = read_bkps_document(args.pred);
    Index n = 0;
    if (length_given) {
      n = args.n_samples;
    } else if (truth_doc.n_samples) {
      n = *truth_doc.n_samples;
    } else if (!truth_doc.ends.empty()) {
      n = truth_doc.ends.back();
    } else {
      throw IoError(args.truth + ": empty \"bkps\" and no \"T\"");
    }
    const Breakpoints truth = load_bkps(truth_doc, n, args.truth);
    const Breakpoints pred = load_bkps(pred_doc, n, args.pred);
    const PrecisionRecall pr = precision_recall(truth, pred, args.margin);
    const json metrics = {{"hausdorff", static_cast<double>(hausdorff(truth, pred))},
                          {"rand_index", randindex(truth, pred)},
                          {"precision", pr.precision},
                          {"recall", pr.recall}};
    out << metrics.dump() << '\n';
    return static_cast<int>(kExitOk);
  });
}

struct PlotArgs {
  std::string input;
  bool header = false;
  std::string bkps;
  std::string truth;
  std::string out_file;
  double width = 900.0;
};

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Signal signal = read_csv(std::filesystem::path(args.input), args.header);
    const Breakpoints predicted =
        load_bkps(read_bkps_document(args.bkps), signal.n_samples(), args.bkps);
    std::optional<Breakpoints> truth;
    if (!args.truth.empty()) {
      truth = load_bkps(read_bkps_document(args.truth), signal.n_samples(), args.truth);
    }
    write_file(args.out_file,
               render_svg(signal, predicted, truth, PlotStyle{.width = args.width}));
    out << json{{"svg", args.out_file}}.dump() << '\n';
    return static_cast<int>(kExitOk);
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline change point detection for multivariate signals", "segscan"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic signal and its true breakpoints");
  generate->add_option("--kind", gen.kind, "Generator")
      ->check(CLI::IsMember({"constant", "linear", "normal"}));
  generate->add_option("-T,--T", gen.n_samples, "Number of samples")->required();
  auto* dims_opt = generate->add_option("--d", gen.n_dims, "Number of dimensions");
  generate->add_option("--n-bkps", gen.n_bkps, "Number of change points")->required();
  generate->add_option("--noise", gen.noise, "Gaussian noise standard deviation");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--min-gap", gen.min_gap, "Minimum segment length");
  generate->add_option("--out", gen.out_dir, "Output directory")->required();
  generate->add_flag("--header", gen.header, "Write a dim0..dimN header row");

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Detect change points in a CSV signal");
  detect->add_option("--input", det.input, "Signal CSV")->required();
  detect->add_flag("--header", det.header, "Skip the first CSV line");
  detect->add_option("--method", det.method, "Search method")
      ->required()
      ->check(CLI::IsMember({"dynp", "pelt", "binseg", "bottomup", "window"}));
  detect->add_option("--cost", det.cost, "Cost function")
      ->required()
      ->check(CLI::IsMember({"l2", "normal", "linear", "ar", "rbf", "mahalanobis"}));
  auto* n_bkps_opt = detect->add_option("--n-bkps", det.n_bkps, "Known number of changes");
  auto* pen_opt = detect->add_option("--pen", det.pen, "Linear penalty per change");
  auto* eps_opt = detect->add_option("--epsilon", det.epsilon, "Cost budget");
  detect->add_option("--min-size", det.min_size, "Minimum segment length");
  detect->add_option("--jump", det.jump, "Change points restricted to multiples of this");
  auto* gamma_opt = detect->add_option("--gamma", det.gamma, "rbf bandwidth (default: median heuristic)");
  auto* order_opt = detect->add_option("--order", det.order, "AR order");
  auto* width_opt = detect->add_option("--window-width", det.window_width, "Window width");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Compare predicted and true breakpoints");
  eval->add_option("--truth", ev.truth, "True breakpoints JSON")->required();
  eval->add_option("--pred", ev.pred, "Predicted breakpoints JSON")->required();
  eval->add_option("--margin", ev.margin, "Matching margin in samples");
  auto* length_opt = eval->add_option("-T,--T", ev.n_samples, "Signal length");

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "Render a signal and its regimes as SVG");
  plot->add_option("--input", pl.input, "Signal CSV")->required();
  plot->add_flag("--header", pl.header, "Skip the first CSV line");
  plot->add_option("--bkps", pl.bkps, "Predicted breakpoints JSON")->required();
  plot->add_option("--truth", pl.truth, "True breakpoints JSON");
  plot->add_option("--out", pl.out_file, "Output SVG")->required();
  plot->add_option("--width", pl.width, "Figure width in pixels")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (generate->parsed()) return cmd_generate(gen, dims_opt->count() > 0, out, err);
  if (detect->parsed()) {
    const DetectFlags given{.n_bkps = n_bkps_opt->count() > 0,
                            .pen = pen_opt->count() > 0,
                            .epsilon = eps_opt->count() > 0,
                            .gamma = gamma_opt->count() > 0,
                            .order = order_opt->count() > 0,
                            .window_width = width_opt->count() > 0};
    return cmd_detect(det, given, out, err);
  }
  if (eval->parsed()) return cmd_eval(ev, length_opt->count() > 0, out, err);
  return cmd_plot(pl, out, err);
}

}  // namespace segscan::cli

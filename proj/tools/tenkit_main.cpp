// tenkit command-line tool: synthesize, compress, reconstruct, inspect and
// benchmark dense Tucker decompositions. See README.md for usage.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tenkit/errors.hpp"
#include "tenkit/hooi.hpp"
#include "tenkit/hosvd.hpp"
#include "tenkit/io.hpp"
#include "tenkit/parallel.hpp"
#include "tenkit/synthetic.hpp"
#include "tenkit/tensor_ops.hpp"

namespace {

using tenkit::DecompositionReport;
using tenkit::DenseTensor;
using tenkit::FactorEngine;
using tenkit::ModeOrder;
using tenkit::Shape;
using tenkit::Truncation;
using tenkit::TuckerTensor;

constexpr const char* kCsvHeader =
    "method,dims,ranks,order,eta,seed,threads,rel_residual,seconds,"
    "iters_per_mode";

std::string join_sizes(const std::vector<std::size_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

struct RunRecord {
  std::string method;
  std::string dims;
  std::string ranks;
  std::vector<std::size_t> order;
  double eta = 0.0;
  std::uint64_t seed = 0;
  int threads = 1;
  double rel_residual = 0.0;
  double seconds = 0.0;
  std::string iters;  // comma list, empty for exact engines

  std::string to_csv() const {
    std::string line;
    line += method + ',' + dims + ',' + ranks + ',';
    line += '"' + join_sizes(order, ',') + '"' + ',';
    line += format_double(eta, "%g") + ',' + std::to_string(seed) + ',';
    line += std::to_string(threads) + ',';
    line += format_double(rel_residual, "%.17g") + ',';
    line += format_double(seconds, "%.6f") + ',';
    line += '"' + iters + '"';
    return line;
  }
};

struct MethodSpec {
  bool sequential = false;
  FactorEngine::Kind kind = FactorEngine::Kind::kSvd;
  bool hooi = false;
};

MethodSpec parse_method(const std::string& name) {
  if (name == "hooi") return {false, FactorEngine::Kind::kSvd, true};
  MethodSpec spec;
  std::string engine = name;
  if (name.rfind("st-", 0) == 0) {
    spec.sequential = true;
    engine = name.substr(3);
  } else if (name.rfind("t-", 0) == 0) {
    engine = name.substr(2);
  } else {
    throw CLI::ValidationError("--method", "unknown method '" + name + "'");
  }
  if (engine == "svd") {
    spec.kind = FactorEngine::Kind::kSvd;
  } else if (engine == "eig") {
    spec.kind = FactorEngine::Kind::kEig;
  } else if (engine == "als") {
    spec.kind = FactorEngine::Kind::kAls;
  } else {
    throw CLI::ValidationError("--method", "unknown method '" + name + "'");
  }
  return spec;
}

const std::vector<std::string> kAllMethods = {"t-svd",  "t-eig",  "t-als",
                                              "st-svd", "st-eig", "st-als"};

std::string iters_field(const DecompositionReport& report) {
  std::string out;
  bool any = false;
  for (const tenkit::ModeReport& mr : report.per_mode) {
    if (!mr.als.has_value()) continue;
    if (any) out += ',';
    out += std::to_string(mr.als->iterations);
    any = true;
  }
  return out;
}

std::vector<std::size_t> processing_order(const DecompositionReport& report) {
  std::vector<std::size_t> order;
  order.reserve(report.per_mode.size());
  for (const tenkit::ModeReport& mr : report.per_mode) {
    if (mr.mode > 0) order.push_back(mr.mode);  // 0 = hooi pseudo-entry
  }
  return order;
}

double als_stage_seconds(const DecompositionReport& report) {
  double total = 0.0;
  for (const tenkit::ModeReport& mr : report.per_mode) {
    if (mr.als.has_value()) total += mr.seconds;
  }
  return total;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
  std::vector<std::size_t> dims;
  std::size_t rank = 1;
  std::vector<std::size_t> ranks;
  double noise = 1e-4;
  std::uint64_t seed = 0;
  double range_min = 5.0;
  double range_max = 10.0;
  std::string out;
  std::string base_out;
};

void run_synth_cp(const SynthOptions& o) {
  tenkit::CpSpec spec;
  spec.dims = o.dims;
  spec.rank = o.rank;
  spec.lambda_min = o.range_min;
  spec.lambda_max = o.range_max;
  spec.noise_delta = o.noise;
  spec.seed = o.seed;
  tenkit::SynthPair pair = tenkit::gen_cp(spec);
  tenkit::write_tnsr(o.out, pair.noisy);
  if (!o.base_out.empty()) tenkit::write_tnsr(o.base_out, pair.base);
}

void run_synth_tucker(const SynthOptions& o) {
  tenkit::TuckerSpec spec;
  spec.dims = o.dims;
  spec.ranks = o.ranks;
  spec.core_min = o.range_min;
  spec.core_max = o.range_max;
  spec.noise_delta = o.noise;
  spec.seed = o.seed;
  tenkit::SynthPair pair = tenkit::gen_tucker(spec);
  tenkit::write_tnsr(o.out, pair.noisy);
  if (!o.base_out.empty()) tenkit::write_tnsr(o.base_out, pair.base);
}

// ---------------------------------------------------------------------------
// compress

struct CompressOptions {
  std::string in;
  std::string out;
  std::vector<std::size_t> ranks;
  std::string method = "st-als";
  std::string init = "st-svd";  // hooi warm start
  std::string order = "auto";
  double eta = 1e-4;
  int max_iters = 50;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = leave unchanged
  bool singular_vectors = false;
  bool header = false;
  double hooi_tol = 1e-12;
  int hooi_iters = 100;
};

std::optional<ModeOrder> parse_order(const std::string& text) {
  if (text == "auto") return std::nullopt;
  ModeOrder order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      order.order.push_back(static_cast<std::size_t>(std::stoul(item)));
    } catch (const std::exception&) {
      throw tenkit::InvalidModeError("--order: cannot parse '" + text + "'");
    }
  }
  return order;
}

FactorEngine make_engine(const MethodSpec& spec, const CompressOptions& o) {
  if (spec.kind != FactorEngine::Kind::kAls) {
    return spec.kind == FactorEngine::Kind::kSvd ? FactorEngine::svd()
                                                 : FactorEngine::eig();
  }
  tenkit::AlsConfig cfg;
  cfg.eta = o.eta;
  cfg.max_iters = o.max_iters;
  cfg.seed = o.seed;
  return FactorEngine::with_als(cfg);
}

std::pair<TuckerTensor, DecompositionReport> run_method(
    const DenseTensor& t, const Truncation& trunc, const std::string& name,
    const CompressOptions& o) {
  const MethodSpec spec = parse_method(name);
  if (spec.hooi) {
    const MethodSpec warm_spec = parse_method(o.init);
    if (warm_spec.hooi) {
      throw tenkit::InvalidModeError("--init: hooi cannot warm-start itself");
    }
    auto [warm, warm_report] =
        warm_spec.sequential
            ? tenkit::st_hosvd(t, trunc, parse_order(o.order),
                               make_engine(warm_spec, o))
            : tenkit::t_hosvd(t, trunc, make_engine(warm_spec, o), false);
    const auto start = std::chrono::steady_clock::now();
    tenkit::HooiResult refined =
        tenkit::hooi(t, trunc, warm, {o.hooi_tol, o.hooi_iters});
    warm_report.seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    warm_report.relative_residual =
        tenkit::relative_error(t, tenkit::reconstruct(refined.tucker));
    // Surface the outer iteration count through the iters CSV field.
    warm_report.per_mode.clear();
    tenkit::ModeReport mr;
    mr.mode = 0;
    mr.als = tenkit::AlsReport{};
    mr.als->iterations = refined.iterations;
    warm_report.per_mode.push_back(std::move(mr));
    return {std::move(refined.tucker), std::move(warm_report)};
  }
  if (spec.sequential) {
    return tenkit::st_hosvd(t, trunc, parse_order(o.order),
                            make_engine(spec, o));
  }
  return tenkit::t_hosvd(t, trunc, make_engine(spec, o), o.singular_vectors);
}

void run_compress(const CompressOptions& o) {
  const DenseTensor t = tenkit::read_tnsr(o.in);
  const Truncation trunc{o.ranks};
  trunc.validate(t.shape());
  if (o.threads > 0) tenkit::set_threads(o.threads);

  auto [tucker, report] = run_method(t, trunc, o.method, o);
  tenkit::write_tukr(o.out, tucker);

  RunRecord record;
  record.method = o.method;
  record.dims = t.shape().to_string();
  record.ranks = trunc.to_string();
  record.order = o.method == "hooi" ? std::vector<std::size_t>{}
                                    : processing_order(report);
  record.eta = o.eta;
  record.seed = o.seed;
  record.threads = tenkit::max_threads();
  record.rel_residual = report.relative_residual;
  record.seconds = report.seconds;
  record.iters = iters_field(report);
  if (o.header) std::cout << kCsvHeader << "\n";
  std::cout << record.to_csv() << "\n";
}

// ---------------------------------------------------------------------------
// reconstruct / inspect

void run_reconstruct(const std::string& in, const std::string& out) {
  const TuckerTensor tucker = tenkit::read_tukr(in);
  tenkit::write_tnsr(out, tenkit::reconstruct(tucker));
}

void run_inspect(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw tenkit::IoError("cannot open for reading: " + path);
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  probe.close();
  if (std::string(magic, 4) == "TNSR") {
    const DenseTensor t = tenkit::read_tnsr(path);
    std::cout << "kind: dense tensor\n"
              << "dims: " << t.shape().to_string() << "\n"
              << "elements: " << t.size() << "\n"
              << "frobenius_norm: "
              << format_double(tenkit::frobenius_norm(t), "%.17g") << "\n";
    return;
  }
  if (std::string(magic, 4) == "TUKR") {
    const TuckerTensor tk = tenkit::read_tukr(path);
    std::cout << "kind: tucker tensor\n"
              << "origin_dims: " << tk.origin_shape.to_string() << "\n"
              << "core_dims: " << tk.core.shape().to_string() << "\n"
              << "core_norm: "
              << format_double(tenkit::frobenius_norm(tk.core), "%.17g")
              << "\n"
              << "orthonormality_defect: "
              << format_double(tk.max_orthonormality_defect(), "%.3e") << "\n";
    return;
  }
  throw tenkit::FormatError(path + ": unrecognized magic bytes");
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string suite = "cp";
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;
  std::size_t cp_rank = 4;
  int repeats = 0;  // 0 = suite default (cp: 20, scaling: 1)
  double noise = 1e-4;
  double eta = 1e-4;
  int max_iters = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> methods;
  std::vector<int> thread_counts;
  std::string out;
};

constexpr const char* kBenchHeader =
    "method,dims,ranks,order,eta,seed,threads,rel_residual,seconds,"
    "iters_per_mode,als_seconds,kind,res_stdev,sec_stdev,speedup";

struct CellStats {
  std::vector<double> residuals;
  std::vector<double> seconds;
  std::vector<double> als_seconds;

  static double mean(const std::vector<double>& v) {
    return v.empty() ? 0.0
                     : std::accumulate(v.begin(), v.end(), 0.0) /
                           static_cast<double>(v.size());
  }
  static double stdev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
  }
};

void emit_bench_row(std::ostream& os, const RunRecord& record,
                    double als_seconds, const std::string& kind,
                    const std::string& res_stdev, const std::string& sec_stdev,
                    const std::string& speedup) {
  os << record.to_csv() << ',' << format_double(als_seconds, "%.6f") << ','
     << kind << ',' << res_stdev << ',' << sec_stdev << ',' << speedup << "\n";
}

void run_bench(const BenchOptions& o) {
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::trunc);
    if (!file) throw tenkit::IoError("cannot open for writing: " + o.out);
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  os << kBenchHeader << "\n";

  CompressOptions copts;
  copts.eta = o.eta;
  copts.max_iters = o.max_iters;

  if (o.suite == "cp") {
    const std::vector<std::size_t> dims =
        o.dims.empty() ? std::vector<std::size_t>{20, 20, 2000} : o.dims;
    const std::vector<std::size_t> ranks =
        o.ranks.empty() ? std::vector<std::size_t>(dims.size(), o.cp_rank)
                        : o.ranks;
    const std::vector<std::string> methods =
        o.methods.empty() ? kAllMethods : o.methods;
    const Truncation trunc{ranks};

    const int repeats = o.repeats > 0 ? o.repeats : 20;
    for (const std::string& method : methods) {
      CellStats stats;
      for (int rep = 0; rep < repeats; ++rep) {
        tenkit::CpSpec spec;
        spec.dims = dims;
        spec.rank = o.cp_rank;
        spec.noise_delta = o.noise;
        spec.seed = o.seed + static_cast<std::uint64_t>(rep);
        copts.seed = spec.seed;
        RunRecord record;
        record.method = method;
        record.dims = join_sizes(dims, 'x');
        record.ranks = trunc.to_string();
        record.eta = o.eta;
        record.seed = spec.seed;
        record.threads = tenkit::max_threads();
        try {
          const DenseTensor t = tenkit::gen_cp(spec).noisy;
          auto [tucker, report] = run_method(t, trunc, method, copts);
          record.order = processing_order(report);
          record.rel_residual = report.relative_residual;
          record.seconds = report.seconds;
          record.iters = iters_field(report);
          const double als_sec = als_stage_seconds(report);
          stats.residuals.push_back(record.rel_residual);
          stats.seconds.push_back(record.seconds);
          stats.als_seconds.push_back(als_sec);
          emit_bench_row(os, record, als_sec, "run", "", "", "");
        } catch (const tenkit::Error& e) {
          std::cerr << "bench: " << method << " rep " << rep
                    << " failed: " << e.what() << "\n";
          emit_bench_row(os, record, 0.0, "error", "", "", "");
        }
      }
      RunRecord summary;
      summary.method = method;
      summary.dims = join_sizes(dims, 'x');
      summary.ranks = trunc.to_string();
      summary.eta = o.eta;
      summary.seed = o.seed;
      summary.threads = tenkit::max_threads();
      summary.rel_residual = CellStats::mean(stats.residuals);
      summary.seconds = CellStats::mean(stats.seconds);
      emit_bench_row(os, summary, CellStats::mean(stats.als_seconds), "mean",
                     format_double(CellStats::stdev(stats.residuals), "%.6e"),
                     format_double(CellStats::stdev(stats.seconds), "%.6f"),
                     "");
    }
    return;
  }

  if (o.suite == "scaling") {
    const std::vector<std::size_t> dims =
        o.dims.empty() ? std::vector<std::size_t>{1000, 1000, 50} : o.dims;
    const std::vector<std::size_t> ranks =
        o.ranks.empty() ? std::vector<std::size_t>{20, 20, 5} : o.ranks;
    const std::vector<std::string> methods =
        o.methods.empty() ? std::vector<std::string>{"t-als", "st-als"}
                          : o.methods;
    const std::vector<int> thread_counts =
        o.thread_counts.empty() ? std::vector<int>{1, 2, 4} : o.thread_counts;
    const int repeats = o.repeats > 0 ? o.repeats : 1;
    const Truncation trunc{ranks};

    tenkit::TuckerSpec spec;
    spec.dims = dims;
    spec.ranks = ranks;
    spec.noise_delta = o.noise;
    spec.seed = o.seed;
    copts.seed = o.seed;
    const DenseTensor t = tenkit::gen_tucker(spec).noisy;

    for (const std::string& method : methods) {
      double reference_als = 0.0;
      for (int threads : thread_counts) {
        tenkit::set_threads(threads);
        CellStats stats;
        RunRecord record;
        record.method = method;
        record.dims = join_sizes(dims, 'x');
        record.ranks = trunc.to_string();
        record.eta = o.eta;
        record.seed = o.seed;
        record.threads = tenkit::max_threads();
        std::string speedup;
        try {
          for (int rep = 0; rep < repeats; ++rep) {
            auto [tucker, report] = run_method(t, trunc, method, copts);
            record.order = processing_order(report);
            record.rel_residual = report.relative_residual;
            record.seconds = report.seconds;
            record.iters = iters_field(report);
            stats.seconds.push_back(report.seconds);
            stats.als_seconds.push_back(als_stage_seconds(report));
          }
          const double als_sec = CellStats::mean(stats.als_seconds);
          if (threads == thread_counts.front()) reference_als = als_sec;
          if (als_sec > 0.0 && reference_als > 0.0) {
            speedup = format_double(reference_als / als_sec, "%.3f");
          }
          emit_bench_row(os, record, als_sec, "run", "",
                         format_double(CellStats::stdev(stats.seconds),
                                       "%.6f"),
                         speedup);
        } catch (const tenkit::Error& e) {
          std::cerr << "bench: " << method << " threads " << threads
                    << " failed: " << e.what() << "\n";
          emit_bench_row(os, record, 0.0, "error", "", "", "");
        }
      }
    }
    return;
  }
  throw tenkit::InvalidModeError("--suite: unknown suite '" + o.suite + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tenkit: truncated Tucker decomposition toolkit"};
  app.require_subcommand(1);

  // synth
  SynthOptions synth_opts;
  CLI::App* synth = app.add_subcommand("synth", "Generate synthetic tensors");
  synth->require_subcommand(1);
  CLI::App* synth_cp =
      synth->add_subcommand("cp", "Sum of random rank-one terms plus noise");
  synth_cp->add_option("--dims", synth_opts.dims, "Extents, e.g. 20,20,2000")
      ->required()
      ->delimiter(',');
  synth_cp->add_option("--rank", synth_opts.rank, "Number of rank-one terms");
  synth_cp->add_option("--noise", synth_opts.noise, "Noise level delta");
  synth_cp->add_option("--seed", synth_opts.seed, "RNG seed");
  synth_cp->add_option("--lambda-min", synth_opts.range_min, "Weight range lo");
  synth_cp->add_option("--lambda-max", synth_opts.range_max, "Weight range hi");
  synth_cp->add_option("--out", synth_opts.out, "Output TNSR path")->required();
  synth_cp->add_option("--base-out", synth_opts.base_out,
                       "Also write the noiseless base tensor here");
  synth_cp->callback([&synth_opts]() { run_synth_cp(synth_opts); });

  CLI::App* synth_tucker =
      synth->add_subcommand("tucker", "Random Tucker model plus noise");
  synth_tucker->add_option("--dims", synth_opts.dims, "Extents")
      ->required()
      ->delimiter(',');
  synth_tucker->add_option("--ranks", synth_opts.ranks, "Core extents")
      ->required()
      ->delimiter(',');
  synth_tucker->add_option("--noise", synth_opts.noise, "Noise level delta");
  synth_tucker->add_option("--seed", synth_opts.seed, "RNG seed");
  synth_tucker->add_option("--core-min", synth_opts.range_min,
                           "Core entry range lo");
  synth_tucker->add_option("--core-max", synth_opts.range_max,
                           "Core entry range hi");
  synth_tucker->add_option("--out", synth_opts.out, "Output TNSR path")
      ->required();
  synth_tucker->add_option("--base-out", synth_opts.base_out,
                           "Also write the noiseless base tensor here");
  synth_tucker->callback([&synth_opts]() { run_synth_tucker(synth_opts); });

  // compress
  CompressOptions compress_opts;
  CLI::App* compress =
      app.add_subcommand("compress", "Truncated Tucker decomposition");
  compress->add_option("--in", compress_opts.in, "Input TNSR path")
      ->required();
  compress->add_option("--out", compress_opts.out, "Output TUKR path")
      ->required();
  compress->add_option("--ranks", compress_opts.ranks, "Truncation")
      ->required()
      ->delimiter(',');
  compress
      ->add_option("--method", compress_opts.method,
                   "t-svd|t-eig|t-als|st-svd|st-eig|st-als|hooi")
      ->check(CLI::IsMember({"t-svd", "t-eig", "t-als", "st-svd", "st-eig",
                             "st-als", "hooi"}));
  compress->add_option("--init", compress_opts.init,
                       "Warm-start method for --method hooi");
  compress->add_option("--order", compress_opts.order,
                       "auto or explicit list, e.g. 2,1,3");
  compress->add_option("--eta", compress_opts.eta, "ALS stopping tolerance");
  compress->add_option("--max-iters", compress_opts.max_iters,
                       "ALS sweep cap");
  compress->add_option("--seed", compress_opts.seed, "ALS initializer seed");
  compress->add_option("--threads", compress_opts.threads, "Thread count");
  compress->add_flag("--singular-vectors", compress_opts.singular_vectors,
                     "Rotate ALS bases onto singular vectors (t-als)");
  compress->add_flag("--header", compress_opts.header,
                     "Print the CSV header line before the record");
  compress->add_option("--hooi-tol", compress_opts.hooi_tol,
                       "HOOI fit-change tolerance");
  compress->add_option("--hooi-iters", compress_opts.hooi_iters,
                       "HOOI outer iteration cap");
  compress->callback([&compress_opts]() { run_compress(compress_opts); });

  // reconstruct
  std::string rec_in;
  std::string rec_out;
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Expand a TUKR file back to TNSR");
  reconstruct->add_option("--in", rec_in, "Input TUKR path")->required();
  reconstruct->add_option("--out", rec_out, "Output TNSR path")->required();
  reconstruct->callback([&rec_in, &rec_out]() {
    run_reconstruct(rec_in, rec_out);
  });

  // inspect
  std::string inspect_path;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Print a summary of a TNSR or TUKR file");
  inspect->add_option("--in", inspect_path, "Input path")->required();
  inspect->callback([&inspect_path]() { run_inspect(inspect_path); });

  // bench
  BenchOptions bench_opts;
  CLI::App* bench = app.add_subcommand("bench", "Experiment suites");
  bench->add_option("--suite", bench_opts.suite, "cp or scaling")
      ->check(CLI::IsMember({"cp", "scaling"}));
  bench->add_option("--dims", bench_opts.dims, "Extents")->delimiter(',');
  bench->add_option("--ranks", bench_opts.ranks, "Truncation")->delimiter(',');
  bench->add_option("--rank", bench_opts.cp_rank, "CP term count (cp suite)");
  bench->add_option("--repeats", bench_opts.repeats, "Trials per cell");
  bench->add_option("--noise", bench_opts.noise, "Noise level delta");
  bench->add_option("--eta", bench_opts.eta, "ALS stopping tolerance");
  bench->add_option("--max-iters", bench_opts.max_iters, "ALS sweep cap");
  bench->add_option("--seed", bench_opts.seed, "Base seed");
  bench
      ->add_option("--methods", bench_opts.methods,
                   "Methods to run (default: all six, or ALS for scaling)")
      ->delimiter(',')
      ->check(CLI::IsMember({"t-svd", "t-eig", "t-als", "st-svd", "st-eig",
                             "st-als", "hooi"}));
  bench
      ->add_option("--threads-list", bench_opts.thread_counts,
                   "Thread counts for the scaling suite")
      ->delimiter(',');
  bench->add_option("--out", bench_opts.out, "CSV output path (default stdout)");
  bench->callback([&bench_opts]() { run_bench(bench_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const tenkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.category()) {
      case tenkit::ErrorCategory::kUsage:
        return 1;
      case tenkit::ErrorCategory::kIo:
        return 2;
      case tenkit::ErrorCategory::kNumerical:
        return 3;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

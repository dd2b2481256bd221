// Command-line driver: runs experiments from JSON configs and writes CSV/JSON
// results, with a verification suite wired in as `hybridsum verify`.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hybridsum/verify.hpp"

namespace fs = std::filesystem;
using namespace hybridsum;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_override;
  bool force = false;
  bool no_cache = false;
};

struct RunContext {
  RunConfig rc;
  ExperimentConfig cfg;
  PointTable pt;
  HypothesisReport hyp;
  TheoremMode mode = TheoremMode::Main;
  std::string hash;
  fs::path out;
  std::vector<std::string> warnings;
  std::vector<fs::path> written;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool use_cache = true;

  explicit RunContext(const CommonOpts& opts)
      : rc(load_run_config(opts.config_path)), cfg(build_experiment(rc)) {
    // resolved intervals participate in the cache key
    rc.i_lo = cfg.rect.n_lo;
    rc.i_hi = cfg.rect.n_hi;
    rc.j_lo = cfg.rect.j_lo;
    rc.j_hi = cfg.rect.j_hi;
    rc.has_i = rc.has_j = true;
    hash = config_hash(rc);
    out = opts.out_override.empty() ? fs::path(rc.out_dir) : fs::path(opts.out_override);
    use_cache = !opts.no_cache;

    pt = enumerate_points(cfg.curve, cfg.rect.j_lo, cfg.rect.j_hi);
    mode = resolve_mode(rc);
    hyp = check_hypotheses(cfg.f, cfg.g, cfg.curve, cfg.chi.order(), mode, &pt);
    if (pt.duplicate_x)
      warnings.push_back(
          "J admits several points per x-coordinate; moment identities that rely on the "
          "one-to-one correspondence are unreliable");
  }
};

int hypothesis_gate(RunContext& ctx, bool force) {
  if (ctx.hyp.overall != Tri::Fails) return 0;
  std::cerr << "hypothesis check failed (" << to_cstr(ctx.mode) << "):\n";
  for (const auto& why : ctx.hyp.failures) std::cerr << "  - " << why << "\n";
  if (force) {
    std::cerr << "continuing because --force was given\n";
    ctx.warnings.push_back("hypothesis check failed; run forced");
    return 0;
  }
  std::cerr << "use --force to run anyway\n";
  return 3;
}


fs::path cache_path(const RunContext& ctx, const std::string& name) {
  return ctx.out / "cache" / (ctx.hash + "-" + name);
}

// Writes one result file, satisfying it from the config-hash cache when
// possible, and records it for the manifest / failure cleanup.
void emit(RunContext& ctx, const std::string& name, const std::string& bytes) {
  const fs::path cache = cache_path(ctx, name);
  std::string out_bytes = bytes;
  if (ctx.use_cache && fs::exists(cache)) {
    out_bytes = read_file(cache);
  } else {
    atomic_write_file(cache, bytes);
  }
  const fs::path target = ctx.out / name;
  atomic_write_file(target, out_bytes);
  ctx.written.push_back(target);
}

void write_manifest(RunContext& ctx, const std::string& command) {
  nlohmann::json m;
  m["command"] = command;
  m["config_hash"] = ctx.hash;
  m["tool_version"] = kToolVersion;
  m["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                           ctx.t0)
                     .count();
  std::vector<std::string> names;
  names.reserve(ctx.written.size());
  for (const auto& p : ctx.written) names.push_back(p.filename().string());
  m["outputs"] = names;
  m["warnings"] = ctx.warnings;
  m["hypothesis_overall"] = to_cstr(ctx.hyp.overall);
  atomic_write_file(ctx.out / "manifest.json", m.dump(2) + "\n");
}

void remove_partial_outputs(RunContext& ctx) {
  std::error_code ec;
  for (const auto& p : ctx.written) fs::remove(p, ec);
}

std::string points_csv(const RunContext& ctx) {
  std::ostringstream os;
  os << "x,y\n";
  for (u64 x = 0; x < ctx.pt.p; ++x)
    for (u32 y : ctx.pt.bucket(x)) os << x << "," << y << "\n";
  return os.str();
}

std::string series_csv(const SumSeries& s) {
  std::ostringstream os;
  os << "n,re_S,im_S,u,terms,poles_skipped\n";
  for (size_t i = 0; i < s.s.size(); ++i)
    os << (s.n_lo + i) << "," << fmt_double(s.s[i].real()) << "," << fmt_double(s.s[i].imag())
       << "," << fmt_double(s.u[i]) << "," << s.terms[i] << "," << s.poles[i] << "\n";
  return os.str();
}

std::string moments_json(const MomentReport& rep) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : rep.entries) {
    nlohmann::json row;
    row["k"] = e.k;
    row["re_M"] = e.m.real();
    row["im_M"] = e.m.imag();
    row["normalized"] = e.normalized;
    row["mu_k"] = e.mu;
    row["deviation"] = e.deviation;
    arr.push_back(row);
  }
  return arr.dump(2) + "\n";
}

std::string distribution_json(const DistributionReport& rep) {
  nlohmann::json j;
  j["n"] = rep.sorted_u.size();
  j["ks_var_half"] = rep.ks_var_half;
  j["ks_standard"] = rep.ks_standard;
  j["model_selected"] = rep.selected == GaussianModel::Standard ? "standard" : "var_half";
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : rep.histogram) {
    nlohmann::json row;
    row["count"] = b.count;
    row["left"] = b.left;
    row["width"] = b.width;
    bins.push_back(row);
  }
  j["histogram"] = bins;
  return j.dump(2) + "\n";
}

std::string histogram_csv(const DistributionReport& rep) {
  std::ostringstream os;
  os << "left,width,count\n";
  for (const auto& b : rep.histogram)
    os << fmt_double(b.left) << "," << fmt_double(b.width) << "," << b.count << "\n";
  return os.str();
}

std::string bounds_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << "config_id,p,D,d_g,d_f,m,abs_S,bound,ratio,degenerate\n";
  for (const auto& r : reports)
    os << r.config_id << "," << r.p << "," << r.D << "," << r.d_g << "," << r.d_f << ","
       << r.m << "," << fmt_double(r.abs_S) << "," << fmt_double(r.bound) << ","
       << fmt_double(r.ratio) << "," << (r.degenerate == Tri::Holds ? "yes"
                                         : r.degenerate == Tri::Fails ? "no"
                                                                      : "unknown")
       << "\n";
  return os.str();
}

int run_command(const std::string& command, const CommonOpts& opts) {
  RunContext ctx(opts);
  if (const int rc = hypothesis_gate(ctx, opts.force)) return rc;
  try {
    if (command == "points") {
      emit(ctx, "points.csv", points_csv(ctx));
    } else if (command == "sums") {
      emit(ctx, "series.csv", series_csv(compute_series(ctx.cfg, ctx.pt)));
    } else if (command == "moments") {
      const SumSeries series = compute_series(ctx.cfg, ctx.pt);
      const MomentReport rep = moments(series, ctx.rc.k_max, quadratic_real_mode(ctx.cfg),
                                       ctx.pt.duplicate_x);
      emit(ctx, "moments.json", moments_json(rep));
    } else if (command == "distribution") {
      const SumSeries series = compute_series(ctx.cfg, ctx.pt);
      const DistributionReport rep = analyze_distribution(series, select_model(ctx.cfg));
      emit(ctx, "distribution.json", distribution_json(rep));
      emit(ctx, "histogram.csv", histogram_csv(rep));
    } else {
      throw Error("unknown command " + command);
    }
    write_manifest(ctx, command);
  } catch (...) {
    remove_partial_outputs(ctx);
    throw;
  }
  return 0;
}

int run_bounds(const CommonOpts& opts, bool sweep, double c_slack) {
  RunContext ctx(opts);
  if (ctx.cfg.p() > 2000) throw ConfigError("p", "bounds reports need p <= 2000");
  if (const int rc = hypothesis_gate(ctx, opts.force)) return rc;
  try {
    std::vector<BoundSweepItem> items;
    items.push_back(BoundSweepItem{ctx.hash.substr(0, 8), ctx.cfg,
                                   CoordInterval{ctx.cfg.rect.n_lo, ctx.cfg.rect.n_hi + 1},
                                   CoordInterval{ctx.cfg.rect.j_lo, ctx.cfg.rect.j_hi},
                                   c_slack});
    if (sweep) {
      auto F = ctx.cfg.field;
      const u64 p = F->p();
      const u64 half = (p + 1) / 2;
      int id = 0;
      for (const char* curve : {"y - x", "x^2 + y^2 - 1", "y^2 - x^3 - x - 1"})
        for (const u64 a : {2ull, 3ull}) {
          if ((p - 1) % a != 0) continue;
          items.push_back(BoundSweepItem{
              "sweep" + std::to_string(id++),
              verify_detail::make_experiment(F, curve, "x", "x*y", a, 1,
                                             Rectangle{0, p - 1, 0, p, 1}),
              CoordInterval{1, 1 + half}, CoordInterval{0, p}, c_slack});
        }
    }
    emit(ctx, "bounds.csv", bounds_csv(bound_ratio_sweep(items)));
    write_manifest(ctx, "bounds");
  } catch (...) {
    remove_partial_outputs(ctx);
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"short hybrid character-sum experiments on affine plane curves"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string tuples_H, tuples_j;
  bool bounds_sweep = false;
  double c_slack = 3.0;
  VerifyOptions vopts;

  auto add_common = [&opts](CLI::App* cmd, bool config_required = true) {
    cmd->add_option("-c,--config", opts.config_path, "JSON experiment config")
        ->required(config_required);
    cmd->add_option("-o,--out", opts.out_override, "output directory (overrides config)");
    cmd->add_flag("--force", opts.force, "run even if the hypothesis check fails");
    cmd->add_flag("--no-cache", opts.no_cache, "recompute instead of reusing cached blobs");
  };

  CLI::App* c_points = app.add_subcommand("points", "enumerate curve points into points.csv");
  CLI::App* c_sums = app.add_subcommand("sums", "windowed sums S_n into series.csv");
  CLI::App* c_moments = app.add_subcommand("moments", "moment table into moments.json");
  CLI::App* c_dist =
      app.add_subcommand("distribution", "empirical distribution and KS distances");
  CLI::App* c_bounds = app.add_subcommand("bounds", "bound-ratio report into bounds.csv");
  for (CLI::App* c : {c_points, c_sums, c_moments, c_dist}) add_common(c);
  add_common(c_bounds);
  c_bounds->add_flag("--sweep", bounds_sweep, "append the curated sweep for this prime");
  c_bounds->add_option("--c-slack", c_slack, "O(D) slack constant in the bound");

  CLI::App* c_tuples =
      app.add_subcommand("tuples", "exact matching-tuple count for a window length");
  u64 opt_H = 0;
  u32 opt_j = 0;
  c_tuples->add_option("--H", opt_H, "window length")->required();
  c_tuples->add_option("--j", opt_j, "half-tuple size")->required();

  CLI::App* c_verify = app.add_subcommand("verify", "run the verification suite");
  c_verify->add_option("--filter", vopts.filter, "only checks whose name contains this");
  c_verify->add_option("--inject-fault", vopts.inject_fault,
                       "deliberately corrupt a table to prove the suite catches it");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_tuples->parsed()) {
      std::cout << count_matching_tuples(opt_H, opt_j).to_string() << "\n";
      return 0;
    }
    if (c_verify->parsed()) {
      return run_verification(std::cout, vopts) == 0 ? 0 : 1;
    }
    if (c_bounds->parsed()) return run_bounds(opts, bounds_sweep, c_slack);
    for (CLI::App* c : {c_points, c_sums, c_moments, c_dist})
      if (c->parsed()) return run_command(c->get_name(), opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

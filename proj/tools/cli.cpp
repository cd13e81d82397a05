#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "biblio/corpus.hpp"
#include "biblio/csv.hpp"
#include "biblio/field_map.hpp"
#include "biblio/field_stats.hpp"
#include "biblio/normalize.hpp"
#include "biblio/permutation.hpp"
#include "biblio/qq.hpp"
#include "biblio/rank.hpp"
#include "biblio/regression.hpp"
#include "biblio/report.hpp"
#include "biblio/synth.hpp"

namespace biblio::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kToolVersion = "0.1.0";

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

bool uses_corpus(const std::string &sub) { return sub != "synth"; }

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(fmt::format("cannot open '{}'", path));
  }
  return in;
}

class OutputDir {
public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }

  void write(const std::string &name,
             const std::function<void(std::ostream &)> &body) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error(
          fmt::format("cannot write '{}'", (dir_ / name).string()));
    }
    body(out);
    written_.push_back(name);
  }

  std::vector<std::string> written() const {
    auto w = written_;
    std::sort(w.begin(), w.end());
    return w;
  }

private:
  fs::path dir_;
  std::vector<std::string> written_;
};

FieldMap load_field_map(const RunConfig &config) {
  auto map = FieldMap::default_map();
  if (!config.field_map.empty()) {
    auto in = open_input(config.field_map);
    map.apply_overrides(in);
  }
  map.set_unknown_policy(config.unknown_tags == "reject"
                             ? UnknownTagPolicy::Reject
                             : UnknownTagPolicy::MapToOther);
  return map;
}

LogResponse log_response_of(const RunConfig &config) {
  return config.log_response == "drop-zero" ? LogResponse::DropZero
                                            : LogResponse::PlusOne;
}

void write_permtests(OutputDir &dir, const std::vector<ScoredRecord> &scored,
                     const RunConfig &config) {
  PermutationOptions opts;
  opts.n_perm = static_cast<std::size_t>(config.n_perm);
  opts.seed = config.seed;
  opts.exact_threshold = static_cast<std::uint64_t>(config.exact_threshold);
  const auto tests = all_pairwise_tests(scored, opts);
  dir.write("permutation_tests.csv",
            [&](std::ostream &o) { write_permutation_csv(tests, o); });
  dir.write("inconclusive.txt",
            [&](std::ostream &o) { write_inconclusive_list(tests, o); });
}

void write_models(OutputDir &dir, const std::vector<ScoredRecord> &scored,
                  const RunConfig &config) {
  const auto models = compare_models(scored, log_response_of(config));
  dir.write("model_comparison.csv",
            [&](std::ostream &o) { write_model_comparison_csv(models, o); });
  for (const auto &m : models) {
    dir.write(fmt::format("regression_{}.csv", formula_name(m.formula)),
              [&](std::ostream &o) { write_regression_csv(m.fit, o); });
  }
}

nlohmann::json write_calibration(OutputDir &dir, const Corpus &corpus,
                                 const std::vector<ScoredRecord> &scored,
                                 const RunConfig &config) {
  ExponentGrid grid{config.alpha_lo, config.alpha_hi, config.alpha_step};
  const auto cal = calibrate_exponent(corpus, grid, config.min_age);
  dir.write("calibration.csv",
            [&](std::ostream &o) { write_calibration_csv(cal, o); });

  std::vector<double> age, norm;
  for (const auto &r : scored) {
    age.push_back(r.age);
    norm.push_back(r.norm_cit);
  }
  const auto fit = simple_ols(age, norm, "age");
  dir.write("age_regression.csv",
            [&](std::ostream &o) { write_regression_csv(fit, o); });
  return {{"alpha_star", cal.alpha_star},
          {"age_slope", fit.estimates[1]},
          {"age_slope_p", fit.p_values[1]},
          {"age_r_squared", fit.r_squared}};
}

void write_qq(OutputDir &dir, const std::vector<ScoredRecord> &scored) {
  std::vector<double> cit, norm;
  for (const auto &r : scored) {
    cit.push_back(static_cast<double>(r.base.citations));
    norm.push_back(r.norm_cit);
  }
  dir.write("qq_citations.csv", [&](std::ostream &o) {
    write_qq_csv(qq_exponential(sqrt_transform(cit)), o);
  });
  dir.write("qq_norm.csv", [&](std::ostream &o) {
    write_qq_csv(qq_exponential(sqrt_transform(norm)), o);
  });
}

void write_ranking(OutputDir &dir, const std::vector<ScoredRecord> &scored,
                   const RunConfig &config) {
  const auto format = *parse_report_format(config.format);
  const auto scores = rank_departments(scored);
  dir.write(fmt::format("ranking.{}", report_extension(format)),
            [&](std::ostream &o) { emit_ranking_report(scores, format, o); });
}

nlohmann::json file_entry(const std::string &path) {
  if (path.empty()) {
    return nullptr;
  }
  return {{"path", path}, {"sha256", sha256_file(path)}};
}

int execute(const RunConfig &config, std::ostream &out) {
  OutputDir dir(config.out_dir);
  nlohmann::json summary = nlohmann::json::object();
  const auto &sub = config.subcommand;

  if (sub == "synth") {
    SynthSpec spec;
    if (!config.synth_spec.empty()) {
      auto in = open_input(config.synth_spec);
      spec = synth_spec_from_json(nlohmann::json::parse(in));
    } else {
      spec = faculty_shaped_spec();
    }
    spec.seed = config.seed;
    spec.snapshot_year = config.snapshot_year;
    spec.validate();
    const auto corpus = generate(spec);
    dir.write("synth_corpus.csv",
              [&](std::ostream &o) { write_corpus_csv(corpus, o); });
    dir.write("synth_spec.json", [&](std::ostream &o) {
      o << synth_spec_to_json(spec).dump(2) << '\n';
    });
    summary["records"] = corpus.records.size();
  } else {
    auto in = open_input(config.input);
    auto parsed = parse_corpus(in, config.snapshot_year, load_field_map(config));
    summary["records"] = parsed.corpus.records.size();
    summary["rejections"] = parsed.rejections.size();
    if (sub == "ingest" || !parsed.rejections.empty()) {
      dir.write("rejections.csv", [&](std::ostream &o) {
        write_rejections_csv(parsed.rejections, o);
      });
    }
    if (!config.lenient && !parsed.rejections.empty()) {
      parsed.require_clean();
    }
    const auto &corpus = parsed.corpus;
    if (corpus.records.empty()) {
      throw ValidationError("corpus has no valid records");
    }

    NormalizationConfig norm_config{config.alpha, config.min_age};
    auto scored = zscore_by_field(score_corpus(corpus, norm_config));

    if (sub == "ingest") {
      dir.write("corpus.csv",
                [&](std::ostream &o) { write_corpus_csv(corpus, o); });
      dir.write("scored.csv",
                [&](std::ostream &o) { write_scored_csv(scored, o); });
    }
    if (sub == "summarize" || sub == "pipeline") {
      const auto rows = field_summary(scored);
      dir.write("field_summary.csv",
                [&](std::ostream &o) { write_field_summary_csv(rows, o); });
    }
    if (sub == "calibrate" || sub == "pipeline") {
      summary["calibration"] = write_calibration(dir, corpus, scored, config);
    }
    if (sub == "models" || sub == "pipeline") {
      write_models(dir, scored, config);
    }
    if (sub == "permtest" || sub == "pipeline") {
      write_permtests(dir, scored, config);
    }
    if (sub == "qq" || sub == "pipeline") {
      write_qq(dir, scored);
    }
    if (sub == "rank" || sub == "pipeline") {
      write_ranking(dir, scored, config);
    }
  }

  auto outputs = dir.written();
  outputs.push_back("manifest.json");
  std::sort(outputs.begin(), outputs.end());
  nlohmann::json manifest = {
      {"tool", "biblio"},
      {"version", kToolVersion},
      {"config", config_to_json(config)},
      {"inputs",
       {{"input", uses_corpus(sub) ? file_entry(config.input) : nullptr},
        {"field_map", file_entry(config.field_map)},
        {"synth_spec", sub == "synth" ? file_entry(config.synth_spec)
                                      : nullptr}}},
      {"outputs", outputs},
      {"summary", summary},
  };
  dir.write("manifest.json",
            [&](std::ostream &o) { o << manifest.dump(2) << '\n'; });
  out << fmt::format("{}: wrote {} file(s) to {}\n", sub, outputs.size(),
                     config.out_dir);
  return 0;
}

void check_replay_inputs(const nlohmann::json &manifest) {
  const auto &inputs = manifest.at("inputs");
  for (const auto &[name, entry] : inputs.items()) {
    if (entry.is_null()) {
      continue;
    }
    const auto path = entry.at("path").get<std::string>();
    const auto expected = entry.at("sha256").get<std::string>();
    const auto actual = sha256_file(path);
    if (actual != expected) {
      throw ValidationError(fmt::format(
          "{} '{}' has changed since the manifest was written "
          "(sha256 {} != {})",
          name, path, actual, expected));
    }
  }
}

void add_corpus_options(CLI::App *app, RunConfig &c) {
  app->add_option("--input", c.input, "Faculty citation CSV")->required();
  app->add_option("--snapshot-year", c.snapshot_year,
                  "Year the citation counts were collected");
  app->add_option("--alpha", c.alpha, "Age exponent for citations / age^alpha");
  app->add_option("--min-age", c.min_age, "Floor for age in years");
  app->add_option("--field-map", c.field_map,
                  "CSV (raw_tag, major_field) overriding the built-in mapping");
  app->add_option("--unknown-tags", c.unknown_tags,
                  "Unknown subject tags: 'other' or 'reject'");
  app->add_flag("--lenient", c.lenient,
                "Drop rejected rows instead of failing");
}

void add_perm_options(CLI::App *app, RunConfig &c) {
  app->add_option("--n-perm", c.n_perm, "Monte Carlo replications per test");
  app->add_option("--exact-threshold", c.exact_threshold,
                  "Enumerate exactly when the number of splits is at most this");
}

void add_grid_options(CLI::App *app, RunConfig &c) {
  app->add_option("--alpha-lo", c.alpha_lo, "Smallest exponent on the grid");
  app->add_option("--alpha-hi", c.alpha_hi, "Largest exponent on the grid");
  app->add_option("--alpha-step", c.alpha_step, "Grid spacing");
}

} // namespace

void RunConfig::validate() const {
  if (snapshot_year < kEarliestFirstPubYear) {
    throw ConfigError(fmt::format("--snapshot-year must be >= {} (got {})",
                                  kEarliestFirstPubYear, snapshot_year));
  }
  if (!(alpha > 0.0)) {
    throw ConfigError(fmt::format("--alpha must be > 0 (got {})", alpha));
  }
  if (min_age < 1) {
    throw ConfigError(fmt::format("--min-age must be >= 1 (got {})", min_age));
  }
  if (n_perm < 1) {
    throw ConfigError(fmt::format("--n-perm must be >= 1 (got {})", n_perm));
  }
  if (exact_threshold < 0) {
    throw ConfigError(fmt::format("--exact-threshold must be >= 0 (got {})",
                                  exact_threshold));
  }
  if (!parse_report_format(format)) {
    throw ConfigError(fmt::format(
        "--format must be csv, json or markdown (got '{}')", format));
  }
  if (unknown_tags != "other" && unknown_tags != "reject") {
    throw ConfigError(fmt::format(
        "--unknown-tags must be 'other' or 'reject' (got '{}')", unknown_tags));
  }
  if (log_response != "plus-one" && log_response != "drop-zero") {
    throw ConfigError(fmt::format(
        "--log-response must be 'plus-one' or 'drop-zero' (got '{}')",
        log_response));
  }
  if (!(alpha_lo > 0.0) || !(alpha_hi > alpha_lo) || !(alpha_step > 0.0)) {
    throw ConfigError(fmt::format(
        "--alpha-lo/--alpha-hi/--alpha-step must satisfy 0 < lo < hi and "
        "step > 0 (got {}, {}, {})",
        alpha_lo, alpha_hi, alpha_step));
  }
}

nlohmann::json config_to_json(const RunConfig &c) {
  return {{"subcommand", c.subcommand},
          {"input", c.input},
          {"snapshot_year", c.snapshot_year},
          {"alpha", c.alpha},
          {"min_age", c.min_age},
          {"n_perm", c.n_perm},
          {"seed", c.seed},
          {"exact_threshold", c.exact_threshold},
          {"field_map", c.field_map},
          {"format", c.format},
          {"unknown_tags", c.unknown_tags},
          {"log_response", c.log_response},
          {"lenient", c.lenient},
          {"alpha_lo", c.alpha_lo},
          {"alpha_hi", c.alpha_hi},
          {"alpha_step", c.alpha_step},
          {"synth_spec", c.synth_spec}};
}

RunConfig config_from_json(const nlohmann::json &j) {
  RunConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  c.input = j.value("input", c.input);
  c.snapshot_year = j.value("snapshot_year", c.snapshot_year);
  c.alpha = j.value("alpha", c.alpha);
  c.min_age = j.value("min_age", c.min_age);
  c.n_perm = j.value("n_perm", c.n_perm);
  c.seed = j.value("seed", c.seed);
  c.exact_threshold = j.value("exact_threshold", c.exact_threshold);
  c.field_map = j.value("field_map", c.field_map);
  c.format = j.value("format", c.format);
  c.unknown_tags = j.value("unknown_tags", c.unknown_tags);
  c.log_response = j.value("log_response", c.log_response);
  c.lenient = j.value("lenient", c.lenient);
  c.alpha_lo = j.value("alpha_lo", c.alpha_lo);
  c.alpha_hi = j.value("alpha_hi", c.alpha_hi);
  c.alpha_step = j.value("alpha_step", c.alpha_step);
  c.synth_spec = j.value("synth_spec", c.synth_spec);
  return c;
}

std::string sha256_file(const std::string &path) {
  auto in = open_input(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                               EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += fmt::format("{:02x}", digest[i]);
  }
  return hex;
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Age- and field-normalized citation analysis of faculty "
               "records",
               "biblio"};
  app.require_subcommand(1);
  RunConfig config;
  std::string manifest_path;
  std::string replay_out;

  auto *ingest = app.add_subcommand(
      "ingest", "Validate a corpus; write clean records and a rejection report");
  auto *summarize = app.add_subcommand("summarize", "Per-field summary table");
  auto *calibrate = app.add_subcommand(
      "calibrate", "Exponent calibration grid and the age regression");
  auto *rank = app.add_subcommand("rank", "Department ranking by mean z-score");
  auto *permtest =
      app.add_subcommand("permtest", "Pairwise one-sided permutation tests");
  auto *models = app.add_subcommand("models", "Nested log-citation models");
  auto *qq = app.add_subcommand("qq", "Exponential QQ series of sqrt values");
  auto *pipeline =
      app.add_subcommand("pipeline", "Run every analysis stage in one pass");
  auto *synth = app.add_subcommand("synth", "Write a seeded synthetic corpus");
  auto *replay =
      app.add_subcommand("replay", "Re-run the configuration in a manifest");

  for (auto *sub :
       {ingest, summarize, calibrate, rank, permtest, models, qq, pipeline}) {
    add_corpus_options(sub, config);
  }
  for (auto *sub : {permtest, pipeline}) {
    add_perm_options(sub, config);
  }
  for (auto *sub : {calibrate, pipeline}) {
    add_grid_options(sub, config);
  }
  for (auto *sub : {models, pipeline}) {
    sub->add_option("--log-response", config.log_response,
                    "'plus-one' for log(C + 1) or 'drop-zero' for log(C)");
  }
  for (auto *sub : {rank, pipeline}) {
    sub->add_option("--format", config.format, "csv, json or markdown");
  }
  for (auto *sub : {permtest, pipeline, synth}) {
    sub->add_option("--seed", config.seed, "Master random seed");
  }
  synth->add_option("--spec", config.synth_spec,
                    "JSON synth spec (default: faculty-shaped preset)");
  synth->add_option("--snapshot-year", config.snapshot_year,
                    "Snapshot year of the generated records");
  for (auto *sub : {ingest, summarize, calibrate, rank, permtest, models, qq,
                    pipeline, synth}) {
    sub->add_option("--out", config.out_dir, "Output directory");
  }
  replay->add_option("--manifest", manifest_path, "manifest.json of a run")
      ->required();
  replay->add_option("--out", replay_out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (replay->parsed()) {
      auto in = open_input(manifest_path);
      const auto manifest = nlohmann::json::parse(in);
      config = config_from_json(manifest.at("config"));
      config.out_dir = replay_out;
      check_replay_inputs(manifest);
    } else {
      config.subcommand = app.get_subcommands().front()->get_name();
    }
    config.validate();
    return execute(config, out);
  } catch (const nlohmann::json::exception &e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

} // namespace biblio::cli

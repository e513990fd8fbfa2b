#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "occlang/kernels.hpp"
#include "occlang/pipeline.hpp"
#include "occlang/synth.hpp"
#include "occlang/util.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Pipeline config JSON")->required();
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--out", opts.out_dir, "Override the output directory");
}

occlang::PipelineConfig load_config(const CommonOpts& opts) {
  occlang::PipelineConfig cfg = occlang::PipelineConfig::load(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"occlang: occupation profiling from short social posts"};
  app.require_subcommand(1);

  CommonOpts ingest_opts;
  CommonOpts mine_opts;
  CommonOpts cluster_opts;
  CommonOpts features_opts;
  CommonOpts correlate_opts;
  CommonOpts classify_opts;
  CommonOpts report_opts;
  CommonOpts run_opts;

  auto* ingest = app.add_subcommand("ingest", "Load, validate and filter the corpus");
  add_common(ingest, ingest_opts);
  auto* mine = app.add_subcommand("mine-phrases", "Build the open vocabulary");
  add_common(mine, mine_opts);
  auto* cluster = app.add_subcommand("cluster-jobs", "Soft job categories from skills");
  add_common(cluster, cluster_opts);
  auto* features = app.add_subcommand("features", "Lexicon, TF-IDF and topic features");
  add_common(features, features_opts);
  auto* correlate = app.add_subcommand("correlate", "Feature-job correlation reports");
  add_common(correlate, correlate_opts);
  auto* classify = app.add_subcommand("classify", "Cross-validated job prediction");
  add_common(classify, classify_opts);
  auto* report = app.add_subcommand("report", "Word-cloud and radar exports");
  add_common(report, report_opts);
  auto* run = app.add_subcommand("run", "Full pipeline plus artifact manifest");
  add_common(run, run_opts);

  auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
  std::string synth_spec_path;
  std::string synth_out = "synth";
  std::uint64_t synth_seed = 1;
  synth->add_option("--spec", synth_spec_path,
                    "Generator spec JSON (defaults to the built-in eight archetypes)");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output directory for corpus.jsonl + truth.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const occlang::SynthSpec spec = synth_spec_path.empty()
                                          ? occlang::SynthSpec::jobs8()
                                          : occlang::SynthSpec::load(synth_spec_path);
      const occlang::SynthResult result = occlang::generate_synthetic(spec, synth_seed);
      std::filesystem::create_directories(synth_out);
      const auto corpus_path = std::filesystem::path(synth_out) / "corpus.jsonl";
      const auto truth_path = std::filesystem::path(synth_out) / "truth.json";
      occlang::write_synthetic(result, corpus_path.string(), truth_path.string());
      std::cout << "wrote " << corpus_path.string() << " (" << result.corpus.size()
                << " users) and " << truth_path.string() << "\n";
      return 0;
    }
    if (*ingest) occlang::stage_ingest(load_config(ingest_opts));
    if (*mine) occlang::stage_mine_phrases(load_config(mine_opts));
    if (*cluster) occlang::stage_cluster_jobs(load_config(cluster_opts));
    if (*features) occlang::stage_features(load_config(features_opts));
    if (*correlate) occlang::stage_correlate(load_config(correlate_opts));
    if (*classify) occlang::stage_classify(load_config(classify_opts));
    if (*report) occlang::stage_report(load_config(report_opts));
    if (*run) {
      std::cerr << "kernels: " << occlang::kernels::isa_name(occlang::kernels::active())
                << "\n";
      occlang::run_pipeline(load_config(run_opts));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sigscope/pipeline.hpp"

namespace {

struct CliState {
  sigscope::PipelineConfig config;
  std::string harmonics_text = "0,7,14,21,28,35,42";
  std::string from_stage = "ingest";
  std::string to_stage = "render";
};

// Every knob lives on the root app: CLI11 only processes config files there,
// so flat `key = value` entries address options by long name. Subcommands
// select the stage range; fallthrough lets flags follow the subcommand name.
void add_pipeline_options(CLI::App& app, CliState& state) {
  app.add_option("--input", state.config.input_path, "Periodic series CSV (label,v1,...,vm)")
      ->group("Ingest");
  app.add_option("--speed", state.config.speed_path,
                 "Optional parallel channel CSV used only for filtering")
      ->group("Ingest");
  app.add_option("--samples-per-period", state.config.samples_per_period,
                 "Samples per period; 0 adopts the first row's width")
      ->capture_default_str()
      ->group("Ingest");
  app.add_option("--volume-min", state.config.volume_filter.min_value,
                 "Lower bound for valid samples")
      ->capture_default_str()
      ->group("Ingest");
  app.add_option("--volume-max", state.config.volume_filter.max_value,
                 "Upper bound for valid samples")
      ->capture_default_str()
      ->group("Ingest");
  app.add_option("--volume-max-violations", state.config.volume_filter.max_violations,
                 "Out-of-range samples tolerated per period")
      ->capture_default_str()
      ->group("Ingest");
  app.add_option("--speed-min", state.config.speed_filter.min_value,
                 "Lower bound for valid speed samples")
      ->capture_default_str()
      ->group("Ingest");
  app.add_option("--speed-max", state.config.speed_filter.max_value,
                 "Upper bound for valid speed samples")
      ->capture_default_str()
      ->group("Ingest");
  app.add_option("--speed-max-violations", state.config.speed_filter.max_violations,
                 "Out-of-range speed samples tolerated per period")
      ->capture_default_str()
      ->group("Ingest");

  app.add_option("--harmonics", state.harmonics_text, "Comma-separated harmonic indices")
      ->capture_default_str()
      ->group("Signatures");
  app.add_flag("--standardize", state.config.standardize,
               "Z-score each signature component across periods")
      ->group("Signatures");

  app.add_option("--clusters", state.config.clusters_path, "Cluster assignment CSV (label,cluster)")
      ->group("Clustering");
  app.add_option("--kmeans-k", state.config.kmeans_k,
                 "Cluster count for seeded k-means when no cluster file is given")
      ->group("Clustering");
  app.add_option("--kmeans-seed", state.config.kmeans_seed, "Seed for k-means")
      ->capture_default_str()
      ->group("Clustering");

  app.add_option("--alpha", state.config.alpha, "Significance level for bands and ellipses")
      ->capture_default_str()
      ->group("Fitting");
  app.add_option("--max-degree", state.config.max_degree, "Highest polynomial degree tried")
      ->capture_default_str()
      ->group("Fitting");
  app.add_option("--eps-r2", state.config.eps_r2,
                 "Minimum adjusted R^2 gain to accept a higher degree")
      ->capture_default_str()
      ->group("Fitting");

  app.add_option("--out", state.config.out_dir, "Directory for stage artifacts")
      ->capture_default_str()
      ->group("Output");
  app.set_config("--config", "", "TOML key=value file; command-line flags win")
      ->group("Output");
  app.allow_config_extras(CLI::config_extras_mode::error);
}

} // namespace

int main(int argc, char** argv) {
  CliState state;
  CLI::App app{"Spectral signatures, planar embedding and outlier taxonomy for periodic series"};
  app.fallthrough();
  app.require_subcommand(1);
  add_pipeline_options(app, state);

  app.add_subcommand("ingest", "Filter raw periods into filtered.csv");
  app.add_subcommand("sign", "Compute spectral signatures into signatures.csv");
  app.add_subcommand("embed", "Embed signatures into the plane as embedding.csv");
  app.add_subcommand("fit", "Fit per-cluster curves and regions into fits.json");
  app.add_subcommand("classify", "Classify embedded points into report.json");
  app.add_subcommand("render", "Render the embedding plot as plot.svg");

  CLI::App* run = app.add_subcommand("run", "Run the full pipeline");
  run->add_option("--from-stage", state.from_stage,
                  "First stage to run (ingest, sign, embed, fit, classify, render)")
      ->capture_default_str();
  run->add_option("--to-stage", state.to_stage, "Last stage to run")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    state.config.harmonics = sigscope::parse_harmonics(state.harmonics_text);
    sigscope::Stage from = sigscope::Stage::Ingest;
    sigscope::Stage to = sigscope::Stage::Render;
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "run") {
      from = sigscope::parse_stage(state.from_stage);
      to = sigscope::parse_stage(state.to_stage);
    } else {
      from = to = sigscope::parse_stage(name);
    }
    sigscope::run_pipeline(state.config, from, to);
  } catch (const sigscope::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sigscope::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const sigscope::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#ifndef SIGSCOPE_PIPELINE_HPP
#define SIGSCOPE_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigscope/classify.hpp"
#include "sigscope/series.hpp"
#include "sigscope/signature.hpp"
#include "sigscope/svg.hpp"

namespace sigscope {

enum class Stage { Ingest = 0, Sign, Embed, Fit, Classify, Render };

const char* to_string(Stage stage);
Stage parse_stage(const std::string& name);

struct PipelineConfig {
  std::string input_path;
  std::string speed_path; // optional parallel channel used only for filtering
  Eigen::Index samples_per_period = 168; // 0 adopts the first row's width
  FilterSpec volume_filter;
  FilterSpec speed_filter;
  HarmonicSelection harmonics;
  bool standardize = false;
  std::string clusters_path; // exclusive with kmeans_k
  int kmeans_k = 0;          // 0 = unset
  std::uint64_t kmeans_seed = 1;
  double alpha = 0.05;
  int max_degree = 3;
  double eps_r2 = 0.01;
  std::string out_dir = "out";
};

/// Rejects invalid configuration before any computation. Path existence is
/// only required for the stages actually being run.
void validate(const PipelineConfig& config, Stage from = Stage::Ingest,
              Stage to = Stage::Render);

/// Everything derived from one cluster's points. Clusters with fewer than 3
/// points get no curve or band; clusters with fewer than 2 get no ellipse.
struct ClusterModel {
  int cluster_id = -1;
  int n_points = 0;
  std::optional<FittedCurve<double>> curve;
  std::optional<double> t_crit;
  std::optional<ConfidenceEllipse<double>> ellipse;
};

struct FitSet {
  double alpha = 0.05;
  std::vector<ClusterModel> clusters; // ascending cluster id
};

FitSet fit_clusters(const Embedding& embedding, double alpha, int max_degree, double eps_r2);

nlohmann::json fitset_to_json(const FitSet& fits);
FitSet fitset_from_json(const nlohmann::json& json);

std::map<int, ConfidenceBand<double>> bands_of(const FitSet& fits);
std::map<int, ConfidenceEllipse<double>> ellipses_of(const FitSet& fits);

/// Stage artifact locations under config.out_dir.
std::string filtered_path(const PipelineConfig& config);
std::string signatures_path(const PipelineConfig& config);
std::string embedding_path(const PipelineConfig& config);
std::string fits_path(const PipelineConfig& config);
std::string report_path(const PipelineConfig& config);
std::string plot_path(const PipelineConfig& config);

/// Runs stages [from, to], each reading the previous stage's artifact and
/// writing its own, so resumed runs reproduce full runs byte for byte.
/// Errors are rethrown with the failing stage's name prefixed.
void run_pipeline(const PipelineConfig& config, Stage from = Stage::Ingest,
                  Stage to = Stage::Render);

} // namespace sigscope

#endif

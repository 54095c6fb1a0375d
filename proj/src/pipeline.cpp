#include "sigscope/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <utility>

#include "sigscope/csv.hpp"

namespace sigscope {

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Sign: return "sign";
    case Stage::Embed: return "embed";
    case Stage::Fit: return "fit";
    case Stage::Classify: return "classify";
    case Stage::Render: return "render";
  }
  return "ingest";
}

Stage parse_stage(const std::string& name) {
  if (name == "ingest") return Stage::Ingest;
  if (name == "sign") return Stage::Sign;
  if (name == "embed") return Stage::Embed;
  if (name == "fit") return Stage::Fit;
  if (name == "classify") return Stage::Classify;
  if (name == "render") return Stage::Render;
  throw ConfigError("unknown stage '" + name +
                    "'; expected one of ingest, sign, embed, fit, classify, render");
}

namespace {

void check_filter(const FilterSpec& spec, const char* name) {
  if (!(spec.min_value <= spec.max_value))
    throw ConfigError(std::string(name) + ": min_value exceeds max_value");
  if (spec.max_violations < 0)
    throw ConfigError(std::string(name) + ": max_violations must be >= 0");
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string(what) + " path is required");
  if (!std::filesystem::exists(path))
    throw ConfigError(std::string(what) + " '" + path + "' does not exist");
}

} // namespace

void validate(const PipelineConfig& config, Stage from, Stage to) {
  if (from > to) throw ConfigError("stage range is empty: --from stage comes after --to stage");
  if (config.out_dir.empty()) throw ConfigError("out_dir must not be empty");
  if (config.samples_per_period < 0) throw ConfigError("samples_per_period must be >= 0");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (config.max_degree < 1) throw ConfigError("max_degree must be >= 1");
  if (config.eps_r2 < 0.0) throw ConfigError("eps_r2 must be >= 0");
  validate(config.harmonics);
  check_filter(config.volume_filter, "volume filter");
  check_filter(config.speed_filter, "speed filter");

  const auto runs = [&](Stage stage) { return from <= stage && stage <= to; };
  if (runs(Stage::Ingest)) {
    require_file(config.input_path, "input file");
    if (!config.speed_path.empty()) require_file(config.speed_path, "speed file");
  }
  if (runs(Stage::Embed)) {
    const bool has_file = !config.clusters_path.empty();
    const bool has_k = config.kmeans_k != 0;
    if (has_file == has_k)
      throw ConfigError(
          "exactly one of a cluster assignment file and a k-means cluster count is required");
    if (has_file) require_file(config.clusters_path, "cluster file");
    if (has_k && config.kmeans_k < 1) throw ConfigError("k-means cluster count must be >= 1");
  }
}

namespace {

std::string artifact(const PipelineConfig& config, const char* name) {
  return (std::filesystem::path(config.out_dir) / name).string();
}

} // namespace

std::string filtered_path(const PipelineConfig& config) { return artifact(config, "filtered.csv"); }
std::string signatures_path(const PipelineConfig& config) {
  return artifact(config, "signatures.csv");
}
std::string embedding_path(const PipelineConfig& config) {
  return artifact(config, "embedding.csv");
}
std::string fits_path(const PipelineConfig& config) { return artifact(config, "fits.json"); }
std::string report_path(const PipelineConfig& config) { return artifact(config, "report.json"); }
std::string plot_path(const PipelineConfig& config) { return artifact(config, "plot.svg"); }

FitSet fit_clusters(const Embedding& embedding, double alpha, int max_degree, double eps_r2) {
  std::map<int, std::vector<Eigen::Index>> members;
  for (std::size_t i = 0; i < embedding.labels.size(); ++i) {
    const auto it = embedding.cluster.find(embedding.labels[i]);
    if (it == embedding.cluster.end())
      throw DataError("label '" + embedding.labels[i] + "' has no cluster assignment");
    members[it->second].push_back(static_cast<Eigen::Index>(i));
  }

  FitSet fits;
  fits.alpha = alpha;
  for (const auto& [id, rows] : members) {
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    VectorX<double> x(n), y(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      x(j) = embedding.coords(rows[static_cast<std::size_t>(j)], 0);
      y(j) = embedding.coords(rows[static_cast<std::size_t>(j)], 1);
    }
    ClusterModel model;
    model.cluster_id = id;
    model.n_points = static_cast<int>(n);
    if (n >= 2) model.ellipse = confidence_ellipse(x, y, alpha, id);
    if (n >= 3) {
      FittedCurve<double> curve = select_degree(x, y, max_degree, id, eps_r2);
      model.t_crit = t_critical(alpha, curve.df);
      model.curve = std::move(curve);
    }
    fits.clusters.push_back(std::move(model));
  }
  return fits;
}

nlohmann::json fitset_to_json(const FitSet& fits) {
  nlohmann::json json;
  json["alpha"] = fits.alpha;
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& model : fits.clusters) {
    nlohmann::json item;
    item["cluster_id"] = model.cluster_id;
    item["n_points"] = model.n_points;
    if (model.curve) {
      const auto& c = *model.curve;
      nlohmann::json curve;
      curve["degree"] = c.degree;
      curve["coeffs"] = std::vector<double>(c.coeffs.data(), c.coeffs.data() + c.coeffs.size());
      curve["ss"] = c.ss;
      curve["df"] = c.df;
      curve["r_squared"] = c.r_squared;
      curve["x_min"] = c.x_min;
      curve["x_max"] = c.x_max;
      std::vector<std::vector<double>> covariance;
      for (Eigen::Index r = 0; r < c.covariance.rows(); ++r)
        covariance.emplace_back(c.covariance.row(r).begin(), c.covariance.row(r).end());
      curve["covariance"] = covariance;
      item["curve"] = curve;
      item["t_crit"] = *model.t_crit;
    } else {
      item["curve"] = nullptr;
      item["t_crit"] = nullptr;
    }
    if (model.ellipse) {
      const auto& e = *model.ellipse;
      item["ellipse"] = {{"center_x", e.center_x},
                         {"center_y", e.center_y},
                         {"semi_axis_x", e.semi_axis_x},
                         {"semi_axis_y", e.semi_axis_y}};
    } else {
      item["ellipse"] = nullptr;
    }
    clusters.push_back(std::move(item));
  }
  json["clusters"] = clusters;
  return json;
}

FitSet fitset_from_json(const nlohmann::json& json) {
  FitSet fits;
  try {
    fits.alpha = json.at("alpha").get<double>();
    for (const auto& item : json.at("clusters")) {
      ClusterModel model;
      model.cluster_id = item.at("cluster_id").get<int>();
      model.n_points = item.at("n_points").get<int>();
      if (!item.at("curve").is_null()) {
        const auto& curve_json = item.at("curve");
        FittedCurve<double> curve;
        curve.cluster_id = model.cluster_id;
        curve.degree = curve_json.at("degree").get<int>();
        const auto coeffs = curve_json.at("coeffs").get<std::vector<double>>();
        curve.coeffs = Eigen::Map<const Eigen::VectorXd>(
            coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
        curve.ss = curve_json.at("ss").get<double>();
        curve.df = curve_json.at("df").get<int>();
        curve.r_squared = curve_json.at("r_squared").get<double>();
        curve.x_min = curve_json.at("x_min").get<double>();
        curve.x_max = curve_json.at("x_max").get<double>();
        const auto covariance = curve_json.at("covariance").get<std::vector<std::vector<double>>>();
        curve.covariance.resize(static_cast<Eigen::Index>(covariance.size()),
                                static_cast<Eigen::Index>(covariance.size()));
        for (std::size_t r = 0; r < covariance.size(); ++r) {
          if (covariance[r].size() != covariance.size())
            throw DataError("malformed fits json: covariance is not square");
          for (std::size_t col = 0; col < covariance[r].size(); ++col)
            curve.covariance(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
                covariance[r][col];
        }
        model.curve = std::move(curve);
        model.t_crit = item.at("t_crit").get<double>();
      }
      if (!item.at("ellipse").is_null()) {
        const auto& ellipse_json = item.at("ellipse");
        ConfidenceEllipse<double> ellipse;
        ellipse.cluster_id = model.cluster_id;
        ellipse.alpha = fits.alpha;
        ellipse.center_x = ellipse_json.at("center_x").get<double>();
        ellipse.center_y = ellipse_json.at("center_y").get<double>();
        ellipse.semi_axis_x = ellipse_json.at("semi_axis_x").get<double>();
        ellipse.semi_axis_y = ellipse_json.at("semi_axis_y").get<double>();
        model.ellipse = ellipse;
      }
      fits.clusters.push_back(std::move(model));
    }
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string("malformed fits json: ") + e.what());
  }
  return fits;
}

std::map<int, ConfidenceBand<double>> bands_of(const FitSet& fits) {
  std::map<int, ConfidenceBand<double>> bands;
  for (const auto& model : fits.clusters)
    if (model.curve) bands.emplace(model.cluster_id,
                                   ConfidenceBand<double>{*model.curve, fits.alpha, *model.t_crit});
  return bands;
}

std::map<int, ConfidenceEllipse<double>> ellipses_of(const FitSet& fits) {
  std::map<int, ConfidenceEllipse<double>> ellipses;
  for (const auto& model : fits.clusters)
    if (model.ellipse) ellipses.emplace(model.cluster_id, *model.ellipse);
  return ellipses;
}

namespace {

void log_stage(Stage stage, const std::string& message) {
  std::cerr << "[" << to_string(stage) << "] " << message << "\n";
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cannot parse '" + path + "': " + e.what());
  }
  return json;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw DataError("failed writing '" + path + "'");
}

void stage_ingest(const PipelineConfig& config) {
  SeriesMatrix volume = parse_series_csv(config.input_path, config.samples_per_period);
  FilterResult result;
  if (config.speed_path.empty()) {
    result = filter_periods(volume, config.volume_filter);
  } else {
    SeriesMatrix speed = parse_series_csv(config.speed_path, config.samples_per_period);
    result = filter_periods(volume, speed, config.volume_filter, config.speed_filter);
  }
  log_stage(Stage::Ingest, "retained " + std::to_string(result.retained.periods.size()) + " of " +
                               std::to_string(volume.periods.size()) + " periods");
  if (!result.rejected.empty())
    log_stage(Stage::Ingest, "rejected: " + join_labels(result.rejected));
  write_series_csv(filtered_path(config), result.retained);
}

void stage_sign(const PipelineConfig& config) {
  SeriesMatrix matrix = parse_series_csv(filtered_path(config), 0);
  std::vector<Signature> signatures = compute_signatures(matrix, config.harmonics);
  if (config.standardize) signatures = standardize_signatures(signatures);
  log_stage(Stage::Sign, std::to_string(signatures.size()) + " signatures of dimension " +
                             std::to_string(config.harmonics.indices.size()));
  write_signatures_csv(signatures_path(config), signatures);
}

void stage_embed(const PipelineConfig& config) {
  const std::vector<Signature> signatures = read_signatures_csv(signatures_path(config));
  Embedding embedding = classical_mds(dissimilarity(signatures), 2);
  if (embedding.negative_eigenvalues > 0)
    log_stage(Stage::Embed,
              "warning: " + std::to_string(embedding.negative_eigenvalues) +
                  " eigenvalues below tolerance (negative mass ratio " +
                  csv::format_double(embedding.negative_mass_ratio) +
                  "); dissimilarities are not exactly Euclidean");
  if (!config.clusters_path.empty())
    embedding = load_clusters(std::move(embedding), config.clusters_path);
  else
    embedding.cluster = kmeans_clusters(embedding, config.kmeans_k, config.kmeans_seed);
  write_embedding_csv(embedding_path(config), embedding);
}

void stage_fit(const PipelineConfig& config) {
  const Embedding embedding = read_embedding_csv(embedding_path(config));
  const FitSet fits = fit_clusters(embedding, config.alpha, config.max_degree, config.eps_r2);
  for (const auto& model : fits.clusters)
    if (model.curve)
      log_stage(Stage::Fit, "cluster " + std::to_string(model.cluster_id) + ": degree " +
                                std::to_string(model.curve->degree) + " over " +
                                std::to_string(model.n_points) + " points");
  write_text_file(fits_path(config), fitset_to_json(fits).dump(2) + "\n");
}

void stage_classify(const PipelineConfig& config) {
  const Embedding embedding = read_embedding_csv(embedding_path(config));
  const FitSet fits = fitset_from_json(read_json_file(fits_path(config)));
  ReportEcho echo;
  echo.alpha = fits.alpha;
  echo.harmonics = config.harmonics.indices;
  echo.standardized = config.standardize;
  for (const auto& model : fits.clusters)
    if (model.curve) echo.degrees[model.cluster_id] = model.curve->degree;
  const OutlierReport report = build_report(embedding, bands_of(fits), ellipses_of(fits), echo);
  log_stage(Stage::Classify,
            "inlier " + std::to_string(report.counts.at(OutlierClass::Inlier)) + ", absolute " +
                std::to_string(report.counts.at(OutlierClass::Absolute)) + ", valid " +
                std::to_string(report.counts.at(OutlierClass::Valid)) + ", ambiguous " +
                std::to_string(report.counts.at(OutlierClass::Ambiguous)));
  write_text_file(report_path(config), report_to_json(report).dump(2) + "\n");
}

void stage_render(const PipelineConfig& config) {
  const Embedding embedding = read_embedding_csv(embedding_path(config));
  const FitSet fits = fitset_from_json(read_json_file(fits_path(config)));
  const OutlierReport report = report_from_json(read_json_file(report_path(config)));
  write_text_file(plot_path(config),
                  render_svg(embedding, bands_of(fits), ellipses_of(fits), report));
}

} // namespace

void run_pipeline(const PipelineConfig& config, Stage from, Stage to) {
  validate(config, from, to);
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + config.out_dir +
                      "': " + ec.message());

  for (int s = static_cast<int>(from); s <= static_cast<int>(to); ++s) {
    const Stage stage = static_cast<Stage>(s);
    try {
      switch (stage) {
        case Stage::Ingest: stage_ingest(config); break;
        case Stage::Sign: stage_sign(config); break;
        case Stage::Embed: stage_embed(config); break;
        case Stage::Fit: stage_fit(config); break;
        case Stage::Classify: stage_classify(config); break;
        case Stage::Render: stage_render(config); break;
      }
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("stage ") + to_string(stage) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(std::string("stage ") + to_string(stage) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("stage ") + to_string(stage) + ": " + e.what());
    }
  }
}

} // namespace sigscope

#include "sigscope/classify.hpp"

#include "sigscope/curve_distance.hpp"

namespace sigscope {

const char* to_string(OutlierClass cls) {
  switch (cls) {
    case OutlierClass::Inlier: return "inlier";
    case OutlierClass::Absolute: return "absolute";
    case OutlierClass::Valid: return "valid";
    case OutlierClass::Ambiguous: return "ambiguous";
  }
  return "inlier";
}

OutlierClass outlier_class_from_string(const std::string& name) {
  if (name == "inlier") return OutlierClass::Inlier;
  if (name == "absolute") return OutlierClass::Absolute;
  if (name == "valid") return OutlierClass::Valid;
  if (name == "ambiguous") return OutlierClass::Ambiguous;
  throw DataError("classify: unknown outlier class '" + name + "'");
}

Verdict classify_point(double x, double y, int home_cluster,
                       const std::map<int, ConfidenceBand<double>>& bands,
                       const std::map<int, ConfidenceEllipse<double>>& ellipses) {
  const auto home_ellipse = ellipses.find(home_cluster);
  if (home_ellipse == ellipses.end())
    throw ConfigError("classify: home cluster " + std::to_string(home_cluster) +
                      " has no confidence ellipse");

  Verdict v;
  v.home_cluster = home_cluster;
  v.in_ellipse = ellipse_contains(home_ellipse->second, x, y);

  const auto home_band = bands.find(home_cluster);
  const bool home_in_band = home_band != bands.end() && band_contains(home_band->second, x, y);
  v.in_band = home_band == bands.end() ? true : home_in_band;

  for (const auto& [id, band] : bands)
    if (id != home_cluster && band_contains(band, x, y)) v.foreign_bands.push_back(id);
  for (const auto& [id, ellipse] : ellipses)
    if (id != home_cluster && ellipse_contains(ellipse, x, y)) v.foreign_ellipses.push_back(id);

  if (v.in_band && v.in_ellipse)
    v.cls = OutlierClass::Inlier;
  else if (v.in_band)
    v.cls = OutlierClass::Valid;
  else if (v.in_ellipse)
    v.cls = OutlierClass::Ambiguous;
  else
    v.cls = OutlierClass::Absolute;

  // Dual membership counts actual containment only; a vacuous home band is
  // not a membership.
  const std::size_t band_memberships = v.foreign_bands.size() + (home_in_band ? 1 : 0);
  const std::size_t ellipse_memberships = v.foreign_ellipses.size() + (v.in_ellipse ? 1 : 0);
  const bool dual = band_memberships >= 2 || ellipse_memberships >= 2;
  if (dual && (v.cls == OutlierClass::Inlier || v.cls == OutlierClass::Valid))
    v.cls = OutlierClass::Ambiguous;
  if (v.cls == OutlierClass::Inlier &&
      (!v.foreign_bands.empty() || !v.foreign_ellipses.empty()))
    v.cls = OutlierClass::Ambiguous;
  return v;
}

OutlierReport build_report(const Embedding& embedding,
                           const std::map<int, ConfidenceBand<double>>& bands,
                           const std::map<int, ConfidenceEllipse<double>>& ellipses,
                           const ReportEcho& echo) {
  OutlierReport report;
  report.echo = echo;
  report.diagnostics = EmbeddingDiagnostics{embedding.clamped_eigenvalues,
                                            embedding.negative_eigenvalues,
                                            embedding.negative_mass_ratio};
  report.counts = {{OutlierClass::Inlier, 0},
                   {OutlierClass::Absolute, 0},
                   {OutlierClass::Valid, 0},
                   {OutlierClass::Ambiguous, 0}};

  std::map<int, int> cluster_sizes;
  for (const auto& label : embedding.labels) {
    const auto it = embedding.cluster.find(label);
    if (it == embedding.cluster.end())
      throw DataError("classify: label '" + label + "' has no cluster assignment");
    ++cluster_sizes[it->second];
  }
  for (const auto& [id, size] : cluster_sizes)
    if (size >= 2 && !ellipses.count(id))
      throw ConfigError("classify: cluster " + std::to_string(id) +
                        " has " + std::to_string(size) + " points but no confidence ellipse");

  std::map<int, FittedCurve<double>> curves;
  for (const auto& [id, band] : bands) curves.emplace(id, band.curve);

  for (std::size_t i = 0; i < embedding.labels.size(); ++i) {
    const auto& label = embedding.labels[i];
    const int home = embedding.cluster.at(label);
    if (cluster_sizes.at(home) == 1) {
      report.known_singletons.push_back(KnownSingleton{label, home});
      continue;
    }
    const double x = embedding.coords(static_cast<Eigen::Index>(i), 0);
    const double y = embedding.coords(static_cast<Eigen::Index>(i), 1);
    Verdict v = classify_point(x, y, home, bands, ellipses);
    v.label = label;
    if (v.cls == OutlierClass::Ambiguous && !curves.empty()) {
      for (const auto& [id, curve] : curves)
        v.curve_distances[id] = point_to_curve_distance(x, y, curve).distance;
      v.resolved_cluster = resolve_ambiguous(x, y, curves).cluster_id;
    }
    ++report.counts[v.cls];
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

nlohmann::json report_to_json(const OutlierReport& report) {
  nlohmann::json json;
  json["schema_version"] = 1;
  json["alpha"] = report.echo.alpha;
  json["harmonics"] = report.echo.harmonics;
  json["standardized"] = report.echo.standardized;

  nlohmann::json degrees = nlohmann::json::object();
  for (const auto& [id, degree] : report.echo.degrees) degrees[std::to_string(id)] = degree;
  json["degrees"] = degrees;

  json["embedding"] = {{"clamped_eigenvalues", report.diagnostics.clamped_eigenvalues},
                       {"negative_eigenvalues", report.diagnostics.negative_eigenvalues},
                       {"negative_mass_ratio", report.diagnostics.negative_mass_ratio}};

  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [cls, count] : report.counts) counts[to_string(cls)] = count;
  json["counts"] = counts;

  nlohmann::json verdicts = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& v : report.verdicts) {
    nlohmann::json item;
    item["label"] = v.label;
    item["cluster"] = v.home_cluster;
    item["class"] = to_string(v.cls);
    item["in_band"] = v.in_band;
    item["in_ellipse"] = v.in_ellipse;
    item["foreign_bands"] = v.foreign_bands;
    item["foreign_ellipses"] = v.foreign_ellipses;
    if (v.resolved_cluster)
      item["resolved_cluster"] = *v.resolved_cluster;
    else
      item["resolved_cluster"] = nullptr;
    nlohmann::json distances = nlohmann::json::object();
    for (const auto& [id, distance] : v.curve_distances)
      distances[std::to_string(id)] = distance;
    item["curve_distances"] = distances;
    verdicts.push_back(item);

    nlohmann::json& bucket = summary[std::to_string(v.home_cluster)];
    if (bucket.is_null())
      bucket = {{"inlier", nlohmann::json::array()},
                {"absolute", nlohmann::json::array()},
                {"valid", nlohmann::json::array()},
                {"ambiguous", nlohmann::json::array()}};
    bucket[to_string(v.cls)].push_back(v.label);
  }
  json["verdicts"] = verdicts;
  json["summary"] = summary;

  nlohmann::json singletons = nlohmann::json::array();
  for (const auto& s : report.known_singletons)
    singletons.push_back({{"label", s.label}, {"cluster", s.cluster}});
  json["known_singletons"] = singletons;
  return json;
}

OutlierReport report_from_json(const nlohmann::json& json) {
  OutlierReport report;
  try {
    report.echo.alpha = json.at("alpha").get<double>();
    report.echo.harmonics = json.at("harmonics").get<std::vector<int>>();
    report.echo.standardized = json.at("standardized").get<bool>();
    for (const auto& [key, value] : json.at("degrees").items())
      report.echo.degrees[std::stoi(key)] = value.get<int>();
    const auto& diagnostics = json.at("embedding");
    report.diagnostics.clamped_eigenvalues = diagnostics.at("clamped_eigenvalues").get<int>();
    report.diagnostics.negative_eigenvalues = diagnostics.at("negative_eigenvalues").get<int>();
    report.diagnostics.negative_mass_ratio = diagnostics.at("negative_mass_ratio").get<double>();
    for (const auto& [name, count] : json.at("counts").items())
      report.counts[outlier_class_from_string(name)] = count.get<int>();
    for (const auto& item : json.at("verdicts")) {
      Verdict v;
      v.label = item.at("label").get<std::string>();
      v.home_cluster = item.at("cluster").get<int>();
      v.cls = outlier_class_from_string(item.at("class").get<std::string>());
      v.in_band = item.at("in_band").get<bool>();
      v.in_ellipse = item.at("in_ellipse").get<bool>();
      v.foreign_bands = item.at("foreign_bands").get<std::vector<int>>();
      v.foreign_ellipses = item.at("foreign_ellipses").get<std::vector<int>>();
      if (!item.at("resolved_cluster").is_null())
        v.resolved_cluster = item.at("resolved_cluster").get<int>();
      for (const auto& [key, value] : item.at("curve_distances").items())
        v.curve_distances[std::stoi(key)] = value.get<double>();
      report.verdicts.push_back(std::move(v));
    }
    for (const auto& item : json.at("known_singletons"))
      report.known_singletons.push_back(
          KnownSingleton{item.at("label").get<std::string>(), item.at("cluster").get<int>()});
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string("classify: malformed report json: ") + e.what());
  }
  return report;
}

} // namespace sigscope

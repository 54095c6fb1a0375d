#ifndef SIGSCOPE_CLASSIFY_HPP
#define SIGSCOPE_CLASSIFY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigscope/ellipse.hpp"
#include "sigscope/embedding.hpp"
#include "sigscope/polyfit.hpp"

namespace sigscope {

enum class OutlierClass { Inlier, Absolute, Valid, Ambiguous };

const char* to_string(OutlierClass cls);
OutlierClass outlier_class_from_string(const std::string& name);

/// Classification of one embedded point against its home cluster's regions.
/// in_band reflects the home test and is vacuously true when the home
/// cluster has no fitted band.
struct Verdict {
  std::string label;
  int home_cluster = -1;
  OutlierClass cls = OutlierClass::Inlier;
  bool in_band = false;
  bool in_ellipse = false;
  std::vector<int> foreign_bands;    // other clusters whose band contains the point
  std::vector<int> foreign_ellipses; // other clusters whose ellipse contains the point
  std::optional<int> resolved_cluster; // set for Ambiguous when any curve exists
  std::map<int, double> curve_distances; // per-cluster distances backing the resolution
};

/// Configuration echoed into the report.
struct ReportEcho {
  double alpha = 0.05;
  std::vector<int> harmonics;
  bool standardized = false;
  std::map<int, int> degrees; // fitted cluster -> selected degree
};

struct KnownSingleton {
  std::string label;
  int cluster = -1;
};

struct EmbeddingDiagnostics {
  int clamped_eigenvalues = 0;
  int negative_eigenvalues = 0;
  double negative_mass_ratio = 0.0;
};

struct OutlierReport {
  std::vector<Verdict> verdicts;
  std::map<OutlierClass, int> counts;
  std::vector<KnownSingleton> known_singletons;
  ReportEcho echo;
  EmbeddingDiagnostics diagnostics;
};

/// Decision table, evaluated against the home cluster's regions first:
///   in_band  &&  in_ellipse and no foreign region contains the point -> Inlier
///   !in_band && !in_ellipse -> Absolute
///   in_band  && !in_ellipse -> Valid
///   !in_band &&  in_ellipse -> Ambiguous
/// Membership in two different clusters' ellipses or two different clusters'
/// bands (home regions count only when they actually exist) overrides an
/// Inlier or Valid outcome to Ambiguous; an Absolute outcome stands. A point
/// whose home cluster lacks a band is likewise downgraded from Inlier to
/// Ambiguous by any foreign containment.
Verdict classify_point(double x, double y, int home_cluster,
                       const std::map<int, ConfidenceBand<double>>& bands,
                       const std::map<int, ConfidenceEllipse<double>>& ellipses);

/// One verdict per embedded point, in embedding order. Points in singleton
/// clusters are reported separately and not classified. Ambiguous verdicts
/// are resolved by minimum point-to-curve distance over the bands' curves.
OutlierReport build_report(const Embedding& embedding,
                           const std::map<int, ConfidenceBand<double>>& bands,
                           const std::map<int, ConfidenceEllipse<double>>& ellipses,
                           const ReportEcho& echo);

nlohmann::json report_to_json(const OutlierReport& report);
OutlierReport report_from_json(const nlohmann::json& json);

} // namespace sigscope

#endif

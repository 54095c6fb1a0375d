#include "doctest.h"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sigscope/classify.hpp"
#include "sigscope/pipeline.hpp"

using namespace sigscope;

namespace {

FittedCurve<double> flat_curve(double level, int cluster_id, double x_min, double x_max) {
  FittedCurve<double> c;
  c.cluster_id = cluster_id;
  c.degree = 0;
  c.coeffs = VectorX<double>::Constant(1, level);
  c.covariance = MatrixX<double>::Constant(1, 1, 0.25); // hw = t * 0.5
  c.ss = 1.0;
  c.df = 4;
  c.x_min = x_min;
  c.x_max = x_max;
  c.r_squared = 0.0;
  return c;
}

// Band of half-width t_crit * 0.5 everywhere, centered on y = level.
ConfidenceBand<double> flat_band(double level, int cluster_id, double t_crit = 2.0) {
  ConfidenceBand<double> band;
  band.curve = flat_curve(level, cluster_id, -1.0, 1.0);
  band.alpha = 0.05;
  band.t_crit = t_crit;
  return band;
}

ConfidenceEllipse<double> circle(double cx, double cy, double r, int cluster_id) {
  ConfidenceEllipse<double> e;
  e.cluster_id = cluster_id;
  e.center_x = cx;
  e.center_y = cy;
  e.semi_axis_x = r;
  e.semi_axis_y = r;
  e.alpha = 0.05;
  return e;
}

} // namespace

TEST_CASE("home decision table covers all four quadrants") {
  // Home cluster 0: band is y in [-1, 1], ellipse is a radius-3 circle, so
  // the ellipse pokes out of the band vertically and vice versa laterally.
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 3.0, 0));

  const auto inlier = classify_point(0.0, 0.5, 0, bands, ellipses);
  CHECK(inlier.cls == OutlierClass::Inlier);
  CHECK(inlier.in_band);
  CHECK(inlier.in_ellipse);

  const auto valid = classify_point(5.0, 0.5, 0, bands, ellipses);
  CHECK(valid.cls == OutlierClass::Valid);
  CHECK(valid.in_band);
  CHECK_FALSE(valid.in_ellipse);

  const auto ambiguous = classify_point(0.0, 2.0, 0, bands, ellipses);
  CHECK(ambiguous.cls == OutlierClass::Ambiguous);
  CHECK_FALSE(ambiguous.in_band);
  CHECK(ambiguous.in_ellipse);

  const auto absolute = classify_point(5.0, 5.0, 0, bands, ellipses);
  CHECK(absolute.cls == OutlierClass::Absolute);
  CHECK_FALSE(absolute.in_band);
  CHECK_FALSE(absolute.in_ellipse);
}

TEST_CASE("membership boundaries are inclusive for both regions") {
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 2.0, 0));

  const auto on_band_edge = classify_point(0.0, 1.0, 0, bands, ellipses);
  CHECK(on_band_edge.in_band);
  const auto on_ellipse_edge = classify_point(2.0, 0.0, 0, bands, ellipses);
  CHECK(on_ellipse_edge.in_ellipse);
  CHECK(on_ellipse_edge.cls == OutlierClass::Inlier);
}

TEST_CASE("a missing home band counts as inside it") {
  std::map<int, ConfidenceBand<double>> bands; // cluster 0 has no band
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 1.0, 0));

  const auto inside = classify_point(0.0, 0.0, 0, bands, ellipses);
  CHECK(inside.cls == OutlierClass::Inlier);
  CHECK(inside.in_band);
  const auto outside = classify_point(4.0, 0.0, 0, bands, ellipses);
  CHECK(outside.cls == OutlierClass::Valid);
  CHECK(outside.in_band);
}

TEST_CASE("a missing home ellipse is a configuration error") {
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  const std::map<int, ConfidenceEllipse<double>> ellipses;
  CHECK_THROWS_AS(classify_point(0.0, 0.0, 0, bands, ellipses), ConfigError);
}

TEST_CASE("membership in two clusters' ellipses overrides Inlier and Valid") {
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 1.0, 0));
  ellipses.emplace(1, circle(0.5, 0.0, 1.0, 1)); // overlaps cluster 0's ellipse
  ellipses.emplace(2, circle(2.0, 0.0, 1.0, 2)); // overlaps cluster 1's ellipse

  // Inside both the home and cluster 1's ellipse: Inlier becomes Ambiguous.
  const auto dual_inlier = classify_point(0.25, 0.0, 0, bands, ellipses);
  CHECK(dual_inlier.cls == OutlierClass::Ambiguous);
  CHECK(dual_inlier.in_band);
  CHECK(dual_inlier.in_ellipse);
  CHECK(dual_inlier.foreign_ellipses == std::vector<int>{1});

  // One foreign ellipse alone is not dual membership: Valid stands.
  const auto valid_single = classify_point(2.9, 0.0, 0, bands, ellipses);
  CHECK(valid_single.in_band);
  CHECK_FALSE(valid_single.in_ellipse);
  CHECK(valid_single.foreign_ellipses == std::vector<int>{2});
  CHECK(valid_single.cls == OutlierClass::Valid);

  // Two foreign ellipses make the membership dual: Valid becomes Ambiguous.
  const auto dual_valid = classify_point(1.2, 0.0, 0, bands, ellipses);
  CHECK_FALSE(dual_valid.in_ellipse);
  CHECK(dual_valid.foreign_ellipses == std::vector<int>{1, 2});
  CHECK(dual_valid.cls == OutlierClass::Ambiguous);
}

TEST_CASE("membership in two clusters' bands overrides Inlier") {
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  bands.emplace(1, flat_band(1.5, 1)); // bands overlap for y in [0.5, 1]
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 2.0, 0));
  ellipses.emplace(1, circle(0.0, 10.0, 1.0, 1));

  const auto dual_band = classify_point(0.0, 0.8, 0, bands, ellipses);
  CHECK(dual_band.in_band);
  CHECK(dual_band.in_ellipse);
  CHECK(dual_band.foreign_bands == std::vector<int>{1});
  CHECK(dual_band.cls == OutlierClass::Ambiguous);
}

TEST_CASE("an Absolute outcome is not overridden by foreign containment") {
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 1.0, 0));
  ellipses.emplace(1, circle(8.0, 8.0, 2.0, 1));
  ellipses.emplace(2, circle(8.5, 8.0, 2.0, 2));

  // Outside every home region, inside two foreign ellipses: still Absolute.
  const auto v = classify_point(8.2, 8.0, 0, bands, ellipses);
  CHECK_FALSE(v.in_band);
  CHECK_FALSE(v.in_ellipse);
  CHECK(v.foreign_ellipses == std::vector<int>{1, 2});
  CHECK(v.cls == OutlierClass::Absolute);
}

TEST_CASE("a vacuous home band never counts toward dual membership") {
  // Home cluster 0 has no band. A Valid point inside one foreign band has a
  // single actual band membership; treating the vacuous home band as a
  // second one would wrongly make it dual.
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(1, flat_band(0.0, 1));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 1.0, 0));
  ellipses.emplace(1, circle(20.0, 0.0, 1.0, 1));

  const auto v = classify_point(5.0, 0.5, 0, bands, ellipses);
  CHECK(v.in_band); // vacuous
  CHECK_FALSE(v.in_ellipse);
  CHECK(v.foreign_bands == std::vector<int>{1});
  CHECK(v.cls == OutlierClass::Valid);
}

TEST_CASE("any foreign containment breaks a bare Inlier claim") {
  // An Inlier owes its status to both home regions; landing in any other
  // cluster's region makes the assignment Ambiguous even without dual
  // membership.
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(1, flat_band(0.0, 1));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 1.0, 0));
  ellipses.emplace(1, circle(20.0, 0.0, 1.0, 1));

  const auto v = classify_point(0.0, 0.5, 0, bands, ellipses);
  CHECK(v.in_band); // vacuous: home cluster has no band
  CHECK(v.in_ellipse);
  CHECK(v.foreign_bands == std::vector<int>{1});
  CHECK(v.cls == OutlierClass::Ambiguous);

  // The same configuration with the foreign band moved away stays Inlier.
  std::map<int, ConfidenceBand<double>> far_bands;
  far_bands.emplace(1, flat_band(50.0, 1));
  const auto clean = classify_point(0.0, 0.5, 0, far_bands, ellipses);
  CHECK(clean.cls == OutlierClass::Inlier);
}

TEST_CASE("the curated embedding reproduces every expected verdict") {
  const auto fx = fixtures::taxonomy_fixture();
  const auto fits = fit_clusters(fx.embedding, fx.alpha, fx.max_degree, fx.eps_r2);

  // The fixture is built for specific fitted degrees; pin them down.
  REQUIRE(fits.clusters.size() == 4);
  CHECK(fits.clusters[0].curve->degree == 1);
  CHECK(fits.clusters[1].curve->degree == 1);
  CHECK(fits.clusters[2].curve->degree == 1);
  CHECK(fits.clusters[3].curve->degree == 0);

  ReportEcho echo;
  echo.alpha = fx.alpha;
  const auto report =
      build_report(fx.embedding, bands_of(fits), ellipses_of(fits), echo);

  REQUIRE(report.verdicts.size() == fx.expected.size());
  for (const auto& v : report.verdicts) {
    const auto it = fx.expected.find(v.label);
    REQUIRE(it != fx.expected.end());
    INFO("label ", v.label);
    CHECK(v.cls == it->second);
  }
  CHECK(report.counts.at(OutlierClass::Inlier) == 58);
  CHECK(report.counts.at(OutlierClass::Absolute) == 2);
  CHECK(report.counts.at(OutlierClass::Valid) == 9);
  CHECK(report.counts.at(OutlierClass::Ambiguous) == 5);
  CHECK(report.known_singletons.empty());

  // No point of this fixture lands in a foreign cluster's regions.
  for (const auto& v : report.verdicts) {
    CHECK(v.foreign_bands.empty());
    CHECK(v.foreign_ellipses.empty());
  }
}

TEST_CASE("ambiguous verdicts resolve to the nearest fitted curve") {
  const auto fx = fixtures::taxonomy_fixture();
  const auto fits = fit_clusters(fx.embedding, fx.alpha, fx.max_degree, fx.eps_r2);
  ReportEcho echo;
  echo.alpha = fx.alpha;
  const auto report =
      build_report(fx.embedding, bands_of(fits), ellipses_of(fits), echo);

  for (const auto& v : report.verdicts) {
    if (v.cls == OutlierClass::Ambiguous) {
      REQUIRE(v.resolved_cluster.has_value());
      CHECK(*v.resolved_cluster == v.home_cluster);
      CHECK(v.curve_distances.size() == 4);
      // The resolved cluster is the argmin of the recorded distances.
      double best = 1e300;
      int best_id = -1;
      for (const auto& [id, d] : v.curve_distances) {
        if (d < best) {
          best = d;
          best_id = id;
        }
      }
      CHECK(best_id == *v.resolved_cluster);
    } else {
      CHECK_FALSE(v.resolved_cluster.has_value());
      CHECK(v.curve_distances.empty());
    }
  }
}

TEST_CASE("classification is invariant to embedding row order") {
  auto fx = fixtures::taxonomy_fixture();
  const auto fits = fit_clusters(fx.embedding, fx.alpha, fx.max_degree, fx.eps_r2);
  ReportEcho echo;
  const auto before = build_report(fx.embedding, bands_of(fits), ellipses_of(fits), echo);

  // Reverse the row order of the embedding.
  Embedding reversed = fx.embedding;
  const Eigen::Index n = reversed.coords.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    reversed.labels[static_cast<std::size_t>(i)] =
        fx.embedding.labels[static_cast<std::size_t>(n - 1 - i)];
    reversed.coords.row(i) = fx.embedding.coords.row(n - 1 - i);
  }
  const auto after = build_report(reversed, bands_of(fits), ellipses_of(fits), echo);

  CHECK(after.counts == before.counts);
  std::map<std::string, OutlierClass> by_label;
  for (const auto& v : before.verdicts) by_label[v.label] = v.cls;
  for (const auto& v : after.verdicts) CHECK(by_label.at(v.label) == v.cls);
}

TEST_CASE("singleton clusters are reported but not classified") {
  auto fx = fixtures::taxonomy_fixture();
  // Append two singleton clusters far from everything.
  const Eigen::Index n = fx.embedding.coords.rows();
  fx.embedding.coords.conservativeResize(n + 2, 2);
  fx.embedding.coords.row(n) << 1000.0, 1000.0;
  fx.embedding.coords.row(n + 1) << -1000.0, -1000.0;
  fx.embedding.labels.push_back("lone_a");
  fx.embedding.labels.push_back("lone_b");
  fx.embedding.cluster["lone_a"] = 17;
  fx.embedding.cluster["lone_b"] = 9;

  const auto fits = fit_clusters(fx.embedding, fx.alpha, fx.max_degree, fx.eps_r2);
  ReportEcho echo;
  const auto report = build_report(fx.embedding, bands_of(fits), ellipses_of(fits), echo);

  CHECK(report.verdicts.size() == fx.expected.size());
  REQUIRE(report.known_singletons.size() == 2);
  CHECK(report.known_singletons[0].label == "lone_a");
  CHECK(report.known_singletons[0].cluster == 17);
  CHECK(report.known_singletons[1].label == "lone_b");
  CHECK(report.known_singletons[1].cluster == 9);
  // Totals are unchanged by the singletons.
  CHECK(report.counts.at(OutlierClass::Inlier) == 58);
}

TEST_CASE("every point receives exactly one class") {
  // Sweep a grid of points against a two-cluster layout and count classes.
  std::map<int, ConfidenceBand<double>> bands;
  bands.emplace(0, flat_band(0.0, 0));
  bands.emplace(1, flat_band(4.0, 1));
  std::map<int, ConfidenceEllipse<double>> ellipses;
  ellipses.emplace(0, circle(0.0, 0.0, 1.5, 0));
  ellipses.emplace(1, circle(0.0, 4.0, 1.5, 1));

  int seen[4] = {0, 0, 0, 0};
  for (double x = -3.0; x <= 3.0; x += 0.25) {
    for (double y = -3.0; y <= 7.0; y += 0.25) {
      const auto v = classify_point(x, y, 0, bands, ellipses);
      seen[static_cast<int>(v.cls)] += 1;
    }
  }
  CHECK(seen[static_cast<int>(OutlierClass::Inlier)] > 0);
  CHECK(seen[static_cast<int>(OutlierClass::Absolute)] > 0);
  CHECK(seen[static_cast<int>(OutlierClass::Valid)] > 0);
  CHECK(seen[static_cast<int>(OutlierClass::Ambiguous)] > 0);
}

TEST_CASE("build_report rejects an unassigned label") {
  auto fx = fixtures::taxonomy_fixture();
  const auto fits = fit_clusters(fx.embedding, fx.alpha, fx.max_degree, fx.eps_r2);
  fx.embedding.cluster.erase(fx.embedding.labels.front());
  ReportEcho echo;
  CHECK_THROWS_AS(build_report(fx.embedding, bands_of(fits), ellipses_of(fits), echo),
                  DataError);
}

TEST_CASE("reports survive a json round trip") {
  const auto fx = fixtures::taxonomy_fixture();
  const auto fits = fit_clusters(fx.embedding, fx.alpha, fx.max_degree, fx.eps_r2);
  ReportEcho echo;
  echo.alpha = fx.alpha;
  echo.harmonics = {0, 7, 14};
  echo.standardized = true;
  for (const auto& model : fits.clusters)
    if (model.curve) echo.degrees[model.cluster_id] = model.curve->degree;
  auto report = build_report(fx.embedding, bands_of(fits), ellipses_of(fits), echo);
  report.diagnostics.clamped_eigenvalues = 3;
  report.diagnostics.negative_eigenvalues = 1;
  report.diagnostics.negative_mass_ratio = 0.0125;

  const auto round = report_from_json(report_to_json(report));

  CHECK(round.counts == report.counts);
  CHECK(round.echo.alpha == report.echo.alpha);
  CHECK(round.echo.harmonics == report.echo.harmonics);
  CHECK(round.echo.standardized == report.echo.standardized);
  CHECK(round.echo.degrees == report.echo.degrees);
  CHECK(round.diagnostics.clamped_eigenvalues == 3);
  CHECK(round.diagnostics.negative_eigenvalues == 1);
  CHECK(round.diagnostics.negative_mass_ratio == 0.0125);
  REQUIRE(round.verdicts.size() == report.verdicts.size());
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    const auto& a = report.verdicts[i];
    const auto& b = round.verdicts[i];
    CHECK(a.label == b.label);
    CHECK(a.home_cluster == b.home_cluster);
    CHECK(a.cls == b.cls);
    CHECK(a.in_band == b.in_band);
    CHECK(a.in_ellipse == b.in_ellipse);
    CHECK(a.foreign_bands == b.foreign_bands);
    CHECK(a.foreign_ellipses == b.foreign_ellipses);
    CHECK(a.resolved_cluster == b.resolved_cluster);
    CHECK(a.curve_distances == b.curve_distances);
  }
  CHECK(round.known_singletons.size() == report.known_singletons.size());
}

TEST_CASE("class names round trip through their string forms") {
  for (const auto cls : {OutlierClass::Inlier, OutlierClass::Absolute,
                         OutlierClass::Valid, OutlierClass::Ambiguous})
    CHECK(outlier_class_from_string(to_string(cls)) == cls);
  CHECK_THROWS_AS(outlier_class_from_string("Sideways"), DataError);
}

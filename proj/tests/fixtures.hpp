#ifndef SIGSCOPE_TESTS_FIXTURES_HPP
#define SIGSCOPE_TESTS_FIXTURES_HPP

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "sigscope/classify.hpp"

namespace fixtures {

struct TaxonomyFixture {
  sigscope::Embedding embedding;
  std::map<std::string, sigscope::OutlierClass> expected;
  double alpha = 0.05;
  int max_degree = 3;
  double eps_r2 = 0.01;
};

/// Four-cluster plane layout with a known taxonomy: 58 inliers, 2 absolute,
/// 9 valid and 5 ambiguous points. Clusters 0..2 sit on unit-slope lines at
/// vertical offsets 0/100/200 and select degree 1; cluster 3 is a flat strip
/// at 300 and selects degree 0. Residual patterns are frozen literals chosen
/// orthogonal to {1, x} so each cluster's least-squares fit is exact, which
/// keeps every region test a clean hand computation. All region margins are
/// at least 15% of the deciding boundary.
inline TaxonomyFixture taxonomy_fixture() {
  // Alternating residuals projected orthogonal to {1, x} on the core grids,
  // scaled to max 0.05 (12-point grid) and 0.2 (22-point grid).
  static const std::vector<double> kCore12 = {
      0.032352941176470591,  -0.050000000000000003, 0.035882352941176469,
      -0.046470588235294125, 0.039411764705882361,  -0.04294117647058824,
      0.042941176470588233,  -0.039411764705882361, 0.046470588235294125,
      -0.035882352941176469, 0.050000000000000003,  -0.032352941176470591};
  static const std::vector<double> kCore22 = {
      0.15555555555555553,  -0.20000000000000001, 0.15999999999999998,
      -0.19555555555555557, 0.16444444444444442,  -0.19111111111111112,
      0.16888888888888887,  -0.18666666666666665, 0.17333333333333331,
      -0.1822222222222222,  0.17777777777777778,  -0.17777777777777778,
      0.18222222222222226,  -0.17333333333333331, 0.1866666666666667,
      -0.16888888888888887, 0.19111111111111112,  -0.16444444444444439,
      0.19555555555555557,  -0.15999999999999995, 0.20000000000000001,
      -0.15555555555555553};

  const double g = 3.0; // vertical escape distance for ambiguous points
  const double f = 5.0; // vertical escape distance for absolute points

  std::vector<std::string> labels;
  std::vector<double> xs, ys;
  std::vector<int> clusters;
  std::map<std::string, sigscope::OutlierClass> expected;

  const auto add = [&](const std::string& label, double x, double y, int cluster,
                       sigscope::OutlierClass cls) {
    labels.push_back(label);
    xs.push_back(x);
    ys.push_back(y);
    clusters.push_back(cluster);
    expected[label] = cls;
  };

  char name[32];
  for (int c = 0; c < 3; ++c) {
    const double h = 100.0 * c;
    for (int i = 0; i < 12; ++i) {
      const double x = i / 11.0;
      // Cluster 2 offsets its core by -g/12 to balance its single ambiguous
      // point, so the least-squares line stays y = h + x exactly.
      const double e = c < 2 ? kCore12[i] : kCore12[i] - g / 12.0;
      std::snprintf(name, sizeof name, "c%d_core%02d", c, i);
      add(name, x, h + x + e, c, sigscope::OutlierClass::Inlier);
    }
    const double far_x[3] = {29.8, 30.0, 30.2};
    for (int i = 0; i < 3; ++i) {
      std::snprintf(name, sizeof name, "c%d_far%d", c, i);
      // On the fitted line but far out: inside the band, outside the ellipse.
      add(name, far_x[i], h + far_x[i], c, sigscope::OutlierClass::Valid);
    }
    std::snprintf(name, sizeof name, "c%d_up", c);
    add(name, 0.5, h + 0.5 + g, c, sigscope::OutlierClass::Ambiguous);
    if (c < 2) {
      std::snprintf(name, sizeof name, "c%d_dn", c);
      add(name, 0.5, h + 0.5 - g, c, sigscope::OutlierClass::Ambiguous);
    }
  }
  for (int i = 0; i < 22; ++i) {
    std::snprintf(name, sizeof name, "c3_core%02d", i);
    add(name, i / 21.0, 300.0 + kCore22[i], 3, sigscope::OutlierClass::Inlier);
  }
  // Mirror pair: keeps the degree-0 selection and the zero-slope fit, yet
  // escapes both the strip band and the ellipse (diagonal escape at far x).
  add("c3_hi", 30.0, 300.0 + f, 3, sigscope::OutlierClass::Absolute);
  add("c3_lo", 30.0, 300.0 - f, 3, sigscope::OutlierClass::Absolute);

  TaxonomyFixture fixture;
  fixture.expected = expected;
  fixture.embedding.labels = labels;
  fixture.embedding.coords.resize(static_cast<Eigen::Index>(labels.size()), 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    fixture.embedding.coords(static_cast<Eigen::Index>(i), 0) = xs[i];
    fixture.embedding.coords(static_cast<Eigen::Index>(i), 1) = ys[i];
    fixture.embedding.cluster[labels[i]] = clusters[i];
  }
  return fixture;
}

} // namespace fixtures

#endif

#include "sigscope/embedding.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "sigscope/csv.hpp"
#include "sigscope/mds.hpp"

namespace sigscope {

DissimilarityMatrix dissimilarity(const std::vector<Signature>& signatures) {
  const auto n = static_cast<Eigen::Index>(signatures.size());
  if (n < 2) throw DataError("embedding: need at least 2 signatures");
  const Eigen::Index dim = signatures.front().values.size();
  for (const auto& s : signatures)
    if (s.values.size() != dim)
      throw DataError("embedding: signature dimension mismatch: '" + signatures.front().label +
                      "' has " + std::to_string(dim) + " components, '" + s.label + "' has " +
                      std::to_string(s.values.size()));

  Eigen::MatrixXd points(n, dim);
  DissimilarityMatrix out;
  for (Eigen::Index i = 0; i < n; ++i) {
    points.row(i) = signatures[static_cast<std::size_t>(i)].values.transpose();
    out.labels.push_back(signatures[static_cast<std::size_t>(i)].label);
  }
  out.d = squared_distance_matrix(points);
  return out;
}

Embedding classical_mds(const DissimilarityMatrix& d, Eigen::Index p) {
  const MdsSolution<double> solution = classical_mds(d.d, p);
  Embedding embedding;
  embedding.labels = d.labels;
  embedding.coords = solution.coords;
  embedding.eigenvalues = solution.eigenvalues;
  embedding.clamped_eigenvalues = solution.clamped;
  embedding.negative_eigenvalues = solution.negative_beyond_tol;
  embedding.negative_mass_ratio = solution.negative_mass_ratio;
  return embedding;
}

Embedding load_clusters(Embedding embedding, const std::string& path) {
  const auto rows = csv::load(path, "embedding");
  const std::set<std::string> known(embedding.labels.begin(), embedding.labels.end());
  std::map<std::string, int> assign;

  std::size_t begin = 0;
  if (!rows.empty() && csv::looks_like_header(rows[0])) begin = 1;
  for (std::size_t r = begin; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = std::to_string(row.line_no);
    if (row.cells.size() != 2)
      throw DataError("embedding: cluster file row " + line + " must be 'label,cluster_id'");
    const std::string& label = row.cells[0];
    long id = 0;
    if (label.empty()) throw DataError("embedding: cluster file row " + line + " has an empty label");
    if (!csv::parse_int(row.cells[1], id) || id < 0)
      throw DataError("embedding: cluster file row " + line + ": invalid cluster id '" +
                      row.cells[1] + "'");
    if (!known.count(label))
      throw DataError("embedding: cluster file names unknown label '" + label + "'");
    if (!assign.emplace(label, static_cast<int>(id)).second)
      throw DataError("embedding: cluster file assigns label '" + label + "' twice");
  }
  for (const auto& label : embedding.labels)
    if (!assign.count(label))
      throw DataError("embedding: cluster file is missing label '" + label + "'");

  embedding.cluster = std::move(assign);
  return embedding;
}

std::map<std::string, int> kmeans_clusters(const Embedding& embedding, int k,
                                           std::uint64_t seed) {
  const Eigen::Index n = embedding.coords.rows();
  const Eigen::Index p = embedding.coords.cols();
  if (n < 1 || static_cast<std::size_t>(n) != embedding.labels.size())
    throw DataError("embedding: k-means needs labeled coordinates");
  if (k < 1 || static_cast<Eigen::Index>(k) > n)
    throw ConfigError("embedding: k-means requires 1 <= k <= " + std::to_string(n) +
                      ", got " + std::to_string(k));

  std::mt19937_64 rng(seed);
  // Uniform [0,1) from raw bits; avoids distribution objects whose output
  // differs across standard libraries.
  const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Eigen::MatrixXd centers(k, p);
  centers.row(0) =
      embedding.coords.row(static_cast<Eigen::Index>(unit() * static_cast<double>(n)) % n);
  Eigen::VectorXd nearest =
      (embedding.coords.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = unit() * total;
      double cumulative = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += nearest(i);
        if (cumulative > target) {
          pick = i;
          break;
        }
        pick = i;
      }
    } else {
      pick = static_cast<Eigen::Index>(c) % n; // all points coincide with a center
    }
    centers.row(c) = embedding.coords.row(pick);
    nearest = nearest.cwiseMin(
        (embedding.coords.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = (embedding.coords.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d2 = (embedding.coords.row(i) - centers.row(c)).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = c;
        }
      }
      if (assign[static_cast<std::size_t>(i)] != best) {
        assign[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;
    for (int c = 0; c < k; ++c) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(p);
      Eigen::Index members = 0;
      for (Eigen::Index i = 0; i < n; ++i)
        if (assign[static_cast<std::size_t>(i)] == c) {
          sum += embedding.coords.row(i);
          ++members;
        }
      if (members > 0) centers.row(c) = sum / static_cast<double>(members);
    }
  }

  // Stable ids: clusters numbered by their first member's position.
  std::vector<int> renamed(static_cast<std::size_t>(k), -1);
  int next = 0;
  std::map<std::string, int> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    int& id = renamed[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    if (id == -1) id = next++;
    out[embedding.labels[static_cast<std::size_t>(i)]] = id;
  }
  return out;
}

void write_embedding_csv(const std::string& path, const Embedding& embedding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("embedding: cannot write '" + path + "'");
  out << "# clamped=" << embedding.clamped_eigenvalues
      << " negative=" << embedding.negative_eigenvalues
      << " negative_mass_ratio=" << csv::format_double(embedding.negative_mass_ratio) << '\n';
  for (std::size_t i = 0; i < embedding.labels.size(); ++i) {
    const auto& label = embedding.labels[i];
    const auto it = embedding.cluster.find(label);
    if (it == embedding.cluster.end())
      throw DataError("embedding: label '" + label + "' has no cluster assignment");
    out << label;
    for (Eigen::Index j = 0; j < embedding.coords.cols(); ++j)
      out << ',' << csv::format_double(embedding.coords(static_cast<Eigen::Index>(i), j));
    out << ',' << it->second << '\n';
  }
  if (!out) throw DataError("embedding: failed writing '" + path + "'");
}

Embedding read_embedding_csv(const std::string& path) {
  const auto rows = csv::load(path, "embedding");
  Embedding embedding;
  std::vector<Eigen::RowVectorXd> coords;
  std::set<std::string> seen;
  Eigen::Index dim = 0;

  std::size_t begin = 0;
  if (!rows.empty() && !rows[0].cells.empty() && rows[0].cells[0].rfind('#', 0) == 0) {
    int clamped = 0, negative = 0;
    double ratio = 0.0;
    if (std::sscanf(rows[0].cells[0].c_str(), "# clamped=%d negative=%d negative_mass_ratio=%lf",
                    &clamped, &negative, &ratio) == 3) {
      embedding.clamped_eigenvalues = clamped;
      embedding.negative_eigenvalues = negative;
      embedding.negative_mass_ratio = ratio;
    }
    begin = 1;
  }
  if (begin < rows.size() && csv::looks_like_header(rows[begin])) ++begin;

  for (std::size_t r = begin; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = std::to_string(row.line_no);
    if (row.cells.size() < 3)
      throw DataError("embedding: row " + line + " must be 'label,coords...,cluster_id'");
    const std::string& label = row.cells[0];
    if (label.empty()) throw DataError("embedding: row " + line + " has an empty label");
    if (!seen.insert(label).second)
      throw DataError("embedding: duplicate label '" + label + "' at row " + line);

    const auto d = static_cast<Eigen::Index>(row.cells.size()) - 2;
    if (dim == 0) dim = d;
    if (d != dim)
      throw DataError("embedding: row " + line + " has " + std::to_string(d) +
                      " coordinates, expected " + std::to_string(dim));
    Eigen::RowVectorXd point(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      double value = 0.0;
      if (!csv::parse_double(row.cells[static_cast<std::size_t>(j) + 1], value))
        throw DataError("embedding: row " + line + ", column " + std::to_string(j + 2) +
                        ": cannot parse '" + row.cells[static_cast<std::size_t>(j) + 1] +
                        "' as a finite number");
      point(j) = value;
    }
    long id = 0;
    if (!csv::parse_int(row.cells.back(), id) || id < 0)
      throw DataError("embedding: row " + line + ": invalid cluster id '" + row.cells.back() +
                      "'");
    embedding.labels.push_back(label);
    embedding.cluster[label] = static_cast<int>(id);
    coords.push_back(point);
  }
  if (coords.empty()) throw DataError("embedding: no data rows in '" + path + "'");

  embedding.coords.resize(static_cast<Eigen::Index>(coords.size()), dim);
  for (std::size_t i = 0; i < coords.size(); ++i)
    embedding.coords.row(static_cast<Eigen::Index>(i)) = coords[i];
  return embedding;
}

} // namespace sigscope

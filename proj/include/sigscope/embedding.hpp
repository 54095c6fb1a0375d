#ifndef SIGSCOPE_EMBEDDING_HPP
#define SIGSCOPE_EMBEDDING_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sigscope/signature.hpp"

namespace sigscope {

/// Pairwise squared Euclidean distances between signatures.
struct DissimilarityMatrix {
  Eigen::MatrixXd d;
  std::vector<std::string> labels;
};

/// Low-dimensional coordinates with optional cluster annotation.
///
/// clamped/negative counts and negative_mass_ratio describe the spectrum of
/// the centered Gram matrix: near-zero negative eigenvalues among the
/// retained ones are clamped, deeper negative mass is reported as a warning
/// rather than an error.
struct Embedding {
  std::vector<std::string> labels;
  Eigen::MatrixXd coords;      // n x p
  Eigen::VectorXd eigenvalues; // all n, non-increasing (empty when loaded from CSV)
  std::map<std::string, int> cluster;
  int clamped_eigenvalues = 0;
  int negative_eigenvalues = 0;
  double negative_mass_ratio = 0.0;
};

DissimilarityMatrix dissimilarity(const std::vector<Signature>& signatures);

Embedding classical_mds(const DissimilarityMatrix& d, Eigen::Index p = 2);

/// Annotates the embedding from a `label,cluster_id` CSV. The file must map
/// every embedding label exactly once and contain no other labels.
Embedding load_clusters(Embedding embedding, const std::string& path);

/// Deterministic seeded k-means on the embedding coordinates, for use when
/// no external cluster model is available. Cluster ids are assigned by the
/// order of each cluster's first member.
std::map<std::string, int> kmeans_clusters(const Embedding& embedding, int k,
                                           std::uint64_t seed);

/// Rows `label,x1,...,xp,cluster`; an optional leading `#`-prefixed line
/// carries the eigenvalue diagnostics so they survive staged runs.
void write_embedding_csv(const std::string& path, const Embedding& embedding);
Embedding read_embedding_csv(const std::string& path);

} // namespace sigscope

#endif

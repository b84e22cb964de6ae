#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dfp/diffusion.hpp"
#include "dfp/document.hpp"
#include "dfp/vocabulary.hpp"

namespace dfp {

/// Coordinate-selection projection: keeps the coordinates in
/// `indices` (ascending, distinct) and drops every other one.
struct ProjectionMap {
    enum class Method { Opc, Random };
    std::vector<std::uint32_t> indices;
    std::size_t source_dim = 0;
    Method method = Method::Opc;
    std::uint64_t seed = 0;  // random method only
};

/// Rectangular row store for fingerprint or bag-of-words vectors.
struct FeatureMatrix {
    std::vector<std::string> ids;
    std::vector<std::string> labels;  // "" marks an unlabeled row
    std::size_t dim = 0;
    std::vector<double> data;  // row-major

    std::size_t rows() const { return ids.size(); }
    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * dim, dim};
    }
    void add_row(std::string id, std::span<const double> values,
                 std::string label = "");
    bool fully_labeled() const;
};

struct CVReport {
    std::vector<double> fold_accuracies;  // shuffle-major
    double mean_accuracy = 0.0;
    std::size_t folds = 0;
    std::size_t shuffles = 0;
    bool stratified = false;
    std::string classifier = "nearest-centroid-l1";
};

/// Indices of the d largest centrality components (ties broken by
/// ascending index), stored ascending.
ProjectionMap opc_projection(const Fingerprint& centrality, std::size_t d);

/// d distinct coordinates sampled uniformly from the
/// "random-projection" sub-stream of `seed`, stored ascending.
ProjectionMap random_projection(std::size_t dim, std::size_t d,
                                std::uint64_t seed);

/// Restriction of every row to the map's coordinates; the kept values
/// are bit-identical to the input.
FeatureMatrix project(const FeatureMatrix& rows, const ProjectionMap& map);

struct BowVector {
    std::vector<double> values;
    /// True when no token was in the vocabulary (the vector is zero).
    bool empty_support = false;
};

/// Occurrence counts per vocabulary index, normalized to sum 1 unless
/// `normalize` is off.
BowVector bow_vector(const Document& doc, const Vocabulary& vocab,
                     bool normalize = true);

using Centroids = std::map<std::string, std::vector<double>>;

/// Per-label component-wise mean of the training rows.
Centroids centroid_classifier_train(const FeatureMatrix& train);

/// Label of the L1-nearest centroid; ties resolve to the
/// lexicographically smallest label.
std::string centroid_classifier_predict(const Centroids& centroids,
                                        std::span<const double> row);

/// k-fold cross-validation of the nearest-centroid classifier over
/// `shuffles` seeded permutations. Rows are first put in canonical id
/// order so the result does not depend on input order. Folds are
/// stratified by label when every class has at least k rows.
CVReport kfold_cv(const FeatureMatrix& rows, std::size_t k,
                  std::size_t shuffles, std::uint64_t seed,
                  unsigned threads = 1);

struct SplitEval {
    double accuracy = 0.0;
    /// Set when no test label occurs in the training set.
    bool labels_disjoint = false;
};

/// Centroids from `train`, accuracy on `test`.
SplitEval train_test_split_eval(const FeatureMatrix& train,
                                const FeatureMatrix& test);

/// Spearman rank correlation with average ranks on ties. Throws
/// DegenerateInput when either vector is constant.
double spearman(std::span<const double> x, std::span<const double> y);

struct VarianceCentralityReport {
    double rho_var = 0.0;
    double rho_mean = 0.0;
};

/// Spearman correlation of the per-coordinate variance and mean of the
/// fingerprint rows against a centrality vector.
VarianceCentralityReport variance_centrality_report(
    const FeatureMatrix& fingerprints, const Fingerprint& centrality);

}  // namespace dfp

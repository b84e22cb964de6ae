#include "dfp/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dfp/errors.hpp"
#include "dfp/parallel.hpp"
#include "dfp/rng.hpp"

namespace dfp {

void FeatureMatrix::add_row(std::string id, std::span<const double> values,
                            std::string label) {
    if (rows() == 0) {
        dim = values.size();
    } else if (values.size() != dim) {
        throw DimensionMismatch("feature matrix: ragged row '" + id + "'");
    }
    ids.push_back(std::move(id));
    labels.push_back(std::move(label));
    data.insert(data.end(), values.begin(), values.end());
}

bool FeatureMatrix::fully_labeled() const {
    return !labels.empty() &&
           std::none_of(labels.begin(), labels.end(),
                        [](const std::string& l) { return l.empty(); });
}

ProjectionMap opc_projection(const Fingerprint& centrality, std::size_t d) {
    const std::size_t n = centrality.values.size();
    if (d < 1 || d > n)
        throw BadDimension("opc_projection: d must be in [1, dim]");
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (centrality.values[a] != centrality.values[b])
                             return centrality.values[a] > centrality.values[b];
                         return a < b;
                     });
    ProjectionMap map;
    map.method = ProjectionMap::Method::Opc;
    map.source_dim = n;
    map.indices.assign(order.begin(), order.begin() + d);
    std::sort(map.indices.begin(), map.indices.end());
    return map;
}

ProjectionMap random_projection(std::size_t dim, std::size_t d,
                                std::uint64_t seed) {
    if (d < 1 || d > dim)
        throw BadDimension("random_projection: d must be in [1, dim]");
    Rng rng(seed, "random-projection");
    ProjectionMap map;
    map.method = ProjectionMap::Method::Random;
    map.source_dim = dim;
    map.seed = seed;
    map.indices = rng.sample_without_replacement(dim, d);
    std::sort(map.indices.begin(), map.indices.end());
    return map;
}

FeatureMatrix project(const FeatureMatrix& rows, const ProjectionMap& map) {
    if (rows.dim != map.source_dim)
        throw DimensionMismatch("project: row length != map source dimension");
    FeatureMatrix out;
    out.ids = rows.ids;
    out.labels = rows.labels;
    out.dim = map.indices.size();
    out.data.reserve(rows.rows() * out.dim);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        const auto row = rows.row(i);
        for (auto idx : map.indices) out.data.push_back(row[idx]);
    }
    return out;
}

BowVector bow_vector(const Document& doc, const Vocabulary& vocab,
                     bool normalize) {
    BowVector bow;
    bow.values.assign(vocab.size(), 0.0);
    double total = 0.0;
    for (const auto& t : doc.tokens) {
        if (auto id = vocab.find(t)) {
            bow.values[*id] += 1.0;
            total += 1.0;
        }
    }
    if (total == 0.0) {
        bow.empty_support = true;
        return bow;
    }
    if (normalize) {
        for (double& x : bow.values) x /= total;
    }
    return bow;
}

Centroids centroid_classifier_train(const FeatureMatrix& train) {
    if (train.rows() == 0) throw TooFewRows("centroid train: no rows");
    if (!train.fully_labeled())
        throw MissingLabels("centroid train: every row needs a label");
    Centroids out;
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < train.rows(); ++i) {
        auto& centroid = out[train.labels[i]];
        if (centroid.empty()) centroid.assign(train.dim, 0.0);
        const auto row = train.row(i);
        for (std::size_t j = 0; j < train.dim; ++j) centroid[j] += row[j];
        ++counts[train.labels[i]];
    }
    for (auto& [label, centroid] : out) {
        const double c = static_cast<double>(counts[label]);
        for (double& x : centroid) x /= c;
    }
    return out;
}

std::string centroid_classifier_predict(const Centroids& centroids,
                                        std::span<const double> row) {
    if (centroids.empty())
        throw MissingLabels("centroid predict: no centroids");
    const std::string* best = nullptr;
    double best_dist = 0.0;
    for (const auto& [label, centroid] : centroids) {
        if (centroid.size() != row.size())
            throw DimensionMismatch("centroid predict: dimension mismatch");
        double dist = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j)
            dist += std::abs(row[j] - centroid[j]);
        // Map order is lexicographic, so strict < keeps the smallest
        // label on ties.
        if (!best || dist < best_dist) {
            best = &label;
            best_dist = dist;
        }
    }
    return *best;
}

namespace {

double fold_accuracy(const FeatureMatrix& rows,
                     const std::vector<std::uint32_t>& train_idx,
                     const std::vector<std::uint32_t>& test_idx) {
    FeatureMatrix train;
    for (auto i : train_idx) train.add_row(rows.ids[i], rows.row(i), rows.labels[i]);
    const auto centroids = centroid_classifier_train(train);
    std::size_t correct = 0;
    for (auto i : test_idx) {
        if (centroid_classifier_predict(centroids, rows.row(i)) == rows.labels[i])
            ++correct;
    }
    return test_idx.empty()
               ? 0.0
               : static_cast<double>(correct) / static_cast<double>(test_idx.size());
}

}  // namespace

CVReport kfold_cv(const FeatureMatrix& rows, std::size_t k,
                  std::size_t shuffles, std::uint64_t seed, unsigned threads) {
    if (k < 2) throw InvalidInput("kfold_cv: k must be >= 2");
    if (shuffles < 1) throw InvalidInput("kfold_cv: shuffles must be >= 1");
    if (rows.rows() < k)
        throw TooFewRows("kfold_cv: fewer rows than folds");
    if (!rows.fully_labeled())
        throw MissingLabels("kfold_cv: every row needs a label");

    // Canonical order first: the fold assignment depends only on ids
    // and the seed, not on input row order.
    std::vector<std::uint32_t> canonical(rows.rows());
    std::iota(canonical.begin(), canonical.end(), 0);
    std::sort(canonical.begin(), canonical.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  if (rows.ids[a] != rows.ids[b]) return rows.ids[a] < rows.ids[b];
                  return a < b;
              });

    std::map<std::string, std::size_t> class_counts;
    for (const auto& l : rows.labels) ++class_counts[l];
    const bool stratify =
        std::all_of(class_counts.begin(), class_counts.end(),
                    [&](const auto& kv) { return kv.second >= k; });

    CVReport report;
    report.folds = k;
    report.shuffles = shuffles;
    report.stratified = stratify;
    report.fold_accuracies.assign(shuffles * k, 0.0);

    std::vector<std::vector<std::vector<std::uint32_t>>> folds_per_shuffle(shuffles);
    for (std::size_t s = 0; s < shuffles; ++s) {
        auto perm = canonical;
        Rng rng(seed, "cv-shuffle", s);
        rng.shuffle(perm);

        auto& folds = folds_per_shuffle[s];
        folds.assign(k, {});
        if (stratify) {
            // Deal each class round-robin so every fold sees every label.
            std::map<std::string, std::size_t> next_fold;
            for (auto i : perm) {
                auto& f = next_fold[rows.labels[i]];
                folds[f].push_back(i);
                f = (f + 1) % k;
            }
        } else {
            const std::size_t n = perm.size();
            for (std::size_t f = 0; f < k; ++f) {
                const std::size_t lo = f * n / k;
                const std::size_t hi = (f + 1) * n / k;
                folds[f].assign(perm.begin() + lo, perm.begin() + hi);
            }
        }
    }

    parallel_for(shuffles * k, threads, [&](std::size_t slot) {
        const std::size_t s = slot / k;
        const std::size_t f = slot % k;
        const auto& folds = folds_per_shuffle[s];
        std::vector<std::uint32_t> train_idx;
        for (std::size_t other = 0; other < k; ++other) {
            if (other == f)
                continue;
            train_idx.insert(train_idx.end(), folds[other].begin(),
                             folds[other].end());
        }
        report.fold_accuracies[slot] = fold_accuracy(rows, train_idx, folds[f]);
    });

    report.mean_accuracy =
        std::accumulate(report.fold_accuracies.begin(),
                        report.fold_accuracies.end(), 0.0) /
        static_cast<double>(report.fold_accuracies.size());
    return report;
}

SplitEval train_test_split_eval(const FeatureMatrix& train,
                                const FeatureMatrix& test) {
    if (train.dim != test.dim)
        throw DimensionMismatch("split eval: train/test dimensions differ");
    if (!test.fully_labeled())
        throw MissingLabels("split eval: test rows need labels");
    const auto centroids = centroid_classifier_train(train);
    SplitEval eval;
    eval.labels_disjoint =
        std::none_of(test.labels.begin(), test.labels.end(),
                     [&](const std::string& l) { return centroids.contains(l); });
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.rows(); ++i) {
        if (centroid_classifier_predict(centroids, test.row(i)) == test.labels[i])
            ++correct;
    }
    eval.accuracy = test.rows() == 0 ? 0.0
                                     : static_cast<double>(correct) /
                                           static_cast<double>(test.rows());
    return eval;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t idx = i; idx <= j; ++idx) ranks[order[idx]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DimensionMismatch("spearman: length mismatch");
    if (x.size() < 2) throw InvalidInput("spearman: need at least 2 points");
    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(),
                           [&](double a) { return a == v.front(); });
    };
    if (constant(x) || constant(y))
        throw DegenerateInput("spearman: constant input vector");

    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += rx[i];
        mean_y += ry[i];
    }
    mean_x /= n;
    mean_y /= n;
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mean_x;
        const double dy = ry[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    return cov / std::sqrt(var_x * var_y);
}

VarianceCentralityReport variance_centrality_report(
    const FeatureMatrix& fingerprints, const Fingerprint& centrality) {
    if (fingerprints.dim != centrality.values.size())
        throw DimensionMismatch("variance_centrality_report: dimension mismatch");
    if (fingerprints.rows() < 2)
        throw InvalidInput("variance_centrality_report: need >= 2 rows");
    const std::size_t n = fingerprints.rows();
    std::vector<double> mean(fingerprints.dim, 0.0);
    std::vector<double> var(fingerprints.dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = fingerprints.row(i);
        for (std::size_t j = 0; j < fingerprints.dim; ++j) mean[j] += row[j];
    }
    for (double& m : mean) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = fingerprints.row(i);
        for (std::size_t j = 0; j < fingerprints.dim; ++j) {
            const double d = row[j] - mean[j];
            var[j] += d * d;
        }
    }
    for (double& v : var) v /= static_cast<double>(n);

    VarianceCentralityReport report;
    report.rho_var = spearman(var, centrality.values);
    report.rho_mean = spearman(mean, centrality.values);
    return report;
}

}  // namespace dfp

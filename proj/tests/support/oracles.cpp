#include "support/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <set>

#include "dfp/rng.hpp"

namespace dfp::test {

std::vector<std::pair<std::size_t, std::size_t>> brute_collocation_pairs(
    const std::vector<std::size_t>& pu, const std::vector<std::size_t>& pv) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 1; i <= pu.size(); ++i) {
        const double lower = static_cast<double>(pu[i - 1]);
        const double upper = i < pu.size()
                                 ? static_cast<double>(pu[i])
                                 : std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j <= pv.size(); ++j) {
            const double q = static_cast<double>(pv[j - 1]);
            if (lower < q && q < upper) out.emplace_back(i, j);
        }
    }
    return out;
}

DenseAssoc brute_assoc(const Document& doc, const AssocParams& params,
                       const Vocabulary& vocab) {
    DenseAssoc result;
    result.dim = vocab.size();
    result.values.assign(result.dim * result.dim, 0.0);

    std::vector<std::string> seq;
    for (const auto& t : doc.tokens) {
        if (vocab.find(t)) seq.push_back(t);
    }
    std::map<std::string, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < seq.size(); ++i) positions[seq[i]].push_back(i + 1);
    if (positions.size() < 2) {
        result.too_few_tokens = true;
        return result;
    }

    struct Item {
        std::string u, v;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
    };
    std::vector<Item> items;
    std::size_t total = 0;
    for (const auto& [u, pu] : positions) {
        for (const auto& [v, pv] : positions) {
            if (u == v) continue;
            auto pairs = brute_collocation_pairs(pu, pv);
            if (pairs.empty()) continue;
            total += pairs.size();
            items.push_back({u, v, std::move(pairs)});
        }
    }
    if (items.size() <= 1) {
        result.degenerate = true;
        return result;
    }
    for (const auto& item : items) {
        const auto& pu = positions.at(item.u);
        const auto& pv = positions.at(item.v);
        const double h = static_cast<double>(item.pairs.size()) /
                         static_cast<double>(total);
        double sum = 0.0;
        for (const auto& [i, j] : item.pairs) {
            const double gap = static_cast<double>(pv[j - 1]) -
                               static_cast<double>(pu[i - 1]) - 1.0;
            sum += std::exp(-std::pow(gap, params.beta) / params.sigma);
        }
        const std::size_t uu = vocab.at(item.u);
        const std::size_t vv = vocab.at(item.v);
        result.values[uu * result.dim + vv] = -std::log(h) * sum;
    }
    return result;
}

std::vector<double> dense_ppr(const TransitionView& view,
                              const PersonalizationVector& v, double alpha) {
    const auto n = static_cast<Eigen::Index>(view.node_count());
    Eigen::VectorXd seed = Eigen::VectorXd::Zero(n);
    for (const auto& [id, mass] : v.entries) seed[static_cast<Eigen::Index>(id)] = mass;

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index u = 0; u < n; ++u) {
        const auto nbrs = view.neighbors(static_cast<NodeId>(u));
        if (nbrs.empty()) {
            P.row(u) = seed.transpose();
        } else {
            const double share = 1.0 / static_cast<double>(nbrs.size());
            for (auto nb : nbrs) P(u, static_cast<Eigen::Index>(nb)) = share;
        }
    }
    // pi (I - (1-a) P) = a v, solved as the transposed system.
    Eigen::MatrixXd A =
        Eigen::MatrixXd::Identity(n, n) - (1.0 - alpha) * P.transpose();
    Eigen::VectorXd pi = A.partialPivLu().solve(alpha * seed);
    return {pi.data(), pi.data() + n};
}

std::vector<std::vector<int>> floyd_warshall(const DomainGraph& g) {
    const std::size_t n = g.node_count();
    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kInf));
    for (NodeId u = 0; u < n; ++u) {
        dist[u][u] = 0;
        for (NodeId v : g.out_neighbors(u)) dist[u][v] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (dist[i][k] + dist[k][j] < dist[i][j])
                    dist[i][j] = dist[i][k] + dist[k][j];
            }
        }
    }
    for (auto& row : dist) {
        for (auto& d : row) {
            if (d >= kInf) d = -1;
        }
    }
    return dist;
}

DomainGraph random_digraph(std::size_t n, double density, std::uint64_t seed) {
    Rng rng(seed, "test-random-digraph");
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u != v && rng.unit() < density) arcs.emplace_back(u, v);
        }
    }
    return make_graph(n, arcs);
}

DomainGraph make_graph(std::size_t n,
                       const std::vector<std::pair<NodeId, NodeId>>& arcs) {
    auto vocab = std::make_shared<Vocabulary>();
    for (std::size_t i = 0; i < n; ++i) vocab->add("n" + std::to_string(i));
    return DomainGraph::from_arcs(std::move(vocab), arcs);
}

}  // namespace dfp::test

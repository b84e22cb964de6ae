#include "dfp/pathway.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dfp/errors.hpp"

namespace dfp {

namespace {

std::vector<NodeId> sorted_unique(const std::vector<NodeId>& nodes) {
    std::vector<NodeId> out(nodes);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<NodeId>(i);
    }
    NodeId find(NodeId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<NodeId> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace

void validate_instance(const PathwayInstance& instance, const DomainGraph& g) {
    if (instance.sources.empty() || instance.sinks.empty())
        throw InvalidInput("pathway '" + instance.id +
                           "': sources and sinks must be non-empty");
    const auto s = sorted_unique(instance.sources);
    const auto t = sorted_unique(instance.sinks);
    const auto r = sorted_unique(instance.annotated);
    std::vector<NodeId> overlap;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty())
        throw InvalidInput("pathway '" + instance.id +
                           "': sources and sinks must be disjoint");
    for (NodeId u : r) {
        if (u >= g.node_count())
            throw UnknownNode("pathway '" + instance.id + "': node " +
                              std::to_string(u) + " not in graph");
    }
    for (const auto* terminals : {&s, &t}) {
        if (!std::includes(r.begin(), r.end(), terminals->begin(), terminals->end()))
            throw InvalidInput("pathway '" + instance.id +
                               "': annotated set must contain all terminals");
    }
}

ScoreVector combined_df(const Fingerprint& pi_sources,
                        const Fingerprint& pi_sinks_rev) {
    if (pi_sources.values.size() != pi_sinks_rev.values.size())
        throw DimensionMismatch("combined_df: fingerprint dimensions differ");
    ScoreVector out;
    out.kind = ScoreVector::Kind::Combined;
    out.values.resize(pi_sources.values.size());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = pi_sources.values[i] * pi_sinks_rev.values[i];
    }
    return out;
}

ScoreVector boost_scores(const ScoreVector& combined, const Fingerprint& pr_fwd,
                         const Fingerprint& pr_rev) {
    const std::size_t n = combined.values.size();
    if (pr_fwd.values.size() != n || pr_rev.values.size() != n)
        throw DimensionMismatch("boost_scores: dimensions differ");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(pr_fwd.values[i] > 0.0) || !(pr_rev.values[i] > 0.0))
            throw ZeroDenominator(
                "boost_scores: rank vectors must be strictly positive "
                "(use global PageRank with alpha > 0)");
    }
    ScoreVector out;
    out.kind = ScoreVector::Kind::Boosted;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = combined.values[i];
        out.values[i] =
            c == 0.0 ? 0.0
                     : std::exp(std::log(c) - std::log(pr_fwd.values[i]) -
                                std::log(pr_rev.values[i]));
    }
    return out;
}

InferredPathway select_pathway(const ScoreVector& scores, const DomainGraph& g,
                               const std::vector<NodeId>& sources,
                               const std::vector<NodeId>& sinks,
                               std::size_t n_max) {
    const std::size_t n = g.node_count();
    if (scores.values.size() != n)
        throw DimensionMismatch("select_pathway: score dimension != node count");

    std::vector<NodeId> terminals;
    for (NodeId u : sources) terminals.push_back(u);
    for (NodeId u : sinks) terminals.push_back(u);
    terminals = sorted_unique(terminals);
    if (terminals.empty()) throw EmptySet("select_pathway: no terminals");
    for (NodeId u : terminals) {
        if (u >= n) throw UnknownNode("select_pathway: terminal out of range");
    }

    // Terminals head the candidate list; the rest follow by descending
    // score with ascending index as the tie-break.
    std::vector<std::uint8_t> is_terminal(n, 0);
    for (NodeId u : terminals) is_terminal[u] = 1;
    std::vector<NodeId> rest;
    rest.reserve(n - terminals.size());
    for (NodeId u = 0; u < n; ++u) {
        if (!is_terminal[u]) rest.push_back(u);
    }
    std::stable_sort(rest.begin(), rest.end(), [&](NodeId a, NodeId b) {
        if (scores.values[a] != scores.values[b])
            return scores.values[a] > scores.values[b];
        return a < b;
    });

    const std::size_t cap = n_max == 0 ? n : std::min(n_max, n);
    if (cap < terminals.size())
        throw NoPathway("select_pathway: n_max below terminal count");

    UnionFind dsu(n);
    std::vector<std::uint8_t> present(n, 0);
    auto add_node = [&](NodeId u) {
        present[u] = 1;
        for (NodeId v : g.out_neighbors(u)) {
            if (present[v]) dsu.unite(u, v);
        }
        for (NodeId v : g.in_neighbors(u)) {
            if (present[v]) dsu.unite(u, v);
        }
    };
    auto terminals_connected = [&] {
        const NodeId root = dsu.find(terminals.front());
        for (NodeId u : terminals) {
            if (dsu.find(u) != root) return false;
        }
        return true;
    };

    for (NodeId u : terminals) add_node(u);
    std::size_t count = terminals.size();
    std::size_t next = 0;
    bool connected = terminals_connected();
    while (!connected && count < cap && next < rest.size()) {
        add_node(rest[next++]);
        ++count;
        connected = terminals_connected();
    }
    if (!connected)
        throw NoPathway("select_pathway: terminals not weakly connected "
                        "within the candidate budget");

    InferredPathway out;
    out.n_w = count;
    const NodeId root = dsu.find(terminals.front());
    for (NodeId u = 0; u < n; ++u) {
        if (present[u] && dsu.find(u) == root) out.nodes.push_back(u);
    }
    std::vector<std::uint8_t> in_component(n, 0);
    for (NodeId u : out.nodes) in_component[u] = 1;
    for (NodeId u : out.nodes) {
        out.scores.push_back(scores.values[u]);
        for (NodeId v : g.out_neighbors(u)) {
            if (in_component[v]) out.arcs.emplace_back(u, v);
        }
    }
    return out;
}

EvalReport evaluate(const InferredPathway& inferred,
                    const PathwayInstance& instance) {
    std::set<NodeId> seeds(instance.sources.begin(), instance.sources.end());
    seeds.insert(instance.sinks.begin(), instance.sinks.end());

    std::set<NodeId> predicted;
    for (NodeId u : inferred.nodes) {
        if (!seeds.contains(u)) predicted.insert(u);
    }
    std::set<NodeId> truth;
    for (NodeId u : instance.annotated) {
        if (!seeds.contains(u)) truth.insert(u);
    }

    EvalReport report;
    for (NodeId u : predicted) {
        if (truth.contains(u)) {
            ++report.tp;
        } else {
            ++report.fp;
        }
    }
    for (NodeId u : truth) {
        if (!predicted.contains(u)) ++report.fn;
    }
    report.ppv = report.tp + report.fp == 0
                     ? 0.0
                     : static_cast<double>(report.tp) /
                           static_cast<double>(report.tp + report.fp);
    report.tpr = report.tp + report.fn == 0
                     ? 0.0
                     : static_cast<double>(report.tp) /
                           static_cast<double>(report.tp + report.fn);
    report.acc_g = std::sqrt(report.ppv * report.tpr);
    return report;
}

std::optional<int> min_pathway_length(const PathwayInstance& instance,
                                      const DomainGraph& g) {
    std::optional<int> best;
    for (NodeId s : instance.sources) {
        const auto dist = bfs_distances(g, s);
        for (NodeId t : instance.sinks) {
            if (dist[t] >= 0 && (!best || dist[t] < *best)) best = dist[t];
        }
    }
    return best;
}

PathwayContext make_pathway_context(const DomainGraph& g,
                                    const DiffusionConfig& cfg) {
    PathwayContext ctx;
    ctx.graph = &g;
    ctx.forward = transition_view(g, Direction::Forward);
    ctx.backward = transition_view(g, Direction::Reverse);
    ctx.pr_fwd = global_pagerank(ctx.forward, cfg);
    ctx.pr_rev = global_pagerank(ctx.backward, cfg);
    return ctx;
}

InferResult infer(const PathwayInstance& instance, const PathwayContext& ctx,
                  const InferOptions& options) {
    validate_instance(instance, *ctx.graph);
    const auto seed_s = uniform_seed(instance.sources, *ctx.graph);
    const auto seed_t = uniform_seed(instance.sinks, *ctx.graph);
    const auto pi_s = ppr(ctx.forward, seed_s, options.diffusion);
    const auto pi_t = ppr(ctx.backward, seed_t, options.diffusion);
    auto scores = combined_df(pi_s, pi_t);
    if (options.use_boost) {
        scores = boost_scores(scores, ctx.pr_fwd, ctx.pr_rev);
    }
    InferResult result;
    result.pathway = select_pathway(scores, *ctx.graph, instance.sources,
                                    instance.sinks, options.n_max);
    result.eval = evaluate(result.pathway, instance);
    return result;
}

InferResult infer(const PathwayInstance& instance, const DomainGraph& g,
                  const DiffusionConfig& cfg, std::size_t n_max) {
    const auto ctx = make_pathway_context(g, cfg);
    InferOptions options;
    options.diffusion = cfg;
    options.n_max = n_max;
    return infer(instance, ctx, options);
}

}  // namespace dfp

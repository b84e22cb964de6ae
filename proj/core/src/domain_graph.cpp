#include "dfp/domain_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "dfp/errors.hpp"
#include "dfp/rng.hpp"

namespace dfp {

namespace {

std::size_t round_half_even(double x) {
    const double f = std::floor(x);
    const double frac = x - f;
    if (frac > 0.5) return static_cast<std::size_t>(f) + 1;
    if (frac < 0.5) return static_cast<std::size_t>(f);
    const auto lo = static_cast<std::size_t>(f);
    return lo % 2 == 0 ? lo : lo + 1;
}

void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
               bool transposed, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& neighbors) {
    offsets.assign(n + 1, 0);
    for (const auto& [u, v] : arcs) ++offsets[(transposed ? v : u) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    neighbors.resize(arcs.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : arcs) {
        const NodeId from = transposed ? v : u;
        const NodeId to = transposed ? u : v;
        neighbors[cursor[from]++] = to;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(neighbors.begin() + offsets[i], neighbors.begin() + offsets[i + 1]);
    }
}

}  // namespace

DomainGraph DomainGraph::assemble(std::shared_ptr<const Vocabulary> vocab,
                                  std::vector<std::pair<NodeId, NodeId>> arcs,
                                  double density_used, std::uint64_t seed,
                                  std::vector<std::string> warnings) {
    DomainGraph g;
    g.vocab_ = std::move(vocab);
    g.density_used_ = density_used;
    g.seed_ = seed;
    g.warnings_ = std::move(warnings);
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    g.edge_count_ = arcs.size();
    const std::size_t n = g.vocab_->size();
    build_csr(n, arcs, false, g.fwd_offsets_, g.fwd_neighbors_);
    build_csr(n, arcs, true, g.rev_offsets_, g.rev_neighbors_);
    return g;
}

DomainGraph DomainGraph::from_arcs(std::shared_ptr<const Vocabulary> vocab,
                                   std::vector<std::pair<NodeId, NodeId>> arcs,
                                   double density_used, std::uint64_t seed) {
    const std::size_t n = vocab->size();
    std::vector<std::string> warnings;
    std::size_t dropped = 0;
    for (const auto& [u, v] : arcs) {
        if (u >= n || v >= n) throw UnknownNode("from_arcs: node index out of range");
        if (u == v) ++dropped;
    }
    if (dropped > 0) {
        std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
        warnings.push_back("self_loops_dropped");
    }
    return assemble(std::move(vocab), std::move(arcs), density_used, seed,
                    std::move(warnings));
}

bool DomainGraph::has_arc(NodeId u, NodeId v) const {
    auto nbrs = out_neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> DomainGraph::arcs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : out_neighbors(u)) out.emplace_back(u, v);
    }
    return out;
}

DomainGraph build_domain_graph(const AssociationMatrix& K, double gamma,
                               std::uint64_t seed,
                               std::shared_ptr<const Vocabulary> vocab) {
    if (K.empty()) throw EmptyMatrix("build_domain_graph: empty association matrix");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw InvalidInput("build_domain_graph: gamma must be in (0, 1]");

    const std::size_t n = K.dim();
    if (vocab && vocab->size() != n)
        throw DimensionMismatch("build_domain_graph: vocabulary size != matrix dimension");
    const std::size_t target =
        round_half_even(gamma * static_cast<double>(n) * static_cast<double>(n - 1));

    auto entries = K.entries();
    std::erase_if(entries, [](const auto& e) { return e.weight <= 0.0; });

    std::vector<std::string> warnings;
    std::vector<std::pair<NodeId, NodeId>> arcs;

    if (target == 0) {
        warnings.push_back("empty_graph");
    } else if (entries.size() <= target) {
        if (entries.size() < target) warnings.push_back("insufficient_density");
        arcs.reserve(entries.size());
        for (const auto& e : entries) arcs.emplace_back(e.u, e.v);
    } else {
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        const double cutoff = entries[target - 1].weight;
        std::size_t above = 0;
        while (above < entries.size() && entries[above].weight > cutoff) ++above;
        std::size_t tie_end = above;
        while (tie_end < entries.size() && entries[tie_end].weight == cutoff)
            ++tie_end;

        arcs.reserve(target);
        for (std::size_t i = 0; i < above; ++i)
            arcs.emplace_back(entries[i].u, entries[i].v);

        const std::size_t need = target - above;
        const std::size_t tie_count = tie_end - above;
        if (need == tie_count) {
            for (std::size_t i = above; i < tie_end; ++i)
                arcs.emplace_back(entries[i].u, entries[i].v);
        } else {
            Rng rng(seed, "threshold-ties");
            for (auto pick : rng.sample_without_replacement(tie_count, need)) {
                const auto& e = entries[above + pick];
                arcs.emplace_back(e.u, e.v);
            }
        }
    }

    if (!vocab) {
        auto positional = std::make_shared<Vocabulary>();
        for (std::size_t i = 0; i < n; ++i) positional->add("#" + std::to_string(i));
        vocab = positional;
    }
    return DomainGraph::assemble(std::move(vocab), std::move(arcs), gamma, seed,
                                 std::move(warnings));
}

DomainGraph reverse(const DomainGraph& g) {
    DomainGraph r;
    r.vocab_ = g.vocab_;
    r.fwd_offsets_ = g.rev_offsets_;
    r.fwd_neighbors_ = g.rev_neighbors_;
    r.rev_offsets_ = g.fwd_offsets_;
    r.rev_neighbors_ = g.fwd_neighbors_;
    r.edge_count_ = g.edge_count_;
    r.density_used_ = g.density_used_;
    r.seed_ = g.seed_;
    r.warnings_ = g.warnings_;
    return r;
}

TransitionView transition_view(const DomainGraph& g, Direction direction) {
    TransitionView view;
    view.graph = &g;
    view.direction = direction;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (view.degree(u) == 0) view.dangling.push_back(u);
    }
    return view;
}

std::vector<std::uint32_t> scc_components(const DomainGraph& g) {
    const std::size_t n = g.node_count();
    // Kosaraju: finish order on the forward graph, assignment on the
    // reverse one. Both passes are iterative.
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::pair<NodeId, std::size_t>> stack;
    for (NodeId start = 0; start < n; ++start) {
        if (visited[start]) continue;
        visited[start] = 1;
        stack.emplace_back(start, 0);
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            auto nbrs = g.out_neighbors(u);
            if (next < nbrs.size()) {
                const NodeId v = nbrs[next++];
                if (!visited[v]) {
                    visited[v] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::uint32_t num = 0;
    std::vector<NodeId> dfs;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != UINT32_MAX) continue;
        dfs.push_back(*it);
        comp[*it] = num;
        while (!dfs.empty()) {
            const NodeId u = dfs.back();
            dfs.pop_back();
            for (NodeId v : g.in_neighbors(u)) {
                if (comp[v] == UINT32_MAX) {
                    comp[v] = num;
                    dfs.push_back(v);
                }
            }
        }
        ++num;
    }
    return comp;
}

SccReport scc_diagnostics(const DomainGraph& g) {
    SccReport report;
    const std::size_t n = g.node_count();
    if (n == 0) return report;
    auto comp = scc_components(g);
    std::uint32_t num = 0;
    for (auto c : comp) num = std::max(num, c + 1);
    std::vector<std::size_t> sizes(num, 0);
    for (auto c : comp) ++sizes[c];
    report.num_sccs = num;
    report.giant_scc_fraction =
        static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) /
        static_cast<double>(n);
    report.is_single_scc = num == 1;
    return report;
}

std::vector<int> bfs_distances(const DomainGraph& g, NodeId source,
                               Direction direction) {
    std::vector<int> dist(g.node_count(), -1);
    std::queue<NodeId> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop();
        auto nbrs = direction == Direction::Forward ? g.out_neighbors(u)
                                                    : g.in_neighbors(u);
        for (NodeId v : nbrs) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

DiameterReport directed_diameter(const DomainGraph& g,
                                 std::size_t exact_threshold,
                                 std::size_t sample_count, std::uint64_t seed) {
    DiameterReport report;
    const std::size_t n = g.node_count();
    if (n <= 1) {
        report.strongly_connected = true;
        return report;
    }

    const auto comp = scc_components(g);
    std::uint32_t num = 0;
    for (auto c : comp) num = std::max(num, c + 1);
    std::vector<std::size_t> sizes(num, 0);
    for (auto c : comp) ++sizes[c];
    const std::uint32_t giant = static_cast<std::uint32_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    report.strongly_connected = num == 1;

    std::vector<NodeId> members;
    for (NodeId u = 0; u < n; ++u) {
        if (comp[u] == giant) members.push_back(u);
    }

    std::vector<NodeId> sources = members;
    if (n > exact_threshold && members.size() > sample_count) {
        Rng rng(seed, "diameter-sample");
        sources.clear();
        for (auto pick : rng.sample_without_replacement(members.size(), sample_count)) {
            sources.push_back(members[pick]);
        }
        std::sort(sources.begin(), sources.end());
        report.exact = false;
    }

    int best = 0;
    for (NodeId s : sources) {
        auto dist = bfs_distances(g, s);
        for (NodeId u : members) {
            if (dist[u] > best) best = dist[u];
        }
    }
    report.diameter = best;
    return report;
}

DensityScanReport critical_density_scan(const AssociationMatrix& K,
                                        const std::vector<double>& gamma_grid,
                                        std::uint64_t seed, double giant_cutoff) {
    for (std::size_t i = 1; i < gamma_grid.size(); ++i) {
        if (gamma_grid[i] <= gamma_grid[i - 1])
            throw InvalidInput("critical_density_scan: gamma grid must ascend");
    }
    DensityScanReport report;
    for (double gamma : gamma_grid) {
        auto g = build_domain_graph(K, gamma, seed);
        DensityScanEntry entry;
        entry.gamma = gamma;
        entry.scc = scc_diagnostics(g);
        entry.edge_count = g.edge_count();
        if (!report.critical_gamma &&
            (entry.scc.is_single_scc || entry.scc.giant_scc_fraction >= giant_cutoff)) {
            report.critical_gamma = gamma;
        }
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace dfp

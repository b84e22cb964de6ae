#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfp/association.hpp"
#include "dfp/vocabulary.hpp"

namespace dfp {

enum class Direction { Forward, Reverse };

/// Unweighted directed graph over the vocabulary, stored as CSR
/// adjacency in both directions. Immutable after construction and safe
/// to share across threads.
class DomainGraph {
  public:
    DomainGraph() = default;

    /// Build directly from an arc list (pre-built graphs bypass the
    /// association pipeline). Duplicate arcs collapse; self-loops are
    /// dropped with a warning.
    static DomainGraph from_arcs(std::shared_ptr<const Vocabulary> vocab,
                                 std::vector<std::pair<NodeId, NodeId>> arcs,
                                 double density_used = 0.0,
                                 std::uint64_t seed = 0);

    std::size_t node_count() const { return fwd_offsets_.empty() ? 0 : fwd_offsets_.size() - 1; }
    std::size_t edge_count() const { return edge_count_; }
    double density_used() const { return density_used_; }
    std::uint64_t seed() const { return seed_; }

    std::span<const NodeId> out_neighbors(NodeId u) const {
        return {fwd_neighbors_.data() + fwd_offsets_[u],
                fwd_neighbors_.data() + fwd_offsets_[u + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId u) const {
        return {rev_neighbors_.data() + rev_offsets_[u],
                rev_neighbors_.data() + rev_offsets_[u + 1]};
    }
    std::size_t out_degree(NodeId u) const {
        return fwd_offsets_[u + 1] - fwd_offsets_[u];
    }
    std::size_t in_degree(NodeId u) const {
        return rev_offsets_[u + 1] - rev_offsets_[u];
    }
    bool has_arc(NodeId u, NodeId v) const;

    const Vocabulary& vocab() const { return *vocab_; }
    std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }

    const std::vector<std::string>& warnings() const { return warnings_; }

    /// All arcs (u, v) in ascending (u, v) order.
    std::vector<std::pair<NodeId, NodeId>> arcs() const;

  private:
    friend DomainGraph reverse(const DomainGraph&);
    friend DomainGraph build_domain_graph(const AssociationMatrix&, double,
                                          std::uint64_t,
                                          std::shared_ptr<const Vocabulary>);

    static DomainGraph assemble(std::shared_ptr<const Vocabulary> vocab,
                                std::vector<std::pair<NodeId, NodeId>> arcs,
                                double density_used, std::uint64_t seed,
                                std::vector<std::string> warnings);

    std::shared_ptr<const Vocabulary> vocab_;
    std::vector<std::size_t> fwd_offsets_;
    std::vector<NodeId> fwd_neighbors_;
    std::vector<std::size_t> rev_offsets_;
    std::vector<NodeId> rev_neighbors_;
    std::size_t edge_count_ = 0;
    double density_used_ = 0.0;
    std::uint64_t seed_ = 0;
    std::vector<std::string> warnings_;
};

/// Read-only row-stochastic view of a graph: row u of the implied
/// matrix splits uniformly over u's out-neighbors in the chosen
/// direction. Nodes without out-arcs in that direction are dangling.
struct TransitionView {
    const DomainGraph* graph = nullptr;
    Direction direction = Direction::Forward;
    std::vector<NodeId> dangling;

    std::size_t node_count() const { return graph->node_count(); }
    std::span<const NodeId> neighbors(NodeId u) const {
        return direction == Direction::Forward ? graph->out_neighbors(u)
                                               : graph->in_neighbors(u);
    }
    std::size_t degree(NodeId u) const {
        return direction == Direction::Forward ? graph->out_degree(u)
                                               : graph->in_degree(u);
    }
};

/// Keep the N = round(gamma * |T| * (|T|-1)) largest entries of K as
/// arcs. Entries tied at the cut-off are chosen uniformly at random
/// from the "threshold-ties" sub-stream of `seed`. When K holds fewer
/// than N positive entries they all become arcs and the graph carries
/// an "insufficient_density" warning.
///
/// `vocab` names the matrix indices; a positional vocabulary ("#0",
/// "#1", ...) is synthesized when omitted.
DomainGraph build_domain_graph(const AssociationMatrix& K, double gamma,
                               std::uint64_t seed,
                               std::shared_ptr<const Vocabulary> vocab = nullptr);

/// Same vertices, every arc reversed. An involution.
DomainGraph reverse(const DomainGraph& g);

TransitionView transition_view(const DomainGraph& g,
                               Direction direction = Direction::Forward);

struct SccReport {
    std::size_t num_sccs = 0;
    double giant_scc_fraction = 0.0;
    bool is_single_scc = false;
};

SccReport scc_diagnostics(const DomainGraph& g);

/// Strongly connected component id per node, ids dense from 0.
std::vector<std::uint32_t> scc_components(const DomainGraph& g);

struct DiameterReport {
    int diameter = 0;
    /// False marks the unreachable case: the graph is not one SCC and
    /// the diameter is measured inside the giant SCC instead.
    bool strongly_connected = false;
    /// False when sources were sampled; the value is then a lower bound.
    bool exact = true;
};

/// Longest shortest directed path. All-source BFS when node_count <=
/// exact_threshold, otherwise BFS from `sample_count` seeded sources.
DiameterReport directed_diameter(const DomainGraph& g,
                                 std::size_t exact_threshold,
                                 std::size_t sample_count = 64,
                                 std::uint64_t seed = 0);

/// Shortest-path lengths from `source`; -1 marks unreachable nodes.
std::vector<int> bfs_distances(const DomainGraph& g, NodeId source,
                               Direction direction = Direction::Forward);

struct DensityScanEntry {
    double gamma = 0.0;
    SccReport scc;
    std::size_t edge_count = 0;
};

struct DensityScanReport {
    std::vector<DensityScanEntry> entries;
    /// Smallest grid gamma whose graph is a single SCC (or whose giant
    /// SCC fraction reaches the cutoff), if any.
    std::optional<double> critical_gamma;
};

DensityScanReport critical_density_scan(const AssociationMatrix& K,
                                        const std::vector<double>& gamma_grid,
                                        std::uint64_t seed,
                                        double giant_cutoff = 1.0);

}  // namespace dfp

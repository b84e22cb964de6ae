#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfp/document.hpp"
#include "dfp/domain_graph.hpp"

namespace dfp {

/// Sparse seed distribution of a diffusion. Entries are sorted by node
/// index, all masses are positive and sum to 1.
struct PersonalizationVector {
    std::vector<std::pair<NodeId, double>> entries;
    /// Fraction of the document's distinct tokens that are graph nodes
    /// (1 for seeds built directly from node sets).
    double coverage = 1.0;
};

struct DiffusionConfig {
    /// Jumping constant: restart probability per step, in (0, 1].
    double alpha = 0.15;
    /// L1 convergence tolerance.
    double tol = 1e-10;
    std::size_t max_iters = 1000;
    /// When set, run exactly this many steps (the time-t snapshot) and
    /// skip the tolerance test.
    std::optional<std::size_t> fixed_steps;
};

/// Dense diffusion distribution over the graph's nodes, with the
/// iteration metadata of the run that produced it.
struct Fingerprint {
    std::vector<double> values;
    double alpha = 0.15;
    std::size_t iterations_run = 0;
    /// L1 change at the last step.
    double residual = 0.0;
    bool converged = false;
};

/// Seed distribution of a document: occurrence counts of its tokens
/// restricted to graph nodes, normalized. Throws NoSupport when no
/// token is a node.
PersonalizationVector personalization_vector(const Document& doc,
                                             const DomainGraph& g);

/// Equal mass on each of the given nodes.
PersonalizationVector uniform_seed(const std::vector<NodeId>& nodes,
                                   const DomainGraph& g);

/// Personalized PageRank by power iteration:
///   next = alpha * v + (1 - alpha) * cur * P,
/// starting from v, where mass sitting on dangling nodes re-enters
/// through v each step (the walker restarts at its seed). Stops when
/// the L1 change drops below cfg.tol or after cfg.max_iters, unless
/// cfg.fixed_steps pins the step count.
Fingerprint ppr(const TransitionView& view, const PersonalizationVector& v,
                const DiffusionConfig& cfg);

/// PageRank of the whole graph: ppr with a uniform seed over all nodes.
/// Every component is strictly positive for alpha > 0.
Fingerprint global_pagerank(const TransitionView& view,
                            const DiffusionConfig& cfg);

struct BatchItem {
    std::optional<Fingerprint> fingerprint;
    std::string error;  // empty on success
};

/// ppr for every seed; per-item failures are collected, not fatal.
/// Results are in input order regardless of thread count.
std::vector<BatchItem> batch_fingerprints(
    const TransitionView& view, const std::vector<PersonalizationVector>& seeds,
    const DiffusionConfig& cfg, unsigned threads = 1);

}  // namespace dfp

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfp/diffusion.hpp"
#include "dfp/domain_graph.hpp"

namespace dfp {

/// An annotated pathway: terminal node sets S (sources) and T (sinks)
/// plus the full annotated node set R with S and T included.
struct PathwayInstance {
    std::string id;
    std::vector<NodeId> sources;
    std::vector<NodeId> sinks;
    std::vector<NodeId> annotated;
};

/// Checks the instance invariants against a graph: S and T non-empty
/// and disjoint, S and T contained in R, all nodes in range.
void validate_instance(const PathwayInstance& instance, const DomainGraph& g);

struct ScoreVector {
    enum class Kind { Combined, Boosted };
    std::vector<double> values;
    Kind kind = Kind::Combined;
};

/// Component-wise product of the forward diffusion from the sources
/// and the reverse-graph diffusion from the sinks.
ScoreVector combined_df(const Fingerprint& pi_sources,
                        const Fingerprint& pi_sinks_rev);

/// Rescales the combined scores by the global PageRank of the graph
/// and of its reverse: boosted(u) = combined(u) / (pr_fwd(u)*pr_rev(u)).
/// Hub nodes carry large global ranks in both directions and are
/// demoted. Evaluated in log space; exact zeros stay zero. Throws
/// ZeroDenominator unless both rank vectors are strictly positive.
ScoreVector boost_scores(const ScoreVector& combined, const Fingerprint& pr_fwd,
                         const Fingerprint& pr_rev);

struct InferredPathway {
    /// Nodes of the extracted subgraph, ascending.
    std::vector<NodeId> nodes;
    /// Arc set induced on those nodes, ascending (u, v).
    std::vector<std::pair<NodeId, NodeId>> arcs;
    /// Candidate count at which the terminals became weakly connected.
    std::size_t n_w = 0;
    /// Score of each included node, aligned with `nodes`.
    std::vector<double> scores;
};

/// Grows the candidate set (terminals first, then nodes by descending
/// score, ties by ascending index) one node at a time until every
/// terminal lies in a single weakly connected component of the induced
/// subgraph. Returns that component. Throws NoPathway when n reaches
/// min(n_max, node_count) without connecting; n_max = 0 means no cap.
InferredPathway select_pathway(const ScoreVector& scores, const DomainGraph& g,
                               const std::vector<NodeId>& sources,
                               const std::vector<NodeId>& sinks,
                               std::size_t n_max = 0);

struct EvalReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double ppv = 0.0;
    double tpr = 0.0;
    double acc_g = 0.0;
};

/// Precision/recall of the inferred node set against the annotation,
/// counted over non-seed nodes only; acc_g is their geometric mean.
EvalReport evaluate(const InferredPathway& inferred,
                    const PathwayInstance& instance);

/// Minimal shortest directed path length over source-sink pairs;
/// nullopt when no pair is connected.
std::optional<int> min_pathway_length(const PathwayInstance& instance,
                                      const DomainGraph& g);

/// Views and global rank vectors shared by every inference on a graph.
struct PathwayContext {
    const DomainGraph* graph = nullptr;
    TransitionView forward;
    TransitionView backward;
    Fingerprint pr_fwd;
    Fingerprint pr_rev;
};

PathwayContext make_pathway_context(const DomainGraph& g,
                                    const DiffusionConfig& cfg);

struct InferOptions {
    DiffusionConfig diffusion;
    std::size_t n_max = 0;  // 0: scan every node
    bool use_boost = true;
};

struct InferResult {
    InferredPathway pathway;
    EvalReport eval;
};

/// Full pipeline: uniform seeds on S and T, forward and reverse
/// diffusion, combination, (optional) boosting, selection, evaluation.
InferResult infer(const PathwayInstance& instance, const PathwayContext& ctx,
                  const InferOptions& options);

InferResult infer(const PathwayInstance& instance, const DomainGraph& g,
                  const DiffusionConfig& cfg, std::size_t n_max = 0);

}  // namespace dfp

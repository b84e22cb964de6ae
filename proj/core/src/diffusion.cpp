#include "dfp/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dfp/errors.hpp"
#include "dfp/parallel.hpp"

namespace dfp {

PersonalizationVector personalization_vector(const Document& doc,
                                             const DomainGraph& g) {
    if (doc.tokens.empty())
        throw InvalidInput("personalization_vector: empty document");
    std::map<NodeId, double> counts;
    std::set<std::string_view> distinct;
    for (const auto& t : doc.tokens) {
        distinct.insert(t);
        if (auto id = g.vocab().find(t)) counts[*id] += 1.0;
    }
    if (counts.empty())
        throw NoSupport("personalization_vector: no token of document '" +
                        doc.id + "' is a graph node");
    double total = 0.0;
    for (const auto& [_, c] : counts) total += c;
    PersonalizationVector v;
    v.entries.reserve(counts.size());
    for (const auto& [id, c] : counts) v.entries.emplace_back(id, c / total);
    v.coverage = static_cast<double>(counts.size()) /
                 static_cast<double>(distinct.size());
    return v;
}

PersonalizationVector uniform_seed(const std::vector<NodeId>& nodes,
                                   const DomainGraph& g) {
    if (nodes.empty()) throw EmptySet("uniform_seed: empty node set");
    std::set<NodeId> unique(nodes.begin(), nodes.end());
    for (NodeId u : unique) {
        if (u >= g.node_count())
            throw UnknownNode("uniform_seed: node " + std::to_string(u) +
                              " not in graph");
    }
    PersonalizationVector v;
    const double mass = 1.0 / static_cast<double>(unique.size());
    for (NodeId u : unique) v.entries.emplace_back(u, mass);
    return v;
}

namespace {

void validate_seed(const PersonalizationVector& v, std::size_t n) {
    if (v.entries.empty()) throw InvalidInput("ppr: empty seed");
    // Kahan summation: the 1e-12 gate must not be eaten by the
    // measurement itself on wide seeds.
    double sum = 0.0, carry = 0.0;
    NodeId prev = 0;
    bool first = true;
    for (const auto& [id, mass] : v.entries) {
        if (id >= n) throw InvalidInput("ppr: seed index out of range");
        if (!first && id <= prev) throw InvalidInput("ppr: seed entries not sorted");
        if (!(mass > 0.0)) throw InvalidInput("ppr: seed mass must be positive");
        const double y = mass - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        prev = id;
        first = false;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidInput("ppr: seed masses must sum to 1");
}

}  // namespace

Fingerprint ppr(const TransitionView& view, const PersonalizationVector& v,
                const DiffusionConfig& cfg) {
    const std::size_t n = view.node_count();
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
        throw InvalidInput("ppr: alpha must be in (0, 1]");
    if (!(cfg.tol > 0.0)) throw InvalidInput("ppr: tol must be positive");
    if (cfg.max_iters == 0) throw InvalidInput("ppr: max_iters must be positive");
    validate_seed(v, n);

    Fingerprint fp;
    fp.alpha = cfg.alpha;
    fp.values.assign(n, 0.0);
    for (const auto& [id, mass] : v.entries) fp.values[id] = mass;

    const std::size_t steps = cfg.fixed_steps.value_or(cfg.max_iters);
    if (steps == 0) return fp;

    const double keep = 1.0 - cfg.alpha;
    std::vector<double> next(n, 0.0);
    for (std::size_t it = 0; it < steps; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
            const double mass = fp.values[u];
            if (mass == 0.0) continue;
            const auto nbrs = view.neighbors(u);
            if (nbrs.empty()) continue;
            const double share = mass / static_cast<double>(nbrs.size());
            for (NodeId nb : nbrs) next[nb] += share;
        }
        double dangling_mass = 0.0;
        for (NodeId d : view.dangling) dangling_mass += fp.values[d];
        for (double& x : next) x *= keep;
        const double restart = cfg.alpha + keep * dangling_mass;
        for (const auto& [id, mass] : v.entries) next[id] += restart * mass;

        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            residual += std::abs(next[i] - fp.values[i]);
        fp.values.swap(next);
        fp.residual = residual;
        fp.iterations_run = it + 1;
        if (!cfg.fixed_steps && residual < cfg.tol) break;
    }
    fp.converged = fp.residual < cfg.tol;
    return fp;
}

Fingerprint global_pagerank(const TransitionView& view,
                            const DiffusionConfig& cfg) {
    const std::size_t n = view.node_count();
    if (n == 0) throw InvalidInput("global_pagerank: empty graph");
    PersonalizationVector v;
    v.entries.reserve(n);
    const double mass = 1.0 / static_cast<double>(n);
    for (NodeId u = 0; u < n; ++u) v.entries.emplace_back(u, mass);
    return ppr(view, v, cfg);
}

std::vector<BatchItem> batch_fingerprints(
    const TransitionView& view, const std::vector<PersonalizationVector>& seeds,
    const DiffusionConfig& cfg, unsigned threads) {
    std::vector<BatchItem> out(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) {
        try {
            out[i].fingerprint = ppr(view, seeds[i], cfg);
        } catch (const Error& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

}  // namespace dfp

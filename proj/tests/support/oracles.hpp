#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here follows the defining formulas directly (dense
// algebra, exhaustive enumeration) and shares no code with the library
// paths it checks.

#include <cstdint>
#include <optional>
#include <vector>

#include "dfp/association.hpp"
#include "dfp/diffusion.hpp"
#include "dfp/document.hpp"
#include "dfp/domain_graph.hpp"
#include "dfp/vocabulary.hpp"

namespace dfp::test {

/// All (i, j) with p_u(i) < p_v(j) < p_u(i+1), the bound past u's last
/// occurrence being +infinity; by triple enumeration.
std::vector<std::pair<std::size_t, std::size_t>> brute_collocation_pairs(
    const std::vector<std::size_t>& pu, const std::vector<std::size_t>& pv);

struct DenseAssoc {
    std::size_t dim = 0;
    std::vector<double> values;  // row-major dim x dim
    bool degenerate = false;     // <= 1 non-empty pair set
    bool too_few_tokens = false; // < 2 distinct in-vocabulary tokens

    double at(std::size_t u, std::size_t v) const { return values[u * dim + v]; }
};

/// Dense association matrix straight from the definition.
DenseAssoc brute_assoc(const Document& doc, const AssocParams& params,
                       const Vocabulary& vocab);

/// Stationary diffusion by dense linear solve: rows of the transition
/// matrix are uniform over out-neighbors, dangling rows are replaced by
/// the seed distribution, and pi = alpha*v*(I - (1-alpha)*P)^-1 comes
/// from an LU factorization.
std::vector<double> dense_ppr(const TransitionView& view,
                              const PersonalizationVector& v, double alpha);

/// All-pairs shortest path lengths (arc count); -1 where unreachable.
std::vector<std::vector<int>> floyd_warshall(const DomainGraph& g);

/// Uniform random digraph: each ordered pair (u, v), u != v, becomes an
/// arc with probability `density`.
DomainGraph random_digraph(std::size_t n, double density, std::uint64_t seed);

/// Convenience: graph over n positional nodes with the given arcs.
DomainGraph make_graph(std::size_t n,
                       const std::vector<std::pair<NodeId, NodeId>>& arcs);

}  // namespace dfp::test

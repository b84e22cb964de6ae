#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "dfp/document.hpp"
#include "dfp/errors.hpp"
#include "dfp/vocabulary.hpp"

namespace dfp {

/// Parameters of the positional decay weight
///   f(i, j) = exp(-(j - i - 1)^beta / sigma)
/// applied to 1-based positions, so adjacent tokens score 1. The f and
/// g hooks can be overridden; the defaults are the exponential decay
/// above and g(x) = -log(x).
struct AssocParams {
    double beta = 1.0;
    double sigma = 1.0;
    std::function<double(std::size_t pos_u, std::size_t pos_v)> f_override;
    std::function<double(double)> g_override;

    double f(std::size_t pos_u, std::size_t pos_v) const;
    double g(double x) const;
};

/// Sparse |T| x |T| non-negative matrix of pairwise token association
/// weights. Diagonal entries are rejected.
class AssociationMatrix {
  public:
    struct Entry {
        NodeId u;
        NodeId v;
        double weight;
    };

    AssociationMatrix() = default;
    explicit AssociationMatrix(std::size_t dimension) : dim_(dimension) {}

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    void add(NodeId u, NodeId v, double weight);
    double at(NodeId u, NodeId v) const;

    /// All stored entries sorted by (u, v); the canonical order for
    /// serialization and reductions.
    std::vector<Entry> entries() const;

    /// Element-wise sum; dimensions must match.
    AssociationMatrix& operator+=(const AssociationMatrix& other);

  private:
    static std::uint64_t key(NodeId u, NodeId v) {
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    std::size_t dim_ = 0;
    std::unordered_map<std::uint64_t, double> values_;
};

/// Occurrence-index pair (i, j): the j-th occurrence of v falls between
/// the i-th and (i+1)-th occurrences of u (or after u's last).
using CollocationPair = std::pair<std::size_t, std::size_t>;

/// All collocation pairs of the ordered token pair (u, v) in `doc`.
/// Empty when u or v is absent. Requires u != v.
std::vector<CollocationPair> collocation_pairs(const Document& doc,
                                               const std::string& u,
                                               const std::string& v);

/// Per-document association matrix over `vocab`.
///
/// Tokens absent from the vocabulary are dropped (positions are taken
/// on the filtered list). Each entry is
///   K_uv = g(h(u,v)) * sum_{(i,j)} f(p_u(i), p_v(j)),
/// h(u,v) being the frequency of (u,v) collocations relative to all
/// ordered token pairs of the document.
///
/// Throws InvalidInput when fewer than two distinct in-vocabulary
/// tokens remain, and DegenerateDocument when only a single ordered
/// pair collocates at all (then h = 1 and K would be identically zero).
AssociationMatrix assoc_matrix(const Document& doc, const AssocParams& params,
                               const Vocabulary& vocab);

/// Element-wise sum of per-document matrices, in list order.
AssociationMatrix aggregate(const std::vector<AssociationMatrix>& matrices);

}  // namespace dfp

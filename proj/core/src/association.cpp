#include "dfp/association.hpp"

#include <algorithm>
#include <cmath>

namespace dfp {

double AssocParams::f(std::size_t pos_u, std::size_t pos_v) const {
    if (f_override) return f_override(pos_u, pos_v);
    const double gap = static_cast<double>(pos_v) - static_cast<double>(pos_u) - 1.0;
    return std::exp(-std::pow(gap, beta) / sigma);
}

double AssocParams::g(double x) const {
    if (g_override) return g_override(x);
    return -std::log(x);
}

void AssociationMatrix::add(NodeId u, NodeId v, double weight) {
    if (u == v) throw InvalidInput("association matrix: diagonal entry");
    if (u >= dim_ || v >= dim_)
        throw DimensionMismatch("association matrix: index out of range");
    if (weight < 0.0 || !std::isfinite(weight))
        throw InvalidInput("association matrix: weight must be finite and >= 0");
    values_[key(u, v)] += weight;
}

double AssociationMatrix::at(NodeId u, NodeId v) const {
    auto it = values_.find(key(u, v));
    return it == values_.end() ? 0.0 : it->second;
}

std::vector<AssociationMatrix::Entry> AssociationMatrix::entries() const {
    std::vector<Entry> out;
    out.reserve(values_.size());
    for (const auto& [k, w] : values_) {
        out.push_back({static_cast<NodeId>(k >> 32),
                       static_cast<NodeId>(k & 0xffffffffULL), w});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return out;
}

AssociationMatrix& AssociationMatrix::operator+=(const AssociationMatrix& other) {
    if (dim_ != other.dim_)
        throw DimensionMismatch("aggregate: dimension mismatch");
    for (const auto& e : other.entries()) values_[key(e.u, e.v)] += e.weight;
    return *this;
}

namespace {

using PositionList = std::vector<std::size_t>;

// Sweep over v's occurrences: each lands after some number i of u
// occurrences; (i, j) qualifies when i >= 1, the upper bound p_u(i+1)
// being +inf past u's last occurrence.
void sweep_pairs(const PositionList& pu, const PositionList& pv,
                 std::vector<CollocationPair>& out) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < pv.size(); ++j) {
        while (i < pu.size() && pu[i] < pv[j]) ++i;
        if (i >= 1) out.emplace_back(i, j + 1);
    }
}

}  // namespace

std::vector<CollocationPair> collocation_pairs(const Document& doc,
                                               const std::string& u,
                                               const std::string& v) {
    if (u == v) throw InvalidInput("collocation_pairs: u and v must differ");
    auto positions = occurrence_positions(doc);
    auto pu = positions.find(u);
    auto pv = positions.find(v);
    std::vector<CollocationPair> out;
    if (pu == positions.end() || pv == positions.end()) return out;
    sweep_pairs(pu->second, pv->second, out);
    return out;
}

AssociationMatrix assoc_matrix(const Document& doc, const AssocParams& params,
                               const Vocabulary& vocab) {
    // Positions are taken on the vocabulary-filtered token list.
    std::vector<NodeId> seq;
    seq.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) {
        if (auto id = vocab.find(t)) seq.push_back(*id);
    }

    std::unordered_map<NodeId, PositionList> positions;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        positions[seq[i]].push_back(i + 1);
    }
    if (positions.size() < 2) {
        throw InvalidInput("assoc_matrix: document '" + doc.id +
                           "' needs >= 2 distinct in-vocabulary tokens");
    }

    std::vector<NodeId> distinct;
    distinct.reserve(positions.size());
    for (const auto& [id, _] : positions) distinct.push_back(id);
    std::sort(distinct.begin(), distinct.end());

    struct PairSet {
        NodeId u;
        NodeId v;
        std::vector<CollocationPair> pairs;
    };
    std::vector<PairSet> sets;
    std::size_t total_pairs = 0;
    std::vector<CollocationPair> scratch;
    for (NodeId u : distinct) {
        for (NodeId v : distinct) {
            if (u == v) continue;
            scratch.clear();
            sweep_pairs(positions.at(u), positions.at(v), scratch);
            if (scratch.empty()) continue;
            total_pairs += scratch.size();
            sets.push_back({u, v, scratch});
        }
    }

    if (sets.size() <= 1) {
        throw DegenerateDocument("assoc_matrix: document '" + doc.id +
                                 "' has a single collocating pair; its "
                                 "association matrix is identically zero");
    }

    AssociationMatrix K(vocab.size());
    for (const auto& set : sets) {
        const auto& pu = positions.at(set.u);
        const auto& pv = positions.at(set.v);
        const double h =
            static_cast<double>(set.pairs.size()) / static_cast<double>(total_pairs);
        double decay_sum = 0.0;
        for (const auto& [i, j] : set.pairs) {
            decay_sum += params.f(pu[i - 1], pv[j - 1]);
        }
        K.add(set.u, set.v, params.g(h) * decay_sum);
    }
    return K;
}

AssociationMatrix aggregate(const std::vector<AssociationMatrix>& matrices) {
    if (matrices.empty()) throw InvalidInput("aggregate: no matrices");
    AssociationMatrix sum(matrices.front().dim());
    for (const auto& m : matrices) sum += m;
    return sum;
}

}  // namespace dfp

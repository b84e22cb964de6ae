#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dfp/errors.hpp"

namespace dfp {

using NodeId = std::uint32_t;

/// Bidirectional token <-> dense index map. Indices are 0..size()-1 in
/// insertion order. Immutable in spirit once shared: build it fully,
/// then hand out const references.
class Vocabulary {
  public:
    Vocabulary() = default;

    explicit Vocabulary(std::vector<std::string> tokens) {
        for (auto& t : tokens) add(t);
    }

    /// Returns the index of `token`, inserting it if new.
    NodeId add(std::string_view token) {
        auto it = index_.find(token);
        if (it != index_.end()) return it->second;
        const NodeId id = static_cast<NodeId>(tokens_.size());
        tokens_.emplace_back(token);
        index_.emplace(tokens_.back(), id);
        return id;
    }

    std::optional<NodeId> find(std::string_view token) const {
        auto it = index_.find(token);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    NodeId at(std::string_view token) const {
        auto id = find(token);
        if (!id) throw UnknownNode("unknown token: " + std::string(token));
        return *id;
    }

    const std::string& token(NodeId id) const { return tokens_.at(id); }

    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }

    const std::vector<std::string>& tokens() const { return tokens_; }

  private:
    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };
    struct StringEq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const {
            return a == b;
        }
    };

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, NodeId, StringHash, StringEq> index_;
};

}  // namespace dfp

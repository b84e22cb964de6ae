#pragma once

#include <functional>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace dfp {

/// One document: an ordered token list with an id and an optional class
/// label. Positions are 1-based and consecutive.
struct Document {
    std::string id;
    std::vector<std::string> tokens;
    std::string label;  // empty when unlabeled
};

struct TokenizerConfig {
    bool lowercase = true;
    std::unordered_set<std::string> stop_words;
    /// Applied to each token after case folding and stop-word removal.
    /// Identity when unset; the hook is where a stemmer would plug in.
    std::function<std::string(const std::string&)> stem;
};

/// Lowercases, strips punctuation, splits on whitespace, drops stop
/// words and applies the stemming hook. Empty text gives an empty list.
std::vector<std::string> tokenize(std::string_view raw_text,
                                  const TokenizerConfig& config = {});

/// 1-based occurrence positions of every token, ascending.
std::map<std::string, std::vector<std::size_t>> occurrence_positions(
    const Document& doc);

}  // namespace dfp

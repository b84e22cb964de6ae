#include "dfp/document.hpp"

#include <cctype>

namespace dfp {

std::vector<std::string> tokenize(std::string_view raw_text,
                                  const TokenizerConfig& config) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (!config.stop_words.contains(current)) {
            out.push_back(config.stem ? config.stem(current) : current);
        }
        current.clear();
    };
    for (unsigned char c : raw_text) {
        if (std::isalnum(c)) {
            current.push_back(config.lowercase
                                  ? static_cast<char>(std::tolower(c))
                                  : static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::map<std::string, std::vector<std::size_t>> occurrence_positions(
    const Document& doc) {
    std::map<std::string, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        positions[doc.tokens[i]].push_back(i + 1);
    }
    return positions;
}

}  // namespace dfp

#include <gtest/gtest.h>

#include <cmath>

#include "dfp/association.hpp"
#include "dfp/document.hpp"
#include "dfp/errors.hpp"
#include "dfp/rng.hpp"
#include "support/oracles.hpp"

namespace dfp {
namespace {

Document doc(std::vector<std::string> tokens, std::string id = "d") {
    return Document{std::move(id), std::move(tokens), ""};
}

Vocabulary vocab_of(std::vector<std::string> tokens) {
    return Vocabulary(std::move(tokens));
}

TEST(Tokenize, CasefoldsAndDropsStopWords) {
    TokenizerConfig cfg;
    cfg.stop_words = {"the"};
    EXPECT_EQ(tokenize("The cat, the CAT", cfg),
              (std::vector<std::string>{"cat", "cat"}));
}

TEST(Tokenize, EmptyInput) {
    EXPECT_TRUE(tokenize("").empty());
}

TEST(Tokenize, WhitespaceSplit) {
    EXPECT_EQ(tokenize("a b a"), (std::vector<std::string>{"a", "b", "a"}));
}

TEST(Tokenize, PunctuationSeparates) {
    EXPECT_EQ(tokenize("one,two;three.four"),
              (std::vector<std::string>{"one", "two", "three", "four"}));
}

TEST(Tokenize, StemHookApplies) {
    TokenizerConfig cfg;
    cfg.stem = [](const std::string& t) { return t.substr(0, 3); };
    EXPECT_EQ(tokenize("walking walked", cfg),
              (std::vector<std::string>{"wal", "wal"}));
}

TEST(OccurrencePositions, Examples) {
    const auto aba = occurrence_positions(doc({"a", "b", "a"}));
    EXPECT_EQ(aba.at("a"), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(aba.at("b"), (std::vector<std::size_t>{2}));

    const auto x = occurrence_positions(doc({"x"}));
    EXPECT_EQ(x.at("x"), (std::vector<std::size_t>{1}));

    const auto abc = occurrence_positions(doc({"a", "b", "c"}));
    EXPECT_EQ(abc.at("a"), (std::vector<std::size_t>{1}));
    EXPECT_EQ(abc.at("b"), (std::vector<std::size_t>{2}));
    EXPECT_EQ(abc.at("c"), (std::vector<std::size_t>{3}));
}

TEST(CollocationPairs, BetweenSuccessiveOccurrences) {
    const auto pairs = collocation_pairs(doc({"a", "b", "a"}), "a", "b");
    EXPECT_EQ(pairs, (std::vector<CollocationPair>{{1, 1}}));
}

TEST(CollocationPairs, AfterLastOccurrence) {
    const auto pairs = collocation_pairs(doc({"a", "b", "a"}), "b", "a");
    EXPECT_EQ(pairs, (std::vector<CollocationPair>{{1, 2}}));
}

TEST(CollocationPairs, NoQualifyingPosition) {
    EXPECT_TRUE(collocation_pairs(doc({"a", "b"}), "b", "a").empty());
}

TEST(CollocationPairs, AbsentTokenGivesEmptySet) {
    EXPECT_TRUE(collocation_pairs(doc({"a", "b"}), "a", "z").empty());
    EXPECT_TRUE(collocation_pairs(doc({"a", "b"}), "z", "a").empty());
}

TEST(CollocationPairs, RejectsEqualTokens) {
    EXPECT_THROW(collocation_pairs(doc({"a", "b"}), "a", "a"), InvalidInput);
}

// Sweep vs. exhaustive enumeration. Exhaustive over a 4-token alphabet
// up to length 9, then random documents up to length 12.
TEST(CollocationPairs, SweepMatchesBruteForce) {
    const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
    auto check_doc = [&](const Document& d) {
        const auto positions = occurrence_positions(d);
        for (const auto& u : alphabet) {
            for (const auto& v : alphabet) {
                if (u == v) continue;
                const auto got = collocation_pairs(d, u, v);
                std::vector<CollocationPair> expected;
                if (positions.contains(u) && positions.contains(v)) {
                    expected = test::brute_collocation_pairs(positions.at(u),
                                                             positions.at(v));
                }
                ASSERT_EQ(got, expected);
            }
        }
    };

    std::vector<std::string> tokens;
    auto enumerate = [&](auto&& self, std::size_t remaining) -> void {
        if (!tokens.empty()) check_doc(doc(tokens));
        if (remaining == 0) return;
        for (const auto& t : alphabet) {
            tokens.push_back(t);
            self(self, remaining - 1);
            tokens.pop_back();
        }
    };
    enumerate(enumerate, 9);

    Rng rng(20240811);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t len = 10 + rng.below(3);
        std::vector<std::string> random_tokens;
        for (std::size_t i = 0; i < len; ++i)
            random_tokens.push_back(alphabet[rng.below(alphabet.size())]);
        check_doc(doc(random_tokens));
    }
}

TEST(AssocMatrix, ThreeTokenExample) {
    const auto vocab = vocab_of({"a", "b", "c"});
    const auto K = assoc_matrix(doc({"a", "b", "c"}), {}, vocab);

    const double ln3 = std::log(3.0);
    EXPECT_NEAR(K.at(0, 1), 1.0986, 1e-4);
    EXPECT_NEAR(K.at(0, 2), 0.4041, 1e-4);
    EXPECT_NEAR(K.at(1, 2), 1.0986, 1e-4);
    EXPECT_NEAR(K.at(0, 1), ln3, 1e-12);
    EXPECT_NEAR(K.at(0, 2), ln3 * std::exp(-1.0), 1e-12);
    EXPECT_NEAR(K.at(1, 2), ln3, 1e-12);
    EXPECT_EQ(K.at(1, 0), 0.0);
    EXPECT_EQ(K.at(2, 0), 0.0);
    EXPECT_EQ(K.at(2, 1), 0.0);
}

TEST(AssocMatrix, SinglePairIsDegenerate) {
    const auto vocab = vocab_of({"a", "b"});
    EXPECT_THROW(assoc_matrix(doc({"a", "b"}), {}, vocab), DegenerateDocument);
    // Trailing repeats still feed the same single pair set.
    EXPECT_THROW(assoc_matrix(doc({"a", "b", "b"}), {}, vocab),
                 DegenerateDocument);
}

TEST(AssocMatrix, TooFewDistinctTokens) {
    const auto vocab = vocab_of({"a", "b"});
    EXPECT_THROW(assoc_matrix(doc({"a", "a", "a"}), {}, vocab), InvalidInput);
    EXPECT_THROW(assoc_matrix(doc({}), {}, vocab), InvalidInput);
    // Out-of-vocabulary tokens are dropped before the check.
    EXPECT_THROW(assoc_matrix(doc({"z", "y", "a"}), {}, vocab), InvalidInput);
}

TEST(AssocMatrix, OutOfVocabularyTokensDropBeforePositions) {
    // With "z" filtered out, a and b become adjacent.
    const auto vocab = vocab_of({"a", "b", "c"});
    const auto K = assoc_matrix(doc({"a", "z", "b", "c"}), {}, vocab);
    const auto dense =
        test::brute_assoc(doc({"a", "z", "b", "c"}), {}, vocab);
    for (NodeId u = 0; u < 3; ++u) {
        for (NodeId v = 0; v < 3; ++v) {
            if (u == v) continue;
            ASSERT_NEAR(K.at(u, v), dense.at(u, v), 1e-15);
        }
    }
    // Same values as the unfiltered 3-token document.
    const auto direct = assoc_matrix(doc({"a", "b", "c"}), {}, vocab);
    EXPECT_EQ(K.at(0, 1), direct.at(0, 1));
    EXPECT_EQ(K.at(0, 2), direct.at(0, 2));
}

TEST(AssocMatrix, MatchesBruteForceOnRandomDocuments) {
    const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
    const auto vocab = vocab_of(alphabet);
    AssocParams params;
    params.beta = 1.5;
    params.sigma = 2.0;
    Rng rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t len = 2 + rng.below(14);
        std::vector<std::string> tokens;
        for (std::size_t i = 0; i < len; ++i)
            tokens.push_back(alphabet[rng.below(alphabet.size())]);
        const auto d = doc(tokens);
        const auto dense = test::brute_assoc(d, params, vocab);
        if (dense.too_few_tokens) {
            EXPECT_THROW(assoc_matrix(d, params, vocab), InvalidInput);
            continue;
        }
        if (dense.degenerate) {
            EXPECT_THROW(assoc_matrix(d, params, vocab), DegenerateDocument);
            continue;
        }
        const auto K = assoc_matrix(d, params, vocab);
        for (NodeId u = 0; u < vocab.size(); ++u) {
            for (NodeId v = 0; v < vocab.size(); ++v) {
                if (u == v) continue;
                const double expected = dense.at(u, v);
                ASSERT_NEAR(K.at(u, v), expected,
                            1e-12 * std::max(1.0, std::abs(expected)));
                ASSERT_GE(K.at(u, v), 0.0);
            }
        }
    }
}

// Relative collocation frequencies over non-empty pair sets sum to 1.
TEST(AssocMatrix, PairFrequenciesSumToOne) {
    const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 2 + rng.below(12);
        std::vector<std::string> tokens;
        for (std::size_t i = 0; i < len; ++i)
            tokens.push_back(alphabet[rng.below(alphabet.size())]);
        const auto d = doc(tokens);

        std::size_t total = 0;
        std::vector<std::size_t> sizes;
        for (const auto& u : alphabet) {
            for (const auto& v : alphabet) {
                if (u == v) continue;
                const auto pairs = collocation_pairs(d, u, v);
                if (!pairs.empty()) {
                    sizes.push_back(pairs.size());
                    total += pairs.size();
                }
            }
        }
        if (total == 0) continue;
        double h_sum = 0.0;
        for (auto s : sizes)
            h_sum += static_cast<double>(s) / static_cast<double>(total);
        EXPECT_NEAR(h_sum, 1.0, 1e-12);
    }
}

TEST(AssocMatrix, PermutationEquivariant) {
    const std::vector<std::string> names = {"a", "b", "c", "d"};
    const auto vocab = vocab_of(names);
    // Relabeling a -> c, b -> a, c -> d, d -> b.
    const std::vector<std::string> renamed = {"c", "a", "d", "b"};
    const auto vocab2 = vocab_of(names);

    Rng rng(5);
    std::vector<std::string> tokens, tokens2;
    for (int i = 0; i < 20; ++i) {
        const auto pick = rng.below(names.size());
        tokens.push_back(names[pick]);
        tokens2.push_back(renamed[pick]);
    }
    const auto K = assoc_matrix(doc(tokens), {}, vocab);
    const auto K2 = assoc_matrix(doc(tokens2), {}, vocab2);
    for (std::size_t u = 0; u < names.size(); ++u) {
        for (std::size_t v = 0; v < names.size(); ++v) {
            if (u == v) continue;
            const auto pu = vocab2.at(renamed[u]);
            const auto pv = vocab2.at(renamed[v]);
            ASSERT_EQ(K.at(u, v), K2.at(pu, pv));
        }
    }
}

TEST(Aggregate, SingleElementAndZeroIdentity) {
    const auto vocab = vocab_of({"a", "b", "c"});
    const auto K = assoc_matrix(doc({"a", "b", "c"}), {}, vocab);
    const auto single = aggregate({K});
    EXPECT_EQ(single.at(0, 1), K.at(0, 1));
    EXPECT_EQ(single.at(0, 2), K.at(0, 2));

    const auto with_zero = aggregate({K, AssociationMatrix(3)});
    for (NodeId u = 0; u < 3; ++u) {
        for (NodeId v = 0; v < 3; ++v) {
            if (u != v) ASSERT_EQ(with_zero.at(u, v), K.at(u, v));
        }
    }
}

TEST(Aggregate, ElementWiseSum) {
    AssociationMatrix a(3), b(3);
    a.add(0, 1, 1.5);
    a.add(1, 2, 2.0);
    b.add(0, 1, 0.25);
    b.add(2, 0, 4.0);
    const auto sum = aggregate({a, b});
    // Dense addition oracle.
    double dense[3][3] = {};
    for (const auto& m : {a, b}) {
        for (const auto& e : m.entries()) dense[e.u][e.v] += e.weight;
    }
    for (NodeId u = 0; u < 3; ++u) {
        for (NodeId v = 0; v < 3; ++v) {
            if (u != v) ASSERT_EQ(sum.at(u, v), dense[u][v]);
        }
    }
    EXPECT_EQ(sum.nnz(), 3u);
}

TEST(Aggregate, DimensionMismatch) {
    EXPECT_THROW(aggregate({AssociationMatrix(3), AssociationMatrix(4)}),
                 DimensionMismatch);
}

TEST(Aggregate, CommutativeAndAssociativeWithinTolerance) {
    Rng rng(31);
    auto random_matrix = [&] {
        AssociationMatrix m(6);
        for (int i = 0; i < 12; ++i) {
            const NodeId u = static_cast<NodeId>(rng.below(6));
            const NodeId v = static_cast<NodeId>(rng.below(6));
            if (u != v) m.add(u, v, rng.unit() * 10.0);
        }
        return m;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_matrix();
        const auto b = random_matrix();
        const auto c = random_matrix();
        const auto ab_c = aggregate({aggregate({a, b}), c});
        const auto a_bc = aggregate({a, aggregate({b, c})});
        const auto ba = aggregate({b, a});
        const auto ab = aggregate({a, b});
        for (NodeId u = 0; u < 6; ++u) {
            for (NodeId v = 0; v < 6; ++v) {
                if (u == v) continue;
                const double scale = std::max(1.0, std::abs(ab_c.at(u, v)));
                ASSERT_NEAR(ab_c.at(u, v), a_bc.at(u, v), 1e-9 * scale);
                ASSERT_NEAR(ab.at(u, v), ba.at(u, v), 1e-9 * scale);
            }
        }
    }
}

TEST(AssociationMatrix, RejectsDiagonalAndNegative) {
    AssociationMatrix m(3);
    EXPECT_THROW(m.add(1, 1, 1.0), InvalidInput);
    EXPECT_THROW(m.add(0, 1, -1.0), InvalidInput);
    EXPECT_THROW(m.add(0, 3, 1.0), DimensionMismatch);
}

}  // namespace
}  // namespace dfp

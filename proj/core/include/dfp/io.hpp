#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dfp/association.hpp"
#include "dfp/document.hpp"
#include "dfp/domain_graph.hpp"
#include "dfp/features.hpp"
#include "dfp/pathway.hpp"

namespace dfp::io {

/// Decimal with 17 significant digits; round-trips exactly.
std::string format_weight(double value);
/// Shortest decimal that round-trips exactly.
std::string format_value(double value);

/// Writes via a temp file in the same directory plus rename, so
/// readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content);

/// Sidecar metadata convention: `<artifact>.meta.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& artifact);

// --- documents (JSON Lines) ---------------------------------------------
// One object per line: {"id": ..., "tokens": [...]} or {"id": ...,
// "text": ...} (tokenized on read), optional "label".

std::vector<Document> read_documents(const std::filesystem::path& path,
                                     const TokenizerConfig& tok = {});

enum class RequestKind { Doc, Seed };

/// A diffusion input line: a document, or a bare node set
/// {"id": ..., "nodes": [...]} seeded uniformly.
struct DiffusionRequest {
    RequestKind kind = RequestKind::Doc;
    Document doc;
    std::vector<std::string> nodes;
};

std::vector<DiffusionRequest> read_diffusion_requests(
    const std::filesystem::path& path, const TokenizerConfig& tok = {});

// --- association matrices (TSV) ------------------------------------------
// `u_token<TAB>v_token<TAB>weight`, sorted by (u, v) index.

void write_assoc(const std::filesystem::path& path, const AssociationMatrix& K,
                 const Vocabulary& vocab);

struct AssocFile {
    AssociationMatrix matrix;
    std::shared_ptr<Vocabulary> vocab;
};

/// Vocabulary indices follow first appearance in the file.
AssocFile read_assoc(const std::filesystem::path& path);

// --- domain graphs (TSV arc list + JSON sidecar) --------------------------
// `src_token<TAB>dst_token` per arc; the sidecar records gamma, seed,
// node order and any extra object the caller merges in.

void write_graph(const std::filesystem::path& path, const DomainGraph& g,
                 std::string_view extra_meta_json = "");

/// Uses the sidecar's node list when present (preserving isolated
/// nodes and index order), otherwise derives the vocabulary from arc
/// first appearance.
DomainGraph read_graph(const std::filesystem::path& path);

// --- fingerprints (sparse TSV rows + JSON sidecar) -------------------------
// `id<TAB>index:value<SPACE>index:value...`; rows keep input order.

struct FingerprintRow {
    std::string id;
    std::string label;
    std::vector<std::pair<std::uint32_t, double>> entries;  // ascending index
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::string error;  // non-empty when the row failed
};

void write_fingerprints(const std::filesystem::path& path,
                        const std::vector<FingerprintRow>& rows,
                        std::size_t dimension, double emit_threshold = 0.0,
                        std::string_view extra_meta_json = "");

struct FingerprintFile {
    std::vector<FingerprintRow> rows;
    std::size_t dimension = 0;
};

FingerprintFile read_fingerprints(const std::filesystem::path& path);

/// Dense rows; errored rows are skipped.
FeatureMatrix to_feature_matrix(const FingerprintFile& file);

// --- pathway instances (JSON Lines) ---------------------------------------
// {"id", "sources": [...], "sinks": [...], "annotated": [...]} with
// node names resolved through the graph vocabulary.

struct ParsedPathway {
    PathwayInstance instance;
    std::size_t line = 0;
    std::string error;  // non-empty when the line did not resolve
};

std::vector<ParsedPathway> read_pathways(const std::filesystem::path& path,
                                         const Vocabulary& vocab);

// --- feature matrices (TSV) -----------------------------------------------
// `id<TAB>label<TAB>v0,v1,...`; label may be empty.

void write_features(const std::filesystem::path& path,
                    const FeatureMatrix& rows);

FeatureMatrix read_features(const std::filesystem::path& path);

}  // namespace dfp::io

#include "dfp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dfp/errors.hpp"

namespace dfp::io {

using nlohmann::json;

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             std::size_t line, const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

json parse_json_line(const std::filesystem::path& path, std::size_t line_no,
                     const std::string& line) {
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
        parse_fail(path, line_no, "expected a JSON object");
    return obj;
}

double parse_double(const std::filesystem::path& path, std::size_t line_no,
                    std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        parse_fail(path, line_no, "bad number '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::string format_weight(double value) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof(buf), "%.16e", value);
    return {buf, static_cast<std::size_t>(len)};
}

std::string format_value(double value) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return {buf, static_cast<std::size_t>(ptr - buf)};
}

void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content) {
    auto dir = path.parent_path();
    if (dir.empty()) dir = ".";
    const auto temp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + temp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + temp.string());
    }
    std::filesystem::rename(temp, path);
}

std::filesystem::path sidecar_path(const std::filesystem::path& artifact) {
    return artifact.string() + ".meta.json";
}

// --- documents -------------------------------------------------------------

namespace {

Document document_from_json(const std::filesystem::path& path,
                            std::size_t line_no, const json& obj,
                            const TokenizerConfig& tok) {
    Document doc;
    if (!obj.contains("id") || !obj["id"].is_string())
        parse_fail(path, line_no, "missing string field 'id'");
    doc.id = obj["id"].get<std::string>();
    if (obj.contains("tokens")) {
        if (!obj["tokens"].is_array())
            parse_fail(path, line_no, "'tokens' must be an array of strings");
        for (const auto& t : obj["tokens"]) {
            if (!t.is_string())
                parse_fail(path, line_no, "'tokens' must be an array of strings");
            doc.tokens.push_back(t.get<std::string>());
        }
    } else if (obj.contains("text")) {
        if (!obj["text"].is_string())
            parse_fail(path, line_no, "'text' must be a string");
        doc.tokens = tokenize(obj["text"].get<std::string>(), tok);
    } else {
        parse_fail(path, line_no, "need 'tokens' or 'text'");
    }
    if (obj.contains("label")) {
        if (!obj["label"].is_string())
            parse_fail(path, line_no, "'label' must be a string");
        doc.label = obj["label"].get<std::string>();
    }
    return doc;
}

}  // namespace

std::vector<Document> read_documents(const std::filesystem::path& path,
                                     const TokenizerConfig& tok) {
    auto in = open_input(path);
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const json obj = parse_json_line(path, line_no, line);
        docs.push_back(document_from_json(path, line_no, obj, tok));
    }
    return docs;
}

std::vector<DiffusionRequest> read_diffusion_requests(
    const std::filesystem::path& path, const TokenizerConfig& tok) {
    auto in = open_input(path);
    std::vector<DiffusionRequest> requests;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const json obj = parse_json_line(path, line_no, line);
        DiffusionRequest req;
        if (obj.contains("nodes")) {
            req.kind = RequestKind::Seed;
            if (!obj.contains("id") || !obj["id"].is_string())
                parse_fail(path, line_no, "missing string field 'id'");
            req.doc.id = obj["id"].get<std::string>();
            if (!obj["nodes"].is_array())
                parse_fail(path, line_no, "'nodes' must be an array of strings");
            for (const auto& t : obj["nodes"]) {
                if (!t.is_string())
                    parse_fail(path, line_no, "'nodes' must be an array of strings");
                req.nodes.push_back(t.get<std::string>());
            }
            if (obj.contains("label") && obj["label"].is_string())
                req.doc.label = obj["label"].get<std::string>();
        } else {
            req.kind = RequestKind::Doc;
            req.doc = document_from_json(path, line_no, obj, tok);
        }
        requests.push_back(std::move(req));
    }
    return requests;
}

// --- association matrices ---------------------------------------------------

void write_assoc(const std::filesystem::path& path, const AssociationMatrix& K,
                 const Vocabulary& vocab) {
    if (vocab.size() != K.dim())
        throw DimensionMismatch("write_assoc: vocabulary size != matrix dim");
    std::string out;
    for (const auto& e : K.entries()) {
        out += vocab.token(e.u);
        out += '\t';
        out += vocab.token(e.v);
        out += '\t';
        out += format_weight(e.weight);
        out += '\n';
    }
    write_text_atomic(path, out);
}

AssocFile read_assoc(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::tuple<std::string, std::string, double>> raw;
    auto vocab = std::make_shared<Vocabulary>();
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 3)
            parse_fail(path, line_no, "expected u<TAB>v<TAB>weight");
        vocab->add(fields[0]);
        vocab->add(fields[1]);
        raw.emplace_back(std::string(fields[0]), std::string(fields[1]),
                         parse_double(path, line_no, fields[2]));
    }
    AssocFile file;
    file.vocab = vocab;
    file.matrix = AssociationMatrix(vocab->size());
    std::size_t entry_line = 0;
    for (const auto& [u, v, w] : raw) {
        ++entry_line;
        if (u == v) parse_fail(path, entry_line, "diagonal entry " + u);
        file.matrix.add(vocab->at(u), vocab->at(v), w);
    }
    return file;
}

// --- domain graphs -----------------------------------------------------------

void write_graph(const std::filesystem::path& path, const DomainGraph& g,
                 std::string_view extra_meta_json) {
    std::string out;
    for (const auto& [u, v] : g.arcs()) {
        out += g.vocab().token(u);
        out += '\t';
        out += g.vocab().token(v);
        out += '\n';
    }
    write_text_atomic(path, out);

    json meta;
    if (!extra_meta_json.empty()) {
        meta = json::parse(extra_meta_json, nullptr, false);
        if (meta.is_discarded() || !meta.is_object())
            throw InvalidInput("write_graph: extra metadata must be a JSON object");
    }
    meta["gamma"] = g.density_used();
    meta["seed"] = g.seed();
    meta["node_count"] = g.node_count();
    meta["edge_count"] = g.edge_count();
    meta["nodes"] = g.vocab().tokens();
    meta["warnings"] = g.warnings();
    write_text_atomic(sidecar_path(path), meta.dump(2) + "\n");
}

DomainGraph read_graph(const std::filesystem::path& path) {
    auto vocab = std::make_shared<Vocabulary>();
    double gamma = 0.0;
    std::uint64_t seed = 0;
    bool have_nodes = false;

    const auto meta_path = sidecar_path(path);
    if (std::filesystem::exists(meta_path)) {
        std::ifstream meta_in(meta_path);
        json meta = json::parse(meta_in, nullptr, false);
        if (meta.is_discarded() || !meta.is_object())
            throw ParseError(meta_path.string() + ": not a JSON object");
        if (meta.contains("gamma") && meta["gamma"].is_number())
            gamma = meta["gamma"].get<double>();
        if (meta.contains("seed") && meta["seed"].is_number_unsigned())
            seed = meta["seed"].get<std::uint64_t>();
        if (meta.contains("nodes") && meta["nodes"].is_array()) {
            for (const auto& t : meta["nodes"]) {
                if (!t.is_string())
                    throw ParseError(meta_path.string() + ": 'nodes' must be strings");
                vocab->add(t.get<std::string>());
            }
            have_nodes = true;
        }
    }

    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<NodeId, NodeId>> arcs;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 2) parse_fail(path, line_no, "expected src<TAB>dst");
        NodeId u, v;
        if (have_nodes) {
            auto fu = vocab->find(fields[0]);
            auto fv = vocab->find(fields[1]);
            if (!fu || !fv)
                parse_fail(path, line_no, "arc token missing from sidecar node list");
            u = *fu;
            v = *fv;
        } else {
            u = vocab->add(fields[0]);
            v = vocab->add(fields[1]);
        }
        arcs.emplace_back(u, v);
    }
    return DomainGraph::from_arcs(std::move(vocab), std::move(arcs), gamma, seed);
}

// --- fingerprints -------------------------------------------------------------

void write_fingerprints(const std::filesystem::path& path,
                        const std::vector<FingerprintRow>& rows,
                        std::size_t dimension, double emit_threshold,
                        std::string_view extra_meta_json) {
    std::string out;
    for (const auto& row : rows) {
        out += row.id;
        bool first = true;
        for (const auto& [idx, value] : row.entries) {
            if (!(value > emit_threshold) || value == 0.0) continue;
            out += first ? '\t' : ' ';
            first = false;
            out += std::to_string(idx);
            out += ':';
            out += format_value(value);
        }
        out += '\n';
    }
    write_text_atomic(path, out);

    json meta;
    if (!extra_meta_json.empty()) {
        meta = json::parse(extra_meta_json, nullptr, false);
        if (meta.is_discarded() || !meta.is_object())
            throw InvalidInput("write_fingerprints: extra metadata must be an object");
    }
    meta["dimension"] = dimension;
    meta["emit_threshold"] = emit_threshold;
    json row_meta = json::array();
    for (const auto& row : rows) {
        json r;
        r["id"] = row.id;
        if (!row.label.empty()) r["label"] = row.label;
        if (row.error.empty()) {
            r["iterations"] = row.iterations;
            r["residual"] = row.residual;
            r["converged"] = row.converged;
        } else {
            r["error"] = row.error;
        }
        row_meta.push_back(std::move(r));
    }
    meta["rows"] = std::move(row_meta);
    write_text_atomic(sidecar_path(path), meta.dump(2) + "\n");
}

FingerprintFile read_fingerprints(const std::filesystem::path& path) {
    FingerprintFile file;

    const auto meta_path = sidecar_path(path);
    std::vector<std::pair<std::string, std::string>> labels;
    if (std::filesystem::exists(meta_path)) {
        std::ifstream meta_in(meta_path);
        json meta = json::parse(meta_in, nullptr, false);
        if (!meta.is_discarded() && meta.is_object()) {
            if (meta.contains("dimension") && meta["dimension"].is_number_unsigned())
                file.dimension = meta["dimension"].get<std::size_t>();
            if (meta.contains("rows") && meta["rows"].is_array()) {
                for (const auto& r : meta["rows"]) {
                    if (r.is_object() && r.contains("id") && r.contains("label"))
                        labels.emplace_back(r["id"].get<std::string>(),
                                            r["label"].get<std::string>());
                }
            }
        }
    }

    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    std::uint32_t max_index = 0;
    bool any_entry = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        FingerprintRow row;
        const auto tab = line.find('\t');
        row.id = line.substr(0, tab);
        if (tab != std::string::npos) {
            for (auto part : split(std::string_view(line).substr(tab + 1), ' ')) {
                if (part.empty()) continue;
                const auto colon = part.find(':');
                if (colon == std::string_view::npos)
                    parse_fail(path, line_no, "expected index:value");
                std::uint32_t idx = 0;
                const auto* end = part.data() + colon;
                auto [ptr, ec] = std::from_chars(part.data(), end, idx);
                if (ec != std::errc() || ptr != end)
                    parse_fail(path, line_no, "bad index in fingerprint row");
                row.entries.emplace_back(
                    idx, parse_double(path, line_no, part.substr(colon + 1)));
                max_index = std::max(max_index, idx);
                any_entry = true;
            }
        }
        file.rows.push_back(std::move(row));
    }
    if (file.dimension == 0 && any_entry) file.dimension = max_index + 1;

    for (const auto& [id, label] : labels) {
        for (auto& row : file.rows) {
            if (row.id == id && row.label.empty()) {
                row.label = label;
                break;
            }
        }
    }
    return file;
}

FeatureMatrix to_feature_matrix(const FingerprintFile& file) {
    FeatureMatrix out;
    std::vector<double> dense(file.dimension, 0.0);
    for (const auto& row : file.rows) {
        if (!row.error.empty()) continue;
        std::fill(dense.begin(), dense.end(), 0.0);
        for (const auto& [idx, value] : row.entries) {
            if (idx >= file.dimension)
                throw DimensionMismatch("fingerprint row '" + row.id +
                                        "' exceeds declared dimension");
            dense[idx] = value;
        }
        out.add_row(row.id, dense, row.label);
    }
    return out;
}

// --- pathway instances ---------------------------------------------------------

std::vector<ParsedPathway> read_pathways(const std::filesystem::path& path,
                                         const Vocabulary& vocab) {
    auto in = open_input(path);
    std::vector<ParsedPathway> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ParsedPathway parsed;
        parsed.line = line_no;
        const json obj = parse_json_line(path, line_no, line);
        if (!obj.contains("id") || !obj["id"].is_string())
            parse_fail(path, line_no, "missing string field 'id'");
        parsed.instance.id = obj["id"].get<std::string>();
        auto resolve = [&](const char* field, std::vector<NodeId>& target) {
            if (!parsed.error.empty()) return;
            if (!obj.contains(field) || !obj[field].is_array()) {
                parse_fail(path, line_no,
                           std::string("missing array field '") + field + "'");
            }
            for (const auto& name : obj[field]) {
                if (!name.is_string())
                    parse_fail(path, line_no,
                               std::string("'") + field + "' must hold strings");
                auto id = vocab.find(name.get<std::string>());
                if (!id) {
                    parsed.error = std::string("unknown node '") +
                                   name.get<std::string>() + "' in '" + field + "'";
                    return;
                }
                target.push_back(*id);
            }
        };
        resolve("sources", parsed.instance.sources);
        resolve("sinks", parsed.instance.sinks);
        resolve("annotated", parsed.instance.annotated);
        out.push_back(std::move(parsed));
    }
    return out;
}

// --- feature matrices ------------------------------------------------------------

void write_features(const std::filesystem::path& path,
                    const FeatureMatrix& rows) {
    std::string out;
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        out += rows.ids[i];
        out += '\t';
        out += rows.labels[i];
        out += '\t';
        const auto row = rows.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out += ',';
            out += format_value(row[j]);
        }
        out += '\n';
    }
    write_text_atomic(path, out);
}

FeatureMatrix read_features(const std::filesystem::path& path) {
    auto in = open_input(path);
    FeatureMatrix out;
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 3)
            parse_fail(path, line_no, "expected id<TAB>label<TAB>values");
        values.clear();
        if (!fields[2].empty()) {
            for (auto part : split(fields[2], ',')) {
                values.push_back(parse_double(path, line_no, part));
            }
        }
        try {
            out.add_row(std::string(fields[0]), values, std::string(fields[1]));
        } catch (const DimensionMismatch&) {
            parse_fail(path, line_no, "row length differs from previous rows");
        }
    }
    return out;
}

}  // namespace dfp::io

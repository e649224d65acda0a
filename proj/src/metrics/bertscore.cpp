#include "aspectgen/metrics/bertscore.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

#include "aspectgen/errors.hpp"

using nlohmann::json;

namespace aspectgen::metrics {

namespace {

double token_weight(const std::string& token,
                    const std::unordered_map<std::string, double>* idf) {
    if (!idf) return 1.0;
    auto it = idf->find(token);
    return it == idf->end() ? 1.0 : it->second;
}

// Weighted mean of best-match similarities for every token of `from`.
double greedy_side(const TokenEmbeddings& from, const TokenEmbeddings& to,
                   const std::unordered_map<std::string, double>* idf) {
    double weighted_sum = 0.0, weight_total = 0.0;
    for (std::size_t i = 0; i < from.vectors.size(); i++) {
        double best = 0.0;
        bool first = true;
        for (const auto& other : to.vectors) {
            double dot = 0.0;
            for (std::size_t d = 0; d < other.size(); d++)
                dot += from.vectors[i][d] * other[d];
            if (first || dot > best) {
                best = dot;
                first = false;
            }
        }
        double w = token_weight(from.tokens[i], idf);
        weighted_sum += w * best;
        weight_total += w;
    }
    if (weight_total == 0.0) return 0.0;
    return weighted_sum / weight_total;
}

}  // namespace

ScoreTriple bertscore(const TokenEmbeddings& candidate,
                      const TokenEmbeddings& reference,
                      const std::unordered_map<std::string, double>* idf) {
    if (candidate.vectors.empty() || reference.vectors.empty()) return {};
    std::size_t dim = candidate.vectors.front().size();
    for (const auto& v : candidate.vectors)
        if (v.size() != dim)
            throw MetricError("bertscore: inconsistent embedding dimensions");
    for (const auto& v : reference.vectors)
        if (v.size() != dim)
            throw MetricError("bertscore: embedding dimension mismatch between "
                              "candidate and reference");
    ScoreTriple s;
    s.precision = greedy_side(candidate, reference, idf);
    s.recall = greedy_side(reference, candidate, idf);
    if (s.precision + s.recall > 0)
        s.f = 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

EmbeddingStore EmbeddingStore::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open embedding file " + path);
    EmbeddingStore store;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw JsonlError(path, line_no, "invalid JSON");
        if (!j.is_object()) throw JsonlError(path, line_no, "line is not an object");
        if (!j.contains("record_id") || !j["record_id"].is_number())
            throw JsonlError(path, line_no, "missing numeric record_id");
        if (!j.contains("side") || !j["side"].is_string())
            throw JsonlError(path, line_no, "missing side");
        std::string side = j["side"].get<std::string>();
        if (side != "candidate" && side != "reference")
            throw JsonlError(path, line_no,
                             "side must be \"candidate\" or \"reference\"");
        if (!j.contains("tokens") || !j["tokens"].is_array() ||
            !j.contains("vectors") || !j["vectors"].is_array())
            throw JsonlError(path, line_no, "missing tokens or vectors array");

        TokenEmbeddings emb;
        for (const auto& t : j["tokens"]) {
            if (!t.is_string())
                throw JsonlError(path, line_no, "tokens must be strings");
            emb.tokens.push_back(t.get<std::string>());
        }
        std::size_t dim = 0;
        for (const auto& vec : j["vectors"]) {
            if (!vec.is_array())
                throw JsonlError(path, line_no, "vectors must be arrays");
            std::vector<double> v;
            for (const auto& x : vec) {
                if (!x.is_number())
                    throw JsonlError(path, line_no, "vector entries must be numbers");
                v.push_back(x.get<double>());
            }
            if (v.empty()) throw JsonlError(path, line_no, "empty vector");
            if (dim == 0)
                dim = v.size();
            else if (v.size() != dim)
                throw JsonlError(path, line_no,
                                 "inconsistent vector dimensions within entry");
            double norm = 0.0;
            for (double x : v) norm += x * x;
            norm = std::sqrt(norm);
            if (norm == 0.0)
                throw JsonlError(path, line_no, "zero vector cannot be normalized");
            for (double& x : v) x /= norm;
            emb.vectors.push_back(std::move(v));
        }
        if (emb.tokens.size() != emb.vectors.size())
            throw JsonlError(path, line_no,
                             "tokens and vectors differ in length (" +
                                 std::to_string(emb.tokens.size()) + " vs " +
                                 std::to_string(emb.vectors.size()) + ")");
        std::uint64_t rid = j["record_id"].get<std::uint64_t>();
        store.entries_[{rid, side}] = std::move(emb);
    }
    return store;
}

const TokenEmbeddings* EmbeddingStore::find(std::uint64_t record_id,
                                            const std::string& side) const {
    auto it = entries_.find({record_id, side});
    return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace aspectgen::metrics

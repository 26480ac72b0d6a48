#pragma once

#include <cmath>
#include <map>
#include <string>

#include "versecraft/corpus.hpp"
#include "versecraft/error.hpp"
#include "versecraft/geometry.hpp"

namespace versecraft {

// ---------------------------------------------------------------------------
// Bag-of-words vectors
// ---------------------------------------------------------------------------

struct TermVector {
    std::string poem_id;
    std::map<std::string, int> counts;
    std::map<std::string, double> weighted;
};

struct IdfTable {
    std::map<std::string, double> idf;
    int n_docs = 0;
};

enum class BaselineMode { tf, tfidf };

// Raw term frequencies over normalized tokens; no stop words, no stemming.
// The weighted map starts in TF mode (weights equal to counts).
inline TermVector tf_vector(const Poem& poem) {
    TermVector tv;
    tv.poem_id = poem.id;
    for (const Token* t : all_tokens(poem)) ++tv.counts[t->normalized];
    for (const auto& [term, n] : tv.counts) tv.weighted[term] = static_cast<double>(n);
    return tv;
}

inline IdfTable idf_table(const Corpus& corpus) {
    if (corpus.poems.empty()) throw EmptyCorpus("cannot build an IDF table from zero poems");
    IdfTable table;
    table.n_docs = static_cast<int>(corpus.poems.size());
    std::map<std::string, int> df;
    for (const Poem& p : corpus.poems) {
        std::set<std::string> seen;
        for (const Token* t : all_tokens(p)) seen.insert(t->normalized);
        for (const auto& term : seen) ++df[term];
    }
    for (const auto& [term, n] : df)
        table.idf[term] = std::log(static_cast<double>(table.n_docs) / static_cast<double>(n));
    return table;
}

// Reweights a TF vector by IDF; terms missing from the table get idf 0.
inline TermVector apply_idf(TermVector tv, const IdfTable& table) {
    for (auto& [term, w] : tv.weighted) {
        auto it = table.idf.find(term);
        w = static_cast<double>(tv.counts.at(term)) * (it != table.idf.end() ? it->second : 0.0);
    }
    return tv;
}

inline double cosine_distance(const TermVector& u, const TermVector& v) {
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (const auto& [term, w] : u.weighted) nu += w * w;
    for (const auto& [term, w] : v.weighted) nv += w * w;
    if (nu <= 0.0 || nv <= 0.0) return 1.0; // zero vector: maximally distant by convention
    for (const auto& [term, w] : u.weighted) {
        auto it = v.weighted.find(term);
        if (it != v.weighted.end()) dot += w * it->second;
    }
    double c = 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv));
    return std::max(0.0, c);
}

// Distance matrix for the whole corpus under the requested weighting, in the
// same format the style pipeline uses so the statistics apply unchanged.
inline DistanceMatrix baseline_distance_matrix(const Corpus& corpus, BaselineMode mode) {
    if (corpus.poems.empty()) throw EmptyCorpus("cannot build a distance matrix from zero poems");
    std::vector<TermVector> vecs;
    vecs.reserve(corpus.poems.size());
    for (const Poem& p : corpus.poems) vecs.push_back(tf_vector(p));
    if (mode == BaselineMode::tfidf) {
        IdfTable table = idf_table(corpus);
        for (auto& tv : vecs) tv = apply_idf(std::move(tv), table);
    }
    DistanceMatrix m;
    for (const auto& tv : vecs) m.ids.push_back(tv.poem_id);
    m.d.assign(vecs.size(), std::vector<double>(vecs.size(), 0.0));
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i + 1; j < vecs.size(); ++j) {
            double d = cosine_distance(vecs[i], vecs[j]);
            m.d[i][j] = d;
            m.d[j][i] = d;
        }
    return m;
}

} // namespace versecraft

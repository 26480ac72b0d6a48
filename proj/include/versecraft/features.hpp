#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "versecraft/corpus.hpp"
#include "versecraft/error.hpp"
#include "versecraft/phonemics.hpp"
#include "versecraft/postag.hpp"
#include "versecraft/util.hpp"

namespace versecraft {

// ---------------------------------------------------------------------------
// Metric registry
// ---------------------------------------------------------------------------

enum class MetricCategory { orthographic, syntactic, phonemic };

struct MetricId {
    std::string name;
    MetricCategory category;
};

// The fixed metric inventory, in emission order.  Weight files and CSV
// exports refer to metrics by these names.
inline const std::vector<MetricId>& metric_registry() {
    using MC = MetricCategory;
    static const std::vector<MetricId> reg = {
        {"word_count", MC::orthographic},
        {"line_count", MC::orthographic},
        {"stanza_count", MC::orthographic},
        {"avg_line_length_words", MC::orthographic},
        {"avg_word_length_chars", MC::orthographic},
        {"avg_lines_per_stanza", MC::orthographic},
        {"top_noun_freq", MC::orthographic},
        {"top_adjective_freq", MC::orthographic},
        {"top_verb_freq", MC::orthographic},
        {"pos_noun", MC::syntactic},
        {"pos_verb", MC::syntactic},
        {"pos_adjective", MC::syntactic},
        {"pos_adverb", MC::syntactic},
        {"pos_pronoun", MC::syntactic},
        {"pos_first_person_singular_pronoun", MC::syntactic},
        {"pos_coordinating_conjunction", MC::syntactic},
        {"pos_connective", MC::syntactic},
        {"pos_preposition", MC::syntactic},
        {"pos_determiner", MC::syntactic},
        {"pos_other", MC::syntactic},
        {"contraction_freq", MC::syntactic},
        {"rhyme_identity_freq", MC::phonemic},
        {"rhyme_perfect_freq", MC::phonemic},
        {"rhyme_semirhyme_freq", MC::phonemic},
        {"rhyme_slant_freq", MC::phonemic},
        {"rhyme_full_freq", MC::phonemic},
        {"alliteration_freq", MC::phonemic},
        {"assonance_freq", MC::phonemic},
        {"consonance_freq", MC::phonemic},
    };
    return reg;
}

inline std::size_t metric_index(const std::string& name) {
    const auto& reg = metric_registry();
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (reg[i].name == name) return i;
    throw UnknownMetric("unknown metric: " + name);
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

struct WeightConfig {
    std::vector<double> weights; // aligned with metric_registry()
};

inline WeightConfig uniform_weights() {
    return WeightConfig{std::vector<double>(metric_registry().size(), 1.0)};
}

// Parses a weights JSON object {"metric_name": number, ...}; metrics not
// mentioned default to 1.0.
inline WeightConfig parse_weights(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid weights JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("weights file must be a JSON object");

    WeightConfig cfg = uniform_weights();
    for (const auto& [name, value] : doc.items()) {
        std::size_t idx = metric_index(name); // throws UnknownMetric
        if (!value.is_number())
            throw ParseError("weight for \"" + name + "\" is not a number");
        double w = value.get<double>();
        if (w < 0.0) throw NegativeWeight("negative weight for \"" + name + "\"");
        cfg.weights[idx] = w;
    }
    return cfg;
}

inline WeightConfig load_weights(const std::filesystem::path& path) {
    return parse_weights(read_file(path));
}

// The weights shipped with the CLI.  Counts and means are damped hard so the
// unbounded metrics (word/line/stanza counts, lengths) cannot drown the
// frequency metrics, which carry the stylistic signal.
inline WeightConfig bundled_default_weights() {
    WeightConfig cfg = uniform_weights();
    auto set = [&](const char* name, double w) { cfg.weights[metric_index(name)] = w; };
    set("word_count", 0.001);
    set("line_count", 0.001);
    set("stanza_count", 0.02);
    set("avg_line_length_words", 0.02);
    set("avg_word_length_chars", 0.02);
    set("avg_lines_per_stanza", 0.02);
    return cfg;
}

// ---------------------------------------------------------------------------
// Metric computation
// ---------------------------------------------------------------------------

using MetricMap = std::map<std::string, double>;

inline MetricMap orthographic_metrics(const Poem& poem, const std::vector<TaggedToken>& tagged) {
    MetricMap m;
    const double wc = static_cast<double>(word_count(poem));
    const double lc = static_cast<double>(line_count(poem));
    const double sc = static_cast<double>(poem.stanzas.size());

    m["word_count"] = wc;
    m["line_count"] = lc;
    m["stanza_count"] = sc;
    m["avg_line_length_words"] = lc > 0 ? wc / lc : 0.0;
    m["avg_lines_per_stanza"] = sc > 0 ? lc / sc : 0.0;

    double chars = 0.0;
    for (const Token* t : all_tokens(poem)) chars += static_cast<double>(utf8_length(t->normalized));
    m["avg_word_length_chars"] = wc > 0 ? chars / wc : 0.0;

    auto top_freq = [&](CoarseCategory cat) {
        std::map<std::string, int> counts;
        for (const TaggedToken& tt : tagged)
            if (tt.coarse.count(cat)) ++counts[tt.token.normalized];
        int best = 0;
        for (const auto& [_, n] : counts) best = std::max(best, n);
        return wc > 0 ? static_cast<double>(best) / wc : 0.0;
    };
    m["top_noun_freq"] = top_freq(CoarseCategory::noun);
    m["top_adjective_freq"] = top_freq(CoarseCategory::adjective);
    m["top_verb_freq"] = top_freq(CoarseCategory::verb);
    return m;
}

inline MetricMap syntactic_metrics(const Poem& poem, const std::vector<TaggedToken>& tagged) {
    MetricMap m;
    const double wc = static_cast<double>(word_count(poem));

    static const std::vector<std::pair<const char*, CoarseCategory>> cats = {
        {"pos_noun", CoarseCategory::noun},
        {"pos_verb", CoarseCategory::verb},
        {"pos_adjective", CoarseCategory::adjective},
        {"pos_adverb", CoarseCategory::adverb},
        {"pos_pronoun", CoarseCategory::pronoun},
        {"pos_first_person_singular_pronoun", CoarseCategory::first_person_singular_pronoun},
        {"pos_coordinating_conjunction", CoarseCategory::coordinating_conjunction},
        {"pos_connective", CoarseCategory::connective},
        {"pos_preposition", CoarseCategory::preposition},
        {"pos_determiner", CoarseCategory::determiner},
        {"pos_other", CoarseCategory::other},
    };
    for (const auto& [name, cat] : cats) {
        int n = 0;
        for (const TaggedToken& tt : tagged)
            if (tt.coarse.count(cat)) ++n;
        m[name] = wc > 0 ? static_cast<double>(n) / wc : 0.0;
    }

    int contractions = 0;
    for (const Token* t : all_tokens(poem))
        if (t->is_contraction) ++contractions;
    m["contraction_freq"] = wc > 0 ? static_cast<double>(contractions) / wc : 0.0;
    return m;
}

inline MetricMap phonemic_metrics(const Poem& poem, const PronouncingDict& dict, int window) {
    MetricMap m;
    const double wc = static_cast<double>(word_count(poem));
    const double lc = static_cast<double>(line_count(poem));

    EndRhymeCounts rc = end_rhyme_counts(poem, dict, window);
    m["rhyme_identity_freq"] = lc > 0 ? rc.identity / lc : 0.0;
    m["rhyme_perfect_freq"] = lc > 0 ? rc.perfect / lc : 0.0;
    m["rhyme_semirhyme_freq"] = lc > 0 ? rc.semirhyme / lc : 0.0;
    m["rhyme_slant_freq"] = lc > 0 ? rc.slant / lc : 0.0;
    m["rhyme_full_freq"] = lc > 0 ? (rc.identity + rc.perfect) / lc : 0.0;

    SoundDeviceCounts total;
    for (const Line* line : all_lines(poem)) {
        SoundDeviceCounts c = sound_device_counts(line->tokens, dict);
        total.alliteration += c.alliteration;
        total.assonance += c.assonance;
        total.consonance += c.consonance;
    }
    m["alliteration_freq"] = wc > 0 ? total.alliteration / wc : 0.0;
    m["assonance_freq"] = wc > 0 ? total.assonance / wc : 0.0;
    m["consonance_freq"] = wc > 0 ? total.consonance / wc : 0.0;
    return m;
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

struct FeatureVector {
    std::string poem_id;
    std::vector<double> values;   // aligned with metric_registry()
    std::vector<double> weighted; // weights[i] * values[i]
};

inline FeatureVector embed(const Poem& poem, const Lexicon& lex, const PronouncingDict& dict,
                           const WeightConfig& weights, int window = 4) {
    std::vector<TaggedToken> tagged = tag_poem(lex, poem);
    MetricMap all = orthographic_metrics(poem, tagged);
    MetricMap syn = syntactic_metrics(poem, tagged);
    MetricMap pho = phonemic_metrics(poem, dict, window);
    all.insert(syn.begin(), syn.end());
    all.insert(pho.begin(), pho.end());

    const auto& reg = metric_registry();
    if (weights.weights.size() != reg.size())
        throw MismatchedRegistry("weight vector does not match the metric registry");

    FeatureVector fv;
    fv.poem_id = poem.id;
    fv.values.reserve(reg.size());
    fv.weighted.reserve(reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i) {
        double v = all.at(reg[i].name);
        fv.values.push_back(v);
        fv.weighted.push_back(weights.weights[i] * v);
    }
    return fv;
}

inline double value_of(const FeatureVector& fv, const std::string& name) {
    return fv.values.at(metric_index(name));
}

inline double weighted_of(const FeatureVector& fv, const std::string& name) {
    return fv.weighted.at(metric_index(name));
}

} // namespace versecraft

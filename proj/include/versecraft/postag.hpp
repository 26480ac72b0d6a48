#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "versecraft/corpus.hpp"
#include "versecraft/error.hpp"
#include "versecraft/util.hpp"

namespace versecraft {

// ---------------------------------------------------------------------------
// Tag set and coarse categories
// ---------------------------------------------------------------------------

inline const std::unordered_set<std::string>& penn_tagset() {
    static const std::unordered_set<std::string> tags = {
        "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
        "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
        "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
        "VBZ", "WDT", "WP", "WP$", "WRB",
    };
    return tags;
}

enum class CoarseCategory {
    noun,
    verb,
    adjective,
    adverb,
    pronoun,
    first_person_singular_pronoun,
    coordinating_conjunction,
    connective,
    preposition,
    determiner,
    other,
};

inline const char* coarse_name(CoarseCategory c) {
    switch (c) {
        case CoarseCategory::noun: return "noun";
        case CoarseCategory::verb: return "verb";
        case CoarseCategory::adjective: return "adjective";
        case CoarseCategory::adverb: return "adverb";
        case CoarseCategory::pronoun: return "pronoun";
        case CoarseCategory::first_person_singular_pronoun: return "first_person_singular_pronoun";
        case CoarseCategory::coordinating_conjunction: return "coordinating_conjunction";
        case CoarseCategory::connective: return "connective";
        case CoarseCategory::preposition: return "preposition";
        case CoarseCategory::determiner: return "determiner";
        case CoarseCategory::other: return "other";
    }
    return "other";
}

// Aggregates a fine Penn Treebank tag to the coarse categories used by the
// syntactic metrics.  `surface` must be the normalized word; it refines
// pronouns to first person singular.
inline std::set<CoarseCategory> aggregate_tag(const std::string& tag, const std::string& surface) {
    using C = CoarseCategory;
    if (!penn_tagset().count(tag)) throw UnknownTag("unknown POS tag: " + tag);
    if (tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS") return {C::noun};
    if (tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" ||
        tag == "VBP" || tag == "VBZ" || tag == "MD") return {C::verb};
    if (tag == "JJ" || tag == "JJR" || tag == "JJS") return {C::adjective};
    if (tag == "RB" || tag == "RBR" || tag == "RBS") return {C::adverb};
    if (tag == "PRP" || tag == "PRP$") {
        static const std::unordered_set<std::string> fps = {"i", "me", "my", "mine", "myself"};
        if (fps.count(surface)) return {C::pronoun, C::first_person_singular_pronoun};
        return {C::pronoun};
    }
    if (tag == "CC") return {C::coordinating_conjunction, C::connective};
    if (tag == "IN") return {C::preposition, C::connective};
    if (tag == "DT") return {C::determiner};
    return {C::other};
}

// ---------------------------------------------------------------------------
// Lexicon and contextual rules
// ---------------------------------------------------------------------------

struct ContextRule {
    enum class Pred { prev_tag, next_tag, prev_word, next_word };
    std::string old_tag;
    std::string new_tag;
    Pred pred;
    std::string arg;
};

struct Lexicon {
    std::unordered_map<std::string, std::vector<std::string>> entries;
    std::vector<std::pair<std::string, std::string>> suffix_rules; // longest first
    std::vector<ContextRule> rules;
};

// Fallback suffix heuristics for words absent from the lexicon, checked in
// order (longest suffix first).  The bare "-s -> NNS" rule is the final
// suffix fallback before the NN default.
inline std::vector<std::pair<std::string, std::string>> default_suffix_rules() {
    return {
        {"ness", "NN"}, {"ment", "NN"}, {"tion", "NN"}, {"sion", "NN"},
        {"able", "JJ"}, {"ible", "JJ"}, {"less", "JJ"},
        {"ful", "JJ"}, {"ous", "JJ"}, {"ive", "JJ"},
        {"ing", "VBG"},
        {"ly", "RB"}, {"ed", "VBD"}, {"'d", "VBD"},
        {"s", "NNS"},
    };
}

inline Lexicon load_lexicon(const std::filesystem::path& lexicon_path,
                            const std::filesystem::path& rules_path) {
    Lexicon lex;
    lex.suffix_rules = default_suffix_rules();

    {
        std::istringstream in(read_file(lexicon_path));
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            std::istringstream ls(line);
            std::string word;
            ls >> word;
            std::vector<std::string> tags;
            std::string tag;
            while (ls >> tag) {
                if (!penn_tagset().count(tag))
                    throw LexiconParseError(lexicon_path.string() + ":" +
                                            std::to_string(lineno) + ": unknown tag \"" + tag + "\"");
                tags.push_back(tag);
            }
            if (tags.empty())
                throw LexiconParseError(lexicon_path.string() + ":" +
                                        std::to_string(lineno) + ": entry has no tags");
            std::string key;
            for (char ch : word) key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            lex.entries.emplace(std::move(key), std::move(tags)); // first occurrence wins
        }
    }

    {
        std::istringstream in(read_file(rules_path));
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            std::istringstream ls(line);
            std::string old_tag, new_tag, kw, pred, arg;
            if (!(ls >> old_tag >> new_tag >> kw >> pred >> arg) || kw != "WHEN")
                throw LexiconParseError(rules_path.string() + ":" + std::to_string(lineno) +
                                        ": expected \"OLDTAG NEWTAG WHEN <predicate> <arg>\"");
            if (!penn_tagset().count(old_tag) || !penn_tagset().count(new_tag))
                throw LexiconParseError(rules_path.string() + ":" + std::to_string(lineno) +
                                        ": unknown tag in rule");
            ContextRule rule;
            rule.old_tag = old_tag;
            rule.new_tag = new_tag;
            rule.arg = arg;
            if (pred == "prev_tag") rule.pred = ContextRule::Pred::prev_tag;
            else if (pred == "next_tag") rule.pred = ContextRule::Pred::next_tag;
            else if (pred == "prev_word") rule.pred = ContextRule::Pred::prev_word;
            else if (pred == "next_word") rule.pred = ContextRule::Pred::next_word;
            else
                throw LexiconParseError(rules_path.string() + ":" + std::to_string(lineno) +
                                        ": unknown predicate \"" + pred + "\"");
            lex.rules.push_back(std::move(rule));
        }
    }
    return lex;
}

// ---------------------------------------------------------------------------
// Tagging
// ---------------------------------------------------------------------------

struct TaggedToken {
    Token token;
    std::string tag;
    std::set<CoarseCategory> coarse;
};

inline bool starts_capitalized(const std::string& surface) {
    return !surface.empty() && std::isupper(static_cast<unsigned char>(surface[0]));
}

// First pass: most-frequent lexicon tag, else fallbacks.  `line_initial`
// suppresses the capitalized-unknown -> NNP rule (poems capitalize every
// line's first word).
inline std::string lexical_tag(const Lexicon& lex, const Token& token, bool line_initial) {
    auto it = lex.entries.find(token.normalized);
    if (it != lex.entries.end()) return it->second.front();
    if (!line_initial && starts_capitalized(token.surface)) return "NNP";
    const std::string& w = token.normalized;
    for (const auto& [suffix, tag] : lex.suffix_rules) {
        if (w.size() > suffix.size() &&
            w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0)
            return tag;
    }
    return "NN";
}

// Tags one line of tokens.  Contextual rules are non-interacting: every
// predicate (and the OLDTAG match) reads the first-pass tags, and the last
// firing rule for a position wins.
inline std::vector<TaggedToken> tag(const Lexicon& lex, const std::vector<Token>& tokens) {
    std::vector<std::string> pass1(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i)
        pass1[i] = lexical_tag(lex, tokens[i], i == 0);

    std::vector<std::string> result = pass1;
    for (const ContextRule& rule : lex.rules) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (pass1[i] != rule.old_tag) continue;
            bool fire = false;
            switch (rule.pred) {
                case ContextRule::Pred::prev_tag:
                    fire = i > 0 && pass1[i - 1] == rule.arg;
                    break;
                case ContextRule::Pred::next_tag:
                    fire = i + 1 < tokens.size() && pass1[i + 1] == rule.arg;
                    break;
                case ContextRule::Pred::prev_word:
                    fire = i > 0 && tokens[i - 1].normalized == rule.arg;
                    break;
                case ContextRule::Pred::next_word:
                    fire = i + 1 < tokens.size() && tokens[i + 1].normalized == rule.arg;
                    break;
            }
            if (fire) result[i] = rule.new_tag;
        }
    }

    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        TaggedToken tt;
        tt.token = tokens[i];
        tt.tag = result[i];
        tt.coarse = aggregate_tag(result[i], tokens[i].normalized);
        out.push_back(std::move(tt));
    }
    return out;
}

// Tags every line of a poem independently and returns the flattened sequence.
inline std::vector<TaggedToken> tag_poem(const Lexicon& lex, const Poem& poem) {
    std::vector<TaggedToken> out;
    for (const Stanza& s : poem.stanzas)
        for (const Line& l : s.lines) {
            auto tagged = tag(lex, l.tokens);
            out.insert(out.end(), std::make_move_iterator(tagged.begin()),
                       std::make_move_iterator(tagged.end()));
        }
    return out;
}

} // namespace versecraft

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "versecraft/error.hpp"
#include "versecraft/util.hpp"

namespace versecraft {

// ---------------------------------------------------------------------------
// UTF-8 helpers
// ---------------------------------------------------------------------------

// Strict decoder: rejects truncated sequences, stray continuation bytes,
// overlong encodings, surrogates, and codepoints beyond U+10FFFF.
inline std::vector<std::uint32_t> decode_utf8(std::string_view s) {
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b0 = static_cast<unsigned char>(s[i]);
        std::uint32_t cp = 0;
        int len = 0;
        if (b0 < 0x80) { cp = b0; len = 1; }
        else if ((b0 & 0xE0) == 0xC0) { cp = b0 & 0x1F; len = 2; }
        else if ((b0 & 0xF0) == 0xE0) { cp = b0 & 0x0F; len = 3; }
        else if ((b0 & 0xF8) == 0xF0) { cp = b0 & 0x07; len = 4; }
        else throw InvalidEncoding("invalid UTF-8 lead byte at offset " + std::to_string(i));
        if (i + len > s.size())
            throw InvalidEncoding("truncated UTF-8 sequence at offset " + std::to_string(i));
        for (int k = 1; k < len; ++k) {
            unsigned char b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80)
                throw InvalidEncoding("invalid UTF-8 continuation byte at offset " + std::to_string(i + k));
            cp = (cp << 6) | (b & 0x3F);
        }
        static const std::uint32_t min_cp[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < min_cp[len])
            throw InvalidEncoding("overlong UTF-8 encoding at offset " + std::to_string(i));
        if (cp >= 0xD800 && cp <= 0xDFFF)
            throw InvalidEncoding("UTF-8 encoded surrogate at offset " + std::to_string(i));
        if (cp > 0x10FFFF)
            throw InvalidEncoding("codepoint out of range at offset " + std::to_string(i));
        out.push_back(cp);
        i += len;
    }
    return out;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

inline std::string encode_utf8(const std::vector<std::uint32_t>& cps) {
    std::string out;
    for (auto cp : cps) append_utf8(out, cp);
    return out;
}

// Number of codepoints in a valid UTF-8 string (for character-length metrics).
inline std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Character classes
// ---------------------------------------------------------------------------

inline bool is_space_cp(std::uint32_t cp) {
    if (cp <= 0x20) return true; // space + C0 controls (tab, CR, LF, ...)
    switch (cp) {
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200B;
    }
}

inline bool is_apostrophe_cp(std::uint32_t cp) {
    return cp == '\'' || cp == 0x2019 || cp == 0x02BC;
}

// Token separators beyond whitespace: em/en dashes, the horizontal bar, and
// the slash all join words without forming one.
inline bool is_separator_cp(std::uint32_t cp) {
    return cp == '/' || cp == 0x2013 || cp == 0x2014 || cp == 0x2015;
}

// Punctuation stripped from token edges.  Covers ASCII punctuation plus the
// Latin-1 and General Punctuation ranges seen in typeset poetry (curly
// quotes, ellipsis, daggers, guillemets).
inline bool is_strip_punct_cp(std::uint32_t cp) {
    if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
    if (cp >= 0x00A1 && cp <= 0x00BF) return true;
    if (cp >= 0x2010 && cp <= 0x2027) return true;
    if (cp >= 0x2030 && cp <= 0x205E) return true;
    if (cp >= 0x2E00 && cp <= 0x2E7F) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct Token {
    std::string surface;    // original casing, original apostrophe glyphs
    std::string normalized; // lowercased, apostrophes folded to ASCII
    bool is_contraction = false;
};

struct Line {
    std::string raw;
    std::vector<Token> tokens;
};

struct Stanza {
    std::vector<Line> lines;
};

struct Poem {
    std::string id;
    std::string poet;
    std::string title;
    std::vector<Stanza> stanzas;
    std::string source_path;
};

struct Corpus {
    std::vector<Poem> poems;
    std::vector<std::string> poets; // unique, in first-appearance order
};

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

// Archaic elisions that keep a leading apostrophe, and contracted prepositions
// whose apostrophe is not a clitic boundary.  Checked against the normalized
// form.
inline const std::unordered_set<std::string>& closed_elisions() {
    static const std::unordered_set<std::string> set = {
        "'tis", "'twas", "'twere", "'twill", "'twould", "'til", "'tween",
        "'twixt", "'gainst", "'neath", "'bout", "'cause", "'em", "'round",
        "o'er", "e'er", "ne'er", "e'en", "o'clock", "ma'am",
    };
    return set;
}

inline std::string normalize_word(const std::vector<std::uint32_t>& cps) {
    std::string out;
    for (auto cp : cps) {
        if (is_apostrophe_cp(cp)) { out += '\''; continue; }
        if (cp < 0x80) { out += static_cast<char>(std::tolower(static_cast<int>(cp))); continue; }
        append_utf8(out, cp);
    }
    return out;
}

inline bool detect_contraction(const std::string& normalized) {
    if (closed_elisions().count(normalized)) return true;
    static const char* clitics[] = {"n't", "'s", "'re", "'ve", "'ll", "'d", "'m"};
    for (const char* c : clitics) {
        std::string_view suf(c);
        if (normalized.size() > suf.size() &&
            normalized.compare(normalized.size() - suf.size(), suf.size(), suf) == 0)
            return true;
    }
    return false;
}

inline std::vector<Token> tokenize(const std::string& line) {
    std::vector<std::uint32_t> cps = decode_utf8(line);

    // Separators (dashes, slash, "--" runs) become spaces before splitting.
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (is_separator_cp(cps[i])) { cps[i] = ' '; continue; }
        if (cps[i] == '-' && i + 1 < cps.size() && cps[i + 1] == '-') {
            std::size_t j = i;
            while (j < cps.size() && cps[j] == '-') cps[j++] = ' ';
        }
    }

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && is_space_cp(cps[i])) ++i;
        std::size_t start = i;
        while (i < cps.size() && !is_space_cp(cps[i])) ++i;
        if (start == i) continue;

        std::size_t lo = start, hi = i;
        while (lo < hi && is_strip_punct_cp(cps[lo])) ++lo;
        while (hi > lo && is_strip_punct_cp(cps[hi - 1])) --hi;
        if (lo == hi) continue;

        std::vector<std::uint32_t> core(cps.begin() + lo, cps.begin() + hi);
        std::string normalized = normalize_word(core);
        std::vector<std::uint32_t> surface_cps = core;

        // A stripped leading apostrophe is restored when it spells an archaic
        // elision ('tis, 'twas, ...).
        if (lo > start && is_apostrophe_cp(cps[lo - 1])) {
            std::string candidate = "'" + normalized;
            if (closed_elisions().count(candidate)) {
                normalized = candidate;
                surface_cps.insert(surface_cps.begin(), cps[lo - 1]);
            }
        }

        Token t;
        t.surface = encode_utf8(surface_cps);
        t.normalized = normalized;
        t.is_contraction = detect_contraction(normalized);
        tokens.push_back(std::move(t));
    }
    return tokens;
}

// ---------------------------------------------------------------------------
// Poem parsing
// ---------------------------------------------------------------------------

inline Poem parse_poem(const std::string& text, const std::string& id,
                       const std::string& poet, const std::string& title,
                       const std::string& source_path = "") {
    decode_utf8(text); // validate whole input up front

    Poem poem;
    poem.id = id;
    poem.poet = poet;
    poem.title = title;
    poem.source_path = source_path;

    Stanza current;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string raw = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();

        bool blank = true;
        for (auto cp : decode_utf8(raw))
            if (!is_space_cp(cp)) { blank = false; break; }

        if (blank) {
            if (!current.lines.empty()) {
                poem.stanzas.push_back(std::move(current));
                current = Stanza{};
            }
            continue;
        }
        Line line;
        line.raw = raw;
        line.tokens = tokenize(raw);
        if (!line.tokens.empty()) current.lines.push_back(std::move(line));
    }
    if (!current.lines.empty()) poem.stanzas.push_back(std::move(current));

    if (poem.stanzas.empty())
        throw EmptyPoem("poem has no non-blank lines: " + id);
    return poem;
}

// Canonical re-serialization: kept lines joined by newlines, stanzas by blank
// lines.  parse_poem(poem_text(p)) reproduces p's structure exactly.
inline std::string poem_text(const Poem& poem) {
    std::string out;
    for (std::size_t s = 0; s < poem.stanzas.size(); ++s) {
        if (s) out += "\n";
        for (const Line& line : poem.stanzas[s].lines) {
            out += line.raw;
            out += '\n';
        }
    }
    return out;
}

inline std::size_t word_count(const Poem& poem) {
    std::size_t n = 0;
    for (const Stanza& s : poem.stanzas)
        for (const Line& l : s.lines) n += l.tokens.size();
    return n;
}

inline std::size_t line_count(const Poem& poem) {
    std::size_t n = 0;
    for (const Stanza& s : poem.stanzas) n += s.lines.size();
    return n;
}

inline std::vector<const Line*> all_lines(const Poem& poem) {
    std::vector<const Line*> lines;
    for (const Stanza& s : poem.stanzas)
        for (const Line& l : s.lines) lines.push_back(&l);
    return lines;
}

inline std::vector<const Token*> all_tokens(const Poem& poem) {
    std::vector<const Token*> tokens;
    for (const Stanza& s : poem.stanzas)
        for (const Line& l : s.lines)
            for (const Token& t : l.tokens) tokens.push_back(&t);
    return tokens;
}

// ---------------------------------------------------------------------------
// Corpus loading
// ---------------------------------------------------------------------------

inline Corpus load_corpus(const std::filesystem::path& dir,
                          const std::filesystem::path& manifest) {
    namespace fs = std::filesystem;
    fs::path manifest_path = manifest.is_absolute() ? manifest : dir / manifest;
    std::string manifest_text = read_file(manifest_path);

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(manifest_text);
    } catch (const std::exception& e) {
        throw ManifestParseError("invalid JSON in " + manifest_path.string() + ": " + e.what());
    }
    if (!doc.is_array())
        throw ManifestParseError("manifest must be a JSON array: " + manifest_path.string());

    fs::path base = manifest_path.parent_path();
    Corpus corpus;
    std::set<std::string> seen_ids;
    std::set<std::string> seen_poets;
    for (std::size_t idx = 0; idx < doc.size(); ++idx) {
        const auto& entry = doc[idx];
        for (const char* key : {"id", "poet", "title", "file"}) {
            if (!entry.contains(key) || !entry[key].is_string())
                throw ManifestParseError("manifest entry " + std::to_string(idx) +
                                         " missing string field \"" + key + "\" in " +
                                         manifest_path.string());
        }
        std::string id = entry["id"].get<std::string>();
        if (!seen_ids.insert(id).second)
            throw DuplicateId("duplicate poem id in manifest: " + id);

        fs::path file = entry["file"].get<std::string>();
        fs::path full = file.is_absolute() ? file : base / file;
        std::string text = read_file(full);
        Poem poem = parse_poem(text, id, entry["poet"].get<std::string>(),
                               entry["title"].get<std::string>(), full.string());
        if (seen_poets.insert(poem.poet).second) corpus.poets.push_back(poem.poet);
        corpus.poems.push_back(std::move(poem));
    }
    return corpus;
}

inline const Poem& poem_by_id(const Corpus& corpus, const std::string& id) {
    for (const Poem& p : corpus.poems)
        if (p.id == id) return p;
    throw UnknownId("no poem with id: " + id);
}

} // namespace versecraft

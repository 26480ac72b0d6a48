#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
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
// Phonemes
// ---------------------------------------------------------------------------

inline const std::unordered_set<std::string>& arpabet_vowels() {
    static const std::unordered_set<std::string> v = {
        "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH", "IY",
        "OW", "OY", "UH", "UW",
    };
    return v;
}

inline const std::unordered_set<std::string>& arpabet_consonants() {
    static const std::unordered_set<std::string> c = {
        "B", "CH", "D", "DH", "F", "G", "HH", "JH", "K", "L", "M", "N",
        "NG", "P", "R", "S", "SH", "T", "TH", "V", "W", "Y", "Z", "ZH",
    };
    return c;
}

struct Phoneme {
    std::string symbol; // ARPAbet root, e.g. "UH"
    int stress = -1;    // 0|1|2 for vowels, -1 for consonants

    bool is_vowel() const { return stress >= 0; }
    bool operator==(const Phoneme&) const = default;
};

using PhonemeSequence = std::vector<Phoneme>;

// Parses one ARPAbet token ("UH1", "K") into a Phoneme, validating symbol and
// stress marking.  Returns false on invalid input.
inline bool parse_phoneme(const std::string& raw, Phoneme& out) {
    std::string sym = raw;
    int stress = -1;
    if (!sym.empty() && std::isdigit(static_cast<unsigned char>(sym.back()))) {
        stress = sym.back() - '0';
        sym.pop_back();
    }
    if (arpabet_vowels().count(sym)) {
        if (stress < 0 || stress > 2) return false;
        out = {sym, stress};
        return true;
    }
    if (arpabet_consonants().count(sym)) {
        if (stress != -1) return false;
        out = {sym, -1};
        return true;
    }
    return false;
}

inline std::size_t syllable_count(const PhonemeSequence& seq) {
    std::size_t n = 0;
    for (const Phoneme& p : seq)
        if (p.is_vowel()) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Pronouncing dictionary
// ---------------------------------------------------------------------------

struct PronouncingDict {
    std::unordered_map<std::string, std::vector<PhonemeSequence>> entries;
};

inline PronouncingDict load_cmudict(const std::filesystem::path& path) {
    PronouncingDict dict;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind(";;;", 0) == 0) continue;

        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word.empty())
            throw DictParseError(path.string() + ":" + std::to_string(lineno) + ": empty entry");

        // strip "(n)" variant suffix
        if (word.size() >= 3 && word.back() == ')') {
            std::size_t open = word.rfind('(');
            if (open != std::string::npos && open > 0) {
                bool digits = open + 1 < word.size() - 1;
                for (std::size_t i = open + 1; i + 1 < word.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(word[i]))) digits = false;
                if (digits) word.erase(open);
            }
        }
        std::string key;
        for (char ch : word)
            key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

        PhonemeSequence seq;
        std::string tok;
        while (ls >> tok) {
            Phoneme p;
            if (!parse_phoneme(tok, p))
                throw DictParseError(path.string() + ":" + std::to_string(lineno) +
                                     ": invalid phoneme \"" + tok + "\"");
            seq.push_back(std::move(p));
        }
        if (seq.empty())
            throw DictParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": entry has no phonemes");
        dict.entries[key].push_back(std::move(seq));
    }
    return dict;
}

// Primary pronunciation lookup; std::nullopt for out-of-vocabulary words.
inline std::optional<PhonemeSequence> phonemize(const std::string& word, const PronouncingDict& dict) {
    auto it = dict.entries.find(word);
    if (it == dict.entries.end()) return std::nullopt;
    return it->second.front();
}

// ---------------------------------------------------------------------------
// Rhyme classification
// ---------------------------------------------------------------------------

struct RhymeTail {
    std::optional<Phoneme> preceding_consonant;
    Phoneme stressed_vowel;
    PhonemeSequence tail; // from the ultimate stressed vowel (inclusive) to end
};

// Index of the ultimate stressed vowel: last primary-stress vowel, falling
// back to last secondary-stress, then last vowel of any stress.
inline std::size_t stressed_vowel_index(const PhonemeSequence& seq) {
    auto last_with = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t i = seq.size(); i-- > 0;)
            if (pred(seq[i])) return i;
        return std::nullopt;
    };
    if (auto i = last_with([](const Phoneme& p) { return p.stress == 1; })) return *i;
    if (auto i = last_with([](const Phoneme& p) { return p.stress == 2; })) return *i;
    if (auto i = last_with([](const Phoneme& p) { return p.is_vowel(); })) return *i;
    throw NoVowel("phoneme sequence contains no vowel");
}

inline RhymeTail rhyme_tail(const PhonemeSequence& seq) {
    std::size_t idx = stressed_vowel_index(seq);
    RhymeTail rt;
    rt.stressed_vowel = seq[idx];
    rt.tail.assign(seq.begin() + idx, seq.end());
    if (idx > 0 && !seq[idx - 1].is_vowel()) rt.preceding_consonant = seq[idx - 1];
    return rt;
}

enum class RhymeType { identity, perfect, semirhyme, slant, none };

inline const char* rhyme_name(RhymeType t) {
    switch (t) {
        case RhymeType::identity: return "identity";
        case RhymeType::perfect: return "perfect";
        case RhymeType::semirhyme: return "semirhyme";
        case RhymeType::slant: return "slant";
        case RhymeType::none: return "none";
    }
    return "none";
}

namespace detail {

// Perfect-rhyme test on two tails: identical phoneme sequences from the
// stressed vowel onward with differing single preceding consonants (absent
// versus present counts as differing).
inline bool perfect_test(const RhymeTail& a, const RhymeTail& b) {
    if (a.tail != b.tail) return false;
    if (a.preceding_consonant.has_value() != b.preceding_consonant.has_value()) return true;
    if (!a.preceding_consonant) return false; // both absent: onsets do not differ
    return a.preceding_consonant->symbol != b.preceding_consonant->symbol;
}

} // namespace detail

inline RhymeType classify_rhyme(const PhonemeSequence& a, const PhonemeSequence& b) {
    RhymeTail ta = rhyme_tail(a); // throws NoVowel on vowelless input
    RhymeTail tb = rhyme_tail(b);

    if (a == b) return RhymeType::identity;
    if (detail::perfect_test(ta, tb)) return RhymeType::perfect;

    // Semirhyme: the longer word carries exactly one extra final syllable;
    // with that syllable (its last vowel and everything after) removed, the
    // perfect test passes.
    std::size_t sa = syllable_count(a), sb = syllable_count(b);
    if (sa + 1 == sb || sb + 1 == sa) {
        const PhonemeSequence& shorter = (sa < sb) ? a : b;
        const PhonemeSequence& longer = (sa < sb) ? b : a;
        std::size_t last_vowel = 0;
        for (std::size_t i = longer.size(); i-- > 0;)
            if (longer[i].is_vowel()) { last_vowel = i; break; }
        PhonemeSequence trunc(longer.begin(), longer.begin() + last_vowel);
        if (syllable_count(trunc) > 0 &&
            detail::perfect_test(rhyme_tail(shorter), rhyme_tail(trunc)))
            return RhymeType::semirhyme;
    }

    // Slant: identical ultimate stressed vowels or identical post-vowel
    // remainders, but not both.
    bool vowels_equal = ta.stressed_vowel == tb.stressed_vowel;
    PhonemeSequence rest_a(ta.tail.begin() + 1, ta.tail.end());
    PhonemeSequence rest_b(tb.tail.begin() + 1, tb.tail.end());
    bool rests_equal = rest_a == rest_b;
    if (vowels_equal != rests_equal) return RhymeType::slant;

    return RhymeType::none;
}

// ---------------------------------------------------------------------------
// End rhyme over a poem
// ---------------------------------------------------------------------------

struct EndRhymeCounts {
    int identity = 0;
    int perfect = 0;
    int semirhyme = 0;
    int slant = 0;
    int comparisons_made = 0;
    int skipped_lines = 0; // lines with no phonemizable token

    int total() const { return identity + perfect + semirhyme + slant; }
};

// Last phonemizable token of a line, walking backward past OOV words.
inline std::optional<PhonemeSequence> line_final_phonemes(const Line& line,
                                                         const PronouncingDict& dict) {
    for (std::size_t i = line.tokens.size(); i-- > 0;) {
        if (auto seq = phonemize(line.tokens[i].normalized, dict)) {
            if (syllable_count(*seq) > 0) return seq;
        }
    }
    return std::nullopt;
}

inline EndRhymeCounts end_rhyme_counts(const Poem& poem, const PronouncingDict& dict, int window) {
    EndRhymeCounts out;
    std::vector<std::optional<PhonemeSequence>> finals;
    for (const Line* line : all_lines(poem)) {
        finals.push_back(line_final_phonemes(*line, dict));
        if (!finals.back()) ++out.skipped_lines;
    }
    for (std::size_t i = 0; i < finals.size(); ++i) {
        if (!finals[i]) continue;
        for (std::size_t j = i + 1; j < finals.size() && j <= i + static_cast<std::size_t>(window); ++j) {
            if (!finals[j]) continue;
            ++out.comparisons_made;
            switch (classify_rhyme(*finals[i], *finals[j])) {
                case RhymeType::identity: ++out.identity; break;
                case RhymeType::perfect: ++out.perfect; break;
                case RhymeType::semirhyme: ++out.semirhyme; break;
                case RhymeType::slant: ++out.slant; break;
                case RhymeType::none: break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sound devices within a line
// ---------------------------------------------------------------------------

struct SoundDeviceCounts {
    int alliteration = 0;
    int assonance = 0;
    int consonance = 0;
};

constexpr int kSoundDeviceWindow = 2; // max token-index distance for a pair

inline SoundDeviceCounts sound_device_counts(const std::vector<Token>& line,
                                             const PronouncingDict& dict,
                                             int pair_window = kSoundDeviceWindow) {
    SoundDeviceCounts out;
    std::vector<std::optional<PhonemeSequence>> seqs;
    seqs.reserve(line.size());
    for (const Token& t : line) seqs.push_back(phonemize(t.normalized, dict));

    // Non-initial consonant symbol set per word, for consonance.
    auto noninitial_consonants = [](const PhonemeSequence& seq) {
        std::set<std::string> s;
        for (std::size_t i = 1; i < seq.size(); ++i)
            if (!seq[i].is_vowel()) s.insert(seq[i].symbol);
        return s;
    };

    for (std::size_t i = 0; i < line.size(); ++i) {
        if (!seqs[i]) continue;
        for (std::size_t j = i + 1; j < line.size() && j <= i + static_cast<std::size_t>(pair_window); ++j) {
            if (!seqs[j]) continue;
            const PhonemeSequence& a = *seqs[i];
            const PhonemeSequence& b = *seqs[j];

            // alliteration: both words begin with the same consonant phoneme
            if (!a.front().is_vowel() && !b.front().is_vowel() &&
                a.front().symbol == b.front().symbol)
                ++out.alliteration;

            // assonance: stressed vowels equal ignoring the stress digit
            for (const Phoneme& pa : a) {
                if (pa.stress != 1 && pa.stress != 2) continue;
                for (const Phoneme& pb : b) {
                    if (pb.stress != 1 && pb.stress != 2) continue;
                    if (pa.symbol == pb.symbol) ++out.assonance;
                }
            }

            // consonance: the words share a non-initial consonant sound
            auto ca = noninitial_consonants(a);
            auto cb = noninitial_consonants(b);
            bool shared = false;
            for (const auto& s : ca)
                if (cb.count(s)) { shared = true; break; }
            if (shared) ++out.consonance;
        }
    }
    return out;
}

// OOV accounting for reporting: (phonemizable tokens, total tokens).
inline std::pair<std::size_t, std::size_t> oov_counts(const Poem& poem, const PronouncingDict& dict) {
    std::size_t oov = 0, total = 0;
    for (const Token* t : all_tokens(poem)) {
        ++total;
        if (!dict.entries.count(t->normalized)) ++oov;
    }
    return {oov, total};
}

} // namespace versecraft

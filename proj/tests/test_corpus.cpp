#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "versecraft/corpus.hpp"

#include "helpers.hpp"

using namespace versecraft;

static std::vector<std::string> norms(const std::vector<Token>& toks) {
    std::vector<std::string> out;
    for (const auto& t : toks) out.push_back(t.normalized);
    return out;
}

TEST_CASE("tokenize basic lines") {
    SECTION("seven-word line keeps order and case folds") {
        auto toks = tokenize("And sorry I could not travel both");
        REQUIRE(toks.size() == 7);
        CHECK(toks[0].surface == "And");
        CHECK(toks[0].normalized == "and");
        CHECK(toks[2].surface == "I");
        CHECK(toks[2].normalized == "i");
        CHECK(toks[6].normalized == "both");
    }
    SECTION("empty line") {
        CHECK(tokenize("").empty());
        CHECK(tokenize("   \t  ").empty());
    }
    SECTION("contractions flagged, em dash separates") {
        auto toks = tokenize("don't stop \xE2\x80\x94 won't!");
        REQUIRE(toks.size() == 3);
        CHECK(toks[0].normalized == "don't");
        CHECK(toks[0].is_contraction);
        CHECK(toks[1].normalized == "stop");
        CHECK_FALSE(toks[1].is_contraction);
        CHECK(toks[2].normalized == "won't");
        CHECK(toks[2].is_contraction);
    }
}

TEST_CASE("tokenize punctuation handling") {
    SECTION("leading and trailing punctuation stripped") {
        auto toks = tokenize("\"Hope\" is the thing with feathers -");
        REQUIRE(toks.size() == 6);
        CHECK(toks[0].normalized == "hope");
        CHECK(toks[5].normalized == "feathers");
    }
    SECTION("curly quotes and ellipsis stripped") {
        auto toks = tokenize("\xE2\x80\x9Cyes\xE2\x80\x9D maybe\xE2\x80\xA6");
        REQUIRE(toks.size() == 2);
        CHECK(toks[0].normalized == "yes");
        CHECK(toks[1].normalized == "maybe");
    }
    SECTION("curly apostrophe folds to ASCII in normalized") {
        auto toks = tokenize("don\xE2\x80\x99t");
        REQUIRE(toks.size() == 1);
        CHECK(toks[0].normalized == "don't");
        CHECK(toks[0].is_contraction);
    }
    SECTION("internal hyphens kept, double hyphen separates") {
        auto toks = tokenize("self-same word--here");
        REQUIRE(toks.size() == 3);
        CHECK(toks[0].normalized == "self-same");
        CHECK(toks[1].normalized == "word");
        CHECK(toks[2].normalized == "here");
    }
    SECTION("slash separates") {
        auto toks = tokenize("wind/rain");
        REQUIRE(toks.size() == 2);
        CHECK(toks[0].normalized == "wind");
        CHECK(toks[1].normalized == "rain");
    }
    SECTION("pure punctuation tokens dropped") {
        CHECK(tokenize("* * *").empty());
        CHECK(tokenize("\xE2\x80\x94").empty());
    }
}

TEST_CASE("tokenize archaic elisions and possessives") {
    SECTION("leading apostrophe restored for closed-list words") {
        auto toks = tokenize("'Tis the wind, 'twas so");
        REQUIRE(toks.size() == 5);
        CHECK(toks[0].normalized == "'tis");
        CHECK(toks[0].surface == "'Tis");
        CHECK(toks[0].is_contraction);
        CHECK(toks[3].normalized == "'twas");
    }
    SECTION("curly leading apostrophe also restored") {
        auto toks = tokenize("\xE2\x80\x99Tis so");
        REQUIRE(toks.size() == 2);
        CHECK(toks[0].normalized == "'tis");
    }
    SECTION("internal elisions") {
        auto toks = tokenize("o'er the ne'er-ending e'en");
        REQUIRE(toks.size() == 4);
        CHECK(toks[0].normalized == "o'er");
        CHECK(toks[0].is_contraction);
        CHECK(toks[2].normalized == "ne'er-ending");
        CHECK(toks[3].normalized == "e'en");
        CHECK(toks[3].is_contraction);
    }
    SECTION("trailing possessive apostrophe stripped, not a contraction") {
        auto toks = tokenize("the Horses' Heads");
        REQUIRE(toks.size() == 3);
        CHECK(toks[1].normalized == "horses");
        CHECK_FALSE(toks[1].is_contraction);
    }
    SECTION("elided past endings count as contractions") {
        auto toks = tokenize("mark'd the learn'd man's walk");
        REQUIRE(toks.size() == 5);
        CHECK(toks[0].normalized == "mark'd");
        CHECK(toks[0].is_contraction);
        CHECK(toks[2].normalized == "learn'd");
        CHECK(toks[2].is_contraction);
        CHECK(toks[3].normalized == "man's");
        CHECK(toks[3].is_contraction);
    }
    SECTION("bare apostrophe word is not a contraction") {
        auto toks = tokenize("rock 'n roll");
        REQUIRE(toks.size() == 3);
        CHECK(toks[1].normalized == "n");
        CHECK_FALSE(toks[1].is_contraction);
    }
}

TEST_CASE("parse_poem structure") {
    SECTION("single line") {
        Poem p = parse_poem("Two roads diverged in a yellow wood,", "p1", "Frost", "t");
        REQUIRE(p.stanzas.size() == 1);
        REQUIRE(p.stanzas[0].lines.size() == 1);
        REQUIRE(p.stanzas[0].lines[0].tokens.size() == 7);
        CHECK(p.stanzas[0].lines[0].tokens.back().normalized == "wood");
    }
    SECTION("blank line splits stanzas") {
        Poem p = parse_poem("a\n\nb", "p, id", "x", "t");
        REQUIRE(p.stanzas.size() == 2);
        CHECK(p.stanzas[0].lines.size() == 1);
        CHECK(p.stanzas[1].lines.size() == 1);
    }
    SECTION("multiple blank lines collapse") {
        Poem p = parse_poem("a\n\n\n\nb\nc", "p", "x", "t");
        REQUIRE(p.stanzas.size() == 2);
        CHECK(p.stanzas[1].lines.size() == 2);
    }
    SECTION("two-line fragment tokenizes with no contractions") {
        Poem p = parse_poem("He is not\nduplicitous; he has tried to be", "g", "Gluck", "t");
        auto toks = all_tokens(p);
        std::vector<std::string> expect = {"he", "is", "not", "duplicitous",
                                           "he", "has", "tried", "to", "be"};
        REQUIRE(toks.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            CHECK(toks[i]->normalized == expect[i]);
            CHECK_FALSE(toks[i]->is_contraction);
        }
    }
    SECTION("CRLF newlines") {
        Poem p = parse_poem("a b\r\n\r\nc\r\n", "p", "x", "t");
        REQUIRE(p.stanzas.size() == 2);
        CHECK(p.stanzas[0].lines[0].tokens.size() == 2);
        CHECK(p.stanzas[0].lines[0].raw == "a b");
    }
    SECTION("punctuation-only lines are excluded") {
        Poem p = parse_poem("a\n* * *\nb", "p", "x", "t");
        REQUIRE(p.stanzas.size() == 1);
        CHECK(p.stanzas[0].lines.size() == 2);
    }
    SECTION("empty input rejected") {
        CHECK_THROWS_AS(parse_poem("", "p", "x", "t"), EmptyPoem);
        CHECK_THROWS_AS(parse_poem("\n  \n\t\n", "p", "x", "t"), EmptyPoem);
        CHECK_THROWS_AS(parse_poem("...\n---\n", "p", "x", "t"), EmptyPoem);
    }
    SECTION("invalid UTF-8 rejected") {
        CHECK_THROWS_AS(parse_poem("bad \xFF byte", "p", "x", "t"), InvalidEncoding);
        CHECK_THROWS_AS(parse_poem("trunc \xE2\x80", "p", "x", "t"), InvalidEncoding);
    }
}

TEST_CASE("parse_poem round trip is a fixed point") {
    const std::string text = "Two roads diverged in a yellow wood,\n"
                             "And sorry I could not travel both\n"
                             "\n"
                             "And be one traveler, long I stood\n";
    Poem a = parse_poem(text, "p", "Frost", "t");
    Poem b = parse_poem(poem_text(a), "p", "Frost", "t");
    REQUIRE(a.stanzas.size() == b.stanzas.size());
    for (std::size_t s = 0; s < a.stanzas.size(); ++s) {
        REQUIRE(a.stanzas[s].lines.size() == b.stanzas[s].lines.size());
        for (std::size_t l = 0; l < a.stanzas[s].lines.size(); ++l) {
            CHECK(a.stanzas[s].lines[l].raw == b.stanzas[s].lines[l].raw);
            CHECK(norms(a.stanzas[s].lines[l].tokens) == norms(b.stanzas[s].lines[l].tokens));
        }
    }
    CHECK(poem_text(a) == poem_text(b));
}

TEST_CASE("token counts are consistent") {
    Poem p = parse_poem("a b c\nd e\n\nf", "p", "x", "t");
    CHECK(word_count(p) == 6);
    CHECK(line_count(p) == 3);
    CHECK(all_tokens(p).size() == word_count(p));
    CHECK(all_lines(p).size() == line_count(p));
}

TEST_CASE("tokenization is line-local and deterministic") {
    std::mt19937 rng(413);
    const std::string alphabet = "abc A'B- .,;\xE2\x80\x94 d";
    for (int iter = 0; iter < 50; ++iter) {
        std::string l1, l2;
        auto gen = [&](std::string& s) {
            int n = static_cast<int>(rng() % 30);
            for (int i = 0; i < n; ++i) {
                // avoid splitting the 3-byte em dash
                std::size_t pos = rng() % (alphabet.size() - 2);
                if ((alphabet[pos] & 0xC0) == 0x80) pos = 0;
                if (static_cast<unsigned char>(alphabet[pos]) == 0xE2)
                    s += "\xE2\x80\x94";
                else
                    s += alphabet[pos];
            }
        };
        gen(l1);
        gen(l2);
        auto t1 = tokenize(l1);
        auto t2 = tokenize(l1); // determinism
        REQUIRE(norms(t1) == norms(t2));
        if (!tokenize(l1 + "x").empty() && !l2.empty()) {
            // line-local: parsing the two lines in one poem gives line-wise
            // identical tokens
            std::string joined = l1 + "x\n" + l2 + "x";
            Poem p = parse_poem(joined, "p", "x", "t");
            std::vector<std::string> flat;
            for (const auto* t : all_tokens(p)) flat.push_back(t->normalized);
            std::vector<std::string> expect;
            for (const auto& t : tokenize(l1 + "x")) expect.push_back(t.normalized);
            for (const auto& t : tokenize(l2 + "x")) expect.push_back(t.normalized);
            CHECK(flat == expect);
        }
    }
}

TEST_CASE("load_corpus from manifest") {
    testutil::TempDir tmp("corpus_manifest");
    tmp.file("a.txt", "one two three\n");
    tmp.file("b.txt", "four five\n\nsix\n");
    tmp.file("c.txt", "seven\n");

    SECTION("three entries load in order") {
        tmp.file("m.json", R"([
            {"id":"a","poet":"P1","title":"A","file":"a.txt"},
            {"id":"b","poet":"P2","title":"B","file":"b.txt"},
            {"id":"c","poet":"P1","title":"C","file":"c.txt"}
        ])");
        Corpus c = load_corpus(tmp.path, "m.json");
        REQUIRE(c.poems.size() == 3);
        CHECK(c.poems[0].id == "a");
        CHECK(c.poems[1].id == "b");
        CHECK(c.poems[2].id == "c");
        REQUIRE(c.poets.size() == 2);
        CHECK(c.poets[0] == "P1");
        CHECK(c.poets[1] == "P2");
        CHECK(poem_by_id(c, "b").title == "B");
        CHECK_THROWS_AS(poem_by_id(c, "zz"), UnknownId);
    }
    SECTION("missing file names the path") {
        tmp.file("m.json", R"([{"id":"a","poet":"P","title":"A","file":"nope.txt"}])");
        try {
            load_corpus(tmp.path, "m.json");
            FAIL("expected MissingFile");
        } catch (const MissingFile& e) {
            CHECK(std::string(e.what()).find("nope.txt") != std::string::npos);
        }
    }
    SECTION("duplicate id rejected") {
        tmp.file("m.json", R"([
            {"id":"a","poet":"P","title":"A","file":"a.txt"},
            {"id":"a","poet":"P","title":"B","file":"b.txt"}
        ])");
        CHECK_THROWS_AS(load_corpus(tmp.path, "m.json"), DuplicateId);
    }
    SECTION("malformed manifest rejected") {
        tmp.file("m.json", "{not json");
        CHECK_THROWS_AS(load_corpus(tmp.path, "m.json"), ManifestParseError);
        tmp.file("m2.json", R"({"id":"a"})");
        CHECK_THROWS_AS(load_corpus(tmp.path, "m2.json"), ManifestParseError);
        tmp.file("m3.json", R"([{"poet":"P","title":"A","file":"a.txt"}])");
        CHECK_THROWS_AS(load_corpus(tmp.path, "m3.json"), ManifestParseError);
    }
}

TEST_CASE("bundled mini-corpus loads") {
    Corpus c = load_corpus(testutil::corpus_dir(), "manifest.json");
    CHECK(c.poems.size() >= 16);
    CHECK(c.poets.size() >= 4);
    for (const Poem& p : c.poems) {
        CHECK(word_count(p) > 0);
        REQUIRE(!p.stanzas.empty());
        for (const Stanza& s : p.stanzas) {
            REQUIRE(!s.lines.empty());
            for (const Line& l : s.lines) REQUIRE(!l.tokens.empty());
        }
        // round trip
        Poem q = parse_poem(poem_text(p), p.id, p.poet, p.title);
        CHECK(q.stanzas.size() == p.stanzas.size());
        CHECK(word_count(q) == word_count(p));
        CHECK(line_count(q) == line_count(p));
    }
}

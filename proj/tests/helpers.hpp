#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef VERSECRAFT_DATA_DIR
#error "VERSECRAFT_DATA_DIR must be defined by the build"
#endif

namespace testutil {

inline std::filesystem::path data_dir() {
    return std::filesystem::path(VERSECRAFT_DATA_DIR);
}

inline std::filesystem::path corpus_dir() { return data_dir() / "corpus"; }
inline std::filesystem::path cmudict_path() { return data_dir() / "cmudict-0.7b.txt"; }
inline std::filesystem::path lexicon_path() { return data_dir() / "pos" / "lexicon.txt"; }
inline std::filesystem::path rules_path() { return data_dir() / "pos" / "context_rules.txt"; }

// Scratch directory wiped on construction and destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& name) {
        path = std::filesystem::temp_directory_path() / ("versecraft_" + name);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::filesystem::path file(const std::string& name, const std::string& content) const {
        auto p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

} // namespace testutil

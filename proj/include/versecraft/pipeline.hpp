#pragma once

// Command pipeline behind the versecraft CLI.  Each run_* function performs
// one subcommand end to end: load resources, compute, write CSV/SVG artifacts
// into the output directory, and print a short report.  cli_main parses
// arguments, validates configured paths up front, and maps failures onto the
// documented exit codes: 0 success, 2 configuration error, 3 corpus/data
// error, 4 insufficient data.

#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "versecraft/baseline.hpp"
#include "versecraft/corpus.hpp"
#include "versecraft/error.hpp"
#include "versecraft/features.hpp"
#include "versecraft/geometry.hpp"
#include "versecraft/phonemics.hpp"
#include "versecraft/postag.hpp"
#include "versecraft/svg.hpp"
#include "versecraft/util.hpp"

namespace versecraft {

enum class BaselineChoice { tf, tfidf, none };

struct RunConfig {
    std::string corpus_dir = "data/corpus";
    std::string manifest = "manifest.json"; // relative paths resolve inside corpus_dir
    std::string weights_path;               // empty: bundled default weights
    std::string cmudict_path = "data/cmudict-0.7b.txt";
    std::string lexicon_path = "data/pos/lexicon.txt";
    std::string rules_path = "data/pos/context_rules.txt";
    int rhyme_window = 4;
    std::string output_dir = ".";
    BaselineChoice baseline = BaselineChoice::tfidf;
};

struct Resources {
    Lexicon lexicon;
    PronouncingDict dict;
    Corpus corpus;
    WeightConfig weights;
};

inline Resources load_resources(const RunConfig& cfg) {
    Resources r;
    r.lexicon = load_lexicon(cfg.lexicon_path, cfg.rules_path);
    r.dict = load_cmudict(cfg.cmudict_path);
    r.corpus = load_corpus(cfg.corpus_dir, cfg.manifest);
    r.weights = cfg.weights_path.empty() ? bundled_default_weights()
                                         : load_weights(cfg.weights_path);
    return r;
}

namespace detail {

inline std::vector<FeatureVector> embed_all(const Resources& res, int window) {
    std::vector<FeatureVector> out;
    out.reserve(res.corpus.poems.size());
    for (const Poem& p : res.corpus.poems)
        out.push_back(embed(p, res.lexicon, res.dict, res.weights, window));
    return out;
}

inline std::map<std::string, std::string> poet_map(const Corpus& corpus) {
    std::map<std::string, std::string> m;
    for (const Poem& p : corpus.poems) m[p.id] = p.poet;
    return m;
}

inline std::string matrix_csv(const DistanceMatrix& m) {
    std::string out = "id";
    for (const std::string& id : m.ids) out += "," + csv_escape(id);
    out += "\n";
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        out += csv_escape(m.ids[i]);
        for (std::size_t j = 0; j < m.ids.size(); ++j) out += "," + fmt_fixed(m.d[i][j]);
        out += "\n";
    }
    return out;
}

inline std::string feature_csv(const Corpus& corpus,
                               const std::vector<FeatureVector>& vectors,
                               bool weighted) {
    std::string out = "id,poet";
    for (const MetricId& def : metric_registry()) out += "," + def.name;
    out += "\n";
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        out += csv_escape(corpus.poems[i].id) + "," + csv_escape(corpus.poems[i].poet);
        const std::vector<double>& vals = weighted ? vectors[i].weighted : vectors[i].values;
        for (double v : vals) out += "," + fmt_fixed(v);
        out += "\n";
    }
    return out;
}

inline std::string poetstats_csv(const PoetStats& stats) {
    std::string out =
        "poet,n_poems,n_intra_pairs,n_inter_pairs,intra_mean,intra_sem,inter_mean,inter_sem\n";
    auto row = [&](const std::string& poet, int np, int ni, int ne, bool has_intra,
                   double im, double is, double em, double es) {
        out += csv_escape(poet) + "," + std::to_string(np) + "," + std::to_string(ni) +
               "," + std::to_string(ne) + ",";
        out += has_intra ? fmt_fixed(im) : std::string();
        out += ",";
        out += has_intra ? fmt_fixed(is) : std::string();
        out += "," + fmt_fixed(em) + "," + fmt_fixed(es) + "\n";
    };
    int n_poems_total = 0;
    for (const PoetStat& ps : stats.per_poet) {
        n_poems_total += ps.n_poems;
        row(ps.poet, ps.n_poems, ps.n_intra_pairs, ps.n_inter_pairs, ps.has_intra,
            ps.intra_mean, ps.intra_sem, ps.inter_mean, ps.inter_sem);
    }
    row("ALL", n_poems_total, stats.agg_n_intra, stats.agg_n_inter, stats.agg_n_intra > 0,
        stats.agg_intra_mean, stats.agg_intra_sem, stats.agg_inter_mean, stats.agg_inter_sem);
    return out;
}

inline void write_artifact(const RunConfig& cfg, const std::string& name,
                           const std::string& content) {
    write_file((std::filesystem::path(cfg.output_dir) / name).string(), content);
}

inline DistanceMatrix style_matrix(const Resources& res, const RunConfig& cfg) {
    return distance_matrix(embed_all(res, cfg.rhyme_window));
}

} // namespace detail

// features: raw + weighted feature tables and the weighted distance matrix,
// plus a coverage report (out-of-vocabulary tokens and lines skipped by the
// end-rhyme scan).
inline void run_features(const RunConfig& cfg, const Resources& res, std::ostream& out) {
    std::vector<FeatureVector> vectors = detail::embed_all(res, cfg.rhyme_window);
    detail::write_artifact(cfg, "features.csv", detail::feature_csv(res.corpus, vectors, false));
    detail::write_artifact(cfg, "features_weighted.csv",
                           detail::feature_csv(res.corpus, vectors, true));
    detail::write_artifact(cfg, "distances.csv", detail::matrix_csv(distance_matrix(vectors)));

    out << "wrote features.csv, features_weighted.csv, distances.csv\n";
    out << "coverage report:\n";
    std::size_t total_oov = 0, total_tokens = 0;
    for (const Poem& p : res.corpus.poems) {
        auto [oov, total] = oov_counts(p, res.dict);
        EndRhymeCounts rc = end_rhyme_counts(p, res.dict, cfg.rhyme_window);
        total_oov += oov;
        total_tokens += total;
        double pct = total ? 100.0 * static_cast<double>(oov) / static_cast<double>(total) : 0.0;
        out << "  " << p.id << ": " << oov << "/" << total << " tokens OOV ("
            << fmt_fixed(pct, 1) << "%), " << rc.skipped_lines
            << " lines skipped in end-rhyme scan\n";
    }
    double pct = total_tokens
                     ? 100.0 * static_cast<double>(total_oov) / static_cast<double>(total_tokens)
                     : 0.0;
    out << "total: " << total_oov << "/" << total_tokens << " tokens OOV ("
        << fmt_fixed(pct, 1) << "%)\n";
}

// project: two-dimensional PCA projection exported as CSV and as a numbered
// scatter plot, with the stress of the projection reported to four decimals.
inline void run_project(const RunConfig& cfg, const Resources& res, std::ostream& out) {
    std::vector<FeatureVector> vectors = detail::embed_all(res, cfg.rhyme_window);
    Projection proj = pca_project(vectors, 2);

    std::string csv = "id,poet,x,y\n";
    std::vector<ScatterPoint> points;
    for (std::size_t i = 0; i < proj.ids.size(); ++i) {
        const Poem& p = res.corpus.poems[i];
        csv += csv_escape(p.id) + "," + csv_escape(p.poet) + "," +
               fmt_fixed(proj.coords[i][0]) + "," + fmt_fixed(proj.coords[i][1]) + "\n";
        points.push_back({static_cast<int>(i) + 1, p.poet, proj.coords[i][0], proj.coords[i][1]});
    }
    detail::write_artifact(cfg, "projection.csv", csv);
    detail::write_artifact(cfg, "scatter.svg",
                           scatter_svg(points, res.corpus.poets, proj.stress));

    out << "wrote projection.csv, scatter.svg\n";
    out << "stress: " << fmt_fixed(proj.stress, 4) << "\n";
    out << "component variance:";
    for (std::size_t j = 0; j < std::min<std::size_t>(2, proj.component_variances.size()); ++j)
        out << " " << fmt_fixed(proj.component_variances[j]);
    out << "\n";
}

// stats: weighted distance matrix plus per-poet and aggregate clustering
// statistics (normalized so the aggregate inter-poet mean is 1), with a
// grouped intra/inter bar chart carrying SEM error bars.
inline void run_stats(const RunConfig& cfg, const Resources& res, std::ostream& out) {
    DistanceMatrix m = detail::style_matrix(res, cfg);
    PoetStats stats = poet_statistics(m, detail::poet_map(res.corpus));
    if (stats.agg_n_intra == 0)
        throw NoIntraPairs("no poet in the corpus has two or more poems");

    detail::write_artifact(cfg, "distances.csv", detail::matrix_csv(m));
    detail::write_artifact(cfg, "poetstats.csv", detail::poetstats_csv(stats));

    std::vector<BarGroup> groups;
    for (const PoetStat& ps : stats.per_poet) {
        if (!ps.has_intra) continue; // single-poem poets have no intra bar
        groups.push_back({ps.poet,
                          {ps.intra_mean, ps.inter_mean},
                          {ps.intra_sem, ps.inter_sem}});
    }
    groups.push_back({"All",
                      {stats.agg_intra_mean, stats.agg_inter_mean},
                      {stats.agg_intra_sem, stats.agg_inter_sem}});
    detail::write_artifact(cfg, "stats.svg",
                           grouped_bar_svg(groups, {"intra", "inter"}, "normalized distance"));

    out << "wrote distances.csv, poetstats.csv, stats.svg\n";
    out << "normalization factor: " << fmt_fixed(stats.normalization_factor)
        << " (raw aggregate inter mean " << fmt_fixed(1.0 / stats.normalization_factor)
        << ")\n";
    out << "aggregate differential: " << fmt_fixed(aggregate_differential(stats)) << "\n";
}

// compare: SEM-scaled differentials of the style metric against TF and TF-IDF
// cosine baselines, per poet and aggregate, as CSV and grouped bars.
inline void run_compare(const RunConfig& cfg, const Resources& res, std::ostream& out) {
    std::map<std::string, std::string> poets = detail::poet_map(res.corpus);

    DistanceMatrix style = detail::style_matrix(res, cfg);
    DistanceMatrix tf = baseline_distance_matrix(res.corpus, BaselineMode::tf);
    DistanceMatrix tfidf = baseline_distance_matrix(res.corpus, BaselineMode::tfidf);

    PoetStats style_stats = poet_statistics(style, poets);
    PoetStats tf_stats = poet_statistics(tf, poets);
    PoetStats tfidf_stats = poet_statistics(tfidf, poets);
    if (style_stats.agg_n_intra == 0)
        throw NoIntraPairs("no poet in the corpus has two or more poems");

    std::map<std::string, double> d_style = differential(style_stats);
    std::map<std::string, double> d_tf = differential(tf_stats);
    std::map<std::string, double> d_tfidf = differential(tfidf_stats);

    std::string csv = "poet,style,tf,tfidf\n";
    std::vector<BarGroup> groups;
    for (const PoetStat& ps : style_stats.per_poet) {
        if (!d_style.count(ps.poet) || !d_tf.count(ps.poet) || !d_tfidf.count(ps.poet))
            continue;
        csv += csv_escape(ps.poet) + "," + fmt_fixed(d_style[ps.poet]) + "," +
               fmt_fixed(d_tf[ps.poet]) + "," + fmt_fixed(d_tfidf[ps.poet]) + "\n";
        groups.push_back({ps.poet, {d_style[ps.poet], d_tf[ps.poet], d_tfidf[ps.poet]}, {}});
    }
    double a_style = aggregate_differential(style_stats);
    double a_tf = aggregate_differential(tf_stats);
    double a_tfidf = aggregate_differential(tfidf_stats);
    csv += "ALL," + fmt_fixed(a_style) + "," + fmt_fixed(a_tf) + "," + fmt_fixed(a_tfidf) + "\n";
    groups.push_back({"All", {a_style, a_tf, a_tfidf}, {}});

    detail::write_artifact(cfg, "distances.csv", detail::matrix_csv(style));
    detail::write_artifact(cfg, "distances_tf.csv", detail::matrix_csv(tf));
    detail::write_artifact(cfg, "distances_tfidf.csv", detail::matrix_csv(tfidf));
    detail::write_artifact(cfg, "comparison.csv", csv);
    detail::write_artifact(cfg, "comparison.svg",
                           grouped_bar_svg(groups, {"style", "tf", "tf-idf"},
                                           "SEM-scaled differential"));

    out << "wrote distances.csv, distances_tf.csv, distances_tfidf.csv, comparison.csv, "
           "comparison.svg\n";
    out << "aggregate differential: style " << fmt_fixed(a_style) << ", tf "
        << fmt_fixed(a_tf) << ", tf-idf " << fmt_fixed(a_tfidf) << "\n";
}

// merge-compare: each labeled group of poem ids is concatenated (in manifest
// order, stanza boundaries preserved) into one synthetic poem; the groups are
// embedded and their pairwise distances reported.
inline void run_merge_compare(const RunConfig& cfg, const Resources& res,
                              const std::vector<std::pair<std::string, std::vector<std::string>>>& groups,
                              std::ostream& out) {
    if (groups.empty()) throw Error("merge-compare needs at least one group");

    std::vector<FeatureVector> vectors;
    for (const auto& [label, ids] : groups) {
        std::set<std::string> wanted;
        for (const std::string& id : ids) {
            poem_by_id(res.corpus, id); // throws UnknownId for bad ids
            wanted.insert(id);
        }
        std::string text;
        for (const Poem& p : res.corpus.poems) {
            if (!wanted.count(p.id)) continue;
            if (!text.empty()) text += "\n\n";
            text += poem_text(p);
        }
        Poem merged = parse_poem(text, label, label, label);
        vectors.push_back(embed(merged, res.lexicon, res.dict, res.weights, cfg.rhyme_window));
        vectors.back().poem_id = label;
    }

    DistanceMatrix m = distance_matrix(vectors);
    detail::write_artifact(cfg, "merged_distances.csv", detail::matrix_csv(m));

    out << "wrote merged_distances.csv\n";
    for (std::size_t i = 0; i < m.ids.size(); ++i)
        for (std::size_t j = i + 1; j < m.ids.size(); ++j)
            out << m.ids[i] << " <-> " << m.ids[j] << ": " << fmt_fixed(m.d[i][j]) << "\n";
}

namespace detail {

// "label:id1,id2" -> (label, [id1, id2]); malformed specs are config errors.
inline std::pair<std::string, std::vector<std::string>> parse_group_spec(const std::string& spec) {
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0)
        throw ParseError("--group expects label:id1,id2,... got: " + spec);
    std::string label = spec.substr(0, colon);
    std::vector<std::string> ids;
    std::string rest = spec.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        std::size_t comma = rest.find(',', start);
        std::string id = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
        if (!id.empty()) ids.push_back(id);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (ids.empty()) throw ParseError("--group has no poem ids: " + spec);
    return {label, ids};
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    namespace fs = std::filesystem;

    RunConfig cfg;
    std::string baseline_str = "tfidf";
    std::vector<std::string> group_specs;

    CLI::App app{"versecraft: quantitative analysis of poetic style"};
    app.require_subcommand(1);
    app.add_option("--corpus", cfg.corpus_dir, "Corpus directory")
        ->envname("VERSECRAFT_CORPUS")
        ->capture_default_str();
    app.add_option("--manifest", cfg.manifest,
                   "Manifest JSON (relative paths resolve inside the corpus directory)")
        ->envname("VERSECRAFT_MANIFEST")
        ->capture_default_str();
    app.add_option("--weights", cfg.weights_path,
                   "Metric weight JSON (default: bundled weights)")
        ->envname("VERSECRAFT_WEIGHTS");
    app.add_option("--cmudict", cfg.cmudict_path, "Pronouncing dictionary")
        ->envname("VERSECRAFT_CMUDICT")
        ->capture_default_str();
    app.add_option("--lexicon", cfg.lexicon_path, "Part-of-speech lexicon")
        ->envname("VERSECRAFT_LEXICON")
        ->capture_default_str();
    app.add_option("--rules", cfg.rules_path, "Contextual tagging rules")
        ->envname("VERSECRAFT_RULES")
        ->capture_default_str();
    app.add_option("--window", cfg.rhyme_window, "End-rhyme look-ahead window (lines)")
        ->envname("VERSECRAFT_WINDOW")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out", cfg.output_dir, "Output directory")
        ->envname("VERSECRAFT_OUT")
        ->capture_default_str();
    app.add_option("--baseline", baseline_str, "Baseline mode: tf, tfidf, or none")
        ->envname("VERSECRAFT_BASELINE")
        ->check(CLI::IsMember({"tf", "tfidf", "none"}))
        ->capture_default_str();

    CLI::App* c_features =
        app.add_subcommand("features", "Export raw/weighted features and distances");
    CLI::App* c_project = app.add_subcommand("project", "PCA scatter projection with stress");
    CLI::App* c_stats = app.add_subcommand("stats", "Poet clustering statistics");
    CLI::App* c_compare = app.add_subcommand("compare", "Style vs TF/TF-IDF differentials");
    CLI::App* c_merge = app.add_subcommand("merge-compare", "Distances between merged groups");
    c_merge->add_option("--group", group_specs, "Group spec label:id1,id2 (repeatable)")
        ->required();
    for (CLI::App* sub : {c_features, c_project, c_stats, c_compare, c_merge})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    cfg.baseline = baseline_str == "tf" ? BaselineChoice::tf
                 : baseline_str == "tfidf" ? BaselineChoice::tfidf
                                           : BaselineChoice::none;

    // Configured paths are validated before any loading so that a bad flag is
    // reported by name with exit code 2.
    const fs::path manifest_abs = fs::path(cfg.manifest).is_absolute()
                                      ? fs::path(cfg.manifest)
                                      : fs::path(cfg.corpus_dir) / cfg.manifest;
    struct PathCheck {
        const char* flag;
        std::string path;
    };
    std::vector<PathCheck> checks = {
        {"--corpus", cfg.corpus_dir},
        {"--manifest", manifest_abs.string()},
        {"--cmudict", cfg.cmudict_path},
        {"--lexicon", cfg.lexicon_path},
        {"--rules", cfg.rules_path},
    };
    if (!cfg.weights_path.empty()) checks.push_back({"--weights", cfg.weights_path});
    for (const PathCheck& c : checks) {
        if (!fs::exists(c.path)) {
            err << "error: " << c.flag << " path does not exist: " << c.path << "\n";
            return 2;
        }
    }
    if (*c_compare && cfg.baseline == BaselineChoice::none) {
        err << "error: --baseline none is incompatible with the compare command\n";
        return 2;
    }

    std::vector<std::pair<std::string, std::vector<std::string>>> groups;
    if (*c_merge) {
        try {
            for (const std::string& spec : group_specs)
                groups.push_back(detail::parse_group_spec(spec));
        } catch (const ParseError& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }

    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) {
        err << "error: --out directory cannot be created: " << cfg.output_dir << "\n";
        return 2;
    }

    try {
        Resources res = load_resources(cfg);
        if (*c_features) run_features(cfg, res, out);
        else if (*c_project) run_project(cfg, res, out);
        else if (*c_stats) run_stats(cfg, res, out);
        else if (*c_compare) run_compare(cfg, res, out);
        else if (*c_merge) run_merge_compare(cfg, res, groups, out);
        return 0;
    } catch (const TooFewPoems& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const NoIntraPairs& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownMetric& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NegativeWeight& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const MismatchedRegistry& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace versecraft

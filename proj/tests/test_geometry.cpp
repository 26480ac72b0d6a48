#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "versecraft/geometry.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace versecraft;
using Catch::Approx;

static FeatureVector fv(const std::string& id, std::vector<double> w) {
    FeatureVector v;
    v.poem_id = id;
    v.values = w;
    v.weighted = std::move(w);
    return v;
}

static std::vector<std::vector<double>> random_rows(std::mt19937& rng, std::size_t n,
                                                    std::size_t m, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (auto& r : rows)
        for (auto& x : r) x = g(rng);
    return rows;
}

TEST_CASE("distance") {
    CHECK(distance(fv("a", {1, 2, 3}), fv("b", {1, 2, 3})) == 0.0);
    CHECK(distance(fv("a", {0, 0, 0}), fv("b", {0, 3, 0})) == Approx(3.0));
    CHECK(distance(fv("a", {1, 2}), fv("b", {4, 6})) == Approx(5.0));
    CHECK_THROWS_AS(distance(fv("a", {1, 2}), fv("b", {1, 2, 3})), MismatchedRegistry);
}

TEST_CASE("distance_matrix") {
    SECTION("single poem") {
        DistanceMatrix m = distance_matrix({fv("only", {1, 2})});
        REQUIRE(m.ids == std::vector<std::string>{"only"});
        CHECK(m.d[0][0] == 0.0);
    }
    SECTION("duplicate vectors have zero distance") {
        DistanceMatrix m = distance_matrix({fv("a", {1, 2}), fv("b", {3, 4}), fv("c", {1, 2})});
        CHECK(m.d[0][2] == 0.0);
        CHECK(m.d[0][1] > 0.0);
    }
    SECTION("three hand-computed pairs") {
        DistanceMatrix m = distance_matrix({fv("a", {0, 0}), fv("b", {3, 4}), fv("c", {6, 8})});
        CHECK(m.d[0][1] == Approx(5.0));
        CHECK(m.d[0][2] == Approx(10.0));
        CHECK(m.d[1][2] == Approx(5.0));
    }
    SECTION("empty input rejected") {
        CHECK_THROWS_AS(distance_matrix({}), TooFewPoems);
    }
    SECTION("symmetry, zero diagonal, triangle inequality on random vectors") {
        std::mt19937 rng(7101);
        for (int trial = 0; trial < 5; ++trial) {
            auto rows = random_rows(rng, 15, 8, 3.0);
            std::vector<FeatureVector> vs;
            for (std::size_t i = 0; i < rows.size(); ++i)
                vs.push_back(fv("p" + std::to_string(i), rows[i]));
            DistanceMatrix m = distance_matrix(vs);
            const std::size_t n = m.ids.size();
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(m.d[i][i] == 0.0);
                for (std::size_t j = 0; j < n; ++j) {
                    CHECK(m.d[i][j] == m.d[j][i]);
                    CHECK(m.d[i][j] >= 0.0);
                    for (std::size_t k = 0; k < n; ++k)
                        CHECK(m.d[i][k] <= m.d[i][j] + m.d[j][k] + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("pca_project matches the eigendecomposition oracle") {
    std::mt19937 rng(90125);
    for (int fixture = 0; fixture < 20; ++fixture) {
        std::size_t n = 3 + rng() % 28;         // up to 30 rows
        std::size_t m = 2 + rng() % 83;         // up to 84 columns
        auto rows = random_rows(rng, n, m, 2.0);

        Projection got = pca_project_matrix(rows, 2);
        oracle::PcaReference want = oracle::pca_by_eigen(rows, 2);

        INFO("fixture " << fixture << ": " << n << "x" << m);
        REQUIRE(got.stress == Approx(want.stress).margin(1e-8));
        REQUIRE(got.coords.size() == n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                REQUIRE(got.coords[i][j] == Approx(want.coords[i][j]).margin(1e-8));
    }
}

TEST_CASE("pca_project degenerate and structural cases") {
    SECTION("rank-2 input has zero stress") {
        std::mt19937 rng(611);
        std::normal_distribution<double> g;
        const std::size_t n = 12, m = 20;
        std::vector<double> x(m), y(m), a(n), b(n), c(m);
        for (auto& v : x) v = g(rng);
        for (auto& v : y) v = g(rng);
        for (auto& v : a) v = g(rng);
        for (auto& v : b) v = g(rng);
        for (auto& v : c) v = g(rng);
        std::vector<std::vector<double>> rows(n, std::vector<double>(m));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                rows[i][j] = a[i] * x[j] + b[i] * y[j] + c[j];
        Projection p = pca_project_matrix(rows, 2);
        CHECK(p.stress == Approx(0.0).margin(1e-9));
    }
    SECTION("two poems lie on a line with zero stress") {
        Projection p = pca_project({fv("a", {1, 2, 3, 4}), fv("b", {2, 1, 0, 7})}, 2);
        CHECK(p.stress == Approx(0.0).margin(1e-9));
        CHECK(std::fabs(p.coords[0][1]) < 1e-9);
        CHECK(std::fabs(p.coords[1][1]) < 1e-9);
        CHECK(p.ids == std::vector<std::string>{"a", "b"});
    }
    SECTION("fewer than two poems rejected") {
        CHECK_THROWS_AS(pca_project({fv("a", {1, 2})}, 2), TooFewPoems);
        CHECK_THROWS_AS(pca_project({}, 2), TooFewPoems);
    }
    SECTION("identical rows give zero stress and zero coordinates") {
        Projection p = pca_project_matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, 2);
        CHECK(p.stress == 0.0);
        for (const auto& row : p.coords)
            for (double v : row) CHECK(v == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("pca_project invariants") {
    std::mt19937 rng(31337);
    auto rows = random_rows(rng, 18, 10, 1.5);
    Projection p = pca_project_matrix(rows, 2);

    SECTION("component variances sum to one, stress in range") {
        double sum = std::accumulate(p.component_variances.begin(),
                                     p.component_variances.end(), 0.0);
        CHECK(sum == Approx(1.0).margin(1e-9));
        CHECK(p.stress >= 0.0);
        CHECK(p.stress <= 1.0);
        CHECK(p.stress ==
              Approx(1.0 - p.component_variances[0] - p.component_variances[1]).margin(1e-9));
    }
    SECTION("coordinates are centered") {
        for (std::size_t j = 0; j < 2; ++j) {
            double mean = 0.0;
            for (const auto& row : p.coords) mean += row[j];
            CHECK(mean / static_cast<double>(p.coords.size()) == Approx(0.0).margin(1e-9));
        }
    }
    SECTION("projection is contractive") {
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                double hi = 0.0, lo = 0.0;
                for (std::size_t c = 0; c < rows[i].size(); ++c)
                    hi += (rows[i][c] - rows[j][c]) * (rows[i][c] - rows[j][c]);
                for (std::size_t c = 0; c < 2; ++c)
                    lo += (p.coords[i][c] - p.coords[j][c]) * (p.coords[i][c] - p.coords[j][c]);
                CHECK(std::sqrt(lo) <= std::sqrt(hi) + 1e-9);
            }
    }
    SECTION("rigid translation changes nothing") {
        std::vector<double> shift(rows[0].size());
        std::normal_distribution<double> g(0.0, 50.0);
        for (auto& s : shift) s = g(rng);
        auto shifted = rows;
        for (auto& r : shifted)
            for (std::size_t c = 0; c < r.size(); ++c) r[c] += shift[c];
        Projection q = pca_project_matrix(shifted, 2);
        CHECK(q.stress == Approx(p.stress).margin(1e-8));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(q.coords[i][j] == Approx(p.coords[i][j]).margin(1e-7));
    }
}

TEST_CASE("uniform weight scaling preserves distance ordering") {
    std::mt19937 rng(2024);
    auto rows = random_rows(rng, 10, 12, 4.0);
    std::vector<FeatureVector> base, doubled, tripled;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        base.push_back(fv("p" + std::to_string(i), rows[i]));
        auto r2 = rows[i];
        for (auto& x : r2) x *= 2.0;
        doubled.push_back(fv("p" + std::to_string(i), r2));
        auto r3 = rows[i];
        for (auto& x : r3) x *= 3.0;
        tripled.push_back(fv("p" + std::to_string(i), r3));
    }
    DistanceMatrix d1 = distance_matrix(base);
    DistanceMatrix d2 = distance_matrix(doubled);
    DistanceMatrix d3 = distance_matrix(tripled);

    std::vector<double> f1, f2;
    for (std::size_t i = 0; i < d1.ids.size(); ++i)
        for (std::size_t j = i + 1; j < d1.ids.size(); ++j) {
            f1.push_back(d1.d[i][j]);
            f2.push_back(d2.d[i][j]);
            CHECK(d2.d[i][j] == Approx(2.0 * d1.d[i][j]).epsilon(1e-12));
            CHECK(d3.d[i][j] == Approx(3.0 * d1.d[i][j]).epsilon(1e-12));
        }

    // argsort invariance (power-of-two scaling is exact in floating point)
    std::vector<std::size_t> o1(f1.size()), o2(f2.size());
    std::iota(o1.begin(), o1.end(), std::size_t{0});
    o2 = o1;
    std::sort(o1.begin(), o1.end(), [&](std::size_t a, std::size_t b) { return f1[a] < f1[b]; });
    std::sort(o2.begin(), o2.end(), [&](std::size_t a, std::size_t b) { return f2[a] < f2[b]; });
    CHECK(o1 == o2);
}

TEST_CASE("poet_statistics on a hand-built fixture") {
    DistanceMatrix m;
    m.ids = {"a1", "a2", "b1", "b2"};
    m.d = {
        {0, 1, 3, 4},
        {1, 0, 5, 6},
        {3, 5, 0, 2},
        {4, 6, 2, 0},
    };
    std::map<std::string, std::string> poets = {
        {"a1", "A"}, {"a2", "A"}, {"b1", "B"}, {"b2", "B"}};
    PoetStats s = poet_statistics(m, poets);

    const double raw_inter_mean = 4.5;           // (3+4+5+6)/4
    const double raw_inter_sd = std::sqrt(5.0 / 3.0);
    const double raw_inter_sem = raw_inter_sd / 2.0;
    const double f = 1.0 / raw_inter_mean;

    CHECK(s.normalization_factor == Approx(f));
    CHECK(s.agg_inter_mean == Approx(1.0));
    CHECK(s.agg_n_inter == 4);
    CHECK(s.agg_n_intra == 2);
    CHECK(s.agg_intra_mean == Approx(1.5 * f)); // (1+2)/2, normalized

    REQUIRE(s.per_poet.size() == 2);
    const PoetStat& A = s.per_poet[0];
    const PoetStat& B = s.per_poet[1];
    CHECK(A.poet == "A");
    CHECK(A.n_poems == 2);
    CHECK(A.n_intra_pairs == 1);
    CHECK(A.n_inter_pairs == 4);
    CHECK(A.has_intra);
    CHECK(A.intra_mean == Approx(1.0 * f));
    CHECK(A.intra_sem == 0.0); // single pair
    CHECK(A.inter_mean == Approx(4.5 * f));
    CHECK(A.inter_sem == Approx(raw_inter_sem * f));
    CHECK(B.intra_mean == Approx(2.0 * f));

    // pair sets partition C(4,2)=6
    CHECK(A.n_intra_pairs + B.n_intra_pairs + s.agg_n_inter == 6);

    SECTION("differential") {
        auto d = differential(s);
        REQUIRE(d.count("A"));
        CHECK(d.at("A") == Approx((4.5 - 1.0) / raw_inter_sem));
        CHECK(d.at("B") == Approx((4.5 - 2.0) / raw_inter_sem));
    }
    SECTION("differential is invariant under uniform scaling") {
        DistanceMatrix m7 = m;
        for (auto& row : m7.d)
            for (auto& x : row) x *= 7.0;
        PoetStats s7 = poet_statistics(m7, poets);
        auto d = differential(s);
        auto d7 = differential(s7);
        for (const auto& [poet, val] : d) CHECK(d7.at(poet) == Approx(val).epsilon(1e-12));
        CHECK(aggregate_differential(s7) == Approx(aggregate_differential(s)).epsilon(1e-12));
    }
}

TEST_CASE("poet_statistics edge cases") {
    SECTION("two poets with one poem each") {
        DistanceMatrix m;
        m.ids = {"x", "y"};
        m.d = {{0, 3}, {3, 0}};
        PoetStats s = poet_statistics(m, {{"x", "X"}, {"y", "Y"}});
        CHECK(s.agg_inter_mean == 1.0);
        CHECK(s.agg_n_intra == 0);
        CHECK_FALSE(s.per_poet[0].has_intra);
        CHECK(s.per_poet[0].inter_mean == Approx(1.0));
        CHECK_THROWS_AS(differential(s), NoIntraPairs);
        CHECK_THROWS_AS(aggregate_differential(s), NoIntraPairs);
    }
    SECTION("single poet rejected: no inter pairs to normalize by") {
        DistanceMatrix m;
        m.ids = {"x", "y"};
        m.d = {{0, 3}, {3, 0}};
        CHECK_THROWS_AS(poet_statistics(m, {{"x", "X"}, {"y", "X"}}), TooFewPoems);
    }
    SECTION("missing poet attribution rejected") {
        DistanceMatrix m;
        m.ids = {"x", "y"};
        m.d = {{0, 3}, {3, 0}};
        CHECK_THROWS_AS(poet_statistics(m, {{"x", "X"}}), UnknownId);
    }
    SECTION("duplicated vectors give intra mean zero") {
        DistanceMatrix m;
        m.ids = {"x1", "x2", "y"};
        m.d = {{0, 0, 2}, {0, 0, 2}, {2, 2, 0}};
        PoetStats s = poet_statistics(m, {{"x1", "X"}, {"x2", "X"}, {"y", "Y"}});
        CHECK(s.per_poet[0].intra_mean == 0.0);
        CHECK(s.agg_inter_mean == Approx(1.0));
    }
}

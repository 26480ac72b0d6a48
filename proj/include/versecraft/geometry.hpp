#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "versecraft/error.hpp"
#include "versecraft/features.hpp"

namespace versecraft {

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

inline double distance(const FeatureVector& u, const FeatureVector& v) {
    if (u.weighted.size() != v.weighted.size())
        throw MismatchedRegistry("feature vectors span different registries");
    double sum = 0.0;
    for (std::size_t i = 0; i < u.weighted.size(); ++i) {
        double d = u.weighted[i] - v.weighted[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

struct DistanceMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> d; // symmetric, zero diagonal
};

inline DistanceMatrix distance_matrix(const std::vector<FeatureVector>& vectors) {
    if (vectors.empty()) throw TooFewPoems("distance matrix needs at least one poem");
    DistanceMatrix m;
    m.ids.reserve(vectors.size());
    for (const auto& v : vectors) m.ids.push_back(v.poem_id);
    m.d.assign(vectors.size(), std::vector<double>(vectors.size(), 0.0));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            double dij = distance(vectors[i], vectors[j]);
            m.d[i][j] = dij;
            m.d[j][i] = dij;
        }
    return m;
}

// ---------------------------------------------------------------------------
// PCA via one-sided Jacobi SVD
// ---------------------------------------------------------------------------

struct Projection {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords; // n rows of k coordinates
    double stress = 0.0;
    std::vector<double> component_variances; // fraction per component, sums to 1
};

// PCA of a raw n x m matrix: columns are mean-centered (no rescaling), then a
// one-sided Jacobi (Hestenes) SVD orthogonalizes the columns in place.  The
// rotated column j equals sigma_j * u_j, which is exactly the j-th projected
// coordinate of every row, so no separate multiplication is needed.
inline Projection pca_project_matrix(const std::vector<std::vector<double>>& rows, std::size_t k) {
    const std::size_t n = rows.size();
    if (n < 2) throw TooFewPoems("PCA needs at least two poems");
    const std::size_t m = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != m) throw MismatchedRegistry("ragged feature matrix");

    // column-major centered copy
    std::vector<std::vector<double>> col(m, std::vector<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += rows[i][j];
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) col[j][i] = rows[i][j] - mean;
    }

    // right singular vectors accumulate in v (v[j] is column j)
    std::vector<std::vector<double>> v(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) v[j][j] = 1.0;

    const double eps = 1e-14;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += col[p][i] * col[p][i];
                    beta += col[q][i] * col[q][i];
                    gamma += col[p][i] * col[q][i];
                }
                if (alpha * beta <= 0.0) continue;
                if (std::fabs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = ((zeta >= 0.0) ? 1.0 : -1.0) /
                           (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    double xp = col[p][i], xq = col[q][i];
                    col[p][i] = c * xp - s * xq;
                    col[q][i] = s * xp + c * xq;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    double vp = v[p][i], vq = v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma2(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) s2 += col[j][i] * col[j][i];
        sigma2[j] = s2;
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma2[a] > sigma2[b]; });

    double total = std::accumulate(sigma2.begin(), sigma2.end(), 0.0);

    Projection out;
    out.component_variances.resize(m, 0.0);
    for (std::size_t j = 0; j < m; ++j)
        out.component_variances[j] = (total > 1e-30) ? sigma2[order[j]] / total : 0.0;

    double kept = 0.0;
    for (std::size_t j = 0; j < k && j < m; ++j) kept += sigma2[order[j]];
    out.stress = (total > 1e-30) ? std::max(0.0, 1.0 - kept / total) : 0.0;

    out.coords.assign(n, std::vector<double>(k, 0.0));
    for (std::size_t jj = 0; jj < k && jj < m; ++jj) {
        std::size_t j = order[jj];
        // sign convention: the loading entry of largest magnitude is positive
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (std::fabs(v[j][i]) > std::fabs(best)) best = v[j][i];
        double flip = (best < 0.0) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.coords[i][jj] = flip * col[j][i];
    }
    return out;
}

inline Projection pca_project(const std::vector<FeatureVector>& vectors, std::size_t k = 2) {
    if (vectors.size() < 2) throw TooFewPoems("PCA needs at least two poems");
    std::vector<std::vector<double>> rows;
    rows.reserve(vectors.size());
    for (const auto& fv : vectors) rows.push_back(fv.weighted);
    Projection p = pca_project_matrix(rows, k);
    for (const auto& fv : vectors) p.ids.push_back(fv.poem_id);
    return p;
}

// ---------------------------------------------------------------------------
// Poet statistics
// ---------------------------------------------------------------------------

struct PoetStat {
    std::string poet;
    int n_poems = 0;
    int n_intra_pairs = 0;
    int n_inter_pairs = 0;
    bool has_intra = false;
    double intra_mean = 0.0, intra_sem = 0.0; // normalized
    double inter_mean = 0.0, inter_sem = 0.0; // normalized
};

struct PoetStats {
    std::vector<PoetStat> per_poet; // in first-appearance order
    int agg_n_intra = 0, agg_n_inter = 0;
    double agg_intra_mean = 0.0, agg_intra_sem = 0.0;
    double agg_inter_mean = 0.0, agg_inter_sem = 0.0; // == 1 after normalization
    double normalization_factor = 1.0;
};

namespace detail {

inline std::pair<double, double> mean_sem(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

} // namespace detail

inline PoetStats poet_statistics(const DistanceMatrix& m,
                                 const std::map<std::string, std::string>& poet_of) {
    const std::size_t n = m.ids.size();
    std::vector<std::string> poet(n);
    std::vector<std::string> poet_order;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = poet_of.find(m.ids[i]);
        if (it == poet_of.end()) throw UnknownId("no poet for poem id: " + m.ids[i]);
        poet[i] = it->second;
        if (std::find(poet_order.begin(), poet_order.end(), it->second) == poet_order.end())
            poet_order.push_back(it->second);
    }

    std::map<std::string, std::vector<double>> intra, inter;
    std::vector<double> agg_intra, agg_inter;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = m.d[i][j];
            if (poet[i] == poet[j]) {
                intra[poet[i]].push_back(d);
                agg_intra.push_back(d);
            } else {
                inter[poet[i]].push_back(d);
                inter[poet[j]].push_back(d);
                agg_inter.push_back(d);
            }
        }

    if (agg_inter.empty())
        throw TooFewPoems("no inter-poet pairs: need poems from at least two poets");

    auto [agg_inter_mean, agg_inter_sem] = detail::mean_sem(agg_inter);
    auto [agg_intra_mean, agg_intra_sem] = detail::mean_sem(agg_intra);
    double factor = 1.0 / agg_inter_mean;

    PoetStats stats;
    stats.normalization_factor = factor;
    stats.agg_n_intra = static_cast<int>(agg_intra.size());
    stats.agg_n_inter = static_cast<int>(agg_inter.size());
    stats.agg_intra_mean = agg_intra_mean * factor;
    stats.agg_intra_sem = agg_intra_sem * factor;
    stats.agg_inter_mean = 1.0; // the normalizer itself: exactly 1 by definition
    stats.agg_inter_sem = agg_inter_sem * factor;

    for (const std::string& p : poet_order) {
        PoetStat ps;
        ps.poet = p;
        ps.n_poems = static_cast<int>(std::count(poet.begin(), poet.end(), p));
        const auto& ai = intra[p];
        const auto& ae = inter[p];
        ps.n_intra_pairs = static_cast<int>(ai.size());
        ps.n_inter_pairs = static_cast<int>(ae.size());
        ps.has_intra = !ai.empty();
        auto [im, is] = detail::mean_sem(ai);
        auto [em, es] = detail::mean_sem(ae);
        ps.intra_mean = im * factor;
        ps.intra_sem = is * factor;
        ps.inter_mean = em * factor;
        ps.inter_sem = es * factor;
        stats.per_poet.push_back(std::move(ps));
    }
    return stats;
}

// SEM-scaled differential (inter - intra) / SEM(inter) per poet.  Poets
// without intra pairs or with a degenerate inter SEM are omitted.
inline std::map<std::string, double> differential(const PoetStats& stats) {
    std::map<std::string, double> out;
    for (const PoetStat& ps : stats.per_poet) {
        if (!ps.has_intra) continue;
        if (ps.inter_sem <= 0.0) continue;
        out[ps.poet] = (ps.inter_mean - ps.intra_mean) / ps.inter_sem;
    }
    if (out.empty()) throw NoIntraPairs("no poet has both intra and inter pairs");
    return out;
}

inline double aggregate_differential(const PoetStats& stats) {
    if (stats.agg_n_intra == 0) throw NoIntraPairs("no intra-poet pairs in the collection");
    if (stats.agg_inter_sem <= 0.0) throw NoIntraPairs("degenerate inter-poet SEM");
    return (stats.agg_inter_mean - stats.agg_intra_mean) / stats.agg_inter_sem;
}

} // namespace versecraft

#include "georep/spatialstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "georep/parallel.hpp"

namespace georep {

namespace {

struct Lattice {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    // region index -> (row, col)
    std::vector<std::pair<std::size_t, std::size_t>> cells;
};

// Recover the row/column structure from region bounds. Requires a complete
// row x column lattice; anything else is a kind/scheme mismatch.
Lattice recover_lattice(const std::vector<Region>& regions) {
    std::map<double, std::size_t> lat_his;  // descending rows: larger lat first
    std::map<double, std::size_t> lon_los;
    for (const auto& r : regions) {
        lat_his.emplace(r.lat_hi, 0);
        lon_los.emplace(r.lon_lo, 0);
    }
    std::size_t idx = lat_his.size();
    for (auto& [lat, i] : lat_his) i = --idx;  // north first
    idx = 0;
    for (auto& [lon, i] : lon_los) i = idx++;  // west first

    Lattice lat;
    lat.n_rows = lat_his.size();
    lat.n_cols = lon_los.size();
    if (lat.n_rows * lat.n_cols != regions.size())
        throw DomainError("regions do not form a complete lattice");
    lat.cells.reserve(regions.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& r : regions) {
        const auto cell = std::make_pair(lat_his.at(r.lat_hi), lon_los.at(r.lon_lo));
        if (!seen.insert(cell).second)
            throw DomainError("duplicate lattice cell in region list");
        lat.cells.push_back(cell);
    }
    return lat;
}

void add_edge(std::set<std::pair<std::uint32_t, std::uint32_t>>& edges,
              std::size_t a, std::size_t b) {
    if (a == b) return;
    auto i = static_cast<std::uint32_t>(std::min(a, b));
    auto j = static_cast<std::uint32_t>(std::max(a, b));
    edges.emplace(i, j);
}

// Raw Moran statistic over a dense value vector and explicit edge list.
double moran_stat(const std::vector<double>& vals,
                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                  double s0) {
    const std::size_t n = vals.size();
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(n);

    double cross = 0.0;
    for (const auto& [i, j] : edges)
        cross += (vals[i] - mean) * (vals[j] - mean);
    cross *= 2.0;  // symmetric pairs

    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    return (static_cast<double>(n) / s0) * (cross / ss);
}

struct Reduced {
    std::vector<double> vals;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

Reduced drop_nulls(const std::vector<std::optional<double>>& values,
                   const WeightsMatrix& weights) {
    if (values.size() != weights.n)
        throw LengthMismatchError("value count " + std::to_string(values.size()) +
                                  " does not match weights size " +
                                  std::to_string(weights.n));
    std::vector<std::uint32_t> remap(values.size(), UINT32_MAX);
    Reduced red;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) {
            remap[i] = static_cast<std::uint32_t>(red.vals.size());
            red.vals.push_back(*values[i]);
        }
    }
    if (red.vals.size() < 2)
        throw InsufficientDataError("Moran's I needs >= 2 non-null regions");
    for (const auto& [i, j] : weights.edges)
        if (remap[i] != UINT32_MAX && remap[j] != UINT32_MAX)
            red.edges.emplace_back(remap[i], remap[j]);
    if (red.edges.empty())
        throw InsufficientDataError("no weights remain after dropping null regions");

    bool all_equal = true;
    for (double v : red.vals)
        if (v != red.vals[0]) all_equal = false;
    double mean = 0.0;
    for (double v : red.vals) mean += v;
    mean /= static_cast<double>(red.vals.size());
    double ss = 0.0;
    for (double v : red.vals) ss += (v - mean) * (v - mean);
    if (all_equal || ss <= 0.0)
        throw ZeroVarianceError("all region values are identical");
    return red;
}

}  // namespace

WeightsKind parse_weights_kind(const std::string& text) {
    if (text == "grid_rook_wrap") return WeightsKind::grid_rook_wrap;
    if (text == "grid_queen_wrap") return WeightsKind::grid_queen_wrap;
    if (text == "lat_path") return WeightsKind::lat_path;
    if (text == "lon_cycle") return WeightsKind::lon_cycle;
    throw DomainError("unknown weights kind \"" + text + "\"");
}

std::string weights_kind_name(WeightsKind kind) {
    switch (kind) {
        case WeightsKind::grid_rook_wrap: return "grid_rook_wrap";
        case WeightsKind::grid_queen_wrap: return "grid_queen_wrap";
        case WeightsKind::lat_path: return "lat_path";
        case WeightsKind::lon_cycle: return "lon_cycle";
    }
    return {};
}

WeightsMatrix build_weights(const std::vector<Region>& regions, WeightsKind kind) {
    if (regions.empty()) throw DomainError("empty region list");
    const Lattice lat = recover_lattice(regions);

    // region index at (row, col)
    std::vector<std::size_t> at(lat.n_rows * lat.n_cols);
    for (std::size_t i = 0; i < lat.cells.size(); ++i)
        at[lat.cells[i].first * lat.n_cols + lat.cells[i].second] = i;
    const auto cell = [&](std::size_t r, std::size_t c) {
        return at[r * lat.n_cols + c];
    };

    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    switch (kind) {
        case WeightsKind::lat_path: {
            if (lat.n_cols != 1)
                throw DomainError("lat_path weights need latitude strips");
            for (std::size_t r = 0; r + 1 < lat.n_rows; ++r)
                add_edge(edges, cell(r, 0), cell(r + 1, 0));
            break;
        }
        case WeightsKind::lon_cycle: {
            if (lat.n_rows != 1)
                throw DomainError("lon_cycle weights need longitude strips");
            for (std::size_t c = 0; c + 1 < lat.n_cols; ++c)
                add_edge(edges, cell(0, c), cell(0, c + 1));
            if (lat.n_cols > 2) add_edge(edges, cell(0, lat.n_cols - 1), cell(0, 0));
            break;
        }
        case WeightsKind::grid_rook_wrap:
        case WeightsKind::grid_queen_wrap: {
            if (lat.n_rows < 2 || lat.n_cols < 2)
                throw DomainError("grid weights need a 2-D grid of regions");
            for (std::size_t r = 0; r < lat.n_rows; ++r) {
                for (std::size_t c = 0; c < lat.n_cols; ++c) {
                    const std::size_t east = (c + 1) % lat.n_cols;
                    add_edge(edges, cell(r, c), cell(r, east));
                    if (r + 1 < lat.n_rows) {
                        add_edge(edges, cell(r, c), cell(r + 1, c));
                        if (kind == WeightsKind::grid_queen_wrap) {
                            add_edge(edges, cell(r, c), cell(r + 1, east));
                            const std::size_t west = (c + lat.n_cols - 1) % lat.n_cols;
                            add_edge(edges, cell(r, c), cell(r + 1, west));
                        }
                    }
                }
            }
            break;
        }
    }

    WeightsMatrix w;
    w.n = regions.size();
    w.kind = kind;
    w.edges.assign(edges.begin(), edges.end());
    return w;
}

double morans_i(const std::vector<std::optional<double>>& values,
                const WeightsMatrix& weights) {
    const Reduced red = drop_nulls(values, weights);
    return moran_stat(red.vals, red.edges, 2.0 * static_cast<double>(red.edges.size()));
}

MoranResult moran_permutation_test(const std::vector<std::optional<double>>& values,
                                   const WeightsMatrix& weights, int n_perm,
                                   const RngStream& rng, int threads) {
    if (n_perm < 1) throw DomainError("n_perm must be >= 1");
    const Reduced red = drop_nulls(values, weights);
    const double s0 = 2.0 * static_cast<double>(red.edges.size());
    const double i_obs = moran_stat(red.vals, red.edges, s0);

    std::vector<double> i_perm(static_cast<std::size_t>(n_perm));
    parallel_for(i_perm.size(), threads, [&](std::size_t k) {
        RngStream stream = rng.derive("perm:" + std::to_string(k));
        std::vector<double> shuffled = red.vals;
        stream.shuffle(shuffled);
        i_perm[k] = moran_stat(shuffled, red.edges, s0);
    });

    long ge = 0;
    double mean = 0.0;
    for (double v : i_perm) {
        if (v >= i_obs) ++ge;
        mean += v;
    }
    mean /= static_cast<double>(n_perm);
    double ss = 0.0;
    for (double v : i_perm) ss += (v - mean) * (v - mean);
    if (n_perm < 2 || ss <= 0.0)
        throw DegenerateError("permutation distribution has zero spread");
    const double sd = std::sqrt(ss / static_cast<double>(n_perm - 1));

    MoranResult res;
    res.i_obs = i_obs;
    res.n_used = red.vals.size();
    res.e_null = -1.0 / static_cast<double>(red.vals.size() - 1);
    res.n_perm = n_perm;
    res.pseudo_p = (1.0 + static_cast<double>(ge)) / (static_cast<double>(n_perm) + 1.0);
    res.z_sim = (i_obs - mean) / sd;
    return res;
}

}  // namespace georep

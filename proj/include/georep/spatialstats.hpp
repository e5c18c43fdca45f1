#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "georep/partition.hpp"
#include "georep/rng.hpp"

namespace georep {

enum class WeightsKind { grid_rook_wrap, grid_queen_wrap, lat_path, lon_cycle };

WeightsKind parse_weights_kind(const std::string& text);
std::string weights_kind_name(WeightsKind kind);

// Binary symmetric contiguity weights over a region list. Grid kinds wrap
// across the 0/360 meridian but never across the poles; lat_path is an open
// chain north to south; lon_cycle closes west to east.
struct WeightsMatrix {
    std::size_t n = 0;
    WeightsKind kind = WeightsKind::grid_rook_wrap;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, sorted

    double s0() const { return 2.0 * static_cast<double>(edges.size()); }
};

// Throws DomainError when the kind does not fit the region geometry (e.g.
// lon_cycle over a 2-D grid).
WeightsMatrix build_weights(const std::vector<Region>& regions, WeightsKind kind);

// Global Moran's I: (n/S0) * sum_ij w_ij z_i z_j / sum_i z_i^2. Null entries
// are dropped and the weights submatrix over the remaining regions is used;
// that may disconnect the graph, which is allowed.
double morans_i(const std::vector<std::optional<double>>& values,
                const WeightsMatrix& weights);

struct MoranResult {
    double i_obs = 0.0;
    double e_null = 0.0;  // -1/(n_used - 1)
    double pseudo_p = 0.0;
    double z_sim = 0.0;
    int n_perm = 0;
    std::size_t n_used = 0;
};

// One-sided (clustering) permutation test. Values are shuffled uniformly
// across the non-null regions; permutation k draws from substream "perm:k",
// so the result does not depend on evaluation order or thread count.
// pseudo_p = (1 + #{I_perm >= I_obs}) / (n_perm + 1).
MoranResult moran_permutation_test(const std::vector<std::optional<double>>& values,
                                   const WeightsMatrix& weights, int n_perm,
                                   const RngStream& rng, int threads = 1);

}  // namespace georep

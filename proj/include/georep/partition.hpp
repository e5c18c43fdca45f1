#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "georep/geomodel.hpp"

namespace georep {

enum class SchemeKind { grid, lat_strips, lon_strips };

// Partition of the sphere into equal-angle cells or strips. Strip/cell sizes
// must divide 180 (latitude) and 360 (longitude) exactly.
struct PartitionScheme {
    SchemeKind kind = SchemeKind::grid;
    double dlat = 10.0;  // used by grid and lat_strips
    double dlon = 10.0;  // used by grid and lon_strips

    static PartitionScheme grid(double dlat, double dlon);
    static PartitionScheme lat_strips(double d);
    static PartitionScheme lon_strips(double d);

    // "grid10", "lat10", "lon20", or parametric "grid:DLAT:DLON" / "lat:D" /
    // "lon:D". Throws DomainError on anything else.
    static PartitionScheme parse(const std::string& text);

    std::size_t rows() const;  // 1 for lon_strips
    std::size_t cols() const;  // 1 for lat_strips
    std::size_t region_count() const { return rows() * cols(); }

    std::string name() const;
    nlohmann::json to_json() const;
    static PartitionScheme from_json(const nlohmann::json& j);
};

struct Region {
    std::string region_id;  // "grid:r08c11", "lat:06", "lon:05"
    double lat_lo = 0.0;
    double lat_hi = 0.0;
    double lon_lo = 0.0;
    double lon_hi = 0.0;
};

// Regions in canonical order: latitude descending (north first), then
// longitude ascending from 0. The ordering is part of the file contract.
std::vector<Region> make_partition(const PartitionScheme& scheme);

// Index into make_partition order. Intervals are half-open [lo, hi) on both
// axes; latitude +90 belongs to the northernmost row. Total over valid points.
std::size_t assign_index(const GeoPoint& p, const PartitionScheme& scheme);

std::string assign(const SceneRecord& scene, const PartitionScheme& scheme);

struct RegionCensus {
    std::string region_id;
    long n_scenes = 0;
    long n_gt = 0;
};

// Per-region scene and ground-truth counts, in canonical region order.
// A ground-truth box counts toward its scene's region.
std::vector<RegionCensus> region_census(const SceneSet& scenes,
                                        const std::vector<GroundTruthBox>& gts,
                                        const PartitionScheme& scheme);

// {"format_version":1,"scheme":{...},"regions":[...]}
nlohmann::json regions_to_json(const PartitionScheme& scheme,
                               const std::vector<Region>& regions);
void save_regions(const PartitionScheme& scheme, const std::vector<Region>& regions,
                  const std::filesystem::path& path);

std::string census_csv(const std::vector<Region>& regions,
                       const std::vector<RegionCensus>& census);

}  // namespace georep

#include "georep/partition.hpp"

#include <cmath>
#include <cstdio>

#include "georep/jsonio.hpp"

namespace georep {

namespace {

// Number of strips d-degree cells cut from an extent, or 0 if d does not
// divide it (within fp tolerance).
std::size_t divide_extent(double extent, double d) {
    if (!(d > 0.0) || d > extent) return 0;
    const double n = extent / d;
    const double r = std::round(n);
    if (r < 1.0 || std::fabs(n - r) > 1e-9 * r) return 0;
    return static_cast<std::size_t>(r);
}

void validate(const PartitionScheme& s) {
    switch (s.kind) {
        case SchemeKind::grid:
            if (divide_extent(180.0, s.dlat) == 0)
                throw DomainError("grid dlat " + fmt_double(s.dlat) +
                                  " does not divide 180");
            if (divide_extent(360.0, s.dlon) == 0)
                throw DomainError("grid dlon " + fmt_double(s.dlon) +
                                  " does not divide 360");
            break;
        case SchemeKind::lat_strips:
            if (divide_extent(180.0, s.dlat) == 0)
                throw DomainError("strip size " + fmt_double(s.dlat) +
                                  " does not divide 180");
            break;
        case SchemeKind::lon_strips:
            if (divide_extent(360.0, s.dlon) == 0)
                throw DomainError("strip size " + fmt_double(s.dlon) +
                                  " does not divide 360");
            break;
    }
}

std::string pad_index(std::size_t idx, std::size_t count) {
    int width = 2;
    for (std::size_t v = (count > 0 ? count - 1 : 0); v >= 100; v /= 10) ++width;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, idx);
    return buf;
}

std::string grid_id(std::size_t row, std::size_t col, std::size_t n_rows,
                    std::size_t n_cols) {
    return "grid:r" + pad_index(row, n_rows) + "c" + pad_index(col, n_cols);
}

}  // namespace

PartitionScheme PartitionScheme::grid(double dlat, double dlon) {
    PartitionScheme s{SchemeKind::grid, dlat, dlon};
    validate(s);
    return s;
}

PartitionScheme PartitionScheme::lat_strips(double d) {
    PartitionScheme s{SchemeKind::lat_strips, d, 360.0};
    validate(s);
    return s;
}

PartitionScheme PartitionScheme::lon_strips(double d) {
    PartitionScheme s{SchemeKind::lon_strips, 180.0, d};
    validate(s);
    return s;
}

PartitionScheme PartitionScheme::parse(const std::string& text) {
    if (text == "grid10") return grid(10.0, 10.0);
    if (text == "lat10") return lat_strips(10.0);
    if (text == "lon20") return lon_strips(20.0);
    double a = 0.0, b = 0.0;
    if (std::sscanf(text.c_str(), "grid:%lf:%lf", &a, &b) == 2) return grid(a, b);
    if (std::sscanf(text.c_str(), "lat:%lf", &a) == 1) return lat_strips(a);
    if (std::sscanf(text.c_str(), "lon:%lf", &a) == 1) return lon_strips(a);
    throw DomainError("unknown partition scheme \"" + text +
                      "\" (expected grid10, lat10, lon20, grid:DLAT:DLON, "
                      "lat:D, or lon:D)");
}

std::size_t PartitionScheme::rows() const {
    if (kind == SchemeKind::lon_strips) return 1;
    return divide_extent(180.0, dlat);
}

std::size_t PartitionScheme::cols() const {
    if (kind == SchemeKind::lat_strips) return 1;
    return divide_extent(360.0, dlon);
}

std::string PartitionScheme::name() const {
    switch (kind) {
        case SchemeKind::grid:
            return "grid(" + fmt_double(dlat) + "," + fmt_double(dlon) + ")";
        case SchemeKind::lat_strips:
            return "lat_strips(" + fmt_double(dlat) + ")";
        case SchemeKind::lon_strips:
            return "lon_strips(" + fmt_double(dlon) + ")";
    }
    return {};
}

nlohmann::json PartitionScheme::to_json() const {
    switch (kind) {
        case SchemeKind::grid:
            return {{"kind", "grid"}, {"dlat", dlat}, {"dlon", dlon}};
        case SchemeKind::lat_strips:
            return {{"kind", "lat_strips"}, {"d", dlat}};
        case SchemeKind::lon_strips:
            return {{"kind", "lon_strips"}, {"d", dlon}};
    }
    return {};
}

PartitionScheme PartitionScheme::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "grid")
        return grid(j.at("dlat").get<double>(), j.at("dlon").get<double>());
    if (kind == "lat_strips") return lat_strips(j.at("d").get<double>());
    if (kind == "lon_strips") return lon_strips(j.at("d").get<double>());
    throw DomainError("unknown scheme kind \"" + kind + "\"");
}

std::vector<Region> make_partition(const PartitionScheme& scheme) {
    validate(scheme);
    const std::size_t n_rows = scheme.rows();
    const std::size_t n_cols = scheme.cols();
    const double dlat = 180.0 / static_cast<double>(n_rows);
    const double dlon = 360.0 / static_cast<double>(n_cols);

    std::vector<Region> regions;
    regions.reserve(n_rows * n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const double lat_hi = 90.0 - static_cast<double>(r) * dlat;
        const double lat_lo = lat_hi - dlat;
        for (std::size_t c = 0; c < n_cols; ++c) {
            const double lon_lo = static_cast<double>(c) * dlon;
            Region reg;
            switch (scheme.kind) {
                case SchemeKind::grid:
                    reg.region_id = grid_id(r, c, n_rows, n_cols);
                    break;
                case SchemeKind::lat_strips:
                    reg.region_id = "lat:" + pad_index(r, n_rows);
                    break;
                case SchemeKind::lon_strips:
                    reg.region_id = "lon:" + pad_index(c, n_cols);
                    break;
            }
            reg.lat_lo = lat_lo;
            reg.lat_hi = lat_hi;
            reg.lon_lo = lon_lo;
            reg.lon_hi = lon_lo + dlon;
            regions.push_back(std::move(reg));
        }
    }
    return regions;
}

std::size_t assign_index(const GeoPoint& p, const PartitionScheme& scheme) {
    validate(scheme);
    const std::size_t n_rows = scheme.rows();
    const std::size_t n_cols = scheme.cols();
    const double dlat = 180.0 / static_cast<double>(n_rows);
    const double dlon = 360.0 / static_cast<double>(n_cols);

    // Count strips from the south pole so intervals are [lo, hi); the north
    // pole closes into the topmost row.
    std::size_t s = static_cast<std::size_t>(
        std::max(0.0, std::floor((p.lat_deg + 90.0) / dlat)));
    if (s >= n_rows) s = n_rows - 1;
    const std::size_t row = n_rows - 1 - s;

    const double lon = normalize_lon(p.lon_deg);
    std::size_t col = static_cast<std::size_t>(std::floor(lon / dlon));
    if (col >= n_cols) col = n_cols - 1;

    return row * n_cols + col;
}

std::string assign(const SceneRecord& scene, const PartitionScheme& scheme) {
    const std::size_t idx = assign_index(scene.center, scheme);
    const std::size_t n_cols = scheme.cols();
    const std::size_t row = idx / n_cols;
    const std::size_t col = idx % n_cols;
    switch (scheme.kind) {
        case SchemeKind::grid:
            return grid_id(row, col, scheme.rows(), n_cols);
        case SchemeKind::lat_strips:
            return "lat:" + pad_index(row, scheme.rows());
        case SchemeKind::lon_strips:
            return "lon:" + pad_index(col, n_cols);
    }
    return {};
}

std::vector<RegionCensus> region_census(const SceneSet& scenes,
                                        const std::vector<GroundTruthBox>& gts,
                                        const PartitionScheme& scheme) {
    const auto regions = make_partition(scheme);
    std::vector<RegionCensus> census(regions.size());
    for (std::size_t i = 0; i < regions.size(); ++i)
        census[i].region_id = regions[i].region_id;

    std::vector<std::size_t> scene_region(scenes.size());
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        scene_region[i] = assign_index(scenes.scenes()[i].center, scheme);
        ++census[scene_region[i]].n_scenes;
    }
    for (const auto& gt : gts)
        ++census[scene_region[scenes.index_of(gt.scene_id)]].n_gt;
    return census;
}

nlohmann::json regions_to_json(const PartitionScheme& scheme,
                               const std::vector<Region>& regions) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : regions) {
        arr.push_back({{"region_id", r.region_id},
                       {"lat_lo", r.lat_lo},
                       {"lat_hi", r.lat_hi},
                       {"lon_lo", r.lon_lo},
                       {"lon_hi", r.lon_hi}});
    }
    return {{"format_version", 1},
            {"scheme", scheme.to_json()},
            {"regions", std::move(arr)}};
}

void save_regions(const PartitionScheme& scheme, const std::vector<Region>& regions,
                  const std::filesystem::path& path) {
    write_json_file(path, regions_to_json(scheme, regions));
}

std::string census_csv(const std::vector<Region>& regions,
                       const std::vector<RegionCensus>& census) {
    std::string out = "# format_version=1\n";
    out += "region_id,lat_lo,lat_hi,lon_lo,lon_hi,n_scenes,n_gt\n";
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto& r = regions[i];
        const auto& c = census[i];
        out += r.region_id;
        out += "," + fmt_double(r.lat_lo) + "," + fmt_double(r.lat_hi);
        out += "," + fmt_double(r.lon_lo) + "," + fmt_double(r.lon_hi);
        out += "," + std::to_string(c.n_scenes) + "," + std::to_string(c.n_gt);
        out += "\n";
    }
    return out;
}

}  // namespace georep

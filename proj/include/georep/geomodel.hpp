#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "georep/errors.hpp"

namespace georep {

inline constexpr double kMarsRadiusKm = 3389.5;
inline constexpr double kDiameterMinKm = 0.2;
inline constexpr double kDiameterMaxKm = 25.5;

// Longitude normalized into [0, 360).
double normalize_lon(double lon_deg);

struct GeoPoint {
    double lon_deg = 0.0;  // always stored in [0, 360)
    double lat_deg = 0.0;  // [-90, +90]

    GeoPoint() = default;
    // Normalizes longitude; throws ValidationError if latitude is out of range.
    GeoPoint(double lon, double lat);
};

struct SceneRecord {
    std::string scene_id;
    GeoPoint center;
    int width_px = 256;
    int height_px = 256;
    double gsd_m = 100.0;
};

struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;  // > 0
    double h = 0.0;  // > 0

    double area() const { return w * h; }
};

// Clip to [0, width] x [0, height]; empty result means fully outside.
std::optional<BBox> clip_bbox(const BBox& b, double width, double height);

struct GroundTruthBox {
    std::string scene_id;
    BBox bbox;
    std::optional<double> diameter_km;
};

struct Detection {
    std::string scene_id;
    BBox bbox;
    double score = 0.0;  // [0, 1]
};

// Ordered, id-indexed scene collection. Immutable after construction.
class SceneSet {
public:
    SceneSet() = default;
    explicit SceneSet(std::vector<SceneRecord> scenes);  // rejects duplicate ids

    const std::vector<SceneRecord>& scenes() const noexcept { return scenes_; }
    std::size_t size() const noexcept { return scenes_.size(); }
    bool contains(std::string_view id) const;
    const SceneRecord* find(std::string_view id) const;
    // Throws UnknownSceneError.
    std::size_t index_of(std::string_view id) const;

private:
    std::vector<SceneRecord> scenes_;
    std::map<std::string, std::size_t, std::less<>> by_id_;
};

// --- file I/O -------------------------------------------------------------
//
// Manifest:    {"format_version":1,"scenes":[{"scene_id","lon_deg","lat_deg",
//               "width_px","height_px","gsd_m"}...]}
// Annotations: {"format_version":1,"boxes":[{"scene_id","bbox":[x,y,w,h],
//               "diameter_km"?}...]}
// Detections:  {"format_version":1,"detections":[{"scene_id","bbox":[x,y,w,h],
//               "score"}...]}

SceneSet load_manifest(const std::filesystem::path& path);
nlohmann::json manifest_to_json(const SceneSet& scenes);
void save_manifest(const SceneSet& scenes, const std::filesystem::path& path);

// Boxes are clipped to their scene; fully-outside boxes and diameters outside
// [0.2, 25.5] km are rejected with the offending record named.
std::vector<GroundTruthBox> load_annotations(const std::filesystem::path& path,
                                             const SceneSet& scenes);
nlohmann::json annotations_to_json(const std::vector<GroundTruthBox>& boxes);
void save_annotations(const std::vector<GroundTruthBox>& boxes,
                      const std::filesystem::path& path);

std::vector<Detection> load_detections(const std::filesystem::path& path,
                                       const SceneSet& scenes);
nlohmann::json detections_to_json(const std::vector<Detection>& dets);
void save_detections(const std::vector<Detection>& dets,
                     const std::filesystem::path& path);

// Area of the spherical rectangle [lat_lo,lat_hi] x [lon_lo,lon_hi] in km^2:
// R^2 * (sin(lat_hi) - sin(lat_lo)) * dlon_rad. A full partition of the
// sphere sums to 4*pi*R^2.
double spherical_cell_area(double lat_lo_deg, double lat_hi_deg,
                           double lon_lo_deg, double lon_hi_deg,
                           double radius_km = kMarsRadiusKm);

}  // namespace georep

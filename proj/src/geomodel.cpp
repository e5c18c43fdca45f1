#include "georep/geomodel.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "georep/jsonio.hpp"

namespace georep {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double require_number(const nlohmann::json& j, const char* key,
                      const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number())
        throw ParseError(where + ": missing or non-numeric \"" + key + "\"");
    return it->get<double>();
}

std::string require_string(const nlohmann::json& j, const char* key,
                           const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw ParseError(where + ": missing or non-string \"" + key + "\"");
    return it->get<std::string>();
}

void check_format_version(const nlohmann::json& j, const std::string& where) {
    auto it = j.find("format_version");
    if (it == j.end() || !it->is_number_integer() || it->get<int>() != 1)
        throw ParseError(where + ": format_version must be 1");
}

BBox parse_bbox(const nlohmann::json& j, const std::string& where) {
    auto it = j.find("bbox");
    if (it == j.end() || !it->is_array() || it->size() != 4)
        throw ParseError(where + ": \"bbox\" must be [x,y,w,h]");
    for (const auto& v : *it)
        if (!v.is_number()) throw ParseError(where + ": non-numeric bbox entry");
    BBox b{(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>(),
           (*it)[3].get<double>()};
    if (!(b.w > 0.0) || !(b.h > 0.0))
        throw ValidationError(where + ": bbox width/height must be positive");
    return b;
}

nlohmann::json bbox_to_json(const BBox& b) {
    return nlohmann::json::array({b.x, b.y, b.w, b.h});
}

// Clip against the scene, rejecting boxes with no overlap at all.
BBox clip_or_reject(const BBox& b, const SceneRecord& scene,
                    const std::string& where) {
    auto clipped = clip_bbox(b, scene.width_px, scene.height_px);
    if (!clipped)
        throw ValidationError(where + ": box lies fully outside scene \"" +
                              scene.scene_id + "\"");
    return *clipped;
}

}  // namespace

double normalize_lon(double lon_deg) {
    double x = std::fmod(lon_deg, 360.0);
    if (x < 0.0) x += 360.0;
    if (x >= 360.0) x = 0.0;  // fmod rounding can land exactly on 360
    if (x == 0.0) x = 0.0;    // avoid -0
    return x;
}

GeoPoint::GeoPoint(double lon, double lat) {
    if (!(lat >= -90.0 && lat <= 90.0))
        throw ValidationError("latitude " + fmt_double(lat) +
                              " outside [-90, 90]");
    lon_deg = normalize_lon(lon);
    lat_deg = lat;
}

std::optional<BBox> clip_bbox(const BBox& b, double width, double height) {
    const double x0 = std::max(b.x, 0.0);
    const double y0 = std::max(b.y, 0.0);
    const double x1 = std::min(b.x + b.w, width);
    const double y1 = std::min(b.y + b.h, height);
    if (!(x1 > x0) || !(y1 > y0)) return std::nullopt;
    return BBox{x0, y0, x1 - x0, y1 - y0};
}

SceneSet::SceneSet(std::vector<SceneRecord> scenes) : scenes_(std::move(scenes)) {
    for (std::size_t i = 0; i < scenes_.size(); ++i) {
        auto [it, inserted] = by_id_.emplace(scenes_[i].scene_id, i);
        if (!inserted)
            throw ValidationError("duplicate scene_id \"" + scenes_[i].scene_id +
                                  "\"");
    }
}

bool SceneSet::contains(std::string_view id) const {
    return by_id_.find(id) != by_id_.end();
}

const SceneRecord* SceneSet::find(std::string_view id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &scenes_[it->second];
}

std::size_t SceneSet::index_of(std::string_view id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        throw UnknownSceneError("unknown scene_id \"" + std::string(id) + "\"");
    return it->second;
}

SceneSet load_manifest(const std::filesystem::path& path) {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_object()) throw ParseError(path.string() + ": not a JSON object");
    check_format_version(j, path.string());
    auto it = j.find("scenes");
    if (it == j.end() || !it->is_array())
        throw ParseError(path.string() + ": missing \"scenes\" array");

    std::vector<SceneRecord> scenes;
    scenes.reserve(it->size());
    std::size_t idx = 0;
    for (const auto& s : *it) {
        const std::string where = path.string() + ": scenes[" + std::to_string(idx) + "]";
        if (!s.is_object()) throw ParseError(where + ": not an object");
        SceneRecord rec;
        rec.scene_id = require_string(s, "scene_id", where);
        const double lon = require_number(s, "lon_deg", where);
        const double lat = require_number(s, "lat_deg", where);
        try {
            rec.center = GeoPoint(lon, lat);
        } catch (const ValidationError& e) {
            throw ValidationError(where + " (\"" + rec.scene_id + "\"): " + e.what());
        }
        if (auto w = s.find("width_px"); w != s.end())
            rec.width_px = w->get<int>();
        if (auto h = s.find("height_px"); h != s.end())
            rec.height_px = h->get<int>();
        if (auto g = s.find("gsd_m"); g != s.end()) rec.gsd_m = g->get<double>();
        if (rec.width_px <= 0 || rec.height_px <= 0 || !(rec.gsd_m > 0.0))
            throw ValidationError(where + " (\"" + rec.scene_id +
                                  "\"): non-positive scene geometry");
        scenes.push_back(std::move(rec));
        ++idx;
    }
    try {
        return SceneSet(std::move(scenes));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

nlohmann::json manifest_to_json(const SceneSet& scenes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : scenes.scenes()) {
        arr.push_back({{"scene_id", s.scene_id},
                       {"lon_deg", s.center.lon_deg},
                       {"lat_deg", s.center.lat_deg},
                       {"width_px", s.width_px},
                       {"height_px", s.height_px},
                       {"gsd_m", s.gsd_m}});
    }
    return {{"format_version", 1}, {"scenes", std::move(arr)}};
}

void save_manifest(const SceneSet& scenes, const std::filesystem::path& path) {
    write_json_file(path, manifest_to_json(scenes));
}

std::vector<GroundTruthBox> load_annotations(const std::filesystem::path& path,
                                             const SceneSet& scenes) {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_object()) throw ParseError(path.string() + ": not a JSON object");
    check_format_version(j, path.string());
    auto it = j.find("boxes");
    if (it == j.end() || !it->is_array())
        throw ParseError(path.string() + ": missing \"boxes\" array");

    std::vector<GroundTruthBox> out;
    out.reserve(it->size());
    std::size_t idx = 0;
    for (const auto& b : *it) {
        const std::string where = path.string() + ": boxes[" + std::to_string(idx) + "]";
        if (!b.is_object()) throw ParseError(where + ": not an object");
        GroundTruthBox gt;
        gt.scene_id = require_string(b, "scene_id", where);
        const SceneRecord* scene = scenes.find(gt.scene_id);
        if (!scene)
            throw UnknownSceneError(where + ": unknown scene_id \"" + gt.scene_id +
                                    "\"");
        gt.bbox = clip_or_reject(parse_bbox(b, where), *scene, where);
        if (auto d = b.find("diameter_km"); d != b.end()) {
            if (!d->is_number()) throw ParseError(where + ": non-numeric diameter_km");
            const double km = d->get<double>();
            if (!(km >= kDiameterMinKm && km <= kDiameterMaxKm))
                throw ValidationError(where + ": diameter_km " + fmt_double(km) +
                                      " outside [" + fmt_double(kDiameterMinKm) +
                                      ", " + fmt_double(kDiameterMaxKm) + "]");
            gt.diameter_km = km;
        }
        out.push_back(std::move(gt));
        ++idx;
    }
    return out;
}

nlohmann::json annotations_to_json(const std::vector<GroundTruthBox>& boxes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : boxes) {
        nlohmann::json e = {{"scene_id", b.scene_id}, {"bbox", bbox_to_json(b.bbox)}};
        if (b.diameter_km) e["diameter_km"] = *b.diameter_km;
        arr.push_back(std::move(e));
    }
    return {{"format_version", 1}, {"boxes", std::move(arr)}};
}

void save_annotations(const std::vector<GroundTruthBox>& boxes,
                      const std::filesystem::path& path) {
    write_json_file(path, annotations_to_json(boxes));
}

std::vector<Detection> load_detections(const std::filesystem::path& path,
                                       const SceneSet& scenes) {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_object()) throw ParseError(path.string() + ": not a JSON object");
    check_format_version(j, path.string());
    auto it = j.find("detections");
    if (it == j.end() || !it->is_array())
        throw ParseError(path.string() + ": missing \"detections\" array");

    std::vector<Detection> out;
    out.reserve(it->size());
    std::size_t idx = 0;
    for (const auto& d : *it) {
        const std::string where =
            path.string() + ": detections[" + std::to_string(idx) + "]";
        if (!d.is_object()) throw ParseError(where + ": not an object");
        Detection det;
        det.scene_id = require_string(d, "scene_id", where);
        const SceneRecord* scene = scenes.find(det.scene_id);
        if (!scene)
            throw UnknownSceneError(where + ": unknown scene_id \"" + det.scene_id +
                                    "\"");
        det.bbox = clip_or_reject(parse_bbox(d, where), *scene, where);
        det.score = require_number(d, "score", where);
        if (!(det.score >= 0.0 && det.score <= 1.0))
            throw ValidationError(where + ": score " + fmt_double(det.score) +
                                  " outside [0, 1]");
        out.push_back(std::move(det));
        ++idx;
    }
    return out;
}

nlohmann::json detections_to_json(const std::vector<Detection>& dets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : dets) {
        arr.push_back({{"scene_id", d.scene_id},
                       {"bbox", bbox_to_json(d.bbox)},
                       {"score", d.score}});
    }
    return {{"format_version", 1}, {"detections", std::move(arr)}};
}

void save_detections(const std::vector<Detection>& dets,
                     const std::filesystem::path& path) {
    write_json_file(path, detections_to_json(dets));
}

double spherical_cell_area(double lat_lo_deg, double lat_hi_deg,
                           double lon_lo_deg, double lon_hi_deg,
                           double radius_km) {
    if (!(radius_km > 0.0)) throw DomainError("radius must be positive");
    if (!(lat_lo_deg >= -90.0 && lat_hi_deg <= 90.0 && lat_lo_deg < lat_hi_deg))
        throw DomainError("latitude bounds must satisfy -90 <= lo < hi <= 90");
    const double dlon = lon_hi_deg - lon_lo_deg;
    if (!(dlon > 0.0 && dlon <= 360.0))
        throw DomainError("longitude extent must lie in (0, 360]");
    const double band = std::sin(lat_hi_deg * kDegToRad) - std::sin(lat_lo_deg * kDegToRad);
    return radius_km * radius_km * band * dlon * kDegToRad;
}

}  // namespace georep

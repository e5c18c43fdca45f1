#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "georep/geomodel.hpp"
#include "georep/partition.hpp"

namespace georep {

// Intersection over union of two boxes; symmetric, 1 iff identical, 0 iff
// disjoint.
double iou(const BBox& a, const BBox& b);

struct MatchLabel {
    std::size_t det_index = 0;  // index into the input detection list
    double score = 0.0;
    bool is_tp = false;
    std::optional<std::size_t> gt_index;
};

// Greedy matching within one scene: detections in descending score order
// (score ties keep input order) each claim the unmatched ground truth with
// the highest IoU >= iou_thresh; IoU ties go to the lowest ground-truth
// index. Labels are returned in processing order.
std::vector<MatchLabel> match_detections(const std::vector<GroundTruthBox>& gts,
                                         const std::vector<Detection>& dets,
                                         double iou_thresh = 0.5);

// All-points interpolated average precision of a pooled label list. Labels
// are stably sorted by descending score, precision is replaced by its
// running maximum from the right, and integrated over recall. Ties broken
// by pooled input order, which makes the value bitwise deterministic for a
// given input order. Throws DomainError when n_gt is zero.
double average_precision(const std::vector<MatchLabel>& labels, std::size_t n_gt);

struct RegionScore {
    std::string region_id;
    std::optional<double> map50;  // null iff n_gt == 0
    long n_scenes = 0;
    long n_gt = 0;
    long n_det = 0;
};

// Per-region accuracy surface: detections and ground truths are matched per
// scene, pooled into one PR curve per region (single class, so mAP50 is AP at
// the IoU threshold). Regions with ground truth but no detections score 0.0;
// regions without ground truth are null. Results in canonical region order.
std::vector<RegionScore> replicability_map(const SceneSet& scenes,
                                           const std::vector<GroundTruthBox>& gts,
                                           const std::vector<Detection>& dets,
                                           const PartitionScheme& scheme,
                                           double iou_thresh = 0.5,
                                           int threads = 1);

// Whole-surface score: one pooled PR curve over every scene.
std::optional<double> global_map50(const SceneSet& scenes,
                                   const std::vector<GroundTruthBox>& gts,
                                   const std::vector<Detection>& dets,
                                   double iou_thresh = 0.5);

// CSV columns: region_id, lat_lo, lat_hi, lon_lo, lon_hi, map50 (empty for
// null), n_scenes, n_gt, n_det.
std::string region_scores_csv(const std::vector<Region>& regions,
                              const std::vector<RegionScore>& scores);

// GeoJSON FeatureCollection, one polygon per region; the map50 property is
// omitted for null cells.
nlohmann::json region_scores_geojson(const std::vector<Region>& regions,
                                     const std::vector<RegionScore>& scores);

// Per-scene match dump for audit.
nlohmann::json matches_to_json(const SceneSet& scenes,
                               const std::vector<GroundTruthBox>& gts,
                               const std::vector<Detection>& dets,
                               double iou_thresh = 0.5);

}  // namespace georep

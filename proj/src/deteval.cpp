#include "georep/deteval.hpp"

#include <algorithm>
#include <numeric>

#include "georep/jsonio.hpp"
#include "georep/parallel.hpp"

namespace georep {

double iou(const BBox& a, const BBox& b) {
    const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    const double inter = ix * iy;
    if (inter <= 0.0) return 0.0;
    return inter / (a.area() + b.area() - inter);
}

std::vector<MatchLabel> match_detections(const std::vector<GroundTruthBox>& gts,
                                         const std::vector<Detection>& dets,
                                         double iou_thresh) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dets[a].score > dets[b].score;
    });

    std::vector<bool> taken(gts.size(), false);
    std::vector<MatchLabel> labels;
    labels.reserve(dets.size());
    for (const std::size_t di : order) {
        double best_iou = 0.0;
        std::size_t best_gt = gts.size();
        for (std::size_t gi = 0; gi < gts.size(); ++gi) {
            if (taken[gi]) continue;
            const double v = iou(dets[di].bbox, gts[gi].bbox);
            if (v >= iou_thresh && v > best_iou) {
                best_iou = v;
                best_gt = gi;
            }
        }
        MatchLabel label;
        label.det_index = di;
        label.score = dets[di].score;
        if (best_gt < gts.size()) {
            taken[best_gt] = true;
            label.is_tp = true;
            label.gt_index = best_gt;
        }
        labels.push_back(label);
    }
    return labels;
}

double average_precision(const std::vector<MatchLabel>& labels, std::size_t n_gt) {
    if (n_gt == 0) throw DomainError("average precision undefined for n_gt = 0");
    if (labels.empty()) return 0.0;

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return labels[a].score > labels[b].score;
    });

    const std::size_t n = order.size();
    std::vector<double> recall(n), precision(n);
    std::size_t tp = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[order[k]].is_tp) ++tp;
        recall[k] = static_cast<double>(tp) / static_cast<double>(n_gt);
        precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    }

    // Precision envelope from the right, then a step integral over recall.
    double ap = 0.0;
    double max_prec = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        max_prec = std::max(max_prec, precision[k]);
        const double prev_recall = (k == 0) ? 0.0 : recall[k - 1];
        if (recall[k] != prev_recall) ap += (recall[k] - prev_recall) * max_prec;
    }
    return ap;
}

namespace {

struct SceneLabels {
    std::vector<MatchLabel> labels;
    long n_gt = 0;
    long n_det = 0;
};

// Group ground truths and detections by scene index, preserving input order
// within each scene, then match per scene.
std::vector<SceneLabels> match_all(const SceneSet& scenes,
                                   const std::vector<GroundTruthBox>& gts,
                                   const std::vector<Detection>& dets,
                                   double iou_thresh, int threads) {
    std::vector<std::vector<GroundTruthBox>> gts_by_scene(scenes.size());
    std::vector<std::vector<Detection>> dets_by_scene(scenes.size());
    for (const auto& gt : gts) gts_by_scene[scenes.index_of(gt.scene_id)].push_back(gt);
    for (const auto& d : dets) dets_by_scene[scenes.index_of(d.scene_id)].push_back(d);

    std::vector<SceneLabels> out(scenes.size());
    parallel_for(scenes.size(), threads, [&](std::size_t i) {
        out[i].labels = match_detections(gts_by_scene[i], dets_by_scene[i], iou_thresh);
        out[i].n_gt = static_cast<long>(gts_by_scene[i].size());
        out[i].n_det = static_cast<long>(dets_by_scene[i].size());
    });
    return out;
}

}  // namespace

std::vector<RegionScore> replicability_map(const SceneSet& scenes,
                                           const std::vector<GroundTruthBox>& gts,
                                           const std::vector<Detection>& dets,
                                           const PartitionScheme& scheme,
                                           double iou_thresh, int threads) {
    const auto regions = make_partition(scheme);
    const auto per_scene = match_all(scenes, gts, dets, iou_thresh, threads);

    // Scenes grouped per region in manifest order; that order fixes the
    // pooled tie-breaking and with it the exact AP value.
    std::vector<std::vector<std::size_t>> region_scenes(regions.size());
    for (std::size_t i = 0; i < scenes.size(); ++i)
        region_scenes[assign_index(scenes.scenes()[i].center, scheme)].push_back(i);

    std::vector<RegionScore> result(regions.size());
    parallel_for(regions.size(), threads, [&](std::size_t r) {
        RegionScore score;
        score.region_id = regions[r].region_id;
        std::vector<MatchLabel> pooled;
        for (const std::size_t si : region_scenes[r]) {
            score.n_scenes += 1;
            score.n_gt += per_scene[si].n_gt;
            score.n_det += per_scene[si].n_det;
            pooled.insert(pooled.end(), per_scene[si].labels.begin(),
                          per_scene[si].labels.end());
        }
        if (score.n_gt > 0)
            score.map50 = average_precision(pooled, static_cast<std::size_t>(score.n_gt));
        result[r] = std::move(score);
    });
    return result;
}

std::optional<double> global_map50(const SceneSet& scenes,
                                   const std::vector<GroundTruthBox>& gts,
                                   const std::vector<Detection>& dets,
                                   double iou_thresh) {
    const auto per_scene = match_all(scenes, gts, dets, iou_thresh, 1);
    std::vector<MatchLabel> pooled;
    long n_gt = 0;
    for (const auto& s : per_scene) {
        n_gt += s.n_gt;
        pooled.insert(pooled.end(), s.labels.begin(), s.labels.end());
    }
    if (n_gt == 0) return std::nullopt;
    return average_precision(pooled, static_cast<std::size_t>(n_gt));
}

std::string region_scores_csv(const std::vector<Region>& regions,
                              const std::vector<RegionScore>& scores) {
    std::string out = "# format_version=1\n";
    out += "region_id,lat_lo,lat_hi,lon_lo,lon_hi,map50,n_scenes,n_gt,n_det\n";
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto& r = regions[i];
        const auto& s = scores[i];
        out += r.region_id;
        out += "," + fmt_double(r.lat_lo) + "," + fmt_double(r.lat_hi);
        out += "," + fmt_double(r.lon_lo) + "," + fmt_double(r.lon_hi);
        out += ",";
        if (s.map50) out += fmt_double(*s.map50);
        out += "," + std::to_string(s.n_scenes) + "," + std::to_string(s.n_gt) +
               "," + std::to_string(s.n_det);
        out += "\n";
    }
    return out;
}

nlohmann::json region_scores_geojson(const std::vector<Region>& regions,
                                     const std::vector<RegionScore>& scores) {
    nlohmann::json features = nlohmann::json::array();
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto& r = regions[i];
        const auto& s = scores[i];
        nlohmann::json ring = nlohmann::json::array(
            {{r.lon_lo, r.lat_lo},
             {r.lon_hi, r.lat_lo},
             {r.lon_hi, r.lat_hi},
             {r.lon_lo, r.lat_hi},
             {r.lon_lo, r.lat_lo}});
        nlohmann::json props = {{"region_id", s.region_id},
                                {"n_scenes", s.n_scenes},
                                {"n_gt", s.n_gt},
                                {"n_det", s.n_det}};
        if (s.map50) props["map50"] = *s.map50;
        features.push_back(
            {{"type", "Feature"},
             {"geometry",
              {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({ring})}}},
             {"properties", std::move(props)}});
    }
    return {{"format_version", 1},
            {"type", "FeatureCollection"},
            {"features", std::move(features)}};
}

nlohmann::json matches_to_json(const SceneSet& scenes,
                               const std::vector<GroundTruthBox>& gts,
                               const std::vector<Detection>& dets,
                               double iou_thresh) {
    const auto per_scene = match_all(scenes, gts, dets, iou_thresh, 1);
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& m : per_scene[i].labels) {
            nlohmann::json e = {{"det_index", m.det_index},
                                {"score", m.score},
                                {"is_tp", m.is_tp}};
            if (m.gt_index) e["gt_index"] = *m.gt_index;
            labels.push_back(std::move(e));
        }
        arr.push_back({{"scene_id", scenes.scenes()[i].scene_id},
                       {"n_gt", per_scene[i].n_gt},
                       {"matches", std::move(labels)}});
    }
    return {{"format_version", 1}, {"scenes", std::move(arr)}};
}

}  // namespace georep

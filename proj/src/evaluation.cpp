#include "lanepre/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lanepre::tusimple {

using nlohmann::json;

void LaneRecord::validate() const {
    if (raw_file.empty())
        throw std::invalid_argument("lane record: raw_file is required");
    if (h_samples.empty())
        throw std::invalid_argument("lane record '" + raw_file + "': h_samples is empty");
    if (lanes.size() > static_cast<size_t>(kMaxLanes))
        throw std::invalid_argument("lane record '" + raw_file + "': more than " +
                                    std::to_string(kMaxLanes) + " lanes");
    for (size_t i = 0; i < lanes.size(); ++i) {
        if (lanes[i].size() != h_samples.size())
            throw std::invalid_argument("lane record '" + raw_file + "': lane " +
                                        std::to_string(i) + " has " +
                                        std::to_string(lanes[i].size()) + " points, expected " +
                                        std::to_string(h_samples.size()));
        for (int x : lanes[i])
            if (x != kNoLane && x < 0)
                throw std::invalid_argument("lane record '" + raw_file + "': lane " +
                                            std::to_string(i) + " has invalid x " +
                                            std::to_string(x));
    }
}

std::vector<int> anchor_rows(int height) {
    std::vector<int> rows;
    for (int y = 160; y <= 710; y += 10) {
        const double scaled = y * static_cast<double>(height) / 720.0;
        rows.push_back(static_cast<int>(std::floor(scaled + 0.5)));
    }
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

double lane_point_accuracy(const std::vector<int>& pred, const std::vector<int>& gt,
                           double px_threshold) {
    if (pred.size() != gt.size())
        throw std::invalid_argument("lane_point_accuracy: lane lengths differ");
    int total = 0, correct = 0;
    for (size_t i = 0; i < gt.size(); ++i) {
        if (gt[i] == kNoLane) continue;
        ++total;
        if (pred[i] != kNoLane && std::abs(pred[i] - gt[i]) < px_threshold) ++correct;
    }
    return total > 0 ? static_cast<double>(correct) / total : 0.0;
}

namespace {

template <typename T>
std::map<std::string, const LaneRecord*> index_by_file(const std::vector<T>& records,
                                                       const char* side) {
    std::map<std::string, const LaneRecord*> index;
    for (const auto& r : records) {
        if (!index.emplace(r.raw_file, &r).second)
            throw std::invalid_argument(std::string("evaluate: duplicate ") + side +
                                        " raw_file '" + r.raw_file + "'");
    }
    return index;
}

} // namespace

EvalResult evaluate_clip(const std::vector<LaneRecord>& preds,
                         const std::vector<LaneRecord>& gts, double px_threshold,
                         double match_threshold) {
    for (const auto& r : preds) r.validate();
    for (const auto& r : gts) r.validate();
    const auto pred_index = index_by_file(preds, "prediction");
    const auto gt_index = index_by_file(gts, "ground-truth");

    std::string missing;
    for (const auto& [file, record] : gt_index) {
        (void)record;
        if (!pred_index.count(file)) missing += " " + file;
    }
    for (const auto& [file, record] : pred_index) {
        (void)record;
        if (!gt_index.count(file)) missing += " " + file;
    }
    if (!missing.empty())
        throw std::invalid_argument("evaluate: records do not join on raw_file:" + missing);

    double accuracy_sum = 0.0;
    long total_gt = 0, total_pred = 0, true_positives = 0;
    for (const auto& [file, gt] : gt_index) {
        const LaneRecord* pred = pred_index.at(file);
        if (pred->h_samples != gt->h_samples)
            throw std::invalid_argument("evaluate: h_samples differ for '" + file + "'");
        const size_t ng = gt->lanes.size(), np = pred->lanes.size();
        total_gt += static_cast<long>(ng);
        total_pred += static_cast<long>(np);

        // Greedy one-to-one matching by descending accuracy; ties go
        // to the lower gt index, then the lower pred index.
        std::vector<std::vector<double>> acc(ng, std::vector<double>(np, 0.0));
        for (size_t gi = 0; gi < ng; ++gi)
            for (size_t pi = 0; pi < np; ++pi)
                acc[gi][pi] = lane_point_accuracy(pred->lanes[pi], gt->lanes[gi], px_threshold);
        std::vector<bool> gt_used(ng, false), pred_used(np, false);
        for (size_t round = 0; round < std::min(ng, np); ++round) {
            double best = -1.0;
            size_t best_gi = 0, best_pi = 0;
            for (size_t gi = 0; gi < ng; ++gi) {
                if (gt_used[gi]) continue;
                for (size_t pi = 0; pi < np; ++pi) {
                    if (pred_used[pi]) continue;
                    if (acc[gi][pi] > best) {
                        best = acc[gi][pi];
                        best_gi = gi;
                        best_pi = pi;
                    }
                }
            }
            gt_used[best_gi] = true;
            pred_used[best_pi] = true;
            accuracy_sum += best;
            if (best >= match_threshold) ++true_positives;
        }
    }

    EvalResult result;
    result.accuracy = total_gt > 0 ? accuracy_sum / static_cast<double>(total_gt) : 0.0;
    result.precision =
        total_pred > 0 ? static_cast<double>(true_positives) / static_cast<double>(total_pred)
                       : 0.0;
    result.recall =
        total_gt > 0 ? static_cast<double>(true_positives) / static_cast<double>(total_gt) : 0.0;
    return result;
}

namespace {

int to_lane_x(const json& v, const std::string& where) {
    if (!v.is_number())
        throw std::invalid_argument(where + ": lane entries must be numbers");
    const double x = v.get<double>();
    return static_cast<int>(std::floor(x + 0.5));
}

} // namespace

std::vector<LaneRecord> parse_lane_records(std::istream& stream) {
    std::vector<LaneRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
        if (!j.is_object()) throw std::invalid_argument(where + ": record must be an object");
        if (!j.contains("lanes") || !j.contains("h_samples") || !j.contains("raw_file"))
            throw std::invalid_argument(where +
                                        ": record needs lanes, h_samples and raw_file");
        LaneRecord record;
        try {
            record.raw_file = j.at("raw_file").get<std::string>();
            for (const auto& v : j.at("h_samples"))
                record.h_samples.push_back(to_lane_x(v, where));
            for (const auto& lane : j.at("lanes")) {
                record.lanes.emplace_back();
                for (const auto& v : lane) record.lanes.back().push_back(to_lane_x(v, where));
            }
        } catch (const json::exception& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
        try {
            record.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<LaneRecord> parse_lane_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lane record file: " + path);
    try {
        return parse_lane_records(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string serialize_lane_record(const LaneRecord& record) {
    json j;
    j["h_samples"] = record.h_samples;
    j["lanes"] = record.lanes;
    j["raw_file"] = record.raw_file;
    return j.dump();
}

void write_lane_records(std::ostream& stream, const std::vector<LaneRecord>& records) {
    for (const auto& r : records) stream << serialize_lane_record(r) << "\n";
}

} // namespace lanepre::tusimple

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lanepre::tusimple {

// One frame's lanes in the Tusimple convention: every lane is a list
// of x coordinates aligned with the shared h_samples rows, -2 marking
// "no lane at this row".
struct LaneRecord {
    std::vector<int> h_samples;
    std::vector<std::vector<int>> lanes;
    std::string raw_file;

    void validate() const;
};

inline constexpr int kNoLane = -2;
inline constexpr int kMaxLanes = 4;
inline constexpr double kDefaultPxThreshold = 20.0;
inline constexpr double kDefaultMatchThreshold = 0.85;

// The 56 standard anchor rows 160,170,...,710, scaled from 720 rows to
// `height` and rounded.
std::vector<int> anchor_rows(int height);

// Fraction of gt's valid points where pred is valid and |dx| is
// strictly below px_threshold. 0 when gt has no valid points.
double lane_point_accuracy(const std::vector<int>& pred, const std::vector<int>& gt,
                           double px_threshold);

struct EvalResult {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

// Greedy one-to-one lane matching per frame (by descending point
// accuracy, ties toward the lower gt index); accuracy averages the
// matched accuracies over all gt lanes, a match counting as a true
// positive when its accuracy reaches match_threshold. Frames are
// joined by raw_file and aggregated by summing counts.
EvalResult evaluate_clip(const std::vector<LaneRecord>& preds,
                         const std::vector<LaneRecord>& gts,
                         double px_threshold = kDefaultPxThreshold,
                         double match_threshold = kDefaultMatchThreshold);

// Line-delimited JSON records with "lanes", "h_samples", "raw_file".
// Parse errors name the offending line.
std::vector<LaneRecord> parse_lane_records(std::istream& stream);
std::vector<LaneRecord> parse_lane_records_file(const std::string& path);
std::string serialize_lane_record(const LaneRecord& record);
void write_lane_records(std::ostream& stream, const std::vector<LaneRecord>& records);

} // namespace lanepre::tusimple

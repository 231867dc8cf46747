#pragma once

#include <string>
#include <vector>

namespace lanepre::fuzzy {

// Piecewise-linear membership function as a trapezoid (a,b,c,d); a
// triangle has b == c, and an open shoulder uses -inf/+inf on the
// outer breakpoints (membership stays 1 past the plateau).
struct MembershipFunction {
    std::string label;
    double a = 0, b = 0, c = 0, d = 0;

    double evaluate(double x) const;
    void validate() const;

    static MembershipFunction triangle(std::string label, double a, double b, double c);
    static MembershipFunction trapezoid(std::string label, double a, double b, double c, double d);
    static MembershipFunction open_left(std::string label, double c, double d);
    static MembershipFunction open_right(std::string label, double a, double b);
};

struct FuzzyRule {
    std::string if_input;
    std::string then_output;
};

// Single-input single-output Mamdani system: min implication, max
// aggregation, centroid defuzzification on a fixed midpoint grid.
struct FuzzySystem {
    std::vector<MembershipFunction> inputs;
    std::vector<MembershipFunction> outputs;
    std::vector<FuzzyRule> rules;
    double domain_min = -1.5;
    double domain_max = 4.5;
    int samples = 4096;

    void validate() const;
};

// The default line-count controller: too_few/few/good/many/too_many
// mapped onto minus2/minus1/zero/add1/add2.
FuzzySystem default_fuzzy_system();

// Crisp output delta for a given line count. Zero-area aggregates
// defuzzify to 0.
double fis_delta(double line_count, const FuzzySystem& system);

// Closed-loop controller state for one clip.
struct TunerState {
    double th_high = 1.0;
    int frame_index = 0;
    int last_line_count = 0;
    double last_delta = 0.0;
};

inline constexpr double kThresholdMin = 1.0;
inline constexpr double kThresholdMax = 1443.0;

// Applies one feedback step: th_high += fis_delta(line_count), clamped
// to [clamp_min, clamp_max]; records the observables.
TunerState tune(const TunerState& state, int line_count, const FuzzySystem& system,
                double clamp_min = kThresholdMin, double clamp_max = kThresholdMax);

} // namespace lanepre::fuzzy

#include "lanepre/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lanepre::fuzzy {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double MembershipFunction::evaluate(double x) const {
    if (x < a || x > d) return 0.0;
    if (x < b) return (x - a) / (b - a);
    if (x <= c) return 1.0;
    return (d - x) / (d - c);
}

void MembershipFunction::validate() const {
    if (label.empty())
        throw std::invalid_argument("membership function: empty label");
    if (std::isnan(a) || std::isnan(b) || std::isnan(c) || std::isnan(d))
        throw std::invalid_argument("membership function '" + label + "': NaN breakpoint");
    if (!(a <= b && b <= c && c <= d))
        throw std::invalid_argument("membership function '" + label +
                                    "': breakpoints must be non-decreasing");
    // Open shoulders pin both outer breakpoints to the same infinity;
    // anything else leaves an edge slope undefined or unreachable.
    if (a == -kInf && b != -kInf)
        throw std::invalid_argument("membership function '" + label +
                                    "': left shoulder must pin a and b together");
    if (d == kInf && c != kInf)
        throw std::invalid_argument("membership function '" + label +
                                    "': right shoulder must pin c and d together");
    if (b == kInf || c == -kInf)
        throw std::invalid_argument("membership function '" + label +
                                    "': plateau must be reachable");
}

MembershipFunction MembershipFunction::triangle(std::string label, double a, double b,
                                                double c) {
    return {std::move(label), a, b, b, c};
}

MembershipFunction MembershipFunction::trapezoid(std::string label, double a, double b,
                                                 double c, double d) {
    return {std::move(label), a, b, c, d};
}

MembershipFunction MembershipFunction::open_left(std::string label, double c, double d) {
    return {std::move(label), -kInf, -kInf, c, d};
}

MembershipFunction MembershipFunction::open_right(std::string label, double a, double b) {
    return {std::move(label), a, b, kInf, kInf};
}

void FuzzySystem::validate() const {
    if (inputs.empty() || outputs.empty() || rules.empty())
        throw std::invalid_argument("fuzzy system: inputs, outputs and rules are required");
    for (const auto& mf : inputs) mf.validate();
    for (const auto& mf : outputs) mf.validate();
    if (!(domain_min < domain_max))
        throw std::invalid_argument("fuzzy system: domain_min must be below domain_max");
    if (samples < 2)
        throw std::invalid_argument("fuzzy system: need at least 2 centroid samples");

    auto count_label = [](const std::vector<MembershipFunction>& mfs, const std::string& l) {
        return std::count_if(mfs.begin(), mfs.end(),
                             [&](const MembershipFunction& m) { return m.label == l; });
    };
    for (const auto& mf : inputs) {
        const auto used = std::count_if(rules.begin(), rules.end(), [&](const FuzzyRule& r) {
            return r.if_input == mf.label;
        });
        if (used != 1)
            throw std::invalid_argument("fuzzy system: input '" + mf.label +
                                        "' must appear in exactly one rule");
    }
    for (const auto& rule : rules) {
        if (count_label(inputs, rule.if_input) != 1)
            throw std::invalid_argument("fuzzy system: rule input '" + rule.if_input +
                                        "' does not name exactly one input");
        if (count_label(outputs, rule.then_output) != 1)
            throw std::invalid_argument("fuzzy system: rule output '" + rule.then_output +
                                        "' does not name exactly one output");
    }
}

FuzzySystem default_fuzzy_system() {
    FuzzySystem sys;
    sys.inputs = {
        MembershipFunction::open_left("too_few", 2, 5),
        MembershipFunction::triangle("few", 2, 5, 10),
        MembershipFunction::trapezoid("good", 5, 10, 20, 25),
        MembershipFunction::triangle("many", 20, 30, 40),
        MembershipFunction::open_right("too_many", 30, 40),
    };
    sys.outputs = {
        MembershipFunction::triangle("minus2", -1.5, -1.0, -0.5),
        MembershipFunction::triangle("minus1", -0.5, -0.25, 0.0),
        MembershipFunction::triangle("zero", -0.5, 0.0, 0.5),
        MembershipFunction::triangle("add1", 0.0, 0.25, 0.5),
        MembershipFunction::triangle("add2", 3.5, 4.0, 4.5),
    };
    sys.rules = {
        {"too_few", "minus2"}, {"few", "minus1"}, {"good", "zero"},
        {"many", "add1"},      {"too_many", "add2"},
    };
    return sys;
}

double fis_delta(double line_count, const FuzzySystem& system) {
    if (line_count < 0)
        throw std::invalid_argument("fis_delta: line_count must be non-negative");

    struct Fired {
        double strength;
        const MembershipFunction* output;
    };
    std::vector<Fired> fired;
    fired.reserve(system.rules.size());
    for (const auto& rule : system.rules) {
        const MembershipFunction* in = nullptr;
        for (const auto& mf : system.inputs)
            if (mf.label == rule.if_input) in = &mf;
        const MembershipFunction* out = nullptr;
        for (const auto& mf : system.outputs)
            if (mf.label == rule.then_output) out = &mf;
        if (in == nullptr || out == nullptr)
            throw std::invalid_argument("fis_delta: rule references unknown label");
        const double strength = in->evaluate(line_count);
        if (strength > 0.0) fired.push_back({strength, out});
    }

    // Mamdani: min-clip each fired output, max-aggregate, centroid on a
    // midpoint grid over the output domain.
    const double step = (system.domain_max - system.domain_min) / system.samples;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < system.samples; ++i) {
        const double z = system.domain_min + (i + 0.5) * step;
        double mu = 0.0;
        for (const auto& f : fired)
            mu = std::max(mu, std::min(f.strength, f.output->evaluate(z)));
        num += z * mu;
        den += mu;
    }
    return den > 0.0 ? num / den : 0.0;
}

TunerState tune(const TunerState& state, int line_count, const FuzzySystem& system,
                double clamp_min, double clamp_max) {
    const double delta = fis_delta(static_cast<double>(line_count), system);
    TunerState next;
    next.th_high = std::clamp(state.th_high + delta, clamp_min, clamp_max);
    next.frame_index = state.frame_index + 1;
    next.last_line_count = line_count;
    next.last_delta = delta;
    return next;
}

} // namespace lanepre::fuzzy

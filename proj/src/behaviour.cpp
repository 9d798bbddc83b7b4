#include "collarml/behaviour.hpp"

#include <algorithm>
#include <cctype>

namespace collarml {

std::string_view to_string(Behaviour b) {
    switch (b) {
        case Behaviour::drinking_milk: return "drinking_milk";
        case Behaviour::grooming: return "grooming";
        case Behaviour::lying: return "lying";
        case Behaviour::running: return "running";
        case Behaviour::walking: return "walking";
        case Behaviour::other: return "other";
    }
    return "other";
}

namespace {

std::string normalize(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ' || c == '-') {
            out.push_back('_');
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

}  // namespace

std::optional<Behaviour> behaviour_from_canonical(std::string_view s) {
    const std::string n = normalize(s);
    for (Behaviour b : all_behaviours) {
        if (n == to_string(b)) return b;
    }
    return std::nullopt;
}

Behaviour behaviour_from_string(std::string_view s, bool* was_known) {
    const auto b = behaviour_from_canonical(s);
    if (was_known != nullptr) *was_known = b.has_value();
    return b.value_or(Behaviour::other);
}

std::vector<std::string> behaviour_names() {
    std::vector<std::string> names;
    names.reserve(kNumBehaviours);
    for (Behaviour b : all_behaviours) names.emplace_back(to_string(b));
    return names;
}

}  // namespace collarml

#include "collarml/series.hpp"

namespace collarml {

std::string_view channel_name(Channel c) {
    switch (c) {
        case Channel::x: return "x";
        case Channel::y: return "y";
        case Channel::z: return "z";
        case Channel::magnitude: return "magnitude";
        case Channel::odba: return "odba";
        case Channel::vedba: return "vedba";
        case Channel::pitch: return "pitch";
        case Channel::roll: return "roll";
    }
    return "";
}

std::uint64_t FeatureMatrix::schema_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& name : feature_names) {
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        h ^= 0xFFu;  // name separator
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace collarml

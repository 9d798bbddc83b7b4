#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collarml {

enum class Behaviour : std::uint8_t {
    drinking_milk = 0,
    grooming,
    lying,
    running,
    walking,
    other,
};

inline constexpr std::size_t kNumBehaviours = 6;

inline constexpr std::array<Behaviour, kNumBehaviours> all_behaviours{
    Behaviour::drinking_milk, Behaviour::grooming, Behaviour::lying,
    Behaviour::running,       Behaviour::walking,  Behaviour::other,
};

std::string_view to_string(Behaviour b);

// Maps a free-form label string onto the 6-class ethogram. The 5 core
// classes are kept as-is; every other behaviour folds into `other`.
Behaviour behaviour_from_string(std::string_view s, bool* was_known = nullptr);

// Strict lookup of one of the 6 canonical names; nullopt for anything else.
std::optional<Behaviour> behaviour_from_canonical(std::string_view s);

std::vector<std::string> behaviour_names();

}  // namespace collarml

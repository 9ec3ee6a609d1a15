#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace cogatr {

/// The four surrogate ground-target classes. Declaration order is the
/// fixed tie-break order used everywhere a class has to be chosen.
enum class TargetClass { APC = 0, MBT = 1, MSL = 2, STR = 3 };

inline constexpr std::size_t kNumClasses = 4;

inline constexpr std::array<TargetClass, kNumClasses> kAllClasses = {
    TargetClass::APC, TargetClass::MBT, TargetClass::MSL, TargetClass::STR};

constexpr std::size_t index_of(TargetClass c) { return static_cast<std::size_t>(c); }

std::string_view to_string(TargetClass c);
std::optional<TargetClass> parse_class(std::string_view name);

/// Feature domain: RANGE is the range profile, FREQUENCY the raw k-space.
enum class Domain { RANGE = 0, FREQUENCY = 1 };

std::string_view to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view name);

}  // namespace cogatr

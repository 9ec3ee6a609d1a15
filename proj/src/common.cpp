#include "cogatr/types.hpp"

#include <sstream>

#include "cogatr/errors.hpp"
#include "cogatr/seeding.hpp"

namespace cogatr {

std::string_view to_string(TargetClass c) {
    switch (c) {
        case TargetClass::APC: return "APC";
        case TargetClass::MBT: return "MBT";
        case TargetClass::MSL: return "MSL";
        case TargetClass::STR: return "STR";
    }
    return "?";
}

std::optional<TargetClass> parse_class(std::string_view name) {
    for (TargetClass c : kAllClasses) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::string_view to_string(Domain d) {
    return d == Domain::RANGE ? "RANGE" : "FREQUENCY";
}

std::optional<Domain> parse_domain(std::string_view name) {
    if (name == "RANGE") return Domain::RANGE;
    if (name == "FREQUENCY") return Domain::FREQUENCY;
    return std::nullopt;
}

namespace {

std::string empty_cell_message(const std::vector<std::pair<TargetClass, int>>& cells) {
    std::ostringstream msg;
    msg << "no training samples for " << cells.size() << " (class, sector) cell(s):";
    for (const auto& [c, s] : cells) msg << " (" << to_string(c) << ", " << s << ")";
    return msg.str();
}

}  // namespace

EmptyCell::EmptyCell(std::vector<std::pair<TargetClass, int>> cells)
    : Error(empty_cell_message(cells)), cells_(std::move(cells)) {}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
    std::vector<std::uint32_t> halves;
    halves.reserve(words.size() * 2);
    for (std::uint64_t w : words) {
        halves.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
        halves.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    std::seed_seq seq(halves.begin(), halves.end());
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::mt19937_64 make_rng(std::initializer_list<std::uint64_t> words) {
    return std::mt19937_64(derive_seed(words));
}

}  // namespace cogatr

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cogatr {

/// Mixes a list of 64-bit words into one seed via std::seed_seq, whose
/// output is fully specified by the standard.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words);

std::mt19937_64 make_rng(std::initializer_list<std::uint64_t> words);

}  // namespace cogatr

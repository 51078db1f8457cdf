#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace teamalloc {

// std::uniform_*_distribution output differs between standard libraries, so
// every draw that ends up in a trace goes through these helpers instead.

using Rng = std::mt19937_64;

/// Mixes a run seed with stream identifiers (team id, restart index, ...) into one engine.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

double uniform_real(Rng& rng, double lo, double hi);

/// Uniform integer in [lo, hi] (inclusive), unbiased.
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

}  // namespace teamalloc

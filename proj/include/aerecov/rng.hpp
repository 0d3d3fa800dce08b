#pragma once

#include <cstdint>
#include <random>

#include "aerecov/types.hpp"

namespace aerecov::rng {

// std::mt19937_64 and std::seed_seq are fully specified by the standard, so
// streams are identical on every conforming platform.
using Engine = std::mt19937_64;

/// Purpose tags keep the streams of different consumers disjoint even when
/// they share a user seed.
enum class Purpose : std::uint64_t {
  Signals = 0x5349474e414c53ULL,
  Noise = 0x4e4f495345ULL,
  Dictionary = 0x44494354ULL,
  Training = 0x545241494eULL,
  Shuffle = 0x53485546ULL,
  Experiment = 0x45585045ULL,
};

/// Independent stream for (seed, purpose, index). Results do not depend on
/// the order in which streams are created.
Engine stream(Seed seed, Purpose purpose, std::uint64_t index = 0);

/// Derives a child seed, e.g. one per grid cell of an experiment.
Seed derive(Seed seed, std::uint64_t index);

/// Uniform on the half-open interval (0, 1], 53-bit resolution.
double uniform_open_closed(Engine& engine);

/// Uniform on [0, 1), 53-bit resolution.
double uniform_closed_open(Engine& engine);

double standard_normal(Engine& engine);

}  // namespace aerecov::rng

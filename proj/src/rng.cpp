#include "aerecov/rng.hpp"

#include <boost/random/normal_distribution.hpp>

namespace aerecov::rng {

namespace {

std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

Engine stream(Seed seed, Purpose purpose, std::uint64_t index) {
  const auto tag = static_cast<std::uint64_t>(purpose);
  std::seed_seq seq{lo(seed), hi(seed), lo(tag), hi(tag), lo(index), hi(index)};
  return Engine(seq);
}

Seed derive(Seed seed, std::uint64_t index) {
  auto engine = stream(seed, Purpose::Experiment, index);
  return engine();
}

double uniform_open_closed(Engine& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

double uniform_closed_open(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double standard_normal(Engine& engine) {
  // Boost's ziggurat is a fixed algorithm, unlike std::normal_distribution.
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  return normal(engine);
}

}  // namespace aerecov::rng

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_RNG_HPP_
#define PONSHARE_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ponshare {

// One SplitMix64 step. Used both to whiten seeds and to combine stream keys.
std::uint64_t splitmix64(std::uint64_t x);

// Folds a list of 64-bit keys into one seed: h = splitmix64(h ^ key) for each
// key in order, starting from a fixed constant. Order matters.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> keys);

// Bit pattern of a double, for use as a stream key. +0.0 and -0.0 collapse.
std::uint64_t key_of(double value);

// Portable random source. std::mt19937_64 has a fully specified output
// sequence, unlike the standard distributions, so uniform() and bernoulli()
// are implemented here on top of the raw 64-bit draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Always consumes exactly one draw, so call sequences stay aligned
  // regardless of p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ponshare

#endif  // PONSHARE_RNG_HPP_

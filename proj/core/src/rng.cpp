// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include "ponshare/rng.hpp"

#include <bit>

namespace ponshare {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6A09E667F3BCC908ULL;
  for (std::uint64_t key : keys) h = splitmix64(h ^ key);
  return h;
}

std::uint64_t key_of(double value) {
  if (value == 0.0) value = 0.0;
  return std::bit_cast<std::uint64_t>(value);
}

}  // namespace ponshare

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace nrp {

/// Seed of the named sub-stream `name` under a root seed. Distinct names give
/// independent streams, so adding a consumer never shifts the others.
std::uint64_t derive_seed(std::uint64_t root, std::string_view name);

using Rng = std::mt19937_64;

/// Uniformly random permutation of 0..n-1.
std::vector<std::int64_t> random_permutation(std::int64_t n, std::uint64_t seed);

}  // namespace nrp

#pragma once
// FNV-1a 64-bit hashing for data/model/file provenance stamps.

#include <cstdint>
#include <cstring>
#include <string>

namespace finfom {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

inline std::uint64_t fnv1a_bytes(const void* data, std::size_t n,
                                 std::uint64_t seed = kFnvOffset) noexcept {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t seed) noexcept {
  return fnv1a_bytes(&value, sizeof(value), seed);
}

inline std::uint64_t fnv1a_f64(double value, std::uint64_t seed) noexcept {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof(bits));
  return fnv1a_u64(bits, seed);
}

std::uint64_t file_hash(const std::string& path);  // throws IoError

std::string hash_hex(std::uint64_t h);

// splitmix64; used to derive independent RNG streams.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace finfom

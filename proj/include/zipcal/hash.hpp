#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace zipcal {

// 64-bit FNV-1a. Used for feature hashing and config fingerprints; must stay
// stable across platforms and runs, so no std::hash anywhere.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string to_hex64(std::uint64_t value);

}  // namespace zipcal

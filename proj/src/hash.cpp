#include "zipcal/hash.hpp"

#include <array>

namespace zipcal {

std::string to_hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::array<char, 16> out;
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return std::string(out.data(), out.size());
}

}  // namespace zipcal

#include "modcurve/tables.hpp"

#include <array>
#include <utility>

namespace modcurve {

namespace {

using Entry = std::pair<std::uint64_t, std::uint64_t>;

constexpr std::array<Entry, 7> kSz{{{3, 27}, {5, 25}, {7, 7}, {11, 11}, {13, 13}, {17, 1}, {37, 1}}};

constexpr std::array<Entry, 8> kM1{{{2, 32},
                                    {3, 81},
                                    {5, 125},
                                    {7, 49},
                                    {11, 121},
                                    {13, 169},
                                    {17, 17},
                                    {37, 37}}};

// 2^6 * 17 and 2^4 * 3^3 * 37.
constexpr std::array<Entry, 2> kSpecialImage{{{17, 1088}, {37, 15984}}};

template <std::size_t N>
std::optional<std::uint64_t> lookup(const std::array<Entry, N>& table, std::uint64_t key) {
  for (const auto& [k, v] : table) {
    if (k == key) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::uint64_t> sz_table(std::uint64_t prime) { return lookup(kSz, prime); }

std::optional<std::uint64_t> m1_table(std::uint64_t prime) { return lookup(kM1, prime); }

std::vector<std::uint64_t> m1_primes() {
  std::vector<std::uint64_t> out;
  for (const auto& [k, v] : kM1) out.push_back(k);
  return out;
}

std::optional<std::uint64_t> special_image_order(std::uint64_t prime) {
  return lookup(kSpecialImage, prime);
}

const std::vector<ClassificationEntry>& published_classification_table() {
  static const std::vector<ClassificationEntry> table{
      {1, 9, 5}, {5, 14, 6}, {7, 14, 7}, {11, 13, 6}, {13, 14, 7}, {17, 15, 5}, {37, 13, 8}};
  return table;
}

}  // namespace modcurve

#include "porpi/bench/seeds.hpp"

namespace porpi::bench {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t episode_seed(std::uint64_t base, const std::string& planner, long budget, int run) {
  return splitmix64(fnv1a(std::to_string(base) + "|" + planner + "|" + std::to_string(budget) + "|" +
                          std::to_string(run)));
}

std::uint64_t world_seed(std::uint64_t base, int run) {
  return splitmix64(fnv1a("world|" + std::to_string(base) + "|" + std::to_string(run)));
}

}  // namespace porpi::bench

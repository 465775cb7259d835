#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace porpi::bench {

std::uint64_t fnv1a(std::string_view text);
std::uint64_t splitmix64(std::uint64_t x);

/// splitmix64(fnv1a("base|planner|budget|run")): the agent's stream.
std::uint64_t episode_seed(std::uint64_t base, const std::string& planner, long budget, int run);

/// splitmix64(fnv1a("world|base|run")): the environment's stream, shared by
/// every planner and budget so cells face identical worlds.
std::uint64_t world_seed(std::uint64_t base, int run);

}  // namespace porpi::bench

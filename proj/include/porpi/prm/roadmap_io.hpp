#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "porpi/prm/roadmap.hpp"

namespace porpi::prm {

constexpr int kRoadmapFormatVersion = 1;

/// JSON cache stamped with the format version, build seed and config.
void save_roadmap(const Roadmap& roadmap, const RoadmapConfig& config, std::uint64_t seed,
                  const std::filesystem::path& path);

/// nullopt when the file is missing or its stamp does not match.
std::optional<Roadmap> load_roadmap(const RoadmapConfig& config, std::uint64_t seed,
                                    const std::filesystem::path& path);

/// Reuses a matching cache unless `rebuild`; otherwise builds and writes it.
Roadmap load_or_build_roadmap(const env::NavigationDomain& domain, const RoadmapConfig& config,
                              std::uint64_t seed, const std::filesystem::path& path, bool rebuild = false);

}  // namespace porpi::prm

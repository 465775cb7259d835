#include "porpi/prm/roadmap_io.hpp"

#include <fstream>

#include <json.hpp>

namespace porpi::prm {

namespace {

using nlohmann::json;

json stamp(const RoadmapConfig& config, std::uint64_t seed) {
  return {{"version", kRoadmapFormatVersion},
          {"seed", seed},
          {"nodes", config.nodes},
          {"neighbors", config.neighbors},
          {"clearance_factor", config.clearance_factor},
          {"resolution_factor", config.resolution_factor},
          {"attempts_per_node", config.attempts_per_node}};
}

}  // namespace

void save_roadmap(const Roadmap& roadmap, const RoadmapConfig& config, std::uint64_t seed,
                  const std::filesystem::path& path) {
  json doc;
  doc["stamp"] = stamp(config, seed);
  doc["dimension"] = roadmap.dimension();
  doc["speed"] = roadmap.speed();
  doc["targets"] = roadmap.target_count();
  json nodes = json::array();
  for (const auto& p : roadmap.nodes()) nodes.push_back({p.x(), p.y(), p.z()});
  doc["points"] = std::move(nodes);
  json edges = json::array();
  for (std::size_t i = 0; i < roadmap.adjacency().size(); ++i)
    for (const auto& e : roadmap.adjacency()[i])
      if (static_cast<std::size_t>(e.to) > i) edges.push_back({i, e.to, e.length});
  doc["edges"] = std::move(edges);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write roadmap cache '" + path.string() + "'");
  out << doc.dump() << '\n';
}

std::optional<Roadmap> load_roadmap(const RoadmapConfig& config, std::uint64_t seed,
                                    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
  if (!doc.contains("stamp") || doc["stamp"] != stamp(config, seed)) return std::nullopt;
  std::vector<Vec3> nodes;
  for (const auto& p : doc.at("points")) nodes.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  std::vector<std::vector<Edge>> adjacency(nodes.size());
  for (const auto& e : doc.at("edges")) {
    const auto i = e.at(0).get<std::size_t>();
    const auto j = e.at(1).get<int>();
    const double len = e.at(2).get<double>();
    adjacency.at(i).push_back({j, len});
    adjacency.at(static_cast<std::size_t>(j)).push_back({static_cast<int>(i), len});
  }
  return Roadmap(std::move(nodes), std::move(adjacency), doc.at("targets").get<std::size_t>(),
                 doc.at("dimension").get<int>(), doc.at("speed").get<double>());
}

Roadmap load_or_build_roadmap(const env::NavigationDomain& domain, const RoadmapConfig& config,
                              std::uint64_t seed, const std::filesystem::path& path, bool rebuild) {
  if (!rebuild) {
    if (auto cached = load_roadmap(config, seed, path)) {
      if (cached->target_count() == domain.targets().size()) return std::move(*cached);
    }
  }
  Roadmap roadmap = Roadmap::build(domain, config, seed);
  save_roadmap(roadmap, config, seed, path);
  return roadmap;
}

}  // namespace porpi::prm

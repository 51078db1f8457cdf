#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "teamalloc/coverage/geometry.hpp"

namespace teamalloc::io {

/// Line chart of the global objective against iteration.
std::string objective_svg(std::span<const int> iterations, std::span<const double> objective);

/// One panel per team: the team's domain, the boundaries of its discrete
/// Voronoi cells and its robots. Teams without robots get an empty panel.
std::string domain_snapshot_svg(const coverage::Domain& domain,
                                std::span<const std::vector<coverage::Point>> team_positions,
                                std::span<const int> team_ids, int t);

/// Regenerates objective.svg and snapshot_t<NNN>.svg files from a stored
/// trace.json. Only reads the trace. Returns the paths written.
std::vector<std::filesystem::path> plot_trace(const std::filesystem::path& trace_json,
                                              const std::filesystem::path& out_dir);

}  // namespace teamalloc::io

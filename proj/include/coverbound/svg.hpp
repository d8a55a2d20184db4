#pragma once

#include "coverbound/agent_set.hpp"
#include "coverbound/coverage.hpp"
#include "coverbound/geometry.hpp"

#include <span>
#include <string>

namespace coverbound {

// Heatmap of P(x, S) over the integration grid (light = low coverage),
// obstacles, ground-set points and numbered agents. Mission coordinates with
// the y axis flipped. `order` lists agents in selection order for numbering;
// when empty they are numbered in index order.
[[nodiscard]] std::string render_svg(const MissionSpace& mission, const CoverageContext& ctx, const AgentSet& agents,
                                     std::span<const std::size_t> order = {});

} // namespace coverbound

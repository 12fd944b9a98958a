#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsn {

// Fixed chart geometry, exposed so structural tests can reason about
// coordinates. All charts are standalone SVG with no external assets and no
// nondeterministic content.
inline constexpr double kChartWidth = 900.0;
inline constexpr double kChartHeight = 520.0;
inline constexpr double kChartPlotLeft = 70.0;
inline constexpr double kChartPlotTop = 60.0;
inline constexpr double kChartPlotWidth = 640.0;
inline constexpr double kChartPlotHeight = 390.0;

struct ChartSeries {
  std::string label;
  std::vector<double> values;  // y per round; x is the round index
};

// One polyline per series, axis ticks, legend and title.
void write_line_chart(const std::filesystem::path& file,
                      const std::string& title, const std::string& x_label,
                      const std::string& y_label,
                      std::span<const ChartSeries> series);

// One group of bars per milestone (first/half/last dead) with one bar per
// protocol. A fully censored milestone renders at `horizon` and the legend
// carries a censoring marker whenever any trial was censored.
struct MilestoneBars {
  std::string label;  // protocol name
  std::optional<double> first_dead;
  std::optional<double> half_dead;
  std::optional<double> last_dead;
  std::uint32_t first_censored = 0;
  std::uint32_t half_censored = 0;
  std::uint32_t last_censored = 0;
  std::uint32_t trials = 0;
};

void write_milestone_chart(const std::filesystem::path& file,
                           const std::string& title,
                           std::span<const MilestoneBars> bars,
                           std::uint32_t horizon);

}  // namespace wsn

#include "wsn/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace wsn {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};
constexpr std::size_t kPaletteSize = std::size(kPalette);
constexpr std::size_t kMaxPolylinePoints = 1200;

std::string fmt(double value, int precision) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::fixed, precision);
  if (ec != std::errc()) {
    throw std::runtime_error("svg fmt: to_chars failed");
  }
  return std::string(buf, end);
}

// Tick labels: shortest exact form, so "2000" rather than "2000.00".
std::string fmt_tick(double value) {
  if (value == std::floor(value) && std::abs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw std::runtime_error("svg fmt_tick: to_chars failed");
  }
  return std::string(buf, end);
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Smallest value of the form {1, 2, 2.5, 5} * 10^k at or above x.
double nice_ceil(double x) {
  if (!(x > 0.0)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(x)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= x * (1.0 - 1e-12)) return m * mag;
  }
  return 10.0 * mag;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + file.string() +
                             " for writing");
  }
  return out;
}

void write_prologue(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kChartWidth
      << "\" height=\"" << kChartHeight << "\" viewBox=\"0 0 " << kChartWidth
      << " " << kChartHeight << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"" << kChartWidth << "\" height=\"" << kChartHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kChartWidth / 2.0
      << "\" y=\"32\" font-size=\"18\" text-anchor=\"middle\">"
      << xml_escape(title) << "</text>\n";
}

void write_frame(std::ofstream& out) {
  out << "<rect x=\"" << kChartPlotLeft << "\" y=\"" << kChartPlotTop
      << "\" width=\"" << kChartPlotWidth << "\" height=\""
      << kChartPlotHeight
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

void write_y_axis(std::ofstream& out, double y_max,
                  const std::string& y_label) {
  const double bottom = kChartPlotTop + kChartPlotHeight;
  for (int i = 0; i <= 5; ++i) {
    const double value = y_max * static_cast<double>(i) / 5.0;
    const double y = bottom - kChartPlotHeight * static_cast<double>(i) / 5.0;
    if (i > 0) {
      out << "<line x1=\"" << kChartPlotLeft << "\" y1=\"" << fmt(y, 2)
          << "\" x2=\"" << kChartPlotLeft + kChartPlotWidth << "\" y2=\""
          << fmt(y, 2)
          << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    }
    out << "<text x=\"" << kChartPlotLeft - 8 << "\" y=\"" << fmt(y + 4, 2)
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_tick(value)
        << "</text>\n";
  }
  out << "<text x=\"20\" y=\"" << kChartPlotTop + kChartPlotHeight / 2.0
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
      << "20 " << kChartPlotTop + kChartPlotHeight / 2.0 << ")\">"
      << xml_escape(y_label) << "</text>\n";
}

void write_x_axis(std::ofstream& out, double x_max,
                  const std::string& x_label) {
  const double bottom = kChartPlotTop + kChartPlotHeight;
  for (int i = 0; i <= 5; ++i) {
    const double value = x_max * static_cast<double>(i) / 5.0;
    const double x = kChartPlotLeft + kChartPlotWidth *
                                          static_cast<double>(i) / 5.0;
    out << "<text x=\"" << fmt(x, 2) << "\" y=\"" << bottom + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">"
        << fmt_tick(std::round(value)) << "</text>\n";
  }
  out << "<text x=\"" << kChartPlotLeft + kChartPlotWidth / 2.0 << "\" y=\""
      << bottom + 44 << "\" font-size=\"13\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n";
}

}  // namespace

void write_line_chart(const std::filesystem::path& file,
                      const std::string& title, const std::string& x_label,
                      const std::string& y_label,
                      std::span<const ChartSeries> series) {
  std::size_t longest = 0;
  double y_peak = 0.0;
  for (const ChartSeries& s : series) {
    longest = std::max(longest, s.values.size());
    for (double v : s.values) y_peak = std::max(y_peak, v);
  }
  const double y_max = nice_ceil(y_peak);
  const double x_max =
      longest > 1 ? static_cast<double>(longest - 1) : 1.0;
  const double bottom = kChartPlotTop + kChartPlotHeight;

  std::ofstream out = open_out(file);
  write_prologue(out, title);
  write_y_axis(out, y_max, y_label);
  write_x_axis(out, x_max, x_label);
  write_frame(out);

  for (std::size_t si = 0; si < series.size(); ++si) {
    const std::vector<double>& values = series[si].values;
    if (values.empty()) continue;
    const char* color = kPalette[si % kPaletteSize];

    // Long runs are strided down; the final round is always kept.
    const std::size_t step =
        std::max<std::size_t>(1, (values.size() + kMaxPolylinePoints - 1) /
                                     kMaxPolylinePoints);
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    const auto emit_point = [&](std::size_t t) {
      const double x = kChartPlotLeft +
                       kChartPlotWidth * static_cast<double>(t) / x_max;
      const double y_val = std::clamp(values[t], 0.0, y_max);
      const double y = bottom - kChartPlotHeight * (y_val / y_max);
      if (!first) out << ' ';
      out << fmt(x, 2) << ',' << fmt(y, 2);
      first = false;
    };
    for (std::size_t t = 0; t < values.size(); t += step) emit_point(t);
    if ((values.size() - 1) % step != 0) emit_point(values.size() - 1);
    out << "\"/>\n";
  }

  // Legend to the right of the plot.
  const double legend_x = kChartPlotLeft + kChartPlotWidth + 16.0;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double y = kChartPlotTop + 10.0 + 22.0 * static_cast<double>(si);
    out << "<rect x=\"" << legend_x << "\" y=\"" << fmt(y - 9, 2)
        << "\" width=\"14\" height=\"14\" fill=\""
        << kPalette[si % kPaletteSize] << "\"/>\n";
    out << "<text x=\"" << legend_x + 20 << "\" y=\"" << fmt(y + 3, 2)
        << "\" font-size=\"13\">" << xml_escape(series[si].label)
        << "</text>\n";
  }

  out << "</svg>\n";
  if (!out) {
    throw std::runtime_error("write failed on " + file.string());
  }
}

void write_milestone_chart(const std::filesystem::path& file,
                           const std::string& title,
                           std::span<const MilestoneBars> bars,
                           std::uint32_t horizon) {
  struct Group {
    const char* name;
    std::optional<double> MilestoneBars::*value;
    std::uint32_t MilestoneBars::*censored;
  };
  constexpr Group kGroups[] = {
      {"first dead", &MilestoneBars::first_dead,
       &MilestoneBars::first_censored},
      {"half dead", &MilestoneBars::half_dead, &MilestoneBars::half_censored},
      {"last dead", &MilestoneBars::last_dead, &MilestoneBars::last_censored},
  };

  double y_peak = 0.0;
  bool any_censored = false;
  for (const MilestoneBars& b : bars) {
    for (const Group& g : kGroups) {
      const auto& value = b.*(g.value);
      y_peak = std::max(y_peak, value ? *value
                                      : static_cast<double>(horizon));
      if (b.*(g.censored) > 0) any_censored = true;
    }
  }
  const double y_max = nice_ceil(y_peak);
  const double bottom = kChartPlotTop + kChartPlotHeight;

  std::ofstream out = open_out(file);
  write_prologue(out, title);
  write_y_axis(out, y_max, "round");
  write_frame(out);

  const double group_width = kChartPlotWidth / 3.0;
  const double bar_slot =
      bars.empty() ? group_width
                   : group_width / (static_cast<double>(bars.size()) + 1.0);
  const double bar_width = bar_slot * 0.7;

  for (std::size_t gi = 0; gi < std::size(kGroups); ++gi) {
    const Group& g = kGroups[gi];
    const double group_left =
        kChartPlotLeft + group_width * static_cast<double>(gi);
    for (std::size_t bi = 0; bi < bars.size(); ++bi) {
      const MilestoneBars& b = bars[bi];
      const auto& value = b.*(g.value);
      const bool fully_censored = !value.has_value();
      const double v = value ? *value : static_cast<double>(horizon);
      const double h = kChartPlotHeight * std::clamp(v / y_max, 0.0, 1.0);
      const double bar_x = group_left + bar_slot * (static_cast<double>(bi) +
                                                    0.5) +
                           (bar_slot - bar_width) / 2.0;
      out << "<rect x=\"" << fmt(bar_x, 2) << "\" y=\"" << fmt(bottom - h, 2)
          << "\" width=\"" << fmt(bar_width, 2) << "\" height=\""
          << fmt(h, 2) << "\" fill=\"" << kPalette[bi % kPaletteSize];
      if (fully_censored) {
        out << "\" fill-opacity=\"0.35";
      }
      out << "\"/>\n";
      std::string label = fmt(v, 1);
      if (fully_censored || b.*(g.censored) > 0) label += "*";
      out << "<text x=\"" << fmt(bar_x + bar_width / 2.0, 2) << "\" y=\""
          << fmt(bottom - h - 6, 2)
          << "\" font-size=\"11\" text-anchor=\"middle\">" << label
          << "</text>\n";
    }
    out << "<text x=\"" << fmt(group_left + group_width / 2.0, 2)
        << "\" y=\"" << bottom + 20
        << "\" font-size=\"13\" text-anchor=\"middle\">" << g.name
        << "</text>\n";
  }

  const double legend_x = kChartPlotLeft + kChartPlotWidth + 16.0;
  for (std::size_t bi = 0; bi < bars.size(); ++bi) {
    const double y = kChartPlotTop + 10.0 + 22.0 * static_cast<double>(bi);
    out << "<rect x=\"" << legend_x << "\" y=\"" << fmt(y - 9, 2)
        << "\" width=\"14\" height=\"14\" fill=\""
        << kPalette[bi % kPaletteSize] << "\"/>\n";
    out << "<text x=\"" << legend_x + 20 << "\" y=\"" << fmt(y + 3, 2)
        << "\" font-size=\"13\">" << xml_escape(bars[bi].label)
        << "</text>\n";
  }
  if (any_censored) {
    out << "<text x=\"" << legend_x << "\" y=\""
        << kChartPlotTop + 10.0 + 22.0 * static_cast<double>(bars.size()) +
               8.0
        << "\" font-size=\"11\">* censored trials; a fully censored bar sits "
           "at the horizon</text>\n";
  }

  out << "</svg>\n";
  if (!out) {
    throw std::runtime_error("write failed on " + file.string());
  }
}

}  // namespace wsn

#pragma once

#include <filesystem>

#include "wsn/metrics.hpp"

namespace wsn {

// One row per round under the header
// `round,alive,ch_count,packets,packets_cum,residual_j`. Energies are
// written with enough digits to round-trip exactly; the final line is
// newline-terminated.
void emit_csv(const RoundSeries& series, const std::filesystem::path& file);

// Strict inverse of emit_csv.
RoundSeries parse_series_csv(const std::filesystem::path& file);

// Mean/stddev columns for every series, same row-per-round layout.
void emit_aggregate_csv(const AggregateSeries& series,
                        const std::filesystem::path& file);

}  // namespace wsn

#include "wsn/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace wsn {

namespace {

constexpr const char* kSeriesHeader =
    "round,alive,ch_count,packets,packets_cum,residual_j";
constexpr const char* kAggregateHeader =
    "round,alive_mean,alive_std,ch_count_mean,ch_count_std,packets_mean,"
    "packets_std,packets_cum_mean,packets_cum_std,residual_j_mean,"
    "residual_j_std";

// Shortest digit string that parses back to exactly the same double.
// Locale-independent, unlike the printf family.
std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw std::runtime_error("format_double: to_chars failed");
  }
  return std::string(buf, end);
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + file.string() +
                             " for writing");
  }
  return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& file,
                             std::size_t line_no, const std::string& what) {
  throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                           ": " + what);
}

// One comma-separated field from [pos, ...); advances pos past the comma.
std::string_view next_field(std::string_view line, std::size_t& pos,
                            const std::filesystem::path& file,
                            std::size_t line_no) {
  if (pos > line.size()) parse_fail(file, line_no, "too few fields");
  const std::size_t comma = line.find(',', pos);
  const std::size_t end = comma == std::string_view::npos ? line.size()
                                                          : comma;
  std::string_view field = line.substr(pos, end - pos);
  pos = comma == std::string_view::npos ? line.size() + 1 : comma + 1;
  return field;
}

template <typename T>
T parse_number(std::string_view field, const std::filesystem::path& file,
               std::size_t line_no) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    parse_fail(file, line_no,
               "bad numeric field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

void emit_csv(const RoundSeries& series, const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  out << kSeriesHeader << '\n';
  for (std::size_t t = 0; t < series.size(); ++t) {
    out << t << ',' << series.alive[t] << ',' << series.ch_count[t] << ','
        << series.packets[t] << ',' << series.packets_cum[t] << ','
        << format_double(series.residual_j[t]) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed on " + file.string());
  }
}

RoundSeries parse_series_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + file.string());
  }

  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) {
    parse_fail(file, 1, "missing or malformed header");
  }

  RoundSeries series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) parse_fail(file, line_no, "blank line");
    std::size_t pos = 0;
    const auto round =
        parse_number<std::uint64_t>(next_field(line, pos, file, line_no),
                                    file, line_no);
    if (round != series.size()) {
      parse_fail(file, line_no, "round index out of sequence");
    }
    series.alive.push_back(parse_number<std::uint32_t>(
        next_field(line, pos, file, line_no), file, line_no));
    series.ch_count.push_back(parse_number<std::uint32_t>(
        next_field(line, pos, file, line_no), file, line_no));
    series.packets.push_back(parse_number<std::uint32_t>(
        next_field(line, pos, file, line_no), file, line_no));
    series.packets_cum.push_back(parse_number<std::uint64_t>(
        next_field(line, pos, file, line_no), file, line_no));
    series.residual_j.push_back(parse_number<double>(
        next_field(line, pos, file, line_no), file, line_no));
    if (pos <= line.size()) parse_fail(file, line_no, "too many fields");
  }
  return series;
}

void emit_aggregate_csv(const AggregateSeries& series,
                        const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  out << kAggregateHeader << '\n';
  const auto cell = [](const MeanStd& ms) {
    return format_double(ms.mean) + ',' + format_double(ms.stddev);
  };
  for (std::size_t t = 0; t < series.size(); ++t) {
    out << t << ',' << cell(series.alive[t]) << ','
        << cell(series.ch_count[t]) << ',' << cell(series.packets[t]) << ','
        << cell(series.packets_cum[t]) << ',' << cell(series.residual_j[t])
        << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed on " + file.string());
  }
}

}  // namespace wsn

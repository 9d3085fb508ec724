#include "tailrho/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace tailrho {

namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t,", pos);
    if (start == std::string_view::npos)
      break;
    const auto stop = line.find_first_of(" \t,", start);
    fields.push_back(line.substr(start, stop == std::string_view::npos ? stop : stop - start));
    pos = stop == std::string_view::npos ? line.size() : stop;
  }
  return fields;
}

double parse_double(std::string_view field, std::size_t line)
{
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("not a number: '" + std::string(field) + "'", line);
  return value;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line)
  : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message)
  , line_(line)
{}

Sample parse_data(std::istream& in)
{
  std::vector<double> xs;
  std::vector<double> ys;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#')
      continue;
    const auto fields = split_fields(text);
    if (fields.size() != 2)
      throw ParseError("expected 2 columns, found " + std::to_string(fields.size()), line);
    const double x = parse_double(fields[0], line);
    const double y = parse_double(fields[1], line);
    if (!std::isfinite(x) || !std::isfinite(y))
      throw ParseError("values must be finite", line);
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2)
    throw ParseError("at least 2 data rows are required, found " + std::to_string(xs.size()), 0);
  return Sample(std::move(xs), std::move(ys));
}

Sample read_data_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path.string(), 0);
  return parse_data(in);
}

std::string format_number(double x)
{
  if (!std::isfinite(x))
    return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string results_csv(std::span<const CellSummary> rows, bool with_reduction)
{
  std::string out = with_reduction ? simulate_header : sweep_header;
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.theta) + ',' + std::to_string(r.n) + ',' + format_number(r.p) + ',' +
           std::to_string(r.m) + ',' + format_number(r.abs_bias_emp) + ',' +
           format_number(r.abs_bias_bern) + ',' + format_number(r.var_emp) + ',' +
           format_number(r.var_bern) + ',' + format_number(r.mse_emp) + ',' +
           format_number(r.mse_bern);
    if (with_reduction)
      out += ',' + format_number(r.mse_reduction_pct);
    out += '\n';
  }
  return out;
}

std::vector<CellSummary> parse_results_csv(std::istream& in)
{
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::string raw;
  if (!std::getline(in, raw))
    throw ParseError("empty results file", 1);
  const auto header = trim(raw);
  bool with_reduction = false;
  if (header == simulate_header)
    with_reduction = true;
  else if (header != sweep_header)
    throw ParseError("unrecognized header", 1);
  const std::size_t columns = with_reduction ? 11 : 10;

  auto number = [&](std::string_view field, std::size_t line) {
    return field == "NA" ? nan : parse_double(field, line);
  };

  std::vector<CellSummary> rows;
  std::size_t line = 1;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty())
      continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = text.find(',', pos);
      fields.push_back(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
      if (comma == std::string_view::npos)
        break;
      pos = comma + 1;
    }
    if (fields.size() != columns)
      throw ParseError("expected " + std::to_string(columns) + " fields", line);

    CellSummary row{};
    row.theta = number(fields[0], line);
    row.n = static_cast<std::uint64_t>(parse_double(fields[1], line));
    row.p = number(fields[2], line);
    row.m = static_cast<std::size_t>(parse_double(fields[3], line));
    row.rho = nan;
    row.abs_bias_emp = number(fields[4], line);
    row.abs_bias_bern = number(fields[5], line);
    row.var_emp = number(fields[6], line);
    row.var_bern = number(fields[7], line);
    row.mse_emp = number(fields[8], line);
    row.mse_bern = number(fields[9], line);
    row.mse_reduction_pct = with_reduction ? number(fields[10], line) : nan;
    rows.push_back(row);
  }
  return rows;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out)
      throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

} // namespace tailrho

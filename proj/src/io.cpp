#include "mixfractal/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "mixfractal/error.hpp"

namespace mixfractal {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

TraceSeries parse_trace(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool first_content = true;
  std::vector<double> stamps;
  std::vector<std::size_t> stamp_lines;
  TraceSeries series;
  series.kind = SeriesKind::increments;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);

    std::vector<double> numbers;
    bool numeric = true;
    for (auto f : fields) {
      const auto v = parse_number(f);
      if (!v) {
        numeric = false;
        break;
      }
      numbers.push_back(*v);
    }

    if (first_content) {
      first_content = false;
      if (fields.size() > 2) {
        throw ParseError(source + ":" + std::to_string(line_no) + ": expected 1 or 2 columns, got " +
                         std::to_string(fields.size()));
      }
      columns = fields.size();
      if (!numeric) continue;  // header
    }
    if (fields.size() != columns) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " columns, got " + std::to_string(fields.size()));
    }
    if (!numeric) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": non-numeric value");
    }
    if (columns == 2) {
      stamps.push_back(numbers[0]);
      stamp_lines.push_back(line_no);
      series.values.push_back(numbers[1]);
    } else {
      series.values.push_back(numbers[0]);
    }
  }

  if (series.values.empty()) throw EmptyInputError(source + ": no data rows");

  if (stamps.size() >= 2) {
    const double spacing = stamps[1] - stamps[0];
    if (!(spacing > 0.0)) {
      throw SpacingError(source + ":" + std::to_string(stamp_lines[0]) +
                         ": timestamps must be strictly increasing");
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(spacing));
    for (std::size_t i = 2; i < stamps.size(); ++i) {
      const double gap = stamps[i] - stamps[i - 1];
      if (std::abs(gap - spacing) > tol) {
        std::ostringstream msg;
        msg << source << ":" << stamp_lines[i - 1] << ": non-uniform timestamps (spacing "
            << spacing << ", then " << gap << ")";
        throw SpacingError(msg.str());
      }
    }
    series.meta["spacing"] = format_double(spacing);
  }
  series.meta["source"] = source;
  return series;
}

TraceSeries ingest_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str(), path.string());
}

void write_trace_csv(const TraceSeries& series, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "value\n";
  for (double v : series.values) out << format_double(v) << '\n';
  finish(out, path);
}

void write_diagram_csv(const EnsembleDiagram& diagram, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "scale_index,log2_statistic,weight,stderr\n";
  for (std::size_t i = 0; i < diagram.mean.points.size(); ++i) {
    const auto& p = diagram.mean.points[i];
    out << format_double(p.log2_scale) << ',' << format_double(p.log2_statistic) << ','
        << format_double(p.weight) << ',' << format_double(diagram.stderrs[i]) << '\n';
  }
  finish(out, path);
}

EnsembleDiagram read_diagram_csv(const std::filesystem::path& path, int order) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  EnsembleDiagram diagram;
  diagram.mean.order = order;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line_no == 1) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 4 columns");
    }
    double v[4];
    for (int i = 0; i < 4; ++i) {
      const auto parsed = parse_number(fields[i]);
      if (!parsed) throw ParseError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value");
      v[i] = *parsed;
    }
    diagram.mean.points.push_back({v[0], v[1], v[2]});
    diagram.stderrs.push_back(v[3]);
  }
  return diagram;
}

void emit_plot_data(const EnsembleDiagram& diagram, const SegmentedFit& fit,
                    const std::filesystem::path& path) {
  auto out = open_for_write(path);
  const auto& points = diagram.mean.points;
  out << "# log2_break=" << format_double(fit.log2_break) << '\n';
  out << "series,scale_index,log2_statistic,in_segment\n";
  for (const auto& p : points) {
    out << "observed," << format_double(p.log2_scale) << ',' << format_double(p.log2_statistic)
        << ",1\n";
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i].log2_scale;
    out << "fit_low," << format_double(x) << ','
        << format_double(fit.slope_low * x + fit.intercept_low) << ','
        << (i < fit.break_index ? 1 : 0) << '\n';
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i].log2_scale;
    out << "fit_high," << format_double(x) << ','
        << format_double(fit.slope_high * x + fit.intercept_high) << ','
        << (i >= fit.break_index ? 1 : 0) << '\n';
  }
  finish(out, path);
}

}  // namespace mixfractal

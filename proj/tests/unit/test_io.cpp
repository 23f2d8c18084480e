#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mixfractal/ensemble.hpp"
#include "mixfractal/error.hpp"
#include "mixfractal/io.hpp"

using namespace mixfractal;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "mixfractal_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

EnsembleDiagram ensemble_of(std::vector<DiagramPoint> points) {
  EnsembleDiagram e;
  e.mean.order = 2;
  e.mean.points = std::move(points);
  e.stderrs.assign(e.mean.points.size(), 0.0);
  e.replicas = 1;
  return e;
}

}  // namespace

TEST(ParseTrace, SingleColumn) {
  const auto s = parse_trace("1.5\n-2\n3e-1\n");
  EXPECT_EQ(s.values, (std::vector<double>{1.5, -2.0, 0.3}));
  EXPECT_EQ(s.kind, SeriesKind::increments);
}

TEST(ParseTrace, HeaderAndTimestamps) {
  const auto s = parse_trace("time,bytes\n0,10\n1,12\n2,9\n");
  EXPECT_EQ(s.values, (std::vector<double>{10, 12, 9}));
  EXPECT_EQ(s.meta.at("spacing"), "1");

  const auto t = parse_trace("0.0, 1\r\n0.5, 2\r\n\r\n1.0, 3\r\n");
  EXPECT_EQ(t.values, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(t.meta.at("spacing"), "0.5");
}

TEST(ParseTrace, UnevenSpacingNamesTheLine) {
  try {
    parse_trace("0,1\n2,2\n3,3\n", "trace.csv");
    FAIL() << "expected SpacingError";
  } catch (const SpacingError& e) {
    EXPECT_NE(std::string(e.what()).find("trace.csv:2"), std::string::npos) << e.what();
    EXPECT_EQ(e.code(), "spacing");
  }
  EXPECT_THROW(parse_trace("1,1\n1,2\n"), SpacingError);
  EXPECT_THROW(parse_trace("2,1\n1,2\n"), SpacingError);
}

TEST(ParseTrace, MalformedInput) {
  try {
    parse_trace("1\n2\nabc\n", "x.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x.csv:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_trace("1,2,3\n"), ParseError);
  EXPECT_THROW(parse_trace("1\n2,3\n"), ParseError);
  EXPECT_THROW(parse_trace("1\nnan\n"), ParseError);
  EXPECT_THROW(parse_trace(""), EmptyInputError);
  EXPECT_THROW(parse_trace("value\n\n"), EmptyInputError);
}

TEST(IngestTrace, MissingFileIsIoError) {
  EXPECT_THROW(ingest_trace(scratch("does_not_exist.csv")), IoError);
}

TEST(TraceCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1e3);
  TraceSeries s;
  for (int i = 0; i < 500; ++i) s.values.push_back(normal(rng));
  s.values.push_back(5e-324);
  s.values.push_back(-1.7976931348623157e308);
  const auto path = scratch("trace.csv");
  write_trace_csv(s, path);
  EXPECT_EQ(ingest_trace(path).values, s.values);
}

TEST(DiagramCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  EnsembleDiagram e;
  for (int i = 0; i < 15; ++i) {
    e.mean.points.push_back({double(i), u(rng), std::ldexp(1.0, 18 - i)});
    e.stderrs.push_back(std::abs(u(rng)) / 7.0);
  }
  const auto path = scratch("diagram.csv");
  write_diagram_csv(e, path);
  EXPECT_EQ(read_lines(path).front(), "scale_index,log2_statistic,weight,stderr");
  const auto back = read_diagram_csv(path, 3);
  EXPECT_EQ(back.mean.order, 3);
  ASSERT_EQ(back.mean.points.size(), e.mean.points.size());
  for (std::size_t i = 0; i < e.mean.points.size(); ++i) {
    EXPECT_EQ(back.mean.points[i].log2_scale, e.mean.points[i].log2_scale);
    EXPECT_EQ(back.mean.points[i].log2_statistic, e.mean.points[i].log2_statistic);
    EXPECT_EQ(back.mean.points[i].weight, e.mean.points[i].weight);
    EXPECT_EQ(back.stderrs[i], e.stderrs[i]);
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-1.5e-7), "-1.5e-07");
}

TEST(PlotData, LayoutAndRowCount) {
  std::vector<DiagramPoint> pts;
  for (int j = 0; j < 7; ++j) pts.push_back({double(j), j <= 3 ? 1.0 * j : 3.0 + 1.4 * (j - 3), 1.0});
  SegmentedFit fit;
  fit.break_index = 3;
  fit.log2_break = 3.0;
  fit.slope_low = 1.0;
  fit.slope_high = 1.4;
  fit.intercept_high = 3.0 - 1.4 * 3.0;
  const auto path = scratch("plot.csv");
  emit_plot_data(ensemble_of(pts), fit, path);

  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 2 + 3 * pts.size());
  EXPECT_EQ(lines[0], "# log2_break=3");
  EXPECT_EQ(lines[1], "series,scale_index,log2_statistic,in_segment");
  EXPECT_EQ(lines[2], "observed,0,0,1");
  EXPECT_EQ(lines[2 + 7], "fit_low,0,0,1");
  EXPECT_EQ(lines[2 + 7 + 3], "fit_low,3,3,0");
  const auto& off_segment = lines[2 + 14 + 2];
  EXPECT_EQ(off_segment.substr(0, 11), "fit_high,2,");
  EXPECT_NEAR(std::stod(off_segment.substr(11)), 1.6, 1e-12);
  EXPECT_EQ(off_segment.back(), '0');
  EXPECT_EQ(lines[2 + 14 + 3], "fit_high,3,3,1");
}

TEST(PlotData, ExactFitReproducesObservations) {
  std::vector<DiagramPoint> pts;
  for (int j = 0; j < 9; ++j) pts.push_back({double(j), j < 4 ? 0.5 * j : 2.0 + 2.0 * (j - 4), 1.0});
  SegmentedFit fit;
  fit.break_index = 4;
  fit.slope_low = 0.5;
  fit.slope_high = 2.0;
  fit.intercept_high = -6.0;
  const auto path = scratch("plot_exact.csv");
  emit_plot_data(ensemble_of(pts), fit, path);

  const auto lines = read_lines(path);
  std::vector<std::string> observed, fitted;
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::string series, x, y, flag;
    std::getline(in, series, ',');
    std::getline(in, x, ',');
    std::getline(in, y, ',');
    std::getline(in, flag, ',');
    if (series == "observed") observed.push_back(x + "," + y);
    if ((series == "fit_low" || series == "fit_high") && flag == "1") fitted.push_back(x + "," + y);
  }
  EXPECT_EQ(observed, fitted);
}

TEST(Writers, UnwritablePathIsIoError) {
  const auto path = scratch("no_such_dir") / "nested" / "out.csv";
  EXPECT_THROW(write_trace_csv(TraceSeries{{1.0}, SeriesKind::increments, {}}, path), IoError);
  EXPECT_THROW(write_diagram_csv(ensemble_of({{0, 0, 1}}), path), IoError);
  EXPECT_THROW(emit_plot_data(ensemble_of({{0, 0, 1}}), SegmentedFit{}, path), IoError);
}

TEST(AverageDiagrams, SingleReplicaHasZeroStderr) {
  ScalingDiagram d;
  d.order = 2;
  d.points = {{0, 1.0, 8}, {1, 2.0, 4}, {2, 3.5, 2}};
  const auto e = average_diagrams({d});
  EXPECT_EQ(e.replicas, 1u);
  ASSERT_EQ(e.mean.points.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(e.mean.points[i].log2_statistic, d.points[i].log2_statistic);
    EXPECT_EQ(e.stderrs[i], 0.0);
  }
}

TEST(AverageDiagrams, MeanAndStandardError) {
  ScalingDiagram a, b, c;
  a.points = {{0, 1.0, 8}, {1, 2.0, 4}, {2, 3.0, 2}};
  b.points = {{0, 2.0, 8}, {1, 4.0, 4}, {2, 3.0, 2}};
  c.points = {{0, 3.0, 8}, {2, 3.0, 2}};  // octave 1 missing here
  const auto e = average_diagrams({a, b, c});
  ASSERT_EQ(e.mean.points.size(), 2u);
  EXPECT_EQ(e.mean.points[0].log2_scale, 0.0);
  EXPECT_DOUBLE_EQ(e.mean.points[0].log2_statistic, 2.0);
  EXPECT_DOUBLE_EQ(e.stderrs[0], 1.0 / std::sqrt(3.0));
  EXPECT_EQ(e.mean.points[1].log2_scale, 2.0);
  EXPECT_EQ(e.stderrs[1], 0.0);
  EXPECT_THROW(average_diagrams({}), InsufficientDataError);
}

/*
 * Copyright 2026 The Agroline Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "agroline/ingest.hpp"

using namespace agroline;
using Catch::Matchers::WithinAbs;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected agroline::Error");
  return ErrorKind::Format;
}

const PlotPolygon& square40() {
  static const PlotPolygon plot({{0, 0}, {40, 0}, {40, 40}, {0, 40}});
  return plot;
}

}  // namespace

TEST_CASE("terrain rows parse into points", "[ingest]") {
  const auto set = parse_level_curves(
      "510662.36\t7920042.53\t100.00\n"
      "510658.26 \t7920032.13\t100.00\r\n"
      "\n"
      "510700.36   7920086.57   99.00\n");
  REQUIRE(set.points.size() == 3);
  CHECK(set.points[0] == Point3{510662.36, 7920042.53, 100.00});
  CHECK(set.bounds.xmin == 510658.26);
  CHECK(set.bounds.xmax == 510700.36);
  CHECK(set.bounds.ymin == 7920032.13);
  CHECK(set.bounds.ymax == 7920086.57);
  const auto runs = set.runs();
  REQUIRE(runs.size() == 2);
  CHECK(runs[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(runs[1] == std::pair<std::size_t, std::size_t>{2, 3});
}

TEST_CASE("terrain parse errors carry line numbers", "[ingest]") {
  CHECK(kind_of([] { parse_level_curves(""); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { parse_level_curves("  \n\t\n"); }) == ErrorKind::EmptyInput);
  try {
    parse_level_curves("1 2 3\n510662.36 7920042.53\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse_level_curves("1 2 3\n\n1 2 abc\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    CHECK(e.line() == 3);
  }
  CHECK(kind_of([] { parse_level_curves("1 2 nan\n"); }) == ErrorKind::Format);
}

TEST_CASE("plot files validate the polygon", "[ingest]") {
  const auto plot = parse_plot("0 0\n40 0\n40 40\n0 40\n");
  CHECK(plot.size() == 4);
  CHECK_THAT(plot.area(), WithinAbs(1600.0, 1e-12));
  CHECK(kind_of([] { parse_plot("0 0\n1 1\n"); }) == ErrorKind::DegeneratePolygon);
  CHECK(kind_of([] { parse_plot("0 0\n2 2\n2 0\n0 2\n"); }) == ErrorKind::InvalidPolygon);
  CHECK(kind_of([] { parse_plot("0 0 1\n2 2 1\n2 0 1\n"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_plot("0 0\n10 0\n10 0\n0 10\n"); }) == ErrorKind::DegeneratePolygon);
  // Closing vertex repeated at the end is a consecutive duplicate.
  CHECK(kind_of([] { parse_plot("0 0\n10 0\n0 10\n0 0\n"); }) == ErrorKind::DegeneratePolygon);
}

TEST_CASE("eplot pairs are validated against the plot", "[ingest]") {
  const auto pairs = parse_eplot("20 0\n20 40\n", square40());
  REQUIRE(pairs.pairs.size() == 1);
  CHECK(pairs.pairs[0].first == Vec2{20, 0});
  CHECK(pairs.pairs[0].second == Vec2{20, 40});

  // Within the half-metre snap band.
  CHECK(parse_eplot("20 0.4\n20 39.7\n", square40()).pairs.size() == 1);

  CHECK(kind_of([] { parse_eplot("20 0\n20 40\n0 20\n", square40()); }) == ErrorKind::Format);
  CHECK(kind_of([] {
          parse_eplot("0 10\n40 10\n0 20\n40 20\n0 30\n40 30\n0 35\n40 35\n", square40());
        }) == ErrorKind::TooManyPairs);
  try {
    parse_eplot("20 -10\n20 40\n", square40());
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("(20.00, -10.00)") != std::string::npos);
  }
  CHECK(kind_of([] { parse_eplot("0 0\n40 40\n40 0\n0 40\n", square40()); }) ==
        ErrorKind::Validation);
  // Chords meeting at a shared boundary point are allowed.
  CHECK(parse_eplot("0 0\n40 20\n0 0\n20 40\n", square40()).pairs.size() == 2);
  CHECK(kind_of([] { parse_eplot("\n", square40()); }) == ErrorKind::EmptyInput);
}

TEST_CASE("formatting at two decimals round-trips", "[ingest][property]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> cents(-100000000, 900000000);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    const int rows = 1 + trial;
    for (int r = 0; r < rows; ++r) {
      text += detail::fixed2(cents(rng) / 100.0) + " " + detail::fixed2(cents(rng) / 100.0) + " " +
              detail::fixed2((cents(rng) % 20000) / 100.0) + "\n";
    }
    const auto set = parse_level_curves(text);
    CHECK(format_level_curves(set) == text);
    const auto again = parse_level_curves(format_level_curves(set));
    CHECK(again.points == set.points);
    for (const auto& p : set.points) {
      CHECK(set.bounds.xmin <= p.x);
      CHECK(p.x <= set.bounds.xmax);
      CHECK(set.bounds.ymin <= p.y);
      CHECK(p.y <= set.bounds.ymax);
    }
  }
  const auto plot = parse_plot("0.10 0.20\n40.00 0.00\n40.00 40.33\n");
  CHECK(format_plot(parse_plot(format_plot(plot))) == format_plot(plot));
}

TEST_CASE("parsers are total over arbitrary input", "[ingest][fuzz]") {
  std::mt19937_64 rng(11);
  const std::string alphabet = "0123456789 .-+e\t\r\nabc,";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> length(0, 80);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    for (int n = length(rng); n > 0; --n) text += alphabet[pick(rng)];
    auto attempt = [&](auto&& fn) {
      try {
        fn();
      } catch (const Error&) {
      }
    };
    REQUIRE_NOTHROW(attempt([&] { parse_level_curves(text); }));
    REQUIRE_NOTHROW(attempt([&] { parse_plot(text); }));
    REQUIRE_NOTHROW(attempt([&] { parse_eplot(text, square40()); }));
  }
}

namespace {

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(AGROLINE_FIXTURES) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("golden terrain fixtures round-trip byte for byte") {
  for (const char* name : {"plane_terrain.txt", "steep_terrain.txt", "flat_terrain.txt"}) {
    const std::string text = fixture_text(name);
    const LevelCurveSet set = parse_level_curves(text);
    const std::string again = format_level_curves(set);
    CHECK(again == text);
    CHECK(parse_level_curves(again).points == set.points);
  }
}

TEST_CASE("golden plot and eplot fixtures round-trip byte for byte") {
  const std::string plot_text = fixture_text("l_plot.txt");
  const PlotPolygon plot = parse_plot(plot_text);
  CHECK(format_plot(plot) == plot_text);
  CHECK(format_plot(parse_plot(format_plot(plot))) == plot_text);
  const std::string square = fixture_text("square_plot.txt");
  CHECK(format_plot(parse_plot(square)) == square);
  for (const char* name : {"l_plot.eplot", "l_bad.eplot"}) {
    const std::string text = fixture_text(name);
    const SubdivisionPairs pairs = parse_eplot(text, plot);
    CHECK(format_eplot(pairs) == text);
    CHECK(parse_eplot(format_eplot(pairs), plot).pairs == pairs.pairs);
  }
}

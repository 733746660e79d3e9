#include <doctest.h>

#include <algorithm>

#include "tickvar/errors.hpp"
#include "tickvar/ticks.hpp"

using namespace tickvar;

namespace {

TickSeries make_series(std::vector<Timestamp> ts, std::vector<double> prices) {
  std::vector<TickPoint> pts;
  for (std::size_t i = 0; i < ts.size(); ++i) pts.push_back({ts[i], prices[i]});
  return TickSeries(std::move(pts));
}

}  // namespace

TEST_CASE("parse_csv reads plain rows") {
  const auto s = parse_csv("0,100\n1000,101");
  REQUIRE(s.size() == 2);
  CHECK(s.start() == 0);
  CHECK(s.end() == 1000);
  CHECK(s[0].price == 100.0);
  CHECK(s[1].price == 101.0);
}

TEST_CASE("parse_csv skips a header and keeps the last duplicate") {
  const auto s = parse_csv("t,p\n0,100\n0,99\n1000,101");
  REQUIRE(s.size() == 2);
  CHECK(s[0].price == 99.0);
}

TEST_CASE("parse_csv handles CRLF, blank lines and unsorted rows") {
  const auto s = parse_csv("timestamp,price\r\n\r\n2000,3\r\n0,1\r\n1000,2\r\n");
  REQUIRE(s.size() == 3);
  CHECK(s[0].t == 0);
  CHECK(s[2].price == 3.0);
}

TEST_CASE("parse_csv accepts RFC 3339 timestamps") {
  const auto s = parse_csv("1970-01-01T00:00:01Z,10\n1970-01-01T00:00:01.5+00:00,11\n"
                           "1970-01-01T01:00:02-01:00,12\n");
  REQUIRE(s.size() == 3);
  CHECK(s[0].t == 1000);
  CHECK(s[1].t == 1500);
  CHECK(s[2].t == 2 * 3600 * 1000 + 2000);
  CHECK(parse_rfc3339("2024-02-29T12:00:00.123456Z") == 1709208000123);
  CHECK_THROWS_AS(parse_rfc3339("2023-02-29T12:00:00Z"), InputError);
  CHECK_THROWS_AS(parse_rfc3339("2023-01-01T12:00:00"), InputError);
}

TEST_CASE("parse_csv errors") {
  SUBCASE("fewer than two points") { CHECK_THROWS_AS(parse_csv("0,100"), InputError); }
  SUBCASE("duplicates collapse to one point") {
    CHECK_THROWS_AS(parse_csv("5,100\n5,101"), InputError);
  }
  SUBCASE("non-positive price reports the line") {
    try {
      parse_csv("t,p\n0,100\n1000,0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("malformed row reports the line") {
    try {
      parse_csv("0,100\n1000,abc\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_csv("0,100\nnot a row\n2000,1"), ParseError);
    CHECK_THROWS_AS(parse_csv("0,100\nxx,1\n"), ParseError);
  }
}

TEST_CASE("parse -> serialize -> parse is the identity on canonical CSV") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = synthesize({.n_ticks = 50 + seed * 7, .drift = 0.1, .jump_scale = 2.0}, seed);
    const auto text = to_csv(s);
    const auto back = parse_csv(text);
    CHECK(back == s);
    CHECK(to_csv(back) == text);
  }
}

TEST_CASE("synthesize contract") {
  const auto two = synthesize({.n_ticks = 2, .drift = 0.0, .jump_scale = 1.0}, 7);
  REQUIRE(two.size() == 2);
  CHECK(two[0].price != two[1].price);

  const auto a = synthesize({.n_ticks = 500, .drift = 0.0, .jump_scale = 1.0}, 42);
  const auto b = synthesize({.n_ticks = 500, .drift = 0.0, .jump_scale = 1.0}, 42);
  CHECK(to_csv(a) == to_csv(b));
  const auto c = synthesize({.n_ticks = 500, .drift = 0.0, .jump_scale = 1.0}, 43);
  CHECK(to_csv(a) != to_csv(c));

  const auto big = synthesize({.n_ticks = 10'000, .drift = 0.01, .jump_scale = 1.0}, 3);
  std::size_t ups = 0, downs = 0;
  for (std::size_t i = 1; i < big.size(); ++i) {
    CHECK_FALSE(big[i].price == big[i - 1].price);
    (big[i].price > big[i - 1].price ? ups : downs)++;
  }
  CHECK(ups > 0);
  CHECK(downs > 0);

  CHECK_THROWS_AS(synthesize({.n_ticks = 1}, 0), DomainError);
  CHECK_THROWS_AS(synthesize({.n_ticks = 10, .drift = 0.0, .jump_scale = 0.0}, 0), DomainError);
}

TEST_CASE("partition into equal halves") {
  const auto s = make_series({0, 500, 1000, 1500, 2000}, {1, 2, 3, 4, 5});
  const auto p = partition(s, 1);
  CHECK(p.boundaries == std::vector<Timestamp>{0, 1000, 2000});
  CHECK(p.segment_count == 2);
  CHECK(p.transitions() == 1);
  // The tick at 1000 sits on the boundary and belongs to the left segment.
  CHECK(p.tick_ranges[0] == std::pair<std::size_t, std::size_t>{0, 3});
  CHECK(p.tick_ranges[1] == std::pair<std::size_t, std::size_t>{3, 5});
}

TEST_CASE("partition of four ticks into two segments of two") {
  for (Timestamp scale : {1, 1000}) {
    const auto s = make_series({0, scale, 2 * scale, 3 * scale}, {1, 2, 3, 4});
    const auto p = partition(s, 1);
    CHECK(p.tick_ranges[0].second - p.tick_ranges[0].first == 2);
    CHECK(p.tick_ranges[1].second - p.tick_ranges[1].first == 2);
  }
}

TEST_CASE("partition rejects sparse data") {
  const auto s = make_series({0, 1000, 2000, 3000, 4000}, {1, 2, 3, 4, 5});
  CHECK_THROWS_AS(partition(s, s.size()), EmptySegmentError);
  CHECK_THROWS_AS(partition(s, 0), DomainError);
  // A gap leaves the middle segment empty.
  const auto gappy = make_series({0, 1, 2, 97, 98, 99}, {1, 2, 3, 4, 5, 6});
  try {
    partition(gappy, 2);
    FAIL("expected EmptySegmentError");
  } catch (const EmptySegmentError& e) {
    CHECK(e.segment() == 1);
  }
}

TEST_CASE("partition widths sum to the span and agree within one millisecond") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = synthesize({.n_ticks = 400, .drift = 0.0, .jump_scale = 1.0}, seed);
    for (std::size_t n : {1u, 2u, 5u, 9u, 16u}) {
      const auto p = partition(s, n);
      Timestamp total = 0;
      for (std::size_t k = 0; k + 1 < p.boundaries.size(); ++k) {
        total += p.boundaries[k + 1] - p.boundaries[k];
      }
      CHECK(total == s.end() - s.start());
      CHECK(p.boundaries.front() == s.start());
      CHECK(p.boundaries.back() == s.end());
      CHECK(p.cover_tolerance < 1.0);
      CHECK(std::is_sorted(p.boundaries.begin(), p.boundaries.end()));
      // Every tick lands in exactly one segment.
      std::size_t covered = 0;
      for (const auto& [b, e] : p.tick_ranges) covered += e - b;
      CHECK(covered == s.size());
    }
  }
}

TEST_CASE("TickSeries invariants") {
  CHECK_THROWS_AS(make_series({0}, {1}), InputError);
  CHECK_THROWS_AS(make_series({0, 0}, {1, 2}), InputError);
  CHECK_THROWS_AS(make_series({1, 0}, {1, 2}), InputError);
  CHECK_THROWS_AS(make_series({0, 1}, {1, -2}), InputError);
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tickvar {

/// Milliseconds since the Unix epoch.
using Timestamp = std::int64_t;

struct TickPoint {
  Timestamp t;
  double price;

  friend bool operator==(const TickPoint&, const TickPoint&) = default;
};

/// Time-ordered samples of a price function on [a, b].
///
/// Construction validates the invariants: at least two points, timestamps
/// strictly increasing, every price finite and strictly positive. Instances
/// are immutable afterwards.
class TickSeries {
 public:
  explicit TickSeries(std::vector<TickPoint> points);

  std::span<const TickPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const TickPoint& operator[](std::size_t i) const { return points_[i]; }

  Timestamp start() const noexcept { return points_.front().t; }
  Timestamp end() const noexcept { return points_.back().t; }

  std::vector<double> prices() const;

  /// Contiguous sub-series `[first, first + count)`; requires count >= 2.
  TickSeries slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const TickSeries&, const TickSeries&) = default;

 private:
  std::vector<TickPoint> points_;
};

/// Equal-width elementary segments covering [a, b].
///
/// `boundaries` has `segment_count + 1` entries. Segment k is the half-open
/// interval (boundaries[k], boundaries[k+1]], except that segment 0 also
/// holds the tick at `a`; a tick sitting on an inner boundary therefore
/// belongs to the segment on its left. `tick_ranges[k]` is the
/// [begin, end) index range of the ticks in segment k.
struct SegmentPartition {
  std::vector<Timestamp> boundaries;
  std::vector<std::pair<std::size_t, std::size_t>> tick_ranges;
  std::size_t segment_count = 0;
  /// Largest deviation of a segment width from (b - a) / segment_count, in ms.
  double cover_tolerance = 0.0;

  /// Number of transitions between neighbouring segments.
  std::size_t transitions() const noexcept { return segment_count - 1; }
};

/// Parse `timestamp,price` rows. A header row is accepted as the first
/// non-blank line. Timestamps are integer epoch milliseconds or RFC 3339.
/// Rows are stably sorted by time and duplicate timestamps keep the last
/// price seen. Throws ParseError (with line number) or InputError.
TickSeries parse_csv(std::string_view text);

/// Parse an RFC 3339 date-time ("2024-03-01T12:00:00.250Z",
/// "2024-03-01 12:00:00+02:00") into epoch milliseconds. Sub-millisecond
/// digits are truncated. Throws InputError.
Timestamp parse_rfc3339(std::string_view text);

/// Canonical CSV: a `timestamp,price` header, then one row per tick with the
/// shortest round-trip decimal form of the price.
std::string to_csv(const TickSeries& series);

struct SynthConfig {
  std::size_t n_ticks = 1000;
  /// Mean log-price step in units of the jump scale.
  double drift = 0.0;
  /// Typical log-price jump, in thousandths.
  double jump_scale = 1.0;
  double start_price = 100.0;
};

/// Seeded tick generator. Every step is a discrete jump, so consecutive
/// prices are never equal. Bitwise deterministic per seed.
TickSeries synthesize(const SynthConfig& config, std::uint64_t seed);

/// Split [a, b] into `transitions + 1` equal-width segments.
/// Throws EmptySegmentError if any segment has no tick.
SegmentPartition partition(const TickSeries& series, std::size_t transitions);

}  // namespace tickvar

#include "tickvar/ticks.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>

#include "tickvar/errors.hpp"
#include "tickvar/random.hpp"

namespace tickvar {

namespace {

std::string_view trim(std::string_view s) {
  // Includes the UTF-8 byte-order mark bytes.
  constexpr std::string_view ws = " \t\r\n\xEF\xBB\xBF";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_digits(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

bool parse_timestamp(std::string_view s, Timestamp& out) {
  if (parse_number(s, out)) return true;
  if (s.size() < 19 || s[4] != '-') return false;
  try {
    out = parse_rfc3339(s);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

}  // namespace

TickSeries::TickSeries(std::vector<TickPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InputError("a tick series needs at least 2 points, got " +
                     std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double p = points_[i].price;
    if (!std::isfinite(p) || p <= 0.0) {
      throw InputError("tick " + std::to_string(i) + " has a non-positive price");
    }
    if (i > 0 && points_[i].t <= points_[i - 1].t) {
      throw InputError("tick timestamps must be strictly increasing (index " +
                       std::to_string(i) + ")");
    }
  }
}

std::vector<double> TickSeries::prices() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.price);
  return out;
}

TickSeries TickSeries::slice(std::size_t first, std::size_t count) const {
  if (first + count > points_.size()) {
    throw InputError("slice out of range");
  }
  return TickSeries({points_.begin() + static_cast<std::ptrdiff_t>(first),
                     points_.begin() + static_cast<std::ptrdiff_t>(first + count)});
}

Timestamp parse_rfc3339(std::string_view s) {
  using namespace std::chrono;
  auto fail = [&]() -> Timestamp {
    throw InputError("invalid RFC 3339 timestamp '" + std::string(s) + "'");
  };

  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!parse_digits(s, 0, 4, year) || s.size() < 19 || s[4] != '-' ||
      !parse_digits(s, 5, 2, month) || s[7] != '-' || !parse_digits(s, 8, 2, day) ||
      (s[10] != 'T' && s[10] != 't' && s[10] != ' ') || !parse_digits(s, 11, 2, hour) ||
      s[13] != ':' || !parse_digits(s, 14, 2, minute) || s[16] != ':' ||
      !parse_digits(s, 17, 2, second)) {
    return fail();
  }
  if (hour > 23 || minute > 59 || second > 60) return fail();

  std::size_t pos = 19;
  std::int64_t millis = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t digits_begin = pos;
    int scale = 100;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      millis += scale * (s[pos] - '0');
      scale /= 10;
      ++pos;
    }
    if (pos == digits_begin) return fail();
  }

  std::int64_t offset_minutes = 0;
  if (pos >= s.size()) return fail();
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    int oh = 0, om = 0;
    if (!parse_digits(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
        !parse_digits(s, pos + 4, 2, om) || oh > 23 || om > 59) {
      return fail();
    }
    offset_minutes = (s[pos] == '+' ? 1 : -1) * (oh * 60 + om);
    pos += 6;
  } else {
    return fail();
  }
  if (pos != s.size()) return fail();

  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return fail();
  const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
  const std::int64_t secs = static_cast<std::int64_t>(days_since_epoch) * 86400 +
                            hour * 3600 + minute * 60 + second - offset_minutes * 60;
  return secs * 1000 + millis;
}

TickSeries parse_csv(std::string_view text) {
  std::vector<TickPoint> rows;
  bool seen_content = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    line = trim(line);
    if (line.empty()) continue;
    const bool first_row = !seen_content;
    seen_content = true;

    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      if (first_row) continue;
      throw ParseError(line_no, "expected 'timestamp,price'");
    }
    const auto ts_field = trim(line.substr(0, comma));
    const auto price_field = trim(line.substr(comma + 1));

    Timestamp t = 0;
    if (!parse_timestamp(ts_field, t)) {
      if (first_row) continue;  // header
      throw ParseError(line_no, "invalid timestamp '" + std::string(ts_field) + "'");
    }
    double price = 0.0;
    if (!parse_number(price_field, price) || !std::isfinite(price)) {
      throw ParseError(line_no, "invalid price '" + std::string(price_field) + "'");
    }
    if (price <= 0.0) {
      throw ParseError(line_no, "non-positive price '" + std::string(price_field) + "'");
    }
    rows.push_back({t, price});
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const TickPoint& a, const TickPoint& b) { return a.t < b.t; });
  std::vector<TickPoint> points;
  points.reserve(rows.size());
  for (const auto& row : rows) {
    if (!points.empty() && points.back().t == row.t) {
      points.back().price = row.price;
    } else {
      points.push_back(row);
    }
  }
  if (points.size() < 2) {
    throw InputError("fewer than 2 distinct timestamps in tick data");
  }
  return TickSeries(std::move(points));
}

std::string to_csv(const TickSeries& series) {
  std::string out = "timestamp,price\n";
  char buf[64];
  for (const auto& p : series.points()) {
    char* end = std::to_chars(buf, buf + sizeof buf, p.t).ptr;
    *end++ = ',';
    end = std::to_chars(end, buf + sizeof buf, p.price).ptr;
    *end++ = '\n';
    out.append(buf, end);
  }
  return out;
}

TickSeries synthesize(const SynthConfig& config, std::uint64_t seed) {
  if (config.n_ticks < 2) throw DomainError("synthesize: n_ticks must be >= 2");
  if (!(config.jump_scale > 0.0) || !std::isfinite(config.jump_scale)) {
    throw DomainError("synthesize: jump_scale must be positive");
  }
  if (!std::isfinite(config.drift)) throw DomainError("synthesize: drift must be finite");
  if (!(config.start_price > 0.0) || !std::isfinite(config.start_price)) {
    throw DomainError("synthesize: start_price must be positive");
  }

  rng::Engine eng(rng::derive_seed(seed, 0));
  std::vector<TickPoint> points;
  points.reserve(config.n_ticks);
  points.push_back({0, config.start_price});

  const double scale = config.jump_scale * 1e-3;
  while (points.size() < config.n_ticks) {
    const TickPoint& prev = points.back();
    const Timestamp gap = 1 + static_cast<Timestamp>(rng::uniform01(eng) * 2000.0);
    const double sign = (eng() & 1) ? 1.0 : -1.0;
    const double magnitude = 0.5 + rng::uniform01(eng);
    const double next = prev.price * std::exp(scale * (config.drift + sign * magnitude));
    if (!std::isfinite(next) || next <= 0.0 || next == prev.price) continue;
    points.push_back({prev.t + gap, next});
  }
  return TickSeries(std::move(points));
}

SegmentPartition partition(const TickSeries& series, std::size_t transitions) {
  if (transitions < 1) throw DomainError("partition: need at least 1 transition");
  const std::size_t segments = transitions + 1;
  if (segments > series.size()) {
    throw EmptySegmentError(series.size(),
                            "partition: " + std::to_string(segments) + " segments but only " +
                                std::to_string(series.size()) +
                                " ticks; tick data too sparse for n = " +
                                std::to_string(transitions));
  }

  const Timestamp a = series.start();
  const Timestamp b = series.end();
  const __int128 span = static_cast<__int128>(b) - a;
  const double ideal = static_cast<double>(span) / static_cast<double>(segments);

  SegmentPartition part;
  part.segment_count = segments;
  part.boundaries.reserve(segments + 1);
  for (std::size_t k = 0; k <= segments; ++k) {
    part.boundaries.push_back(
        static_cast<Timestamp>(a + span * static_cast<__int128>(k) / static_cast<__int128>(segments)));
  }
  for (std::size_t k = 0; k < segments; ++k) {
    const double width = static_cast<double>(part.boundaries[k + 1] - part.boundaries[k]);
    part.cover_tolerance = std::max(part.cover_tolerance, std::abs(width - ideal));
  }

  const auto pts = series.points();
  auto after = [&](Timestamp bound) {
    return static_cast<std::size_t>(
        std::upper_bound(pts.begin(), pts.end(), bound,
                         [](Timestamp v, const TickPoint& p) { return v < p.t; }) -
        pts.begin());
  };
  part.tick_ranges.reserve(segments);
  for (std::size_t k = 0; k < segments; ++k) {
    const std::size_t begin = k == 0 ? 0 : after(part.boundaries[k]);
    const std::size_t end = after(part.boundaries[k + 1]);
    if (begin >= end) {
      throw EmptySegmentError(k, "partition: segment " + std::to_string(k) + " of " +
                                     std::to_string(segments) +
                                     " holds no tick; tick data too sparse for n = " +
                                     std::to_string(transitions));
    }
    part.tick_ranges.emplace_back(begin, end);
  }
  return part;
}

}  // namespace tickvar

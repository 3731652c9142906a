#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "secpur/error.hpp"
#include "secpur/pursuit.hpp"
#include "secpur/random.hpp"
#include "secpur/topotrace.hpp"

using namespace secpur;

namespace {

const CavitySample& cavity4() {
  static const CavitySample s = fixture::cavity(fixture::kCavity4);
  return s;
}

TopotraceSet synthetic(const std::vector<std::vector<double>>& values, double alpha_max) {
  TopotraceSet t{random_frame(4, 1), {}, {}};
  for (const auto& row : values) {
    const int steps = static_cast<int>(row.size() / 2);
    std::vector<TracePoint> trace;
    for (int j = -steps; j <= steps; ++j) {
      IndexValue v;
      v.value = row[static_cast<std::size_t>(j + steps)];
      trace.push_back({alpha_max * j / steps, v});
    }
    t.traces.push_back(trace);
  }
  return t;
}

}  // namespace

TEST_CASE("TopotraceConfig::validate") {
  CHECK_NOTHROW(TopotraceConfig{}.validate());
  CHECK_THROWS_AS((TopotraceConfig{0, 1.0, 20, 0}).validate(), ConfigError);
  CHECK_THROWS_AS((TopotraceConfig{10, 0.0, 20, 0}).validate(), ConfigError);
  CHECK_THROWS_AS((TopotraceConfig{10, 2.0, 20, 0}).validate(), ConfigError);
  CHECK_THROWS_AS((TopotraceConfig{10, 1.0, 0, 0}).validate(), ConfigError);
}

TEST_CASE("topotrace shape, shared center and peak at the optimum") {
  const auto& s = cavity4();
  const TopotraceConfig tc{12, std::numbers::pi / 2, 8, 3};
  const TopotraceSet t = topotrace(s.data, s.informative_plane, fixture::defaults(), tc);
  REQUIRE(t.traces.size() == 12);
  CHECK(t.center() == 8);
  const double at_start = evaluate_frame(s.data, s.informative_plane, fixture::defaults()).value;
  for (const auto& trace : t.traces) {
    REQUIRE(trace.size() == 17);
    CHECK(trace[8].alpha == 0.0);
    CHECK(trace[8].index.value == at_start);
    CHECK(trace.front().alpha == doctest::Approx(-std::numbers::pi / 2));
    CHECK(trace.back().alpha == doctest::Approx(std::numbers::pi / 2));
    for (std::size_t j = 1; j < trace.size(); ++j) CHECK(trace[j].alpha > trace[j - 1].alpha);
  }
  // the centre is the best point on most traces
  int peaked = 0;
  for (const auto& trace : t.traces) {
    const auto best = std::max_element(trace.begin(), trace.end(),
                                       [](const TracePoint& a, const TracePoint& b) { return a.index.value < b.index.value; });
    peaked += std::abs(best->alpha) < 0.3;
  }
  CHECK(peaked >= 10);
}

TEST_CASE("topotrace is reproducible and seeded") {
  const auto& s = cavity4();
  const TopotraceConfig tc{3, 0.8, 4, 7};
  const TopotraceSet a = topotrace(s.data, s.informative_plane, fixture::defaults(), tc);
  const TopotraceSet b = topotrace(s.data, s.informative_plane, fixture::defaults(), tc);
  TopotraceConfig other = tc;
  other.seed = 8;
  const TopotraceSet c = topotrace(s.data, s.informative_plane, fixture::defaults(), other);
  bool differs = false;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(a.traces[i][j].index.raw == b.traces[i][j].index.raw);
      differs |= a.traces[i][j].index.raw != c.traces[i][j].index.raw;
    }
  }
  CHECK(differs);
}

TEST_CASE("topotrace from an uninformative start has no peak at zero") {
  const auto& s = cavity4();
  const TopotraceSet t = topotrace(s.data, s.uninformative_plane, fixture::defaults(), {20, std::numbers::pi / 2, 6, 4});
  int higher = 0;
  for (const auto& trace : t.traces) {
    const double centre = trace[6].index.value;
    higher += std::any_of(trace.begin(), trace.end(), [&](const TracePoint& p) { return p.index.value > centre; });
  }
  CHECK(higher >= 15);
}

TEST_CASE("squint_summary") {
  // peak 1 at the centre, linear decay to 0 at |alpha| = 1
  const TopotraceSet lin = synthetic({{0.0, 0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25, 0.0}}, 1.0);
  CHECK(squint_summary(lin, 0.75).median == doctest::Approx(0.25));
  CHECK(squint_summary(lin, 0.5).median == doctest::Approx(0.5));

  // a second, wider trace; median of two is their mean
  const TopotraceSet two = synthetic({{0.0, 0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25, 0.0},
                                      {0.8, 0.8, 0.8, 0.8, 1.0, 0.8, 0.8, 0.8, 0.8}},
                                     1.0);
  const SquintSummary ss = squint_summary(two, 0.75);
  CHECK(ss.per_trace[1] == doctest::Approx(1.0));
  CHECK(ss.median == doctest::Approx(0.625));

  const TopotraceSet flat = synthetic({{0.0, 0.0, 0.0}}, 1.0);
  CHECK_THROWS_WITH_AS(squint_summary(flat), "no structure at start", NumericError);
  CHECK_THROWS_AS(squint_summary(lin, 1.5), ConfigError);
}

TEST_CASE("spearman") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {1, 4, 9, 16}) == doctest::Approx(1.0));  // monotone, not linear
  // ties: average ranks; textbook value for this pair
  const double r = spearman({1, 2, 2, 3}, {1, 3, 2, 4});
  // ranks x = 1, 2.5, 2.5, 4; y = 1, 3, 2, 4
  const double mx = 2.5, my = 2.5;
  const double rx[] = {1, 2.5, 2.5, 4}, ry[] = {1, 3, 2, 4};
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  CHECK(r == doctest::Approx(sxy / std::sqrt(sxx * syy)));
  CHECK(spearman({1, 1, 1}, {1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(spearman({1}, {1}), ConfigError);
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), ConfigError);
}

TEST_CASE("uniform data gives flat traces") {
  const Dataset d = sample_ball(20000, 4, 1.0, 5);
  const TopotraceSet t = topotrace(d, random_frame(4, 6), fixture::defaults(), {5, std::numbers::pi / 2, 5, 1});
  for (const auto& trace : t.traces) {
    for (const auto& p : trace) CHECK(p.index.value < 0.15);
  }
}

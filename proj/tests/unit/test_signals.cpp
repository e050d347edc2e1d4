#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "sutte/signals.hpp"
#include "sutte/sutte.hpp"
#include "test_support.hpp"

namespace sutte {
namespace {

struct Pair {
  IndicatorSeries l;
  IndicatorSeries h;
};

// SUTTE%L/%H pair starting at bar 2 with l - h equal to `spread`.
Pair pair_from_spread(const std::vector<double>& spread, double base = 100.0, double scale = 1.0) {
  Pair p;
  p.l.name = kSutteLowName;
  p.h.name = kSutteHighName;
  p.l.valid_from = p.h.valid_from = 2;
  p.l.values.resize(static_cast<Eigen::Index>(spread.size()));
  p.h.values.resize(static_cast<Eigen::Index>(spread.size()));
  for (std::size_t i = 0; i < spread.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    p.h.values(j) = base * scale;
    p.l.values(j) = (base + spread[i]) * scale;
    p.l.dates.push_back(testing::nth_day(i + 1));
  }
  p.h.dates = p.l.dates;
  return p;
}

// Brute-force reference: an event at position i iff its strict sign differs
// from the most recent strict sign before it (0 if none) and i is not the first.
std::vector<std::pair<std::size_t, SignalKind>> naive_events(const Eigen::VectorXd& l, const Eigen::VectorXd& h,
                                                            std::size_t valid_from) {
  std::vector<std::pair<std::size_t, SignalKind>> out;
  auto sgn = [&](Eigen::Index i) { return (l(i) > h(i)) - (l(i) < h(i)); };
  for (Eigen::Index i = 1; i < l.size(); ++i) {
    if (sgn(i) == 0) continue;
    int prev = 0;
    for (Eigen::Index j = i - 1; j >= 0; --j) {
      if (sgn(j) != 0) {
        prev = sgn(j);
        break;
      }
    }
    if (sgn(i) != prev) {
      out.emplace_back(valid_from + static_cast<std::size_t>(i), sgn(i) > 0 ? SignalKind::Buy : SignalKind::Sell);
    }
  }
  return out;
}

TEST(DetectCrossovers, BuyOnUpwardCross) {
  const auto p = pair_from_spread({-1, -1, 2});
  const auto events = detect_crossovers(p.l, p.h);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, SignalKind::Buy);
  EXPECT_EQ(events[0].bar_index, 4u);  // third index of the domain
  EXPECT_EQ(events[0].date, p.l.dates[2]);
  EXPECT_GT(events[0].l_value, events[0].h_value);
}

TEST(DetectCrossovers, EqualityRunDefersSell) {
  const auto p = pair_from_spread({1, 0, 0, -3});
  const auto events = detect_crossovers(p.l, p.h);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, SignalKind::Sell);
  EXPECT_EQ(events[0].bar_index, 5u);  // fourth index of the domain
  EXPECT_GT(events[0].h_value, events[0].l_value);
}

TEST(DetectCrossovers, NoCrossNoEvents) {
  EXPECT_TRUE(detect_crossovers(pair_from_spread({1, 2, 0.5, 3}).l, pair_from_spread({1, 2, 0.5, 3}).h).empty());
}

TEST(DetectCrossovers, TouchAndReturnIsNotACross) {
  const auto p = pair_from_spread({1, 0, 1, -1});
  const auto events = detect_crossovers(p.l, p.h);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, SignalKind::Sell);
}

TEST(DetectCrossovers, NeutralStartFiresOnFirstStrictRegime) {
  const auto p = pair_from_spread({0, 0, 2});
  const auto events = detect_crossovers(p.l, p.h);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, SignalKind::Buy);
}

TEST(DetectCrossovers, MinRegimeBarsDelaysAndFilters) {
  // A one-bar excursion below is filtered at d = 1; the sustained one fires on its confirming bar.
  const auto p = pair_from_spread({1, -1, 1, 1, -1, -1, -1});
  EXPECT_EQ(detect_crossovers(p.l, p.h, 0).size(), 3u);
  const auto events = detect_crossovers(p.l, p.h, 1);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, SignalKind::Sell);
  EXPECT_EQ(events[0].bar_index, 2u + 5u);
  EXPECT_TRUE(detect_crossovers(p.l, p.h, 3).empty());
}

TEST(DetectCrossovers, Errors) {
  auto p = pair_from_spread({1, -1});
  EXPECT_THROW(detect_crossovers(p.h, p.l), DataError);
  auto shorter = pair_from_spread({1});
  EXPECT_THROW(detect_crossovers(p.l, shorter.h), DataError);
  auto shifted = p.h;
  shifted.valid_from = 3;
  EXPECT_THROW(detect_crossovers(p.l, shifted), DataError);
}

TEST(DetectCrossovers, MatchesNaiveScanAndAlternates) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  std::uniform_int_distribution<int> step(-2, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    // Small integer spreads make exact ties common.
    std::vector<double> spread(len(rng));
    for (auto& v : spread) v = step(rng);
    const auto p = pair_from_spread(spread);
    const auto events = detect_crossovers(p.l, p.h);
    const auto expected = naive_events(p.l.values, p.h.values, 2);
    ASSERT_EQ(events.size(), expected.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
      ASSERT_EQ(events[i].bar_index, expected[i].first);
      ASSERT_EQ(events[i].kind, expected[i].second);
      if (i > 0) {
        ASSERT_NE(events[i].kind, events[i - 1].kind);
        ASSERT_LT(events[i - 1].bar_index, events[i].bar_index);
      }
    }
  }
}

TEST(DetectCrossovers, AlternatesForAnyConfirmationLength) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> step(-2, 2);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> spread(2 + trial % 200);
    for (auto& v : spread) v = step(rng);
    const auto p = pair_from_spread(spread);
    const auto events = detect_crossovers(p.l, p.h, static_cast<std::size_t>(trial % 4));
    for (std::size_t i = 1; i < events.size(); ++i) ASSERT_NE(events[i].kind, events[i - 1].kind);
  }
}

TEST(DetectCrossovers, InvariantUnderCommonShiftAndScale) {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> step(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> spread(50);
    for (auto& v : spread) v = step(rng) * 0.25;
    const auto base = pair_from_spread(spread, 100.0, 1.0);
    const auto moved = pair_from_spread(spread, 356.0, 4.0);  // shift and power-of-two scale keep ties exact
    const auto a = detect_crossovers(base.l, base.h);
    const auto b = detect_crossovers(moved.l, moved.h);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a[i].bar_index, b[i].bar_index);
      ASSERT_EQ(a[i].kind, b[i].kind);
    }
  }
}

TEST(DetectCrossovers, OnRealSutteCurves) {
  const auto s = testing::load_fixture("cross_down.csv");
  const auto events = detect_crossovers(sutte_l(s), sutte_h(s));
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, SignalKind::Sell);
  EXPECT_EQ(events[0].bar_index, 5u);
}

TEST(RegimeAt, Classifies) {
  auto p = pair_from_spread({2, 0, -1});
  EXPECT_EQ(regime_at(p.l, p.h, 2), Regime::Bullish);
  EXPECT_EQ(regime_at(p.l, p.h, 3), Regime::Neutral);
  EXPECT_EQ(regime_at(p.l, p.h, 4), Regime::Bearish);
  EXPECT_THROW(regime_at(p.l, p.h, 1), std::out_of_range);
  EXPECT_THROW(regime_at(p.l, p.h, 5), std::out_of_range);

  p.l.values(0) = 14;
  p.h.values(0) = 12;
  EXPECT_EQ(regime_at(p.l, p.h, 2), Regime::Bullish);
  p.l.values(0) = 10;
  p.h.values(0) = 11;
  EXPECT_EQ(regime_at(p.l, p.h, 2), Regime::Bearish);
}

TEST(SignalOutput, CsvJsonAndSummary) {
  const auto p = pair_from_spread({-1, 2, -1});
  const auto events = detect_crossovers(p.l, p.h);
  std::ostringstream csv;
  write_signals_csv(csv, events);
  EXPECT_EQ(csv.str(),
            "date,kind,sutte_l,sutte_h\n2016-01-03,Buy,102,100\n2016-01-04,Sell,99,100\n");
  const auto j = to_json(events);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["kind"], "Buy");
  EXPECT_EQ(j[0]["bar_index"], 3);
  EXPECT_EQ(to_string(summarize(events)), "buys=1 sells=1 first=2016-01-03 last=2016-01-04");
  EXPECT_EQ(to_string(summarize({})), "buys=0 sells=0");
}

}  // namespace
}  // namespace sutte

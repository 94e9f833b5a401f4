#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oesnn/errors.hpp"
#include "oesnn/evaluation.hpp"

namespace oesnn {
namespace {

std::vector<Timestamp> indices(std::size_t from, std::size_t to) {
    std::vector<Timestamp> out;
    for (std::size_t i = from; i <= to; ++i) out.push_back(Timestamp::from_index(i));
    return out;
}

LabelSet windows(std::vector<std::pair<int, int>> ws) {
    LabelSet l;
    l.kind = LabelSet::Kind::windows;
    for (auto [a, b] : ws) l.windows.emplace_back(Timestamp::from_index(a), Timestamp::from_index(b));
    return l;
}

TEST(Timestamp, IsoFormsCompareByInstant) {
    const auto a = Timestamp::parse("2014-04-10 07:15:00");
    const auto b = Timestamp::parse("2014-04-10 07:15:00.000000");
    const auto c = Timestamp::parse("2014-04-10T07:15:01");
    EXPECT_TRUE(a.numeric());
    EXPECT_EQ(a, b);
    EXPECT_LT(b, c);
    EXPECT_LT(Timestamp::parse("2013-12-31 23:59:59"), Timestamp::parse("2014-01-01"));
}

TEST(Timestamp, NumbersCompareNumerically) {
    EXPECT_LT(Timestamp::parse("9"), Timestamp::parse("10"));
    EXPECT_LT(Timestamp::parse("1416722400"), Timestamp::parse("1416726000"));
    EXPECT_FALSE(Timestamp::parse("day-3").numeric());
    EXPECT_LT(Timestamp::parse("day-3"), Timestamp::parse("day-4"));
    EXPECT_FALSE(Timestamp::parse("2014-13-01 00:00:00").numeric());
}

TEST(ExpandLabels, IntervalMembership) {
    const auto got = expand_labels(windows({{10, 12}}), indices(9, 13));
    EXPECT_EQ(got, (std::vector<bool>{false, true, true, true, false}));
}

TEST(ExpandLabels, NoWindowsNoPositives) {
    const auto got = expand_labels(windows({}), indices(0, 20));
    EXPECT_EQ(std::count(got.begin(), got.end(), true), 0);
}

TEST(ExpandLabels, OverlapsNormaliseToUnion) {
    const auto ts = indices(5, 20);
    const auto a = expand_labels(windows({{10, 12}, {11, 14}}), ts);
    const auto b = expand_labels(windows({{10, 14}}), ts);
    EXPECT_EQ(a, b);
    LabelSet l = windows({{11, 14}, {10, 12}});
    l.normalize();
    ASSERT_EQ(l.windows.size(), 1u);
    EXPECT_EQ(l.windows[0].first.value(), 10);
    EXPECT_EQ(l.windows[0].second.value(), 14);
}

TEST(ExpandLabels, RandomWindowsMatchMembershipOracle) {
    std::mt19937_64 gen(51);
    std::uniform_int_distribution<int> pos(0, 200), len(0, 15), count(0, 8);
    const auto ts = indices(0, 220);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::pair<int, int>> ws;
        const int n = count(gen);
        for (int k = 0; k < n; ++k) {
            const int s = pos(gen);
            ws.emplace_back(s, s + len(gen));
        }
        const auto got = expand_labels(windows(ws), ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            bool in = false;
            for (auto [a, b] : ws) in = in || (static_cast<int>(i) >= a && static_cast<int>(i) <= b);
            ASSERT_EQ(got[i], in);
        }
        LabelSet l = windows(ws);
        l.normalize();
        for (std::size_t k = 1; k < l.windows.size(); ++k) ASSERT_LT(l.windows[k - 1].second, l.windows[k].first);
    }
}

TEST(ExpandLabels, PointLabels) {
    LabelSet l;
    l.kind = LabelSet::Kind::points;
    l.points = {Timestamp::from_index(3), Timestamp::from_index(1)};
    EXPECT_EQ(expand_labels(l, indices(0, 4)), (std::vector<bool>{false, true, false, true, false}));
}

TEST(ExpandLabels, UnsortedTimestampsRejected) {
    auto ts = indices(0, 5);
    std::swap(ts[2], ts[3]);
    EXPECT_THROW(expand_labels(windows({}), ts), InputError);
    ts = indices(0, 5);
    ts[3] = ts[2];
    EXPECT_THROW(expand_labels(windows({}), ts), InputError);
}

TEST(ExpandLabels, InvertedWindowRejected) {
    EXPECT_THROW(expand_labels(windows({{5, 3}}), indices(0, 9)), InputError);
}

TEST(Score, PerfectDetector) {
    const std::vector<bool> truth = {false, true, true, false, true};
    const auto m = score(truth, truth);
    EXPECT_EQ(m.precision, 1.0);
    EXPECT_EQ(m.recall, 1.0);
    EXPECT_EQ(m.f_measure, 1.0);
}

TEST(Score, NothingToFindNothingFlagged) {
    const std::vector<bool> none(50, false);
    const auto m = score(none, none);
    EXPECT_EQ(m.precision, 0.0);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.f_measure, 0.0);
    EXPECT_EQ(m.counts.tn, 50u);
}

TEST(Score, HandEvaluatedCounts) {
    const auto m = metrics_from_counts({3, 1, 2, 10});
    EXPECT_DOUBLE_EQ(m.precision, 0.75);
    EXPECT_DOUBLE_EQ(m.recall, 0.6);
    EXPECT_NEAR(m.f_measure, 0.6667, 1e-4);
    EXPECT_NEAR(m.f_measure, 2 * 0.45 / 1.35, 1e-12);
}

TEST(Score, LengthMismatchRejected) {
    EXPECT_THROW(score(std::vector<bool>(3), std::vector<bool>(4)), std::invalid_argument);
}

TEST(Score, SkipLeavesPrefixOut) {
    const std::vector<bool> flags = {true, true, false, false};
    const std::vector<bool> truth = {false, false, true, false};
    const auto m = score(flags, truth, 2);
    EXPECT_EQ(m.counts, (ConfusionCounts{0, 0, 1, 1}));
}

TEST(Score, RandomisedInvariants) {
    std::mt19937_64 gen(53);
    std::uniform_int_distribution<std::size_t> len(1, 300);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = len(gen);
        std::vector<bool> flags(n), truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            flags[i] = coin(gen);
            truth[i] = coin(gen);
        }
        const auto m = score(flags, truth);
        ASSERT_EQ(m.counts.total(), n);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<bool> pf(n), pt(n);
        for (std::size_t i = 0; i < n; ++i) {
            pf[i] = flags[perm[i]];
            pt[i] = truth[perm[i]];
        }
        const auto p = score(pf, pt);
        ASSERT_EQ(p.counts, m.counts);
        ASSERT_EQ(p.f_measure, m.f_measure);

        if (m.precision > 0 && m.recall > 0) {
            ASSERT_GE(m.f_measure, std::min(m.precision, m.recall) - 1e-15);
            ASSERT_LE(m.f_measure, std::max(m.precision, m.recall) + 1e-15);
        }
        ASSERT_GE(m.f_measure, 0.0);
        ASSERT_LE(m.f_measure, 1.0);
    }
}

}  // namespace
}  // namespace oesnn

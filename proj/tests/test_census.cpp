#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "coopnet/census.hpp"
#include "coopnet/oracles.hpp"

using namespace coopnet;

TEST(Conditions, IndexMatchesOrder) {
    for (int k = 0; k < kConditionCount; ++k) EXPECT_EQ(condition_index(kConditions[k]), k);
    EXPECT_EQ(select_conditions("pgg", "", "avg").size(), 3u);
    EXPECT_EQ(select_conditions("", "", "").size(), 12u);
    EXPECT_EQ(select_conditions("dg", "db", "acc").size(), 1u);
    EXPECT_THROW(select_conditions("pd", "", ""), InvalidParameter);
}

TEST(Record, StarExact) {
    auto rec = compute_record(star(9), true);
    ASSERT_FALSE(rec.failed);
    EXPECT_EQ(rec.n, 10);
    EXPECT_EQ(rec.id, canonical_form(star(9)));
    EXPECT_EQ(rec.at({GameKind::PGG, UpdateRule::DB, PayoffScheme::averaged}).exact, "4");
    EXPECT_EQ(rec.at({GameKind::PGG, UpdateRule::PC, PayoffScheme::averaged}).exact, "65/14");
}

TEST(Census, SmallSizes) {
    auto graphs = census_graphs(5, {});
    EXPECT_EQ(graphs.size(), 29u);
    auto recs = compute_records(graphs, true, 4);
    for (const auto& c : kConditions)
        if (c.game == GameKind::PGG && c.scheme == PayoffScheme::averaged) {
            auto bad = non_supporters(recs, c);
            for (int n = 3; n <= 5; ++n) {
                ASSERT_EQ(bad[n].size(), 1u) << condition_label(c) << " n=" << n;
                EXPECT_EQ(bad[n][0], canonical_form(complete(n)));
            }
        }
    EXPECT_THROW(census_graphs(8, {}), MissingAtlas);
    EXPECT_THROW(census_graphs(8, {"/nonexistent/atlas.g6"}), MissingAtlas);
}

TEST(Census, ThreadsDoNotChangeRecords) {
    auto graphs = census_graphs(6, {});
    auto a = compute_records(graphs, false, 1);
    auto b = compute_records(graphs, false, 5);
    std::ostringstream sa, sb;
    CsvWriter wa(sa), wb(sb);
    std::vector<Condition> all(kConditions.begin(), kConditions.end());
    write_records(wa, a, all);
    write_records(wb, b, all);
    EXPECT_EQ(sa.str(), sb.str());
}

TEST(Census, ExactPercent) {
    EXPECT_EQ(exact_percent(1, 3), "33.33");
    EXPECT_EQ(exact_percent(2, 3), "66.67");
    EXPECT_EQ(exact_percent(1, 8), "12.50");
    EXPECT_EQ(exact_percent(0, 5), "0.00");
    EXPECT_EQ(exact_percent(5, 5), "100.00");
    EXPECT_EQ(exact_percent(1, 200), "0.50");
}

TEST(Rank, RoundTripThroughCsv) {
    auto recs = compute_records(census_graphs(6, {}), true, 4);
    std::stringstream ss;
    CsvWriter w(ss);
    w.comment_timestamp();
    std::vector<Condition> all(kConditions.begin(), kConditions.end());
    write_records(w, recs, all);
    auto table = read_csv(ss);
    EXPECT_EQ(table.rows.size(), recs.size() * 12);
    for (UpdateRule r : kRules) {
        auto es = read_rank_entries(table, {GameKind::PGG, r, PayoffScheme::averaged}, 6);
        ASSERT_EQ(es.size(), 112u);
        sort_ranking(es);
        EXPECT_EQ(es.back().id, canonical_form(complete(6)));
        auto p = percentile_of(es, canonical_form(star(5)));
        ASSERT_TRUE(p.has_value());
        EXPECT_GT(p->first, 0);
        for (std::size_t k = 1; k < es.size(); ++k) EXPECT_LE(rank_key(es[k - 1]), rank_key(es[k]));
    }
}

TEST(Csv, QuotingRoundTrip) {
    std::vector<std::string> fields = {"plain", "a,b", "say \"hi\"", ""};
    std::ostringstream os;
    CsvWriter(os).row(fields);
    std::string line = os.str();
    line.pop_back();
    EXPECT_EQ(split_csv_line(line), fields);
    EXPECT_EQ(format_double(HUGE_VAL), "inf");
    EXPECT_EQ(parse_double_field("-inf"), -HUGE_VAL);
    EXPECT_EQ(parse_double_field(format_double(0.1)), 0.1);
}

TEST(Ensemble, DeterministicAndAccounted) {
    auto conds = select_conditions("pgg", "", "avg");
    auto a = run_ensemble("er:20:0.3", 12, 5, conds, 1);
    auto b = run_ensemble("er:20:0.3", 12, 5, conds, 4);
    ASSERT_EQ(a.size(), 3u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].mean, b[k].mean);
        EXPECT_EQ(a[k].stddev, b[k].stddev);
        EXPECT_EQ(a[k].samples, a[k].successes + a[k].failures);
        EXPECT_EQ(a[k].failures, 0);
    }
}

TEST(Ensemble, FailuresAreCounted) {
    auto conds = select_conditions("pgg", "db", "avg");
    auto res = run_ensemble("er:40:0.01", 2, 1, conds, 2);
    EXPECT_EQ(res[0].failures, 2);
    EXPECT_EQ(res[0].successes, 0);
}

TEST(Ensemble, RingPointMatchesRegularOracle) {
    Graph ring = watts_strogatz(100, 2, 0.0, 0);
    WalkKernel<mpq_class> w(ring, 3);
    auto conds = select_conditions("pgg", "db", "avg");
    auto res = run_ensemble("ws:100:2:0", 3, 1, conds, 2);
    const double oracle = regular_r(100, 5, w.at(3, 0, 0), UpdateRule::DB, PayoffScheme::averaged).value;
    EXPECT_NEAR(res[0].mean, oracle, 1e-8 * oracle);
}

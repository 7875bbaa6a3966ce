#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "curate/errors.hpp"
#include "curate/eval.hpp"
#include "curate/utf8.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace curate;

TEST(EditDistance, Examples) {
  EXPECT_EQ(edit_distance(std::string_view("abc"), std::string_view("abc")), 0u);
  EXPECT_EQ(edit_distance(std::string_view(""), std::string_view("abc")), 3u);
  EXPECT_EQ(edit_distance(std::string_view("kitten"), std::string_view("sitting")), 3u);
  // Tone mark is its own unit.
  EXPECT_EQ(edit_distance(std::string_view("ไม่"), std::string_view("ไม้")), 1u);
}

TEST(EditDistanceProperty, ExhaustiveAgainstRecursion) {
  std::vector<std::u32string> all{U""};
  for (std::size_t len = 1, first = 0; len <= 5; ++len) {
    const std::size_t end = all.size();
    for (std::size_t i = first; i < end; ++i) {
      for (char32_t c : {U'a', U'b', U'c'}) all.push_back(all[i] + c);
    }
    first = end;
  }
  ASSERT_EQ(all.size(), 364u);
  for (const auto& a : all) {
    for (const auto& b : all) ASSERT_EQ(edit_distance(a, b), test::naive_edit_distance(a, b));
  }
}

TEST(EditDistanceProperty, RandomThaiAgainstRecursion) {
  test::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto a = test::random_thai(rng, 12), b = test::random_thai(rng, 12);
    ASSERT_EQ(edit_distance(a, b), test::memo_edit_distance(a, b));
  }
}

TEST(EditDistanceProperty, MetricAxioms) {
  test::Rng rng(6);
  for (int i = 0; i < 2000; ++i) {
    const auto a = test::random_thai(rng, 10), b = test::random_thai(rng, 10), c = test::random_thai(rng, 10);
    ASSERT_EQ(edit_distance(a, a), 0u);
    ASSERT_EQ(edit_distance(a, b), edit_distance(b, a));
    ASSERT_LE(edit_distance(a, c), edit_distance(a, b) + edit_distance(b, c));
    ASSERT_EQ(edit_distance(a, b) == 0, a == b);
  }
}

TEST(Cer, Examples) {
  EXPECT_DOUBLE_EQ(cer("กาก", "กาบ"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(cer("กาก", ""), 1.0);
  EXPECT_DOUBLE_EQ(cer("ไป", "ไป"), 0.0);
  try {
    cer("", "x");
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "EmptyReference");
  }
}

TEST(Evaluate, PooledNotMean) {
  const std::vector<EvalPair> pairs = {{"u1", "ab", "aX"}, {"u2", "abcdefgh", "abcdefgX"}};
  const auto r = evaluate(pairs, EvalMode::Raw, NormConfig::bundled());
  ASSERT_TRUE(r.aggregate_cer);
  EXPECT_DOUBLE_EQ(*r.aggregate_cer, 0.2);
  EXPECT_DOUBLE_EQ(*r.mean_cer, 0.3125);
}

TEST(Evaluate, Modes) {
  const std::vector<EvalPair> pairs = {{"u", "10", "สิบ"}};
  const NormConfig c = NormConfig::bundled();
  // Three scalar edits against a two-scalar reference.
  EXPECT_DOUBLE_EQ(*evaluate(pairs, EvalMode::Raw, c).aggregate_cer, 1.5);
  EXPECT_DOUBLE_EQ(*evaluate(pairs, EvalMode::NormalizedRefs, c).aggregate_cer, 0.0);
  EXPECT_DOUBLE_EQ(*evaluate(pairs, EvalMode::NormalizedBoth, c).aggregate_cer, 0.0);
  const std::vector<EvalPair> hyp_digits = {{"u", "สิบ", "10"}};
  EXPECT_DOUBLE_EQ(*evaluate(hyp_digits, EvalMode::NormalizedRefs, c).aggregate_cer, 1.0);
  EXPECT_DOUBLE_EQ(*evaluate(hyp_digits, EvalMode::NormalizedBoth, c).aggregate_cer, 0.0);
}

TEST(Evaluate, StripSpaces) {
  const std::vector<EvalPair> pairs = {{"u", "เก่งๆ", "เก่งเก่ง"}};
  const NormConfig c = NormConfig::bundled();
  EXPECT_GT(*evaluate(pairs, EvalMode::NormalizedRefs, c).aggregate_cer, 0.0);
  EXPECT_DOUBLE_EQ(*evaluate(pairs, EvalMode::NormalizedRefs, c, {true}).aggregate_cer, 0.0);
}

TEST(Evaluate, EmptyReferenceIsSkipped) {
  const std::vector<EvalPair> pairs = {{"u1", "!!!", "x"}, {"u2", "ไป", "ไป"}};
  const auto r = evaluate(pairs, EvalMode::NormalizedRefs, NormConfig::bundled());
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].id, "u1");
  EXPECT_EQ(r.per_utterance.size(), 1u);
  EXPECT_DOUBLE_EQ(*r.aggregate_cer, 0.0);
  const std::vector<EvalPair> none = {{"u", "", ""}};
  EXPECT_FALSE(evaluate(none, EvalMode::Raw, NormConfig::bundled()).aggregate_cer);
}

TEST(Evaluate, DuplicateId) {
  const std::vector<EvalPair> pairs = {{"u", "a", "a"}, {"u", "b", "b"}};
  EXPECT_THROW(evaluate(pairs, EvalMode::Raw, NormConfig::bundled()), EvalError);
}

TEST(Kappa, HandWorked) {
  // A marginals (.5,.3,.2), B (.4,.4,.2), 7 of 10 agree.
  const std::vector<std::string> a = {"x", "x", "x", "x", "x", "y", "y", "y", "z", "z"};
  const std::vector<std::string> b = {"x", "x", "x", "y", "y", "y", "y", "x", "z", "z"};
  EXPECT_NEAR(cohens_kappa(a, b), 0.53125, 1e-12);
  EXPECT_NEAR(test::table_kappa(a, b), 0.53125, 1e-12);
}

TEST(Kappa, PerfectAndOpposite) {
  const std::vector<std::string> a = {"p", "q", "p", "q"};
  const std::vector<std::string> b = {"q", "p", "q", "p"};
  EXPECT_DOUBLE_EQ(cohens_kappa(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cohens_kappa(a, b), -1.0);
  const std::vector<std::string> same = {"p", "p", "p"};
  EXPECT_DOUBLE_EQ(cohens_kappa(same, same), 1.0);
}

TEST(Kappa, Errors) {
  const std::vector<std::string> a = {"p"}, empty;
  const std::vector<std::string> two = {"p", "q"};
  try {
    cohens_kappa(a, two);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "LengthMismatch");
  }
  try {
    cohens_kappa(empty, empty);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "EmptyInput");
  }
}

TEST(KappaProperty, BoundedAndMatchesContingencyTable) {
  test::Rng rng(8);
  const std::vector<std::string> cats = {"WinA", "Tie", "WinB"};
  for (int i = 0; i < 3000; ++i) {
    const std::size_t n = 1 + test::pick(rng, 30);
    std::vector<std::string> a, b;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back(cats[test::pick(rng, 3)]);
      b.push_back(test::pick(rng, 3) == 0 ? cats[test::pick(rng, 3)] : a.back());
    }
    const double k = cohens_kappa(a, b);
    ASSERT_GE(k, -1.0 - 1e-12);
    ASSERT_LE(k, 1.0 + 1e-12);
    ASSERT_NEAR(k, test::table_kappa(a, b), 1e-9);
    ASSERT_DOUBLE_EQ(cohens_kappa(a, a), 1.0);
  }
}

TEST(Verdict, Parse) {
  EXPECT_EQ(parse_verdict("wina"), Verdict::WinA);
  EXPECT_EQ(parse_verdict("B"), Verdict::WinB);
  EXPECT_EQ(parse_verdict("TIE"), Verdict::Tie);
  EXPECT_FALSE(parse_verdict("draw"));
}

TEST(AggregateAb, Counts) {
  EXPECT_TRUE(aggregate_ab({}, "ref").empty());
  const std::vector<AbJudgment> j = {
      {"1", "ann", "ref", "sys", Verdict::WinA},
      {"2", "ann", "ref", "sys", Verdict::Tie},
      {"3", "ann", "sys", "ref", Verdict::WinA},
  };
  const auto t = aggregate_ab(j, "ref");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.at("sys"), (AbTally{1, 1, 1, 3, false}));
}

TEST(AggregateAb, MajorityThreshold) {
  std::vector<AbJudgment> j;
  for (int i = 0; i < 1000; ++i) {
    j.push_back({std::to_string(i), "ann", "ref", "sys", i < 501 ? Verdict::WinA : Verdict::WinB});
  }
  EXPECT_TRUE(aggregate_ab(j, "ref").at("sys").crosses_majority);
  j[0].verdict = Verdict::Tie;
  EXPECT_FALSE(aggregate_ab(j, "ref").at("sys").crosses_majority);
}

TEST(AggregateAb, Errors) {
  const std::vector<AbJudgment> other = {{"1", "ann", "x", "y", Verdict::Tie}};
  try {
    aggregate_ab(other, "ref");
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "JudgmentWithoutReference");
  }
  const std::vector<AbJudgment> self = {{"1", "ann", "ref", "ref", Verdict::Tie}};
  EXPECT_THROW(aggregate_ab(self, "ref"), EvalError);
}

TEST(AggregateAbProperty, CountsAddUp) {
  test::Rng rng(9);
  std::vector<AbJudgment> j;
  const std::vector<std::string> systems = {"s1", "s2", "s3"};
  for (int i = 0; i < 2000; ++i) {
    const std::string other = systems[test::pick(rng, 3)];
    const bool ref_first = test::pick(rng, 2);
    j.push_back({std::to_string(i), "ann", ref_first ? "ref" : other, ref_first ? other : "ref",
                 static_cast<Verdict>(test::pick(rng, 3))});
  }
  std::size_t total = 0;
  for (const auto& [name, t] : aggregate_ab(j, "ref")) {
    EXPECT_EQ(t.wins + t.ties + t.losses, t.total);
    EXPECT_EQ(t.crosses_majority, 2 * t.wins > t.total);
    total += t.total;
  }
  EXPECT_EQ(total, j.size());
}

TEST(AbCsv, RoundTrip) {
  const std::vector<AbJudgment> j = {{"1", "a,b", "ref", "sys \"x\"", Verdict::WinB}, {"2", "c", "s", "ref", Verdict::Tie}};
  std::stringstream buf;
  write_ab_csv(buf, j);
  EXPECT_EQ(read_ab_csv(buf), j);
}

TEST(AbCsv, ColumnOrderFromHeader) {
  std::istringstream in("verdict,item_id,system_b,system_a,annotator_id\nA,7,y,x,ann\n");
  const auto j = read_ab_csv(in);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0], (AbJudgment{"7", "ann", "x", "y", Verdict::WinA}));
}

TEST(AbKappa, SwappedPresentationCountsAsAgreement) {
  const std::vector<AbJudgment> j = {
      {"1", "p", "ref", "sys", Verdict::WinA}, {"1", "q", "sys", "ref", Verdict::WinB},
      {"2", "p", "ref", "sys", Verdict::Tie},  {"2", "q", "ref", "sys", Verdict::WinB},
      {"3", "p", "ref", "sys", Verdict::WinB},
  };
  std::size_t shared = 0;
  const double k = ab_kappa(j, "p", "q", &shared);
  EXPECT_EQ(shared, 2u);
  const std::vector<std::string> a = {"WinA", "Tie"}, b = {"WinA", "WinB"};
  EXPECT_DOUBLE_EQ(k, cohens_kappa(a, b));
}

TEST(Pareto, Speedup) {
  const std::vector<ParetoPoint> points = {{"big", 45.0, 6.8}, {"small", 1.0, 8.0}, {"mid", 9.0, 7.0}};
  const auto rows = pareto_export(points, "big");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0].speedup, 1.0);
  EXPECT_DOUBLE_EQ(rows[1].speedup, 45.0);
  EXPECT_GT(rows[1].speedup, rows[2].speedup);
  EXPECT_EQ(pareto_csv(rows).substr(0, 24), "model,gflops,cer,speedup");
}

TEST(Pareto, Errors) {
  const std::vector<ParetoPoint> points = {{"a", 1.0, 1.0}};
  try {
    pareto_export(points, "b");
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "UnknownBaseline");
  }
  const std::vector<ParetoPoint> zero = {{"a", 0.0, 1.0}};
  EXPECT_THROW(pareto_export(zero, "a"), EvalError);
}

TEST(ParetoProperty, LowerCostMeansHigherSpeedup) {
  test::Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    std::vector<ParetoPoint> pts = {{"base", 1.0 + static_cast<double>(test::below(rng, 1000)), 5.0}};
    for (int k = 0; k < 5; ++k) pts.push_back({"m" + std::to_string(k), 0.5 + static_cast<double>(test::below(rng, 1000)), 5.0});
    const auto rows = pareto_export(pts, "base");
    for (std::size_t x = 0; x < rows.size(); ++x) {
      for (std::size_t y = 0; y < rows.size(); ++y) {
        if (rows[x].gflops < rows[y].gflops) ASSERT_GT(rows[x].speedup, rows[y].speedup);
      }
    }
  }
}

TEST(Csv, SplitQuoted) {
  EXPECT_EQ(split_csv_line(R"(a,"b,c","d""e",)"), (std::vector<std::string>{"a", "b,c", "d\"e", ""}));
}

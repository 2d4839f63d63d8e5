#include <gtest/gtest.h>

#include "pcurv13/theorem_a.hpp"

namespace {

using namespace pcurv13;
using namespace pcurv13::theorem_a;
using cohomology::ComponentType;

IndexSet divisors(std::int64_t n) {
  IndexSet out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.insert(d);
  return out;
}

cohomology::FixedPointProfile profile(std::vector<ComponentType> c) { return {std::move(c)}; }

const TraceStep* find_step(const std::vector<TraceStep>& steps, const std::string& op, const std::string& kind = "") {
  for (const auto& s : steps)
    if (s.operation == op && (kind.empty() || s.inputs.value("kind", "") == kind)) return &s;
  return nullptr;
}

TEST(TheoremA, RationalRankTwo) {
  IndexSet want = divisors(18);
  want.insert(27);
  const auto rep = theorem_a_report({2, CohomologyType::RationalBazaikin, std::nullopt});
  EXPECT_EQ(rep.index_bound_set, want);
}

TEST(TheoremA, Mod3RankTwo) {
  const auto rep = theorem_a_report({2, CohomologyType::Mod3Bazaikin, std::nullopt});
  EXPECT_EQ(rep.index_bound_set, (IndexSet{1, 2, 3, 6, 9}));
  IndexSet rational = divisors(18);
  rational.insert(27);
  EXPECT_TRUE(std::includes(rational.begin(), rational.end(), rep.index_bound_set.begin(), rep.index_bound_set.end()));
  for (auto d : rep.index_bound_set) EXPECT_LE(d, 9);
}

TEST(TheoremA, RankThree) {
  for (auto type : {CohomologyType::RationalBazaikin, CohomologyType::Mod3Bazaikin}) {
    const auto rep = theorem_a_report({3, type, std::nullopt});
    EXPECT_EQ(rep.index_bound_set, (IndexSet{1, 2, 3}));
  }
}

TEST(TheoremA, RejectsOtherRanks) {
  EXPECT_THROW(theorem_a_report({1, CohomologyType::RationalBazaikin, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(theorem_a_report({4, CohomologyType::RationalBazaikin, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(cohomology_type_from_string("integral"), std::invalid_argument);
  EXPECT_EQ(cohomology_type_from_string("mod3"), CohomologyType::Mod3Bazaikin);
}

TEST(TheoremA, EveryStepReplaysAndNamesAnOperationOrAxiom) {
  for (int rank : {2, 3})
    for (auto type : {CohomologyType::RationalBazaikin, CohomologyType::Mod3Bazaikin}) {
      const auto rep = theorem_a_report({rank, type, std::nullopt});
      ASSERT_FALSE(rep.case_trace.empty());
      EXPECT_FALSE(rep.index_bound_set.empty());
      EXPECT_EQ(rep.axioms_used, declared_axioms());
      for (const auto& step : rep.case_trace) {
        if (step.operation == "axiom") EXPECT_TRUE(is_declared_axiom(step.inputs.at("name").get<std::string>()));
        else EXPECT_TRUE(operations().count(step.operation)) << step.operation;
        EXPECT_FALSE(step.tag.empty());
        EXPECT_TRUE(replay(step)) << step.tag << " " << step.operation << " " << step.inputs.dump();
        EXPECT_TRUE(replay(step_from_json(to_json(step))));
      }
    }
}

TEST(TheoremA, TamperedStepsDoNotReplay) {
  const auto rep = theorem_a_report({3, CohomologyType::RationalBazaikin, std::nullopt});
  int checked = 0;
  for (auto step : rep.case_trace) {
    if (step.operation == "axiom") {
      step.inputs["name"] = "unnamed-theorem";
      EXPECT_FALSE(replay(step));
    } else {
      step.verdict = json{{"forged", true}};
      EXPECT_FALSE(replay(step));
    }
    ++checked;
  }
  EXPECT_GT(checked, 3);
  EXPECT_THROW(invoke("no.such.operation", json::object()), std::invalid_argument);
}

TEST(TheoremA, ExplainListsEveryStep) {
  const auto rep = theorem_a_report({2, CohomologyType::Mod3Bazaikin, std::nullopt});
  const std::string text = explain(rep);
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  EXPECT_EQ(lines, rep.case_trace.size() + 2);
  EXPECT_NE(text.find("index bound set: [1,2,3,6,9]"), std::string::npos);
  EXPECT_NE(text.find("symmetry rank 1"), std::string::npos);
  const json j = to_json(rep);
  EXPECT_EQ(j.at("index_bound_set"), json({1, 2, 3, 6, 9}));
  EXPECT_EQ(j.at("case_trace").size(), rep.case_trace.size());
}

TEST(FixedProfileBranch, ProductComponentForcesIndexAtMostTwo) {
  const auto r = lemma56_branch(profile({ComponentType::CP1xS3}));
  EXPECT_EQ(r.indices, (IndexSet{1, 2}));
  const auto* cd = find_step(r.steps, "cohomology.divisibility_sweep", "cd");
  ASSERT_NE(cd, nullptr);
  EXPECT_EQ(cd->verdict.at("surviving"), json({1}));
  EXPECT_EQ(find_step(r.steps, "cohomology.lefschetz_value_set")->verdict, json({1, 4}));
  EXPECT_EQ(find_step(r.steps, "cohomology.divisibility_sweep", "zpxzp")->verdict.at("surviving"), json::array());
  EXPECT_EQ(lemma56_branch(profile({ComponentType::S5, ComponentType::CP1xS3})).indices, (IndexSet{1, 2}));
}

TEST(FixedProfileBranch, SphereComponents) {
  const auto one = lemma56_branch(profile({ComponentType::S5}));
  EXPECT_EQ(one.indices, divisors(9));
  const auto* cd = find_step(one.steps, "cohomology.divisibility_sweep", "cd");
  ASSERT_NE(cd, nullptr);
  EXPECT_EQ(cd->verdict.at("surviving"), json({1, 3}));
  EXPECT_EQ(find_step(one.steps, "cohomology.lefschetz_value_set")->verdict, json({3}));
  EXPECT_EQ(find_step(one.steps, "cohomology.divisibility_sweep", "zpxzp")->verdict.at("surviving"), json({3}));

  const auto two = lemma56_branch(profile({ComponentType::S5, ComponentType::S5}));
  for (auto d : two.indices) EXPECT_EQ(18 % d, 0) << d;
  EXPECT_EQ(two.indices, divisors(18));

  IndexSet want = divisors(18);
  want.insert(27);
  EXPECT_EQ(lemma56_branch(profile({ComponentType::S5, ComponentType::S5, ComponentType::S5})).indices, want);
}

TEST(FixedProfileBranch, RejectsProfilesOutsideCensus) {
  EXPECT_THROW(lemma56_branch(profile({ComponentType::S3})), std::invalid_argument);
  EXPECT_THROW(lemma56_branch(profile({ComponentType::CP1xS3, ComponentType::CP1xS3})), std::invalid_argument);
  EXPECT_THROW(lemma56_branch(profile({})), std::invalid_argument);
}

TEST(Mod3Branch, TwoAndThreeSpheres) {
  const auto two = mod3_branch(profile({ComponentType::S5, ComponentType::S5}));
  EXPECT_EQ(two.indices, divisors(6));
  // Budget 10 over two components leaves room for an S^2 x S^3 type, so the spectral sequence runs.
  const auto* ss = find_step(two.steps, "serre.exhaustive_verdict");
  ASSERT_NE(ss, nullptr);
  EXPECT_EQ(ss->verdict.at("verdict"), true);
  // Over three components the smallest has total at most 3: only the sphere type.
  const auto three = mod3_branch(profile({ComponentType::S5, ComponentType::S5, ComponentType::S5}));
  EXPECT_EQ(three.indices, (IndexSet{1, 2, 3, 6, 9}));
  EXPECT_EQ(find_step(three.steps, "serre.exhaustive_verdict"), nullptr);
}

TEST(Mod3Branch, RejectsOtherProfiles) {
  EXPECT_THROW(mod3_branch(profile({ComponentType::CP1xS3})), std::invalid_argument);
  EXPECT_THROW(mod3_branch(profile({ComponentType::S5})), std::invalid_argument);
  EXPECT_THROW(mod3_branch(profile({ComponentType::S5, ComponentType::S5, ComponentType::CP1xS3})), std::invalid_argument);
}

// Every free, positively curved tuple in range has e3 = 2 mod 4, so m = e3/8 is never
// an integer and a given space is refused rather than assigned a guessed cohomology.
TEST(TheoremA, GivenSpaceNeedsIntegralTorsion) {
  const auto spaces = bazaikin::enumerate_spaces(9);
  ASSERT_FALSE(spaces.empty());
  for (const auto& q : spaces) {
    EXPECT_FALSE(bazaikin::h6_order(q).integral);
    EXPECT_THROW(theorem_a_report({2, CohomologyType::Mod3Bazaikin, q}), std::invalid_argument);
  }
  EXPECT_THROW(mod3_branch(profile({ComponentType::S5, ComponentType::S5}), spaces.front()), std::invalid_argument);
}

TEST(TheoremA, Mod3TraceCarriesTheSpectralSequenceVerdict) {
  const auto rep = theorem_a_report({2, CohomologyType::Mod3Bazaikin, std::nullopt});
  const auto* ss = find_step(rep.case_trace, "serre.exhaustive_verdict");
  ASSERT_NE(ss, nullptr);
  EXPECT_EQ(ss->inputs.at("p"), 3);
  EXPECT_EQ(find_step(theorem_a_report({2, CohomologyType::RationalBazaikin, std::nullopt}).case_trace,
                      "serre.exhaustive_verdict"),
            nullptr);
}

TEST(Operations, DirectInvocations) {
  EXPECT_EQ(invoke("index.products", {{"factors", {{1, 2}, {1, 3}}}}), json({1, 2, 3, 6}));
  EXPECT_EQ(invoke("index.at_most", {{"bound", 3}}), json({1, 2, 3}));
  EXPECT_EQ(invoke("cohomology.borel_feasible", {{"codim_total", 10}, {"circle_codims", {4, 4}}}), false);
  EXPECT_EQ(invoke("bazaikin.betti", {{"m", 3}, {"p", 3}}).at("total"), 10);
  EXPECT_EQ(invoke("bazaikin.betti", {{"m", 1}, {"p", 0}}).at("total"), 6);
}

}  // namespace

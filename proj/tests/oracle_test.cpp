#include "polyimage/oracle.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "polyimage/errors.hpp"

namespace polyimage {
namespace {

HPolyhedron unit_square() {
  return HPolyhedron(2, {{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}});
}

TEST(SplitMix64Test, ReferenceStream) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SamplePointsTest, Examples) {
  const auto empty = sample_points({1, 3, 2}, 0);
  ASSERT_EQ(empty.size(), 3u);
  for (const QVector& v : empty) EXPECT_EQ(v.dim(), 0u);

  EXPECT_EQ(sample_points({1, 3, 2}, 4), sample_points({1, 3, 2}, 4));

  const auto pts = sample_points({7, 100, 3}, 2);
  ASSERT_EQ(pts.size(), 100u);
  for (const QVector& v : pts) {
    for (const Rational& x : v) {
      EXPECT_GE(x, Rational(-3));
      EXPECT_LE(x, Rational(3));
      EXPECT_EQ((x * kSampleDenominator).denominator(), 1);
    }
  }
  // Frozen from an independent implementation of the documented generator.
  EXPECT_EQ(pts[0], (QVector{Rational(5, 2), Rational(3, 2)}));
  EXPECT_EQ(pts[1], (QVector{Rational(3, 2), 1}));
  EXPECT_EQ(pts[2], (QVector{2, 0}));
}

TEST(SamplePointsTest, RejectsInvalidSpecs) {
  EXPECT_THROW(sample_points({1, 0, 2}, 1), Error);
  EXPECT_THROW(sample_points({1, 5, 0}, 1), Error);
}

TEST(FeasibleWithEqualitiesTest, Examples) {
  EXPECT_TRUE(feasible_with_equalities(HPolyhedron(2), LinMap{QMatrix::identity(2)}, QVector{9, -4}));
  EXPECT_FALSE(feasible_with_equalities(HPolyhedron(1, {{{-1}, 0}}), LinMap{QMatrix::identity(1)},
                                        QVector{-1}));
  EXPECT_TRUE(feasible_with_equalities(unit_square(), LinMap{QMatrix{{1, 0}}}, QVector{Rational(1, 2)}));
  EXPECT_FALSE(feasible_with_equalities(unit_square(), LinMap{QMatrix{{1, 0}}}, QVector{Rational(3, 2)}));
  EXPECT_THROW(feasible_with_equalities(unit_square(), LinMap{QMatrix{{1, 0}}}, QVector{1, 1}),
               DimensionMismatch);
}

TEST(VerifyImageTest, IdentityPasses) {
  const LinMap id{QMatrix::identity(2)};
  const VerificationReport r = verify_image(id, unit_square(), unit_square(), std::nullopt, {1, 50, 3});
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.checks_run().at("soundness"), 0u);
  EXPECT_GT(r.checks_run().at("completeness"), 0u);
}

TEST(VerifyImageTest, SquareProjectionPasses) {
  const LinMap t{QMatrix{{1, 0}}};
  const CertifiedPolyhedron img = image(t, unit_square());
  const VerificationReport r = verify_image(t, unit_square(), img.polyhedron, img.certificates, {2, 100, 3});
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.checks_run().at("certificates"), 2u);
}

TEST(VerifyImageTest, CorruptedBoundIsCaughtWithWitness) {
  const LinMap t{QMatrix{{1, 0}}};
  const HPolyhedron corrupted(1, {{{-1}, 0}, {{1}, 2}});
  const VerificationReport r = verify_image(t, unit_square(), corrupted, std::nullopt, {2, 100, 3});
  EXPECT_FALSE(r.passed());
  bool saw_three_halves = false;
  for (const auto& f : r.failures()) {
    EXPECT_EQ(f.property, "completeness");
    saw_three_halves |= f.witness == "y=(3/2)";
  }
  EXPECT_TRUE(saw_three_halves) << r.to_text();
  EXPECT_NE(r.to_text().find("FAIL completeness"), std::string::npos);
}

TEST(VerifyImageTest, BadCertificatesAndTooSmallResults) {
  const LinMap t{QMatrix{{1, 0}}};
  const HPolyhedron img(1, {{{-1}, 0}, {{1}, 1}});
  const std::vector<Certificate> wrong{Certificate::unit(0), Certificate::unit(0)};
  const VerificationReport r = verify_image(t, unit_square(), img, wrong, {3, 20, 3});
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures().size(), 1u);
  EXPECT_EQ(r.failures()[0].property, "certificates");

  const HPolyhedron too_small(1, {{{-1}, 0}, {{2}, 1}});
  const VerificationReport s = verify_image(t, unit_square(), too_small, std::nullopt, {3, 50, 3});
  EXPECT_FALSE(s.passed());
  EXPECT_NE(s.to_text().find("FAIL soundness"), std::string::npos);
}

TEST(VerifyImageTest, DimensionMismatchIsAFailureNotAnError) {
  const VerificationReport r =
      verify_image(LinMap{QMatrix{{1, 0}}}, unit_square(), unit_square(), std::nullopt, {1, 10, 2});
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures()[0].property, "dimensions");
}

TEST(VerifyPreimageTest, Examples) {
  const LinMap sum{QMatrix{{1, 1}}};
  EXPECT_TRUE(verify_preimage(sum, HPolyhedron(1), HPolyhedron(2), {4, 50, 3}).passed());
  const HPolyhedron b(1, {{{1}, 1}});
  EXPECT_TRUE(verify_preimage(sum, b, preimage(sum, b), {4, 50, 3}).passed());

  const HPolyhedron corrupted(2, {{{1, 1}, 2}});
  const VerificationReport r = verify_preimage(sum, b, corrupted, {4, 50, 3});
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures()[0].property, "pointwise");
}

TEST(VerificationReportTest, DeterministicAndOrderIndependent) {
  VerificationReport a, b;
  a.count("p");
  a.count("p");
  a.fail({"p", "x=(2)", "true", "false"});
  a.fail({"p", "x=(1)", "true", "false"});
  b.count("p");
  b.fail({"p", "x=(1)", "true", "false"});
  b.count("p");
  b.fail({"p", "x=(2)", "true", "false"});
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.to_text(), "FAIL p failures=2/2 witness=x=(1) expected=true actual=false\nFAIL verdict\n");

  const auto j = nlohmann::json::parse(a.to_json());
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["checks"]["p"], 2);
  EXPECT_EQ(j["failures"].size(), 2u);

  const LinMap t{QMatrix{{1, 0}}};
  const HPolyhedron img = image(t, unit_square()).polyhedron;
  EXPECT_EQ(verify_image(t, unit_square(), img, std::nullopt, {5, 40, 3}).to_text(),
            verify_image(t, unit_square(), img, std::nullopt, {5, 40, 3}).to_text());
}

}  // namespace
}  // namespace polyimage

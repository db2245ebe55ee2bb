#include "polyimage/projection.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "polyimage/errors.hpp"
#include "polyimage/oracle.hpp"
#include "support/generators.hpp"

namespace polyimage {
namespace {

HPolyhedron unit_square() {
  return HPolyhedron(2, {{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}});
}

// Brute force for the second coordinate: does some x2 satisfy every row of a
// two-dimensional system at the given x1? Intersects the x2-intervals.
bool exists_second_coordinate(const HPolyhedron& p, const Rational& x1) {
  std::optional<Rational> lo, hi;
  for (const IneqRow& r : p.rows()) {
    const Rational rest = r.b - r.a[0] * x1;
    if (r.a[1].is_zero()) {
      if (rest.sign() < 0) return false;
    } else if (r.a[1].sign() > 0) {
      const Rational bound = rest / r.a[1];
      if (!hi || bound < *hi) hi = bound;
    } else {
      const Rational bound = rest / r.a[1];
      if (!lo || bound > *lo) lo = bound;
    }
  }
  return !(lo && hi && *lo > *hi);
}

// Brute force for maps with one-dimensional kernel: walk the fiber over y
// on a grid of step 1/4.
bool fiber_hits(const HPolyhedron& a, const LinMap& t, const QVector& y) {
  const auto base = solve_affine(t.matrix, y);
  if (!base) return false;
  const auto kernel = kernel_basis(t.matrix);
  if (kernel.empty()) return contains(a, *base);
  for (int s = -40; s <= 40; ++s) {
    if (contains(a, *base + Rational(s, 4) * kernel.front())) return true;
  }
  return false;
}

bool same_membership(const HPolyhedron& p, const HPolyhedron& q, std::uint64_t seed,
                     std::size_t count = 200) {
  for (const QVector& x : sample_points({seed, count, 3}, p.dim())) {
    if (contains(p, x) != contains(q, x)) return false;
  }
  return true;
}

TEST(EliminateDirectionTest, WedgeExample) {
  const HPolyhedron p(2, {{{1, 1}, 1}, {{1, -1}, 1}, {{-1, 0}, 0}});
  const CertifiedPolyhedron r = eliminate_direction(p, QVector{0, 1});
  EXPECT_EQ(r.polyhedron, HPolyhedron(2, {{{-1, 0}, 0}, {{1, 0}, 1}}));
  ASSERT_EQ(r.certificates.size(), 2u);
  EXPECT_EQ(r.certificates[0], Certificate::unit(2));
  const Certificate half{{{0, Rational(1, 2)}, {1, Rational(1, 2)}}};
  EXPECT_EQ(r.certificates[1], half);

  const LinMap id{QMatrix::identity(2)};
  for (std::size_t k = 0; k < r.polyhedron.size(); ++k) {
    EXPECT_TRUE(check_certificate(p, id, r.polyhedron.row(k), r.certificates[k]));
  }
  for (int num = -8; num <= 8; ++num) {
    const Rational x1(num, 4);
    EXPECT_EQ(contains(r.polyhedron, QVector{x1, 0}), exists_second_coordinate(p, x1)) << x1;
  }
}

TEST(EliminateDirectionTest, UntouchedAndOneSidedCases) {
  const HPolyhedron flat(2, {{{1, 0}, 1}, {{-2, 0}, 0}});
  EXPECT_EQ(eliminate_direction(flat, QVector{0, 1}).polyhedron, normalize_rows(flat));

  const HPolyhedron half(2, {{{0, 1}, 1}});
  const CertifiedPolyhedron r = eliminate_direction(half, QVector{0, 1});
  EXPECT_EQ(r.polyhedron, HPolyhedron(2));
  EXPECT_TRUE(r.certificates.empty());
}

TEST(EliminateDirectionTest, Errors) {
  EXPECT_THROW(eliminate_direction(unit_square(), QVector{0, 0}), ZeroDirection);
  EXPECT_THROW(eliminate_direction(unit_square(), QVector{1}), DimensionMismatch);
}

TEST(LiftWitnessTest, Examples) {
  EXPECT_EQ(lift_witness(unit_square(), QVector{0, 1}, QVector{Rational(1, 2), 7}),
            (QVector{Rational(1, 2), 0}));
  const HPolyhedron flat(2, {{{1, 0}, 1}});
  EXPECT_EQ(lift_witness(flat, QVector{0, 1}, QVector{0, 3}), (QVector{0, 3}));
  const HPolyhedron half(2, {{{0, 1}, 1}});
  EXPECT_EQ(lift_witness(half, QVector{0, 1}, QVector{0, 5}), (QVector{0, 1}));
  // Only lower bounds along xi: the max formula.
  const HPolyhedron above(2, {{{0, -1}, -2}});
  EXPECT_EQ(lift_witness(above, QVector{0, 1}, QVector{4, 0}), (QVector{4, 2}));
}

TEST(LiftWitnessTest, RejectsPointsOutsideTheEliminatedSet) {
  EXPECT_THROW(lift_witness(unit_square(), QVector{0, 1}, QVector{2, 0}), PreconditionViolated);
  const HPolyhedron empty_strip(2, {{{0, 1}, 0}, {{0, -1}, -1}});
  EXPECT_THROW(lift_witness(empty_strip, QVector{0, 1}, QVector{0, 0}), PreconditionViolated);
  EXPECT_THROW(lift_witness(unit_square(), QVector{0, 0}, QVector{0, 0}), ZeroDirection);
}

TEST(EliminationPropertyTest, SoundCompleteAndAnnihilating) {
  SplitMix64 rng(404);
  std::size_t lifted = 0;
  for (int trial = 0; trial < 80; ++trial) {
    testing::PolyParams params;
    params.dim = static_cast<std::size_t>(rng.uniform_int(1, 4));
    params.bound_lo = 0;
    const HPolyhedron p = testing::random_polyhedron(rng, params);
    const QVector xi = testing::random_nonzero_vector(rng, params.dim, -3, 3);
    const CertifiedPolyhedron r = eliminate_direction(p, xi);
    const LinMap id{QMatrix::identity(params.dim)};
    for (std::size_t k = 0; k < r.polyhedron.size(); ++k) {
      EXPECT_TRUE(dot(r.polyhedron.row(k).a, xi).is_zero());
      EXPECT_TRUE(check_certificate(p, id, r.polyhedron.row(k), r.certificates[k]));
    }
    for (const QVector& x : testing::sample_members(p, trial, 30)) {
      EXPECT_TRUE(contains(r.polyhedron, x));
    }
    for (const QVector& x : testing::sample_members(r.polyhedron, trial + 1000, 30)) {
      const QVector lift = lift_witness(p, xi, x);
      EXPECT_TRUE(contains(p, lift));
      EXPECT_EQ(rank(QMatrix::from_rows(params.dim, std::vector<QVector>{xi, lift - x})), 1u);
      ++lifted;
    }
  }
  EXPECT_GT(lifted, 500u);
}

TEST(FactorThroughTest, Examples) {
  const LinMap id{QMatrix::identity(3)};
  EXPECT_EQ(factor_through(id, QVector{1, -2, 3}, 4), std::make_pair(QVector{1, -2, 3}, Rational(4)));
  const LinMap proj{QMatrix{{1, 0}}};
  EXPECT_EQ(factor_through(proj, QVector{3, 0}, 5), std::make_pair(QVector{3}, Rational(5)));
  const LinMap shear{QMatrix{{1, 1}, {0, 1}}};
  const auto [g, b] = factor_through(shear, QVector{1, 2}, 0);
  EXPECT_EQ(g, (QVector{1, 1}));
  EXPECT_EQ(left_multiply(g, shear.matrix), (QVector{1, 2}));
}

TEST(FactorThroughTest, Errors) {
  EXPECT_THROW(factor_through(LinMap{QMatrix{{1}, {1}}}, QVector{1}, 0), NotSurjective);
  EXPECT_THROW(factor_through(LinMap{QMatrix{{1, 0}}}, QVector{0, 1}, 0), KernelNotContained);
}

TEST(FactorThroughTest, RecoversTheUniqueFactor) {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n)));
    const LinMap t = testing::random_surjective(rng, m, n);
    const QVector g0 = testing::random_vector(rng, m, -5, 5);
    const auto [g, b] = factor_through(t, left_multiply(g0, t.matrix), 1);
    EXPECT_EQ(g, g0);
  }
}

TEST(ImageTest, IdentityReturnsNormalizedInput) {
  const HPolyhedron a(2, {{{2, 0}, 2}, {{0, -3}, 0}});
  const CertifiedPolyhedron r = image(LinMap{QMatrix::identity(2)}, a);
  EXPECT_EQ(r.polyhedron, normalize_rows(a));
}

TEST(ImageTest, SquareProjection) {
  const LinMap t{QMatrix{{1, 0}}};
  const CertifiedPolyhedron r = image(t, unit_square());
  EXPECT_EQ(r.polyhedron, HPolyhedron(1, {{{-1}, 0}, {{1}, 1}}));
  for (int num = -2; num <= 4; ++num) {
    const QVector y{Rational(num, 2)};
    EXPECT_EQ(contains(r.polyhedron, y), fiber_hits(unit_square(), t, y)) << y.str();
  }
  for (std::size_t k = 0; k < r.polyhedron.size(); ++k) {
    EXPECT_TRUE(check_certificate(unit_square(), t, r.polyhedron.row(k), r.certificates[k]));
  }
}

TEST(ImageTest, ConeExample) {
  const HPolyhedron a(2, {{{1, -1}, 0}, {{-1, 0}, 0}});
  const LinMap t{QMatrix{{1, 1}}};
  const CertifiedPolyhedron r = image(t, a);
  EXPECT_EQ(r.polyhedron, HPolyhedron(1, {{{-1}, 0}}));
  // h = row0 + 2 row1 = (-1, -1) and g(y) = -y.
  EXPECT_EQ(r.certificates[0], (Certificate{{{0, 1}, {1, 2}}}));
  for (int num = -6; num <= 6; ++num) {
    const QVector y{Rational(num, 2)};
    EXPECT_EQ(contains(r.polyhedron, y), fiber_hits(a, t, y)) << y.str();
  }
}

TEST(ImageTest, Errors) {
  EXPECT_THROW(image(LinMap{QMatrix{{1}, {2}}}, HPolyhedron(1)), NotSurjective);
  EXPECT_THROW(image(LinMap{QMatrix(1, 2)}, HPolyhedron(2)), NotSurjective);
  EXPECT_THROW(image(LinMap{QMatrix{{1, 0}}}, HPolyhedron(3)), DimensionMismatch);
  const LinMap t{QMatrix{{1, 0}}};
  const std::vector<QVector> wrong{{1, 0}};
  EXPECT_THROW(image_with_basis(t, unit_square(), wrong), PreconditionViolated);
}

TEST(ImageTest, EmptyInputGivesInfeasibleImage) {
  const HPolyhedron a(2, {{{1, 1}, -1}, {{-1, 0}, 0}, {{0, -1}, 0}});
  const CertifiedPolyhedron r = image(LinMap{QMatrix{{1, 0}}}, a);
  EXPECT_TRUE(is_empty(r.polyhedron));
}

TEST(ImageTest, ZeroDimensionalCodomain) {
  const LinMap t{QMatrix(0, 2)};
  EXPECT_EQ(image(t, unit_square()).polyhedron, HPolyhedron(0));
  const HPolyhedron empty(2, {{{1, 0}, -1}, {{-1, 0}, 0}});
  EXPECT_EQ(image(t, empty).polyhedron, HPolyhedron(0, {{QVector{}, -1}}));
}

struct ImageCase {
  LinMap t;
  HPolyhedron a;
};

std::vector<ImageCase> random_image_cases(std::uint64_t seed, int count, bool cones = false) {
  SplitMix64 rng(seed);
  std::vector<ImageCase> out;
  for (int i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n)));
    testing::PolyParams params;
    params.dim = n;
    params.max_rows = 6;
    if (cones) params.bound_lo = params.bound_hi = 0;
    out.push_back({testing::random_surjective(rng, m, n), testing::random_polyhedron(rng, params)});
  }
  return out;
}

TEST(ImagePropertyTest, SoundCompleteAndCertified) {
  int trial = 0;
  for (const auto& [t, a] : random_image_cases(17, 60)) {
    const CertifiedPolyhedron r = image(t, a);
    for (std::size_t k = 0; k < r.polyhedron.size(); ++k) {
      EXPECT_TRUE(check_certificate(a, t, r.polyhedron.row(k), r.certificates[k]));
    }
    for (const QVector& x : testing::sample_members(a, trial, 20)) {
      EXPECT_TRUE(contains(r.polyhedron, t(x)));
    }
    for (const QVector& y : sample_points({static_cast<std::uint64_t>(trial), 30, 3}, t.codomain_dim())) {
      EXPECT_EQ(contains(r.polyhedron, y), feasible_with_equalities(a, t, y))
          << "trial " << trial << " y=" << y.str();
    }
    ++trial;
  }
}

TEST(ImagePropertyTest, ConesMapToCones) {
  for (const auto& [t, a] : random_image_cases(23, 40, true)) {
    for (const IneqRow& r : image(t, a).polyhedron.rows()) EXPECT_TRUE(r.b.is_zero());
  }
}

TEST(ImagePropertyTest, IndependentOfKernelOrderAndPruning) {
  int trial = 0;
  for (const auto& [t, a] : random_image_cases(29, 40)) {
    auto kernel = kernel_basis(t.matrix);
    std::reverse(kernel.begin(), kernel.end());
    const HPolyhedron base = image(t, a).polyhedron;
    EXPECT_TRUE(same_membership(base, image_with_basis(t, a, kernel).polyhedron, trial));

    ImageOptions raw;
    raw.history_pruning = false;
    raw.redundancy = RedundancyMode::Never;
    EXPECT_TRUE(same_membership(base, image(t, a, raw).polyhedron, trial));

    ImageOptions minimal;
    minimal.redundancy = RedundancyMode::Always;
    const CertifiedPolyhedron small = image(t, a, minimal);
    EXPECT_TRUE(same_membership(base, small.polyhedron, trial));
    EXPECT_EQ(remove_redundancy(small.polyhedron).size(), small.polyhedron.size());
    for (std::size_t k = 0; k < small.polyhedron.size(); ++k) {
      EXPECT_TRUE(check_certificate(a, t, small.polyhedron.row(k), small.certificates[k]));
    }
    ++trial;
  }
}

TEST(ImageOntoRangeTest, HandlesRankDeficientMaps) {
  // y = (x1, 2 x1): the image of the square is a segment of a line.
  const LinMap t{QMatrix{{1, 0}, {2, 0}}};
  const HPolyhedron r = image_onto_range(t, unit_square());
  EXPECT_TRUE(contains(r, QVector{Rational(1, 2), 1}));
  EXPECT_FALSE(contains(r, QVector{Rational(1, 2), 2}));
  EXPECT_FALSE(contains(r, QVector{2, 4}));

  SplitMix64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const LinMap tt = testing::random_non_surjective(rng, m, n);
    testing::PolyParams params;
    params.dim = n;
    params.bound_lo = 0;
    params.max_rows = 5;
    const HPolyhedron a = testing::random_polyhedron(rng, params);
    const HPolyhedron img = image_onto_range(tt, a);
    for (const QVector& x : testing::sample_members(a, trial, 10)) {
      EXPECT_TRUE(contains(img, tt(x)));
    }
    for (const QVector& y : sample_points({static_cast<std::uint64_t>(trial), 20, 2}, m)) {
      EXPECT_EQ(contains(img, y), feasible_with_equalities(a, tt, y));
    }
  }
}

TEST(PreimageTest, Examples) {
  const LinMap sum{QMatrix{{1, 1}}};
  EXPECT_EQ(preimage(sum, HPolyhedron(1, {{{1}, 1}})), HPolyhedron(2, {{{1, 1}, 1}}));
  EXPECT_EQ(preimage(sum, HPolyhedron(1)), HPolyhedron(2));
  const HPolyhedron marker = preimage(LinMap{QMatrix(1, 2)}, HPolyhedron(1, {{{1}, -1}}));
  EXPECT_EQ(marker, HPolyhedron(2, {{{0, 0}, -1}}));
  EXPECT_TRUE(is_empty(marker));
  EXPECT_THROW(preimage(sum, HPolyhedron(2)), DimensionMismatch);
}

TEST(PreimagePropertyTest, PointwiseLawAndRoundTrip) {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n)));
    const LinMap t = trial % 3 == 0 ? testing::random_non_surjective(rng, m, n)
                                    : testing::random_surjective(rng, m, n);
    testing::PolyParams params;
    params.dim = m;
    const HPolyhedron b = testing::random_polyhedron(rng, params);
    const HPolyhedron pre = preimage(t, b);
    for (const QVector& x : sample_points({static_cast<std::uint64_t>(trial), 50, 3}, n)) {
      EXPECT_EQ(contains(pre, x), contains(b, t(x)));
    }
    if (rank(t.matrix) == m) {
      const HPolyhedron back = image(t, pre).polyhedron;
      EXPECT_TRUE(same_membership(back, b, trial, 50));
    }
  }
}

TEST(CheckCertificateTest, Examples) {
  const HPolyhedron a = unit_square();
  const LinMap id{QMatrix::identity(2)};
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_TRUE(check_certificate(a, id, a.row(k), Certificate::unit(k)));
  }
  EXPECT_FALSE(check_certificate(a, id, a.row(0), Certificate{{{0, 2}, {1, -1}}}));
  EXPECT_FALSE(check_certificate(a, id, a.row(0), Certificate::unit(1)));
  EXPECT_THROW(check_certificate(a, id, a.row(0), Certificate::unit(9)), IndexOutOfRange);

  const HPolyhedron wedge(2, {{{1, 1}, 1}, {{1, -1}, 1}, {{-1, 0}, 0}});
  const Certificate half{{{0, Rational(1, 2)}, {1, Rational(1, 2)}}};
  EXPECT_TRUE(check_certificate(wedge, id, IneqRow{{1, 0}, 1}, half));
  // Right functional, wrong bound.
  EXPECT_FALSE(check_certificate(wedge, id, IneqRow{{1, 0}, 2}, half));
}

TEST(CertificateTest, CombineMergesAndDropsZeros) {
  const Certificate a{{{0, 1}, {2, 3}}};
  const Certificate b{{{2, -3}, {5, 1}}};
  const std::pair<Rational, const Certificate*> terms[] = {{1, &a}, {1, &b}};
  EXPECT_EQ(combine(terms), (Certificate{{{0, 1}, {5, 1}}}));
  EXPECT_EQ(scaled(a, Rational(1, 3)), (Certificate{{{0, Rational(1, 3)}, {2, 1}}}));
}

}  // namespace
}  // namespace polyimage

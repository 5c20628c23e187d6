/*
 * Copyright 2026 The Synthanom Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "synthanom/poisson.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "synthanom/error.hpp"
#include "synthanom/mask.hpp"

namespace synthanom {
namespace {

Shape padded_shape(const Shape& interior) {
  Shape s = interior;
  for (auto& e : s) e += 2;
  return s;
}

Box interior_box(const Shape& padded) {
  Box b{Index(padded.size(), 1), Index(padded.size())};
  for (std::size_t a = 0; a < padded.size(); ++a) b.hi[a] = padded[a] - 1;
  return b;
}

double relative_error(const Tensor& got, const Tensor& want) {
  return testing::max_abs_diff(got, want) / std::max(testing::max_abs(want), 1e-300);
}

TEST(PoissonTest, LaplacianSpectrumMatchesClosedForm) {
  const Tensor lam = laplacian_spectrum({3, 4});
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 0; v < 4; ++v) {
      const double a = 2.0 * std::sin(M_PI * (u + 1) / 8.0);
      const double b = 2.0 * std::sin(M_PI * (v + 1) / 10.0);
      EXPECT_NEAR(lam[u * 4 + v], a * a + b * b, 1e-14);
    }
  }
}

TEST(PoissonTest, SpectralRoundTrip) {
  std::mt19937_64 gen(50);
  const Tensor x = testing::random_tensor({5, 7, 3}, gen);
  EXPECT_LE(testing::max_abs_diff(from_spectral(to_spectral(x)), x), 1e-13);
}

TEST(PoissonTest, ConstantBoundaryGivesConstantInterior) {
  const Shape in{6, 9};
  const Tensor sol = solve_poisson_dirichlet(Tensor(in, 0.0), Tensor(padded_shape(in), 3.5));
  for (double v : sol.values()) EXPECT_NEAR(v, 3.5, 1e-4);
}

TEST(PoissonTest, OneDimensionalTridiagonal) {
  // f'' = (0, -1, 0) with zero ends: -2a + b = 0, a - 2b + c = -1, b - 2c = 0,
  // so a = c = 1/2 and b = 1.
  const Tensor sol = solve_poisson_dirichlet(Tensor({3}, std::vector<double>{0, -1, 0}),
                                             Tensor({5}, 0.0));
  EXPECT_NEAR(sol[0], 0.5, 1e-5);
  EXPECT_NEAR(sol[1], 1.0, 1e-5);
  EXPECT_NEAR(sol[2], 0.5, 1e-5);
}

TEST(PoissonTest, MatchesDirectSolveAndHasSmallResidual) {
  std::mt19937_64 gen(51);
  for (const Shape& in : {Shape{9, 7}, Shape{5, 6, 4}, Shape{1, 8}, Shape{13}}) {
    const Tensor rhs = testing::random_tensor(in, gen);
    const Tensor padded = testing::random_tensor(padded_shape(in), gen);
    const Tensor sol = solve_poisson_dirichlet(rhs, padded);
    const Tensor want = testing::direct_dirichlet_solve(rhs, padded);
    EXPECT_LE(relative_error(sol, want), 1e-10) << shape_to_string(in);
    Tensor full = padded;
    insert(full, interior_box(padded.shape()), sol);
    const Tensor residual = testing::interior_laplacian(full);
    EXPECT_LE(testing::max_abs_diff(residual, rhs), 1e-10 * testing::max_abs(rhs));
  }
}

TEST(PoissonTest, SolveIsLinear) {
  std::mt19937_64 gen(52);
  const Shape in{7, 5};
  const Tensor r1 = testing::random_tensor(in, gen), r2 = testing::random_tensor(in, gen);
  const Tensor b1 = testing::random_tensor(padded_shape(in), gen);
  const Tensor b2 = testing::random_tensor(padded_shape(in), gen);
  Tensor r(in), b(padded_shape(in));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = 2.0 * r1[i] - 0.5 * r2[i];
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = 2.0 * b1[i] - 0.5 * b2[i];
  const Tensor s = solve_poisson_dirichlet(r, b);
  const Tensor s1 = solve_poisson_dirichlet(r1, b1), s2 = solve_poisson_dirichlet(r2, b2);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], 2.0 * s1[i] - 0.5 * s2[i], 1e-12);
}

TEST(PoissonTest, EmptyInteriorIsNoOp) {
  const Tensor sol = solve_poisson_dirichlet(Tensor({0, 3}), Tensor({2, 5}, 1.0));
  EXPECT_TRUE(sol.empty());
}

TEST(PoissonTest, BoundaryShapeMustMatch) {
  EXPECT_THROW(solve_poisson_dirichlet(Tensor({3, 3}), Tensor({5, 4})), InvalidArgument);
}

TEST(PoissonBlendTest, SelfBlendIsIdentity) {
  std::mt19937_64 gen(53);
  const Tensor x = testing::random_tensor({24, 20}, gen);
  const AnomalyMask m =
      rasterize_mask(MaskSpec{MaskKind::kEllipsoid, {11.2, 9.7}, {6.5, 4.1}, {0.6}}, x.shape());
  const std::vector<std::ptrdiff_t> zero{0, 0};
  const Tensor out = poisson_blend(x, x, m, zero);
  EXPECT_LE(testing::max_abs_diff(out, x), 1e-4);
  Index idx(2, 0);
  do {
    if (!m.bbox.contains(idx)) {
      EXPECT_EQ(out.at(idx), x.at(idx));
    }
  } while (next_index(idx, x.shape()));
}

TEST(PoissonBlendTest, ConstantSourceKeepsConstantDestination) {
  const Tensor dest({16, 16}, 2.0), src({16, 16}, 9.0);
  const AnomalyMask m =
      rasterize_mask(MaskSpec{MaskKind::kCuboid, {8, 7}, {4, 3}, {0.2}}, dest.shape());
  const std::vector<std::ptrdiff_t> zero{0, 0};
  const Tensor out = poisson_blend(dest, src, m, zero);
  for (double v : out.values()) EXPECT_NEAR(v, 2.0, 1e-4);
}

TEST(PoissonBlendTest, MatchesDirectSolveOfSameSystem) {
  std::mt19937_64 gen(54);
  const Tensor dest = testing::random_tensor({16, 16}, gen);
  const Tensor src = testing::random_tensor({16, 16}, gen);
  const AnomalyMask m =
      rasterize_mask(MaskSpec{MaskKind::kEllipsoid, {7.6, 8.3}, {5.2, 3.9}, {1.1}}, dest.shape());
  const std::vector<std::ptrdiff_t> zero{0, 0};
  const Tensor out = poisson_blend(dest, src, m, zero);

  const Box region = blend_region(m.bbox, dest.shape());
  Box padded{region.lo, region.hi};
  for (std::size_t a = 0; a < 2; ++a) {
    --padded.lo[a];
    ++padded.hi[a];
  }
  const Tensor rhs = testing::interior_laplacian(extract(src, padded));
  Tensor want = dest;
  insert(want, region, testing::direct_dirichlet_solve(rhs, extract(dest, padded)));
  EXPECT_LE(relative_error(out, want), 1e-4);
  EXPECT_LE(testing::max_abs_diff(out, want), 1e-10);
}

TEST(PoissonBlendTest, InteriorLaplacianFollowsSource) {
  std::mt19937_64 gen(55);
  const Tensor dest = testing::random_tensor({20, 18}, gen);
  const Tensor src = testing::random_tensor({30, 30}, gen, 5.0, 8.0);
  const Box bbox{{4, 5}, {15, 14}};
  const std::vector<std::ptrdiff_t> offset{7, -2};
  const Tensor out = poisson_blend(dest, src, bbox, offset);
  const Box padded{{3, 4}, {16, 15}};
  const Box src_padded{{10, 2}, {23, 13}};
  const Tensor lap_out = testing::interior_laplacian(extract(out, padded));
  const Tensor lap_src = testing::interior_laplacian(extract(src, src_padded));
  EXPECT_LE(testing::max_abs_diff(lap_out, lap_src), 1e-4 * testing::max_abs(lap_src));
}

TEST(PoissonBlendTest, BoxIsClippedToLeaveBoundaryRing) {
  std::mt19937_64 gen(56);
  const Tensor dest = testing::random_tensor({12, 12}, gen);
  const Tensor src = testing::random_tensor({12, 12}, gen);
  EXPECT_EQ(blend_region(Box{{0, 3}, {12, 9}}, {12, 12}), (Box{{1, 3}, {11, 9}}));
  const std::vector<std::ptrdiff_t> zero{0, 0};
  const Tensor out = poisson_blend(dest, src, Box{{0, 0}, {12, 12}}, zero);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(out[i], dest[i]);
    EXPECT_EQ(out[11 * 12 + i], dest[11 * 12 + i]);
    EXPECT_EQ(out[i * 12], dest[i * 12]);
    EXPECT_EQ(out[i * 12 + 11], dest[i * 12 + 11]);
  }
}

TEST(PoissonBlendTest, RejectsOutOfRangeBoxAndSource) {
  const Tensor dest({10, 10}, 0.0), src({10, 10}, 0.0);
  const std::vector<std::ptrdiff_t> zero{0, 0};
  EXPECT_THROW(poisson_blend(dest, src, Box{{2, 2}, {11, 5}}, zero), InvalidArgument);
  const std::vector<std::ptrdiff_t> far{5, 0};
  EXPECT_THROW(poisson_blend(dest, src, Box{{2, 2}, {8, 5}}, far), InvalidArgument);
  const std::vector<std::ptrdiff_t> short_offset{0};
  EXPECT_THROW(poisson_blend(dest, src, Box{{2, 2}, {8, 5}}, short_offset), InvalidArgument);
}

TEST(PoissonBlendTest, DegenerateAxisMatchesLowerRank) {
  std::mt19937_64 gen(57);
  const Tensor dest1 = testing::random_tensor({20}, gen);
  const Tensor src1 = testing::random_tensor({20}, gen);
  const std::vector<std::ptrdiff_t> off1{0};
  const Tensor out1 = poisson_blend(dest1, src1, Box{{4}, {15}}, off1);

  const Tensor dest2({20, 1}, std::vector<double>(dest1.values().begin(), dest1.values().end()));
  const Tensor src2({20, 1}, std::vector<double>(src1.values().begin(), src1.values().end()));
  const std::vector<std::ptrdiff_t> off2{0, 0};
  const Tensor out2 = poisson_blend(dest2, src2, Box{{4, 0}, {15, 1}}, off2);
  ASSERT_EQ(out2.shape(), (Shape{20, 1}));
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(out2[i], out1[i], 1e-12);
  EXPECT_GT(testing::max_abs_diff(out1, dest1), 1e-3);
}

}  // namespace
}  // namespace synthanom

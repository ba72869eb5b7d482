#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sealrestore/error.hpp"
#include "sealrestore/inpaint.hpp"
#include "sealrestore/metrics.hpp"

namespace sealrestore {
namespace {

TEST(Eikonal, EmptyMaskIsAllZero) {
  const DistanceField t = solve_eikonal(SealMask(8, 6));
  for (double v : t.values) EXPECT_EQ(v, 0.0);
}

// Both an x and a y neighbor sit at T=0, so the two-sided quadratic applies.
TEST(Eikonal, IsolatedPixelUsesTwoSidedUpdate) {
  SealMask m(5, 5);
  m.set(2, 2);
  const DistanceField t = solve_eikonal(m);
  EXPECT_DOUBLE_EQ(t.at(2, 2), std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(t.at(1, 2), 0.0);
}

TEST(Eikonal, ThinColumnIsOne) {
  SealMask m(11, 11);
  for (int y = 0; y < 11; ++y) m.set(5, y);
  const DistanceField t = solve_eikonal(m);
  for (int y = 0; y < 11; ++y) EXPECT_DOUBLE_EQ(t.at(5, y), 1.0) << y;
}

TEST(Eikonal, ApproximatesEuclideanDistanceInDisc) {
  const SealMask m = oracle::disc_mask(61, 61, 30, 30, 20.0);
  const DistanceField t = solve_eikonal(m);
  // Boundary sits at ~20.5 from the center; first-order FMM overestimates a little.
  EXPECT_NEAR(t.at(30, 30), 21.0, 1.5);
  EXPECT_NEAR(t.at(40, 30), 11.0, 1.2);
}

TEST(Eikonal, NonNegativeAndLipschitz) {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int w = rng.range(5, 40), h = rng.range(5, 40);
    const SealMask m = trial % 2 ? oracle::random_mask(rng, w, h, 0.4)
                                 : oracle::random_blob_mask(rng, w, h, 4, 8);
    if (m.count() == m.size()) continue;
    const DistanceField t = solve_eikonal(m);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        ASSERT_GE(t.at(x, y), 0.0);
        if (!m.at(x, y)) ASSERT_EQ(t.at(x, y), 0.0);
        if (x + 1 < w) ASSERT_LE(std::abs(t.at(x, y) - t.at(x + 1, y)), 1.0 + 1e-6);
        if (y + 1 < h) ASSERT_LE(std::abs(t.at(x, y) - t.at(x, y + 1)), 1.0 + 1e-6);
      }
  }
}

TEST(Inpaint, ConstantImageStaysConstant) {
  const Image img(40, 30, Rgb{180, 170, 150});
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const SealMask m = oracle::random_blob_mask(rng, 40, 30, 5, 9);
    EXPECT_EQ(inpaint_fmm(img, m, 3), img);
  }
}

TEST(Inpaint, EmptyMaskIsIdentity) {
  Rng rng(2);
  const Image img = oracle::random_image(rng, 23, 17);
  EXPECT_EQ(inpaint_fmm(img, SealMask(23, 17), 3), img);
}

TEST(Inpaint, OutsideMaskUntouchedAndDeterministic) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Image img = oracle::random_image(rng, 32, 32);
    const SealMask m = oracle::random_blob_mask(rng, 32, 32, 3, 6);
    const Image out = inpaint_fmm(img, m, rng.range(1, 5));
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x)
        if (!m.at(x, y)) ASSERT_EQ(out.pixel(x, y), img.pixel(x, y));
    ASSERT_EQ(inpaint_fmm(img, m, 3), inpaint_fmm(img, m, 3));
  }
}

TEST(Inpaint, LinearRampIsReconstructed) {
  const Image ramp = oracle::ramp_image(64, 64);
  const SealMask hole = oracle::disc_mask(64, 64, 32, 32, 4.0);
  const Image out = inpaint_fmm(ramp, hole, 3);
  const auto laplace = oracle::laplace_fill(ramp, hole, 0);
  int max_err = 0;
  double diff_sum = 0.0;
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      if (!hole.at(x, y)) continue;
      max_err = std::max(max_err, std::abs(out.pixel(x, y).r - x));
      diff_sum += std::abs(out.pixel(x, y).r - laplace[y * 64 + x]);
      EXPECT_EQ(out.pixel(x, y).g, 128);
      EXPECT_EQ(out.pixel(x, y).b, 64);
    }
  EXPECT_LE(max_err, 5);
  EXPECT_LE(diff_sum / static_cast<double>(hole.count()), 3.0);
}

TEST(Inpaint, LaplaceOracleReproducesRamp) {
  // Sanity for the oracle itself: a linear function is harmonic.
  const Image ramp = oracle::ramp_image(64, 64);
  const SealMask hole = oracle::disc_mask(64, 64, 32, 32, 4.0);
  const auto v = oracle::laplace_fill(ramp, hole, 0);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if (hole.at(x, y)) EXPECT_NEAR(v[y * 64 + x], x, 1e-3);
}

TEST(Inpaint, OutputWithinRangeOnExtremeContent) {
  // Checkerboard of 0/255 drives the gradient term outside [0,255]; output must clamp.
  Image img(30, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 30; ++x) {
      const std::uint8_t v = ((x / 2 + y / 2) % 2) ? 255 : 0;
      img.set_pixel(x, y, {v, v, v});
    }
  const SealMask m = oracle::disc_mask(30, 30, 15, 15, 6);
  EXPECT_NO_THROW(inpaint_fmm(img, m, 5));
}

TEST(Inpaint, ErrorContract) {
  const Image img(10, 10);
  try {
    inpaint_fmm(img, SealMask(9, 10), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(inpaint_fmm(img, SealMask(10, 10), 0), Error);
}

TEST(Inpaint, FullMaskLeavesPixelsUnchanged) {
  Rng rng(9);
  const Image img = oracle::random_image(rng, 6, 6);
  SealMask m(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) m.set(x, y);
  EXPECT_EQ(inpaint_fmm(img, m, 3), img);
}

TEST(RestoreDocument, SealFreeImageIsUnchanged) {
  Rng rng(10);
  Image img(40, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) {
      const auto v = static_cast<std::uint8_t>(rng.below(256));
      img.set_pixel(x, y, {v, v, v});  // gray never satisfies R >= 1.3 G
    }
  const RestoreResult r = restore_document(img, RestoreParams{});
  EXPECT_TRUE(r.mask.empty());
  EXPECT_EQ(r.restored, img);
}

TEST(RestoreDocument, MaskIsDilatedDetection) {
  Image img(20, 20, Rgb{230, 225, 210});
  img.set_pixel(10, 10, {220, 40, 40});
  const RestoreResult r = restore_document(img, RestoreParams{});
  EXPECT_EQ(r.mask.count(), 9u);
  EXPECT_TRUE(r.mask.at(9, 9));
  EXPECT_TRUE(r.mask.at(11, 11));
  EXPECT_EQ(r.restored.pixel(10, 10), (Rgb{230, 225, 210}));
}

TEST(RestoreDocument, RemovesRedDisc) {
  Image clean(64, 64, Rgb{235, 225, 205});
  for (int y = 0; y < 64; ++y)
    for (int x = 28; x < 32; ++x) clean.set_pixel(x, y, {40, 38, 36});
  Image sealed = clean;
  const SealMask disc = oracle::disc_mask(64, 64, 36, 30, 9);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if (disc.at(x, y)) sealed.set_pixel(x, y, {210, 50, 50});
  const RestoreResult r = restore_document(sealed, RestoreParams{});
  EXPECT_GT(psnr(r.restored, clean), psnr(sealed, clean) + 3.0);
}

}  // namespace
}  // namespace sealrestore

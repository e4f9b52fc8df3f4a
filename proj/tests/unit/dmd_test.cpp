#include <gtest/gtest.h>

#include <complex>

#include "quatdmd/dmd.hpp"
#include "quatdmd/error.hpp"
#include "quatdmd/metrics.hpp"
#include "test_support.hpp"

namespace quatdmd {
namespace {

using cd = std::complex<double>;

// Snapshots x_{l+1} = A x_l, columns 0..m-1.
Eigen::MatrixXd simulate(const Eigen::MatrixXd& a, const Eigen::VectorXd& x0, int m) {
  Eigen::MatrixXd data(x0.size(), m);
  data.col(0) = x0;
  for (int l = 1; l < m; ++l) data.col(l) = a * data.col(l - 1);
  return data;
}

RealDmdModel fit(const Eigen::MatrixXd& data, std::optional<std::size_t> rank = std::nullopt) {
  const Eigen::Index m = data.cols();
  return exact_dmd(data.leftCols(m - 1), data.rightCols(m - 1), rank);
}

// Every expected value has a distinct match in `got`.
void expect_same_multiset(Eigen::VectorXcd got, std::vector<cd> expected, double tol) {
  ASSERT_EQ(static_cast<std::size_t>(got.size()), expected.size());
  std::vector<bool> used(expected.size(), false);
  for (Eigen::Index i = 0; i < got.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (!used[k] && std::abs(got(i) - expected[k]) <= tol) {
        used[k] = found = true;
        break;
      }
    }
    EXPECT_TRUE(found) << "unexpected eigenvalue " << got(i);
  }
}

TEST(ExactDmd, DiagonalDecay) {
  const Eigen::MatrixXd a = Eigen::Vector2d(0.9, 0.5).asDiagonal();
  const Eigen::MatrixXd data = simulate(a, Eigen::Vector2d(1, 1), 10);
  const RealDmdModel model = fit(data);
  expect_same_multiset(model.eigenvalues, {0.9, 0.5}, 1e-8);

  const auto t = frame_times(10);
  const Eigen::MatrixXd rec = dmd_reconstruct(model, t);
  EXPECT_LE((rec - data).norm(), 1e-6 * data.norm());
  EXPECT_LE((rec.col(0) - data.col(0)).norm(), 1e-6 * data.col(0).norm());
}

TEST(ExactDmd, Rotation) {
  const double th = 0.1;
  Eigen::MatrixXd a(2, 2);
  a << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const Eigen::MatrixXd data = simulate(a, Eigen::Vector2d(1, 0), 10);
  const RealDmdModel model = fit(data);
  expect_same_multiset(model.eigenvalues, {std::polar(1.0, th), std::polar(1.0, -th)}, 1e-8);
  for (Eigen::Index s = 0; s < 2; ++s) EXPECT_NEAR(std::abs(model.omegas(s)), th, 1e-8);
  const Eigen::MatrixXd rec = dmd_reconstruct(model, frame_times(10));
  EXPECT_LE((rec - data).norm(), 1e-6 * data.norm());
}

TEST(ExactDmd, StaticDataKeepsOneUnitEigenvalue) {
  Eigen::MatrixXd data(4, 6);
  for (int l = 0; l < 6; ++l) data.col(l) = Eigen::Vector4d(3, 1, 4, 1);
  const RealDmdModel model = fit(data);
  ASSERT_EQ(model.rank(), 1u);
  EXPECT_NEAR(std::abs(model.eigenvalues(0) - 1.0), 0.0, 1e-10);
  const std::vector<double> t{0.0, 2.5, 17.0};
  const Eigen::MatrixXd rec = dmd_reconstruct(model, t);
  for (Eigen::Index c = 0; c < rec.cols(); ++c) {
    EXPECT_LE((rec.col(c) - data.col(0)).norm(), 1e-10);
  }
}

TEST(ExactDmd, ConjugateSymmetry) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> d;
  Eigen::MatrixXd data(8, 12);
  for (Eigen::Index i = 0; i < data.size(); ++i) data(i) = d(rng);
  const RealDmdModel model = fit(data);
  for (Eigen::Index s = 0; s < model.eigenvalues.size(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < model.eigenvalues.size(); ++k) {
      best = std::min(best, std::abs(model.eigenvalues(k) - std::conj(model.eigenvalues(s))));
    }
    EXPECT_LE(best, 1e-10);
  }
}

TEST(ExactDmd, LowRankOperatorReachableSpectrum) {
  // A has eigenvalues {0.95, 0.7, 0.4}; x0 excites only the first two.
  Eigen::MatrixXd p(3, 3);
  p << 1, 0.2, 0.5, 0, 1, 0.3, 0.1, 0, 1;
  const Eigen::MatrixXd a = p * Eigen::Vector3d(0.95, 0.7, 0.4).asDiagonal() * p.inverse();
  const Eigen::VectorXd x0 = p * Eigen::Vector3d(1, 2, 0);
  const RealDmdModel model = fit(simulate(a, x0, 10));
  expect_same_multiset(model.eigenvalues, {0.95, 0.7}, 1e-8);
}

TEST(ExactDmd, Errors) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 2);
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::invalid_argument;
  };
  EXPECT_EQ(kind_of([&] { (void)exact_dmd(x, x, 3); }), ErrorKind::rank);
  EXPECT_EQ(kind_of([&] { (void)exact_dmd(x, x, 0); }), ErrorKind::rank);
  EXPECT_EQ(kind_of([&] { (void)exact_dmd(Eigen::MatrixXd(3, 0), Eigen::MatrixXd(3, 0)); }),
            ErrorKind::insufficient_data);
  EXPECT_EQ(kind_of([&] { (void)exact_dmd(x, Eigen::MatrixXd::Zero(3, 3)); }), ErrorKind::shape);
}

TEST(ExactDmd, BackgroundIndexPrefersSmallestOmega) {
  const Eigen::MatrixXd a = Eigen::Vector2d(0.5, 1.0).asDiagonal();
  const RealDmdModel model = fit(simulate(a, Eigen::Vector2d(1, 1), 8));
  const std::size_t p = dmd_background_index(model);
  EXPECT_NEAR(std::abs(model.eigenvalues(static_cast<Eigen::Index>(p)) - 1.0), 0.0, 1e-10);
}

TEST(DmdVideo, StaticVideoBackgroundIsFrame) {
  const auto v = testing::static_video(32, 12);
  const auto stack = testing::to_stack(v);
  for (const auto mode : {DmdVideoMode::grayscale, DmdVideoMode::per_channel}) {
    const DmdVideoResult r = dmd_on_video(stack, mode);
    if (mode == DmdVideoMode::per_channel) {
      ASSERT_EQ(r.channels.size(), 3u);
      for (std::size_t i = 0; i < r.background.pixels.size(); ++i) {
        EXPECT_LE(std::abs(int(r.background.pixels[i]) - int(v.background.pixels[i])), 1);
      }
    } else {
      ASSERT_EQ(r.channels.size(), 1u);
    }
  }
}

TEST(DmdVideo, GrayscaleModeReplicatesChannels) {
  const auto stack = testing::to_stack(testing::moving_square_video(32, 16, 4));
  const DmdVideoResult r = dmd_on_video(stack, DmdVideoMode::grayscale);
  for (std::size_t i = 0; i < r.background.pixel_count(); ++i) {
    EXPECT_EQ(r.background.pixels[3 * i], r.background.pixels[3 * i + 1]);
    EXPECT_EQ(r.background.pixels[3 * i], r.background.pixels[3 * i + 2]);
  }
}

TEST(DmdVideo, MovingSquarePerChannel) {
  const auto v = testing::moving_square_video();
  const DmdVideoResult r = dmd_on_video(testing::to_stack(v), DmdVideoMode::per_channel);
  EXPECT_LT(age(to_color_image(v.background), to_color_image(r.background)), 5.0);
}

TEST(DmdVideo, MovingSquareGrayscale) {
  const auto v = testing::moving_square_video();
  const DmdVideoResult r = dmd_on_video(testing::to_stack(v), DmdVideoMode::grayscale);
  // Compare in gray: the colour ground truth is not recoverable from luma.
  ColorImage gt_gray = to_color_image(v.background);
  for (std::size_t i = 0; i < gt_gray.pixel_count(); ++i) {
    const double y = kGrayWeightR * gt_gray.pixels[3 * i] + kGrayWeightG * gt_gray.pixels[3 * i + 1] +
                     kGrayWeightB * gt_gray.pixels[3 * i + 2];
    for (int c = 0; c < 3; ++c) gt_gray.pixels[3 * i + c] = y;
  }
  EXPECT_LT(age(gt_gray, to_color_image(r.background)), 5.0);
}

}  // namespace
}  // namespace quatdmd

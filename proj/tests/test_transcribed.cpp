#include <dosusy/second_solution.hpp>
#include <dosusy/transcribed.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace dosusy;
using std::numbers::pi;

TEST(TranscribedS1, Examples)
{
    EXPECT_NEAR(transcribed::s1(0, AlphaAngle(pi / 3)), -2 / std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(transcribed::s1(1, AlphaAngle(pi / 2)), 0.0, 1e-15);
    // mpmath: -(8/3)(1/2)[(2/sqrt3)^3 + 2(2/sqrt3)]
    EXPECT_NEAR(transcribed::s1(1, AlphaAngle(pi / 3)), -5.132002392796673, 1e-13);
}

TEST(TranscribedSHalf, Examples)
{
    EXPECT_NEAR(transcribed::s_half(0, AlphaAngle(pi / 2)), 0.0, 1e-15);
    // printed form at l = 0: -8 cos a csc^2 a + 4 ln tan(a/2); mpmath value
    EXPECT_NEAR(transcribed::s_half(0, AlphaAngle(pi / 3)), -7.530557910669553, 1e-13);
    EXPECT_EQ(transcribed::s_half_split(0, AlphaAngle(1.0)).log_coeff, 4.0);
}

TEST(TranscribedSHalf, LogCoefficientMatchesReduction)
{
    // 4 (4l+1)!! 4^l/(2l+1)! against prefactor * reduction log coefficient
    for (int l = 0; l <= 10; ++l) {
        const auto p = validate_params(Rational(1, 2), l);
        const double canonical = s_prefactor(p) * series_for(p).log_coeff;
        EXPECT_NEAR(transcribed::s_half_split(l, AlphaAngle(1.0)).log_coeff / canonical, 1.0, 1e-13) << l;
    }
}

TEST(TranscribedV1, Examples)
{
    EXPECT_NEAR(transcribed::v1(0, AlphaAngle(pi / 2)), 0.0, 1e-15);
    for (double a : {0.4, 1.1, 2.5})
        EXPECT_NEAR(transcribed::v1(0, AlphaAngle(a)), 2 * std::cos(a) * std::tan(a / 2), 1e-14);
}

TEST(TranscribedV1, ProductReadings)
{
    // l = 1, m = 1: as printed l(l-1) = 0 kills the sum, the other reading keeps l = 1.
    const double a = 1.1;
    const double s2 = std::sin(a) * std::sin(a);
    const double base = 2 * std::cos(a) / 3 * std::tan(a / 2);
    EXPECT_NEAR(transcribed::v1(1, AlphaAngle(a), transcribed::ProductReading::AsPrinted), base, 1e-14);
    EXPECT_NEAR(transcribed::v1(1, AlphaAngle(a), transcribed::ProductReading::FisheyeSeriesForm),
                base * (1 + 2 * s2), 1e-14);
}

TEST(TranscribedVHalf, Examples)
{
    EXPECT_NEAR(transcribed::v_half(0, AlphaAngle(pi / 2)), 0.0, 1e-15);
    for (double a : {0.4, pi / 3, 2.5}) {
        const auto s = transcribed::v_half_split(0, AlphaAngle(a));
        const double t = std::tan(a / 2);
        EXPECT_NEAR(s.cos_part, 2 * std::cos(a) * t * t, 1e-14);
        EXPECT_NEAR(s.log_part, 4 * std::pow(std::sin(a / 2), 4) * std::log(t), 1e-14);
    }
}

TEST(Transcribed, RejectsBadL)
{
    EXPECT_THROW(transcribed::s1(-1, AlphaAngle(1.0)), std::invalid_argument);
    EXPECT_THROW(transcribed::v_half(L_MAX + 1, AlphaAngle(1.0)), std::invalid_argument);
}

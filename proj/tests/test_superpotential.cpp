#include <dosusy/superpotential.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace dosusy;
using std::numbers::pi;

namespace {

const ModelParams MF0 = validate_params(Rational(1), 0);
const ModelParams MF1 = validate_params(Rational(1), 1);
const ModelParams AA0 = validate_params(Rational(1, 2), 0);

double central(auto&& fn, double x, double h) { return (fn(x + h) - fn(x - h)) / (2 * h); }

std::vector<double> log_points(double a, double b, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(a * std::pow(b / a, double(i) / (n - 1)));
    return v;
}

} // namespace

TEST(W1, Examples)
{
    EXPECT_DOUBLE_EQ(w1(MF0, 1.0), -0.5);
    EXPECT_NEAR(w1(MF1, 2.0), 0.2, 1e-15);
    EXPECT_NEAR(w1(MF0, 2.0), -0.1, 1e-15);
}

TEST(W1, IsMinusHalfAtUnitRadiusForAnyKappaAndL)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(1, 9), den(1, 9), ell(0, L_MAX);
    for (int i = 0; i < 50; ++i) {
        const auto p = validate_params(Rational(num(rng), den(rng)), ell(rng));
        EXPECT_EQ(w1(p, 1.0), -0.5);
    }
}

TEST(W1, RejectsBadRadius)
{
    EXPECT_THROW(w1(MF0, 0.0), std::domain_error);
    EXPECT_THROW(w1(MF0, -1.0), std::domain_error);
    EXPECT_THROW(w1(MF0, NAN), std::domain_error);
    EXPECT_THROW(w1_prime(MF0, INFINITY), std::domain_error);
    EXPECT_THROW(f_radial(MF0, 0.0), std::domain_error);
}

TEST(W1Prime, Examples)
{
    // d/drho [-1/(rho + rho^3)] = (1 + 3 rho^2)/(rho + rho^3)^2 = 1 at rho = 1
    EXPECT_NEAR(w1_prime(MF0, 1.0), 1.0, 1e-15);
    EXPECT_NEAR(w1_prime(MF0, 1.0), central([](double r) { return w1(MF0, r); }, 1.0, 1e-5), 1e-8);
    EXPECT_NEAR(w1_prime(AA0, 1.0), central([](double r) { return w1(AA0, r); }, 1.0, 1e-5), 1e-8);
}

TEST(W1Prime, FiniteAtExtremeRadii)
{
    for (double rho : {1e-150, 1e-20, 1e20, 1e200}) {
        EXPECT_TRUE(std::isfinite(w1_prime(MF1, rho))) << rho;
        EXPECT_TRUE(std::isfinite(f_radial(MF1, rho))) << rho;
        EXPECT_TRUE(std::isfinite(log_f_radial(MF1, rho))) << rho;
    }
}

TEST(FRadial, Examples)
{
    EXPECT_NEAR(f_radial(MF0, 1.0), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(f_squared_trig(MF0, rho_to_alpha(MF0, 1.0)), 0.5, 1e-15);
    // f / rho^(l+1) -> 1 as rho -> 0
    for (auto p : {MF0, MF1, AA0}) {
        double prev = INFINITY;
        for (double rho : {1e-2, 1e-4, 1e-8, 1e-12}) {
            const double dev = std::abs(f_radial(p, rho) / std::pow(rho, p.l() + 1) - 1);
            EXPECT_LT(dev, prev);
            prev = dev;
        }
        EXPECT_LT(prev, 1e-5);
    }
}

TEST(UEff, Examples)
{
    EXPECT_NEAR(u_eff(MF0, 1.0), 0.25 - 1.0, 1e-15);
    // small-rho: both pieces finite and consistent
    const double rho = 1e-4;
    const double direct = w1(MF0, rho) * w1(MF0, rho) - w1_prime(MF0, rho);
    EXPECT_DOUBLE_EQ(u_eff(MF0, rho), direct);
    EXPECT_TRUE(std::isfinite(rho * rho * u_eff(MF0, rho)));
}

TEST(UEff, MatchesFiniteDifferenceDefinition)
{
    for (auto p : {MF0, MF1, AA0, validate_params(Rational(1, 3), 2)})
        for (double rho : {0.3, 1.0, 2.7}) {
            const double fd = central([&](double r) { return w1(p, r); }, rho, 1e-5);
            EXPECT_NEAR(u_eff(p, rho), w1(p, rho) * w1(p, rho) - fd, 1e-6);
        }
}

TEST(AlphaMap, Examples)
{
    EXPECT_NEAR(rho_to_alpha(MF0, 1.0), pi / 2, 1e-15);
    EXPECT_NEAR(rho_to_alpha(AA0, 1.0), pi / 2, 1e-15);
    EXPECT_NEAR(rho_to_alpha(MF0, std::sqrt(3.0)), 2 * pi / 3, 1e-15);
    EXPECT_NEAR(alpha_to_rho(MF0, AlphaAngle(pi / 2)), 1.0, 1e-15);
    EXPECT_NEAR(alpha_to_rho(AA0, AlphaAngle(2 * pi / 3)), 3.0, 1e-14);
    const double back = alpha_to_rho(AA0, rho_to_alpha(AA0, 0.37));
    EXPECT_NEAR(back / 0.37, 1.0, 1e-14);
}

TEST(AlphaMap, RejectsOutOfRangeAngles)
{
    EXPECT_THROW(AlphaAngle(0.0), std::domain_error);
    EXPECT_THROW(AlphaAngle{pi}, std::domain_error);
    EXPECT_THROW(AlphaAngle(-0.1), std::domain_error);
    EXPECT_THROW(AlphaAngle(4.0), std::domain_error);
}

TEST(AlphaMap, RoundTripAndMonotone)
{
    for (auto p : {MF0, AA0}) {
        double prev = 0;
        for (int i = 1; i < 200; ++i) {
            const double a = pi * i / 200;
            const double back = rho_to_alpha(p, alpha_to_rho(p, AlphaAngle(a)));
            EXPECT_NEAR(back / a, 1.0, 1e-14) << a;
            EXPECT_GT(back, prev);
            prev = back;
        }
    }
}

// Domain: kappa in {1, 1/2}, l in 0..10, log grid [1e-2, 1e2].
TEST(SuperpotentialProperties, LogDerivativeAndAnalyticDerivative)
{
    for (auto k : {Rational(1), Rational(1, 2)})
        for (int l = 0; l <= 10; ++l) {
            const auto p = validate_params(k, l);
            for (double rho : log_points(1e-2, 1e2, 41)) {
                const double h = 1e-5 * rho;
                const double dlnf = central([&](double r) { return log_f_radial(p, r); }, rho, h);
                EXPECT_LE(std::abs(w1(p, rho) + dlnf), 1e-6) << l << " " << rho;
                const double dw = central([&](double r) { return w1(p, r); }, rho, h);
                const double wp = w1_prime(p, rho);
                EXPECT_LE(std::abs(wp - dw), 1e-6 * std::max(1.0, std::abs(wp))) << l << " " << rho;
            }
        }
}

TEST(SuperpotentialProperties, TrigonometricFormsOfFSquared)
{
    for (auto k : {Rational(1), Rational(1, 2)})
        for (int l = 0; l <= 10; ++l) {
            const auto p = validate_params(k, l);
            for (double rho : log_points(1e-2, 1e2, 41)) {
                const double fsq = f_squared(p, rho);
                const double trig = f_squared_trig(p, rho_to_alpha(p, rho));
                EXPECT_LE(std::abs(fsq - trig) / fsq, 1e-12) << l << " " << rho;
            }
        }
    EXPECT_THROW(f_squared_trig(validate_params(Rational(1, 3), 0), AlphaAngle(1.0)), std::invalid_argument);
}

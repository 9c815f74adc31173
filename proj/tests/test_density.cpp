#include <catch_amalgamated.hpp>

#include <cmath>

#include "bfset/density.hpp"
#include "bfset/quadrature.hpp"
#include "bfset/sampling.hpp"

using namespace bfset;

namespace {

const ParameterSpace kUnit = ParameterSpace::unit();

HypothesisSet make(std::initializer_list<Interval> ivs) {
    return normalize(std::vector<Interval>(ivs), kUnit);
}

double log_factorial(int n) {
    double v = 0.0;
    for (int i = 2; i <= n; ++i) v += std::log(static_cast<double>(i));
    return v;
}

// sup-norm of the pdf difference on a probe grid, relative to the peak
double sup_rel_diff(const Density& a, const Density& b, int points = 1001) {
    double diff = 0.0, peak = 0.0;
    for (int i = 0; i <= points - 1; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        const double fa = a.pdf(t), fb = b.pdf(t);
        if (std::isfinite(fa)) peak = std::max(peak, fa);
        if (std::isfinite(fa) && std::isfinite(fb)) diff = std::max(diff, std::abs(fa - fb));
    }
    return peak > 0.0 ? diff / peak : 0.0;
}

} // namespace

TEST_CASE("integrate: constants and normalized densities") {
    auto full = make({Interval(0.0, 1.0)});
    CHECK(integrate([](double) { return 1.0; }, full) == Catch::Approx(1.0).epsilon(1e-12));

    Density b157 = Density::beta(15.0, 7.0);
    CHECK(integrate([&](double t) { return b157.pdf(t); }, full) ==
          Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate: beta kernel matches exact factorial arithmetic") {
    auto full = make({Interval(0.0, 1.0)});
    const double got = integrate(
        [](double t) { return std::pow(t, 14.0) * std::pow(1.0 - t, 6.0); }, full);
    // B(15,7) = 14! 6! / 21!
    const double expected = std::exp(log_factorial(14) + log_factorial(6) - log_factorial(21));
    CHECK(got == Catch::Approx(expected).epsilon(1e-9));
}

TEST_CASE("quadrature oracle agreement across the conjugate family") {
    auto full = make({Interval(0.0, 1.0)});
    for (double a : {1.0, 2.0, 5.0, 15.0, 30.0}) {
        for (double b : {1.0, 3.0, 7.0, 30.0}) {
            const double got = integrate(
                [a, b](double t) {
                    return std::exp(xlogy(a - 1.0, t) + xlogy(b - 1.0, 1.0 - t));
                },
                full);
            CHECK(got == Catch::Approx(std::exp(log_beta(a, b))).epsilon(1e-9));
        }
    }
}

TEST_CASE("quadrature handles integrable endpoint singularities") {
    auto full = make({Interval(0.0, 1.0)});
    const double got =
        integrate([](double t) { return std::pow(t, -0.5) * std::pow(1.0 - t, -0.5); }, full);
    // 1e-7, not 1e-9: representing 1-theta near the right endpoint floors the
    // reachable accuracy at ~2*sqrt(eps) for square-root singularities
    CHECK(got == Catch::Approx(std::exp(log_beta(0.5, 0.5))).epsilon(1e-7));
}

TEST_CASE("log_pdf") {
    Density uniform = Density::beta(1.0, 1.0);
    CHECK(uniform.log_pdf(0.3) == 0.0);

    Density b157 = Density::beta(15.0, 7.0);
    CHECK(b157.log_pdf(-0.2) == kNegInf);
    CHECK(b157.log_pdf(1.4) == kNegInf);
    // mode at 14/20; closed-form value from exact integer arithmetic
    const double log_b = log_factorial(14) + log_factorial(6) - log_factorial(21);
    const double expected = 14.0 * std::log(0.7) + 6.0 * std::log(0.3) - log_b;
    CHECK(b157.log_pdf(0.7) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("restrict: uniform to half") {
    auto half = make({Interval(0.0, 0.5, true, false)});
    auto [d, mass] = restrict_density(Density::beta(1.0, 1.0), half);
    CHECK(mass == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(d.pdf(0.25) == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(d.pdf(0.75) == 0.0);
}

TEST_CASE("restrict: identity restriction returns the input unchanged") {
    auto full = make({Interval(0.0, 1.0)});
    Density in = Density::beta(1.0, 1.0);
    auto [d, mass] = restrict_density(in, full);
    CHECK(mass == 1.0);
    CHECK(d.family() == Family::Beta);
    CHECK_FALSE(d.truncated());
}

TEST_CASE("restrict: Beta(2,2) mass at the symmetric split") {
    auto left = make({Interval(0.0, 0.5)});
    auto [d, mass] = restrict_density(Density::beta(2.0, 2.0), left);
    CHECK(mass == Catch::Approx(0.5).epsilon(1e-12));
    // cross-check against the quadrature oracle
    Density b22 = Density::beta(2.0, 2.0);
    const double quad = integrate([&](double t) { return b22.pdf(t); }, left);
    CHECK(mass == Catch::Approx(quad).epsilon(1e-9));
    // restricted density integrates to one
    CHECK(integrate([&, dd = d](double t) { return dd.pdf(t); }, left) ==
          Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("restrict: zero-mass restriction raises") {
    auto point = make({Interval(0.5, 0.5)});
    CHECK_THROWS_AS(restrict_density(Density::beta(1.0, 1.0), point), ZeroMassRestriction);
}

TEST_CASE("compose: identical components collapse") {
    auto full = make({Interval(0.0, 1.0)});
    MixturePrior mix(0.5, 0.5, Density::beta(1.0, 1.0), Density::beta(1.0, 1.0), full, full);
    Density d = compose(mix);
    CHECK(d.family() == Family::Beta);
    CHECK(d.alpha() == 1.0);
    CHECK(d.beta_param() == 1.0);
}

TEST_CASE("compose: complementary truncated halves recombine to the base") {
    auto left = make({Interval(0.0, 0.5, true, false)});
    auto right = make({Interval(0.5, 1.0)});
    Density w0 = restrict_density(Density::beta(1.0, 1.0), left).density;
    Density w1 = restrict_density(Density::beta(1.0, 1.0), right).density;
    MixturePrior mix(0.5, 0.5, w0, w1, left, right);
    Density d = compose(mix);
    CHECK(d.family() == Family::Beta);
    CHECK_FALSE(d.truncated());
    CHECK(d.pdf(0.25) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compose: overlapping-support mixture normalizes") {
    auto full = make({Interval(0.0, 1.0)});
    MixturePrior mix(0.5, 0.5, Density::beta(1.0, 1.0), Density::beta(15.0, 7.0), full, full);
    Density d = compose(mix);
    CHECK(integrate([&](double t) { return d.pdf(t); }, full) ==
          Catch::Approx(1.0).epsilon(1e-9));
    // pointwise mixture value at an interior point
    Density b157 = Density::beta(15.0, 7.0);
    CHECK(d.pdf(0.7) == Catch::Approx(0.5 + 0.5 * b157.pdf(0.7)).epsilon(1e-7));
}

TEST_CASE("decompose: symmetric splits") {
    auto left = make({Interval(0.0, 0.5, true, false)});
    auto right = make({Interval(0.5, 1.0)});
    MixturePrior m1 = decompose(Density::beta(1.0, 1.0), left, right);
    CHECK(m1.p_h0 == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(m1.p_h1 == Catch::Approx(0.5).epsilon(1e-12));

    MixturePrior m2 = decompose(Density::beta(2.0, 2.0), left, right);
    CHECK(m2.p_h0 == Catch::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("decompose: point hypothesis under a continuous prior raises") {
    auto point = make({Interval(0.5, 0.5)});
    auto rest = make({Interval(0.0, 0.5, true, false), Interval(0.5, 1.0, false, true)});
    CHECK_THROWS_AS(decompose(Density::beta(1.0, 1.0), point, rest), ZeroMassRestriction);
}

TEST_CASE("decompose: mass outside the hypotheses raises") {
    auto h0 = make({Interval(0.0, 0.3)});
    auto h1 = make({Interval(0.5, 1.0)});
    CHECK_THROWS_AS(decompose(Density::beta(2.0, 2.0), h0, h1), MassOutsideHypotheses);
}

TEST_CASE("decompose: overlapping hypotheses are a precondition violation") {
    auto h0 = make({Interval(0.0, 0.6)});
    auto h1 = make({Interval(0.4, 1.0)});
    CHECK_THROWS_AS(decompose(Density::beta(1.0, 1.0), h0, h1), ConfigError);
}

TEST_CASE("roundtrip: compose after decompose recovers the conjugate prior") {
    auto left = make({Interval(0.0, 0.5, true, false)});
    auto right = make({Interval(0.5, 1.0)});
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 2.0}, {15.0, 7.0}, {0.8, 3.0}}) {
        Density pi = Density::beta(a, b);
        Density back = compose(decompose(pi, left, right));
        CHECK(sup_rel_diff(pi, back) < 1e-8);
    }
}

TEST_CASE("roundtrip: grid prior within the looser tolerance") {
    auto left = make({Interval(0.0, 0.5, true, false)});
    auto right = make({Interval(0.5, 1.0)});
    Density pi = to_grid(Density::beta(2.0, 2.0));
    Density back = compose(decompose(pi, left, right));
    CHECK(sup_rel_diff(pi, back) < 1e-6);
}

TEST_CASE("restriction mass consistency") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const double cut = 0.1 + 0.8 * rng.next_double();
        auto left = make({Interval(0.0, cut, true, false)});
        auto right = make({Interval(cut, 1.0)});
        const double a = 0.5 + 10.0 * rng.next_double();
        const double b = 0.5 + 10.0 * rng.next_double();
        Density pi = Density::beta(a, b);
        const double m0 = restrict_density(pi, left).mass;
        const double m1 = restrict_density(pi, right).mass;
        CHECK(m0 + m1 == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("normalization: every constructed density integrates to one") {
    auto full = make({Interval(0.0, 1.0)});
    auto mid = make({Interval(0.2, 0.8)});
    std::vector<Density> ds;
    ds.push_back(Density::beta(0.7, 4.0));
    ds.push_back(restrict_density(Density::beta(3.0, 2.0), mid).density);
    ds.push_back(to_grid(Density::beta(5.0, 3.0)));
    ds.push_back(Density::normal(0.5, 0.2, kUnit));
    for (const auto& d : ds) {
        const double z = integrate([&](double t) { return d.pdf(t); }, d.support());
        CHECK(z == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("grid density tracks its source closely") {
    Density src = Density::beta(15.0, 7.0);
    Density g = to_grid(src);
    CHECK(sup_rel_diff(src, g) < 1e-7);
}

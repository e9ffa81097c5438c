#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lossyrom/io.hpp"
#include "lossyrom/media.hpp"

using namespace lossyrom;

namespace {

SampledFunction constant_samples(double t_max, std::size_t n, double value) {
    return SampledFunction(t_max, std::vector<double>(n, value));
}

}  // namespace

TEST_CASE("constant profile: samples, boundary impedance and mean loss") {
    ProfileParams p;
    p.t_max = 2.0;
    p.n_cells = 200;
    p.zeta_base = 2.0;
    p.loss_base = 0.7;
    const MediumProfile m = make_profile(ProfileKind::constant, p);

    CHECK(m.zeta0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.zeta.values.size() == 201);
    for (double v : m.zeta.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-14));
    for (double v : m.loss.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(mean_loss(m) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("mean loss is the exact trapezoid average") {
    const double t_max = 1.0;
    const std::size_t n = 401;
    std::vector<double> sine(n), ramp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t_max * double(k) / double(n - 1);
        sine[k] = 1.0 + std::sin(2.0 * std::numbers::pi * t);
        ramp[k] = 2.0 * t;
    }
    // a full sine period and a linear ramp both average to 1 exactly under
    // the trapezoid rule on a uniform grid
    const MediumProfile ms(t_max, constant_samples(t_max, n, 1.0),
                           SampledFunction(t_max, sine));
    const MediumProfile mr(t_max, constant_samples(t_max, n, 1.0),
                           SampledFunction(t_max, ramp));
    CHECK(std::abs(mean_loss(ms) - 1.0) <= 1e-12);
    CHECK(std::abs(mean_loss(mr) - 1.0) <= 1e-12);
}

TEST_CASE("smooth profile keeps the bump and flattens the ends") {
    ProfileParams p;
    p.n_cells = 2000;
    p.zeta_bumps = {{0.5, 0.5, 0.05}};
    p.loss_bumps = {{0.3, 0.4, 0.06}};
    const MediumProfile m = make_profile(ProfileKind::smooth, p);

    // bump center far from the margins is untouched by the blend
    CHECK(m.zeta(0.5) == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(m.loss(0.3) == doctest::Approx(1.4).epsilon(1e-6));

    // exactly constant over the flat margins
    for (double t : {0.0, 0.005, 0.01, 0.019}) {
        CHECK(m.zeta(t) == doctest::Approx(m.zeta0).epsilon(1e-12));
        CHECK(m.zeta(1.0 - t) == doctest::Approx(m.zeta(1.0)).epsilon(1e-12));
    }

    double zmin = 1e300, zmax = -1e300;
    for (double v : m.zeta.values) {
        zmin = std::min(zmin, v);
        zmax = std::max(zmax, v);
    }
    CHECK(zmin >= 1.0 - 1e-12);
    CHECK(zmax == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("loss decomposition round trips and normalizes the fluctuation") {
    ProfileParams p;
    p.n_cells = 500;
    p.loss_base = 1.0;
    p.loss_bumps = {{0.5, 0.6, 0.08}};
    const MediumProfile m = make_profile(ProfileKind::smooth, p);
    const LossDecomposition d = decompose_loss(m);

    CHECK(d.alpha > 0.0);
    double rho_peak = 0.0;
    for (double v : d.rho.values) rho_peak = std::max(rho_peak, std::abs(v));
    CHECK(rho_peak == doctest::Approx(1.0).epsilon(1e-14));

    const std::vector<double> back = recompose_loss(d);
    REQUIRE(back.size() == m.loss.values.size());
    for (std::size_t k = 0; k < back.size(); ++k)
        CHECK(std::abs(back[k] - m.loss.values[k]) <= 1e-12);
}

TEST_CASE("fourier medium evaluates the plain truncated series") {
    FourierMedium f;
    f.t_max = 2.0;
    f.zeta_cos = {1.0, 0.25, -0.125};
    f.zeta_sin = {0.5, 0.0625};
    f.loss_cos = {0.75};
    f.loss_sin = {-0.3};

    for (double t : {0.0, 0.37, 1.0, 1.61, 2.0}) {
        const double x = 2.0 * t / f.t_max - 1.0;
        double want = 0.0;
        for (std::size_t j = 0; j < f.zeta_cos.size(); ++j)
            want += f.zeta_cos[j] * std::cos(std::numbers::pi * double(j) * x);
        for (std::size_t j = 0; j < f.zeta_sin.size(); ++j)
            want += f.zeta_sin[j] * std::sin(std::numbers::pi * double(j + 1) * x);
        CHECK(f.eval_zeta(t) == doctest::Approx(want).epsilon(1e-14));
        CHECK(f.eval_loss(t) ==
              doctest::Approx(0.75 - 0.3 * std::sin(std::numbers::pi * x))
                  .epsilon(1e-14));
    }

    // the fourier profile kind blends the impedance but samples loss as-is
    ProfileParams p;
    p.t_max = 2.0;
    p.n_cells = 300;
    f.loss_cos = {0.75};
    f.loss_sin = {};
    p.fourier = f;
    const MediumProfile m = make_profile(ProfileKind::fourier, p);
    CHECK(m.zeta(1.0) == doctest::Approx(f.eval_zeta(1.0)).epsilon(1e-12));
    CHECK(m.zeta(0.0) == doctest::Approx(f.eval_zeta(0.04)).epsilon(1e-12));
}

TEST_CASE("discontinuous profile ramps each jump across one cell") {
    ProfileParams p;
    p.n_cells = 100;
    p.zeta_breaks = {0.5};
    p.zeta_levels = {1.0, 2.0};
    p.loss_breaks = {0.3};
    p.loss_levels = {0.5, 1.5};
    const MediumProfile m = make_profile(ProfileKind::discontinuous, p);

    CHECK(m.zeta(0.45) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.zeta(0.55) == doctest::Approx(2.0).epsilon(1e-12));
    // between the last sample below the break and the first at/above it the
    // stored samples interpolate linearly
    CHECK(m.zeta(0.495) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(m.loss(0.295) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("breakpoints inside the blended margins are rejected") {
        ProfileParams bad = p;
        bad.zeta_breaks = {0.03};  // inside the 2 * 2% blend zone
        CHECK_THROWS_WITH_AS(make_profile(ProfileKind::discontinuous, bad),
                             doctest::Contains("blended end margins"),
                             std::invalid_argument);
    }
}

TEST_CASE("profile validation") {
    const std::size_t n = 101;

    SUBCASE("negative loss beyond roundoff is rejected") {
        std::vector<double> loss(n, 0.5);
        loss[40] = -1e-6;
        CHECK_THROWS_WITH_AS(
            MediumProfile(1.0, constant_samples(1.0, n, 1.0),
                          SampledFunction(1.0, loss)),
            doctest::Contains("loss must be nonnegative"), std::invalid_argument);
    }
    SUBCASE("roundoff-level negative loss is clamped to zero") {
        std::vector<double> loss(n, 0.5);
        loss[40] = -1e-13;
        const MediumProfile m(1.0, constant_samples(1.0, n, 1.0),
                              SampledFunction(1.0, loss));
        CHECK(m.loss.values[40] == 0.0);
    }
    SUBCASE("nonpositive impedance is rejected") {
        std::vector<double> zeta(n, 1.0);
        zeta[13] = 0.0;
        CHECK_THROWS_WITH_AS(
            MediumProfile(1.0, SampledFunction(1.0, zeta),
                          constant_samples(1.0, n, 1.0)),
            doctest::Contains("impedance must be positive"),
            std::invalid_argument);
    }
    SUBCASE("impedance varying inside the end margin is rejected") {
        std::vector<double> zeta(n);
        for (std::size_t k = 0; k < n; ++k)
            zeta[k] = 1.0 + double(k) / double(n - 1);  // ramp from the start
        CHECK_THROWS_WITH_AS(
            MediumProfile(1.0, SampledFunction(1.0, zeta),
                          constant_samples(1.0, n, 1.0)),
            doctest::Contains("not flat over the left end margin"),
            std::invalid_argument);
    }
    SUBCASE("too few cells for the margins") {
        ProfileParams p;
        p.n_cells = 20;
        CHECK_THROWS_AS(make_profile(ProfileKind::constant, p),
                        std::invalid_argument);
    }
}

TEST_CASE("profile JSON round trip") {
    ProfileParams p;
    p.n_cells = 120;
    p.zeta_bumps = {{0.5, 0.25, 0.07}};
    p.loss_bumps = {{0.6, 0.5, 0.05}};
    const MediumProfile m = make_profile(ProfileKind::smooth, p);

    const io::json j = io::to_json(m);
    const MediumProfile back = io::medium_from_json(j);
    CHECK(back.t_max == m.t_max);
    CHECK(back.zeta0 == m.zeta0);
    REQUIRE(back.zeta.values.size() == m.zeta.values.size());
    for (std::size_t k = 0; k < m.zeta.values.size(); ++k) {
        CHECK(back.zeta.values[k] == m.zeta.values[k]);
        CHECK(back.loss.values[k] == m.loss.values[k]);
    }
    // serialization is deterministic
    CHECK(io::to_json(back).dump() == j.dump());
}

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <capflow/connections.hpp>
#include <capflow/entropy.hpp>
#include <capflow/errors.hpp>
#include <capflow/norms.hpp>
#include <capflow/parabolic.hpp>
#include <capflow/steady_states.hpp>

#include "test_support.hpp"

using namespace capflow;

TEST(InterfaceSolve, SaturatedSides)
{
    auto const pair = test::canonical_pair();
    auto const one = interface_solve(pair, 0.1, 1.0 / 128, 1.0, 1.0);
    EXPECT_EQ(one.u1, 1.0);
    EXPECT_EQ(one.u2, 1.0);
    EXPECT_DOUBLE_EQ(one.flux, 1.0);
    auto const zero = interface_solve(pair, 0.1, 1.0 / 128, 0.0, 0.0);
    EXPECT_EQ(zero.u1, 0.0);
    EXPECT_EQ(zero.u2, 0.0);
    EXPECT_EQ(zero.flux, 0.0);
}

TEST(InterfaceSolve, DamBreakState)
{
    auto const pair = test::canonical_pair();
    double const dx = 1.0 / 256;
    auto const st = interface_solve(pair, 0.05, dx, 1.0, 0.0);
    EXPECT_LE((1.0 - st.u1) * st.u2, 1e-12);
    EXPECT_LE(st.mismatch, 1e-12);
}

TEST(InterfaceSolve, AdmissibleOnGrid)
{
    auto const pair = test::canonical_pair();
    for (double eps : {0.2, 0.05, 0.01})
        for (int a = 0; a <= 20; ++a)
            for (int b = 0; b <= 20; ++b)
            {
                auto const st = interface_solve(pair, eps, 1.0 / 256, a / 20.0, b / 20.0);
                ASSERT_LE((1.0 - st.u1) * st.u2, 1e-12);
                ASSERT_LE(st.mismatch, 1e-12) << eps << " " << a << " " << b;
            }
}

TEST(InterfaceSolve, VanishingCapillarityGivesInterfaceGodunov)
{
    auto const pair = test::canonical_pair();
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
        {
            double const u1 = a / 10.0;
            double const u2 = b / 10.0;
            auto const st = interface_solve(pair, 1e-12, 0.01, u1, u2);
            EXPECT_NEAR(st.flux, interface_godunov(pair, u1, u2), 1e-8)
                << u1 << " " << u2;
        }
}

TEST(InterfaceSolve, Errors)
{
    auto const pair = test::canonical_pair();
    EXPECT_THROW(interface_solve(pair, 1.0, 0.01, 0.5, 0.5), RegimeError);
    EXPECT_THROW(interface_solve(pair, 0.1, 0.01, -0.5, 0.5), DomainError);
    EXPECT_THROW(interface_solve(pair, 0.1, 0.0, 0.5, 0.5), DomainError);
}

TEST(ParabolicStep, SaturatedFieldUnchanged)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 64);
    ParabolicConfig cfg;
    cfg.eps = 0.1;
    Field const u = two_state_field(g, 1.0, 1.0);
    auto const v = parabolic_step(pair, g, u, cfg);
    for (std::size_t j = 0; j < v.size(); ++j)
        EXPECT_EQ(v[j], 1.0);
}

TEST(ParabolicStep, MassPerStep)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 128);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Field u;
    for (std::size_t j = 0; j < g.n_cells(); ++j)
        u.values.push_back(uni(rng));
    ParabolicScheme const scheme(pair, g, 0.1);
    double const dt = scheme.time_step(0.9);
    auto const v = parabolic_step(pair, g, u, 0.1, dt);
    std::vector<double> fl;
    compute_face_fluxes(scheme, g, u.values, fl);
    double mu = 0.0;
    double mv = 0.0;
    for (std::size_t j = 0; j < g.n_cells(); ++j)
    {
        mu += u[j];
        mv += v[j];
    }
    double const boundary = dt / g.dx() * (fl.back() - fl.front());
    EXPECT_NEAR(mv, mu - boundary, 1e-14 * mu);
}

TEST(ParabolicStep, StabilityAndRegime)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 64);
    Field const u = two_state_field(g, 1.0, 0.0);
    ParabolicScheme const scheme(pair, g, 0.1);
    EXPECT_THROW(parabolic_step(pair, g, u, 0.1, 1.01 * scheme.time_step(1.0)),
                 StabilityError);
    // The step also satisfies the separate convective and diffusive bounds.
    double const dt = scheme.time_step(1.0);
    EXPECT_LE(dt, g.dx() / pair.lipschitz());
    EXPECT_LE(dt, g.dx() * g.dx() / (2.0 * 0.1 * pair.max_mobility()));
    ParabolicConfig cfg;
    cfg.eps = 1.5;
    EXPECT_THROW(parabolic_step(pair, g, u, cfg), RegimeError);
    EXPECT_THROW(ParabolicScheme(pair, g, 0.0), RegimeError);
}

TEST(ParabolicSolve, MonotoneAndBounded)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 128);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Field a;
    Field b;
    for (std::size_t j = 0; j < g.n_cells(); ++j)
    {
        double const x = uni(rng);
        a.values.push_back(x);
        b.values.push_back(std::min(1.0, x + 0.2 * uni(rng)));
    }
    ParabolicConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 0.3;
    cfg.record_every_step = true;
    auto const ra = parabolic_solve(pair, g, a, cfg);
    auto const rb = parabolic_solve(pair, g, b, cfg);
    ASSERT_EQ(ra.trajectory.frames.size(), rb.trajectory.frames.size());
    for (std::size_t s = 0; s < ra.trajectory.frames.size(); ++s)
        for (std::size_t j = 0; j < g.n_cells(); ++j)
        {
            ASSERT_LE(ra.trajectory.frames[s][j], rb.trajectory.frames[s][j]);
            ASSERT_GE(ra.trajectory.frames[s][j], -1e-15);
            ASSERT_LE(rb.trajectory.frames[s][j], 1.0 + 1e-15);
        }
    EXPECT_LE(ra.diagnostics.max_interface_product, 1e-12);
    EXPECT_LE(ra.diagnostics.max_interface_mismatch, 1e-12);
    EXPECT_LE(mass_conservation_check(ra.trajectory, pair, g), 1e-12);
}

TEST(ParabolicSolve, FluxMaximumPrinciple)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 256);
    double const eps = 0.1;
    Field const u0 = smooth_initial_data(
        g, std::function<double(double)>([](double x) { return x < 0 ? 1.0 : 0.0; }),
        eps);
    ParabolicConfig cfg;
    cfg.eps = eps;
    cfg.t_end = 0.3;
    auto const res = parabolic_solve(pair, g, u0, cfg);
    auto const& d = res.diagnostics;
    EXPECT_TRUE(d.smoothed_input);
    EXPECT_LE(d.flux_sup, d.initial_flux_sup + 1e-8);
    EXPECT_GT(d.energy[0] + d.energy[1], 0.0);
    EXPECT_GT(d.time_variation, 0.0);
    EXPECT_EQ(d.interface_series.size(), d.steps);
}

TEST(ParabolicSolve, UnsmoothedInputIsFlagged)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 64);
    ParabolicConfig cfg;
    cfg.eps = 0.1;
    cfg.t_end = 0.01;
    auto const res = parabolic_solve(pair, g, two_state_field(g, 1.0, 0.0), cfg);
    EXPECT_FALSE(res.diagnostics.smoothed_input);
}

TEST(SmoothInitialData, ZeroStaysZero)
{
    Grid const g(-2.0, 2.0, 256);
    auto const u = smooth_initial_data(g, two_state_field(g, 0.0, 0.0), 0.1);
    for (double v : u.values)
        EXPECT_EQ(v, 0.0);
}

TEST(SmoothInitialData, IndicatorRamp)
{
    Grid const g(-4.0, 4.0, 1024);
    double const eps = 0.1;
    auto const s = smooth_initial_data_alpha(g, two_state_field(g, 1.0, 0.0), eps);
    auto const& u = s.field;
    std::size_t const k = g.interface_face();
    EXPECT_EQ(u[k - 1], 0.0);
    EXPECT_EQ(u[k], 0.0);
    double grad = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j)
        grad = std::max(grad, std::abs(u[j + 1] - u[j]) / g.dx());
    EXPECT_LE(eps * grad, 1.0);
    EXPECT_LT(s.alpha, 0.5);
    EXPECT_TRUE(has_smoothed_shape(g, u, eps));
    auto const finer = detail::truncate_and_mollify(g, two_state_field(g, 1.0, 0.0).values,
                                                    0.5 * s.alpha);
    EXPECT_GT(eps * detail::max_gradient(g, finer), 1.0);
}

TEST(SmoothInitialData, TotalVariationBound)
{
    Grid const g(-4.0, 4.0, 1024);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial)
    {
        std::vector<double> levels(8);
        for (auto& l : levels)
            l = uni(rng);
        Field const u0 = sample_cells(g, [&](double x) {
            auto const idx = static_cast<std::size_t>(
                std::clamp((x + 4.0) / 1.0, 0.0, 7.0));
            return levels[idx];
        });
        auto tv = [](Field const& f) {
            double t = 0.0;
            for (std::size_t j = 0; j + 1 < f.size(); ++j)
                t += std::abs(f[j + 1] - f[j]);
            return t;
        };
        for (double eps : {0.2, 0.05})
            EXPECT_LE(tv(smooth_initial_data(g, u0, eps)), tv(u0) + 4.0 + 1e-12);
    }
}

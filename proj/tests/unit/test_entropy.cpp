#include <cmath>

#include <gtest/gtest.h>

#include <capflow/connections.hpp>
#include <capflow/entropy.hpp>
#include <capflow/errors.hpp>
#include <capflow/hyperbolic.hpp>
#include <capflow/parabolic.hpp>
#include <capflow/riemann_exact.hpp>
#include <capflow/steady_states.hpp>

#include "test_support.hpp"

using namespace capflow;

namespace
{
Trajectory constant_trajectory(Field const& u, double dt, int steps)
{
    Trajectory t;
    for (int s = 0; s <= steps; ++s)
    {
        Field f = u;
        f.time = s * dt;
        t.frames.push_back(f);
    }
    return t;
}

Trajectory dam_break(MediumPair const& pair, Grid const& g, double ul, double ur)
{
    HyperbolicConfig cfg;
    cfg.t_end = 0.5;
    cfg.record_every_step = true;
    return hyperbolic_solve(pair, g, two_state_field(g, ul, ur), cfg);
}
}  // namespace

TEST(KruzkovFlux, SymmetricAndConsistent)
{
    auto const pair = test::canonical_pair();
    KruzkovFlux const F(pair);
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
        {
            double const u = a / 10.0;
            double const v = b / 10.0;
            EXPECT_EQ(F(Side::one, u, v), F(Side::one, v, u));
            EXPECT_NEAR(F(Side::two, u, v),
                        (u > v ? 1.0 : -1.0) * (test::flux_two()(u) - test::flux_two()(v))
                            * (u == v ? 0.0 : 1.0),
                        1e-15);
        }
    EXPECT_EQ(F(Side::one, 0.3, 0.3), 0.0);
}

TEST(KruzkovResiduals, ConstantTrajectoryIsExact)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 64);
    auto const tr = constant_trajectory(two_state_field(g, 0.7, 0.7), 0.01, 5);
    auto const levels = kappa_levels(33);
    EXPECT_EQ(kruzkov_cell_residuals(tr, pair, g, levels).worst, 0.0);
}

TEST(KruzkovResiduals, GodunovTrajectoriesPass)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 256);
    auto const levels = kappa_levels(33);
    for (auto [ul, ur] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{0.3, 0.9}})
        EXPECT_LE(kruzkov_cell_residuals(dam_break(pair, g, ul, ur), pair, g, levels).worst,
                  1e-12);
}

TEST(KruzkovResiduals, ExpansionShockIsFlagged)
{
    auto const f1 = test::flux_one();
    auto const pair = test::single_medium(f1);
    Grid const g(-2.0, 2.0, 256);
    double const dt = HyperbolicScheme(pair, g).time_step(0.9);
    Trajectory tr;
    for (int s = 0; s <= 40; ++s)
    {
        double const t = s * dt;
        tr.frames.push_back(average_cells(
            g, [t](double x) { return x < t ? 0.0 : 1.0; }, 16, t));
    }
    auto const levels = kappa_levels(33);
    auto const res = kruzkov_cell_residuals(tr, pair, g, levels);
    EXPECT_GT(res.worst, 1e-3);
    // The exact entropy solution is the rarefaction instead.
    EXPECT_NEAR(exact_riemann_single_medium(f1, 0.0, 1.0, 1.0), 0.5, 1e-15);
}

TEST(KruzkovResiduals, GridMismatch)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 64);
    Grid const other(-1.0, 1.0, 32);
    auto const tr = constant_trajectory(two_state_field(other, 0.5, 0.5), 0.01, 2);
    auto const levels = kappa_levels(3);
    EXPECT_THROW(kruzkov_cell_residuals(tr, pair, g, levels), GridMismatchError);
}

TEST(AdaptedResidual, OptimalFieldAgainstItself)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 128);
    auto const opt = optimal_connection(pair);
    Field const u = two_state_field(g, opt.left_value, opt.right_value);
    auto const tr = constant_trajectory(u, HyperbolicScheme(pair, g).time_step(0.9), 10);
    auto const r = adapted_entropy_residual(tr, pair, g, opt.left_value, opt.right_value);
    EXPECT_NEAR(r.worst, 0.0, 1e-15);
}

TEST(AdaptedResidual, DamBreakAgainstOptimal)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 256);
    auto const opt = optimal_connection(pair);
    for (auto [ul, ur] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{0.1, 0.2}})
    {
        auto const r = adapted_entropy_residual(dam_break(pair, g, ul, ur), pair, g,
                                                opt.left_value, opt.right_value);
        EXPECT_GE(r.worst, -1e-8);
    }
}

TEST(AdaptedResidual, UndercompressiveJumpIsFlagged)
{
    // Stationary jump (lower root on medium 1, upper root on medium 2) at a
    // common level: characteristics leave the interface on both sides.
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 128);
    double const z = -1.0 / 48.0;
    double const u1 = connect_level(pair.first().flux(), z).under;
    double const u2 = connect_level(pair.second().flux(), z).over;
    EXPECT_LT(undercompressive_check(pair, u1, u2), -1e-6);
    auto const tr = constant_trajectory(two_state_field(g, u1, u2),
                                        HyperbolicScheme(pair, g).time_step(0.9), 20);
    auto const opt = optimal_connection(pair);
    auto const r = adapted_entropy_residual(tr, pair, g, opt.left_value, opt.right_value);
    EXPECT_LT(r.worst, -1e-6);
}

TEST(AdaptedResidual, ParabolicAgainstSteadyState)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 256);
    double const eps = 0.05;
    Field const kappa = build_kappa_eps(pair, Side::two, 1.0 / 6.0, eps, g);
    ParabolicConfig cfg;
    cfg.eps = eps;
    cfg.t_end = 0.3;
    cfg.record_every_step = true;
    auto const res = parabolic_solve(pair, g, two_state_field(g, 1.0, 0.0), cfg);
    auto const r
        = adapted_entropy_residual(res.trajectory, ParabolicScheme(pair, g, eps), kappa);
    EXPECT_GE(r.worst, -1e-6);
}

TEST(AdaptedResidual, LevelMismatch)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 16);
    auto const tr = constant_trajectory(two_state_field(g, 0.5, 0.5), 0.01, 2);
    EXPECT_THROW(adapted_entropy_residual(tr, pair, g, 0.5, 0.5), LevelError);
}

TEST(Undercompressive, Examples)
{
    auto const pair = test::canonical_pair();
    auto const opt = optimal_connection(pair);
    EXPECT_LE(std::abs(undercompressive_check(pair, opt.left_value, opt.right_value)),
              1e-6);
    EXPECT_EQ(undercompressive_check(pair, 1.0, 1.0), 0.0);
    EXPECT_EQ(undercompressive_check(pair, opt.left_value, 0.05), 0.0);
    double const p = undercompressive_check(pair, opt.left_value, 0.5);
    EXPECT_LT(p, -1e-6);
    // f1'(u1) = 4u1 - 1, f2'(0.5) = 1
    EXPECT_NEAR(p, (4.0 * opt.left_value - 1.0) * 1.0, 1e-8);
}

TEST(Undercompressive, OneSidedStencilsAtEnds)
{
    auto const f1 = test::flux_one();
    EXPECT_NEAR(numeric_slope(f1, 0.0), -1.0, 1e-9);
    EXPECT_NEAR(numeric_slope(f1, 1.0), 3.0, 1e-9);
    EXPECT_NEAR(numeric_slope(f1, 0.4), 0.6, 1e-9);
}

TEST(MassConservation, ConstantAndDamBreak)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 128);
    auto const c = constant_trajectory(two_state_field(g, 0.4, 0.4), 0.01, 4);
    // Boundary fluxes of a constant field cancel only in one medium.
    auto const single = test::single_medium(test::flux_one());
    EXPECT_EQ(mass_conservation_check(c, single, g), 0.0);
    EXPECT_LE(mass_conservation_check(dam_break(pair, g, 1.0, 0.0), pair, g), 1e-12);
}

TEST(MassConservation, PerturbationDetected)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 128);
    auto tr = dam_break(pair, g, 1.0, 0.0);
    auto mid = tr;
    tr.frames.back().values[40] += 1e-6;
    EXPECT_GT(mass_conservation_check(tr, pair, g), 1e-9);
    // Interior frames are checked too.
    mid.frames[mid.frames.size() / 2].values[40] += 1e-6;
    EXPECT_GT(mass_conservation_check(mid, pair, g), 1e-9);
}

TEST(L1Comparison, IdenticalAndOrdered)
{
    auto const pair = test::canonical_pair();
    Grid const g(-4.0, 4.0, 256);
    HyperbolicConfig cfg;
    cfg.t_end = 0.5;
    cfg.output_times = {0.25};
    auto const a = hyperbolic_solve(pair, g, two_state_field(g, 1.0, 0.0), cfg);
    EXPECT_LE(l1_comparison(a, a, g, 1.0, pair.lipschitz()).worst, 0.0);
    auto const b = hyperbolic_solve(pair, g, two_state_field(g, 1.0, 0.3), cfg);
    for (std::size_t s = 0; s < b.frames.size(); ++s)
        for (std::size_t j = 0; j < g.n_cells(); ++j)
            EXPECT_LE(a.frames[s][j], b.frames[s][j] + 1e-15);
    EXPECT_LE(l1_comparison(a, b, g, 1.0, pair.lipschitz()).worst, 1e-10);
}

TEST(L1Comparison, SamplingMismatch)
{
    auto const pair = test::canonical_pair();
    Grid const g(-1.0, 1.0, 16);
    auto const a = constant_trajectory(two_state_field(g, 0.5, 0.5), 0.01, 2);
    auto const b = constant_trajectory(two_state_field(g, 0.5, 0.5), 0.02, 2);
    EXPECT_THROW(l1_comparison(a, b, g, 1.0, 1.0), GridMismatchError);
    (void)pair;
}

TEST(Certification, ReportFlags)
{
    auto const pair = test::canonical_pair();
    Grid const g(-2.0, 2.0, 256);
    auto const rep = certify_hyperbolic(dam_break(pair, g, 0.2, 0.7), pair, g);
    EXPECT_TRUE(rep.kruzkov_pass());
    EXPECT_TRUE(rep.adapted_pass());
    EXPECT_TRUE(rep.mass_pass());
    EXPECT_TRUE(rep.undercompressive_pass());
    EXPECT_TRUE(rep.flux_pass());
    EXPECT_TRUE(rep.pass());
}

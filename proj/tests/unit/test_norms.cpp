#include <gtest/gtest.h>

#include <capflow/errors.hpp>
#include <capflow/norms.hpp>

using namespace capflow;

TEST(Norms, L1DistanceWindow)
{
    Grid const g(-1.0, 1.0, 4);
    Field const a{{1.0, 1.0, 0.0, 0.0}, 0.0};
    Field const b{{0.0, 0.0, 0.0, 0.0}, 0.0};
    EXPECT_DOUBLE_EQ(l1_distance(g, a, b, 10.0), 1.0);
    EXPECT_DOUBLE_EQ(l1_distance(g, a, b, 0.3), 0.5);
}

TEST(Norms, InjectionConservesMass)
{
    Grid const coarse(-1.0, 1.0, 4);
    Grid const fine(-1.0, 1.0, 16);
    Field const u{{0.1, 0.4, 0.9, 0.2}, 0.5};
    auto const v = inject(coarse, u, fine);
    double mu = 0.0;
    double mv = 0.0;
    for (double x : u.values)
        mu += x * coarse.dx();
    for (double x : v.values)
        mv += x * fine.dx();
    EXPECT_DOUBLE_EQ(mu, mv);
    EXPECT_EQ(v.time, 0.5);
    EXPECT_THROW(inject(coarse, u, Grid(-1.0, 1.0, 6)), GridMismatchError);
    EXPECT_NEAR(l1_distance(coarse, u, fine, v, 10.0), 0.0, 1e-15);
}

TEST(Norms, SpaceTimeTrapezoid)
{
    Grid const g(-1.0, 1.0, 2);
    Trajectory a{{Field{{0.0, 0.0}, 0.0}, Field{{0.0, 0.0}, 1.0}}};
    Trajectory b{{Field{{1.0, 1.0}, 0.0}, Field{{0.0, 0.0}, 1.0}}};
    EXPECT_DOUBLE_EQ(spacetime_l1(g, a, g, b, 5.0), 1.0);
}

TEST(Norms, FunctionDistance)
{
    Grid const g(-1.0, 1.0, 2);
    Field const u{{0.0, 1.0}, 0.0};
    EXPECT_NEAR(l1_to_function(g, u, [](double x) { return x < 0 ? 0.0 : 1.0; }, 5.0),
                0.0, 1e-15);
    EXPECT_NEAR(l1_to_function(g, u, [](double) { return 0.5; }, 5.0), 1.0, 1e-15);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "errors.hpp"
#include "grid.hpp"

namespace capflow
{
//! sum over cells with |x_j| <= R of |a_j - b_j| dx.
inline double l1_distance(Grid const& grid, Field const& a, Field const& b, double R)
{
    if (a.size() != grid.n_cells() || b.size() != grid.n_cells())
        throw GridMismatchError("fields do not match grid");
    long double acc = 0.0L;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(grid.cell_center(j)) <= R)
            acc += std::abs(a[j] - b[j]);
    return static_cast<double>(acc) * grid.dx();
}

//! True whether every cell of \c fine lies inside one cell of \c coarse.
inline bool nests_into(Grid const& coarse, Grid const& fine) noexcept
{
    return coarse.x_min() == fine.x_min() && coarse.x_max() == fine.x_max()
           && fine.n_cells() % coarse.n_cells() == 0;
}

/*!
 * Conservative injection of a piecewise constant field onto a nested finer
 * grid: each fine cell takes the value of its parent.
 */
inline Field inject(Grid const& coarse, Field const& u, Grid const& fine)
{
    if (u.size() != coarse.n_cells())
        throw GridMismatchError("field does not match the coarse grid");
    if (!nests_into(coarse, fine))
        throw GridMismatchError("grids are not nested");
    std::size_t const ratio = fine.n_cells() / coarse.n_cells();
    Field out;
    out.time = u.time;
    out.values.resize(fine.n_cells());
    for (std::size_t j = 0; j < fine.n_cells(); ++j)
        out.values[j] = u[j / ratio];
    return out;
}

//! L1 distance over |x| <= R after injecting onto the finer grid.
inline double l1_distance(Grid const& ga,
                          Field const& a,
                          Grid const& gb,
                          Field const& b,
                          double R)
{
    if (ga == gb)
        return l1_distance(ga, a, b, R);
    if (ga.n_cells() < gb.n_cells())
        return l1_distance(gb, inject(ga, a, gb), b, R);
    return l1_distance(ga, a, inject(gb, b, ga), R);
}

/*!
 * Space-time L1 distance over |x| <= R, trapezoidal in time over the common
 * frames of two trajectories.
 */
inline double spacetime_l1(Grid const& ga,
                           Trajectory const& a,
                           Grid const& gb,
                           Trajectory const& b,
                           double R)
{
    if (a.frames.size() != b.frames.size())
        throw GridMismatchError("trajectories have different frame counts");
    double total = 0.0;
    double prev = 0.0;
    for (std::size_t s = 0; s < a.frames.size(); ++s)
    {
        if (std::abs(a.frames[s].time - b.frames[s].time) > 1e-12)
            throw GridMismatchError("trajectories are sampled at different times");
        double const d = l1_distance(ga, a.frames[s], gb, b.frames[s], R);
        if (s > 0)
            total += 0.5 * (d + prev) * (a.frames[s].time - a.frames[s - 1].time);
        prev = d;
    }
    return total;
}

/*!
 * L1 distance between a piecewise constant field and a function over
 * |x| <= R, integrating the function by \c sub midpoints per cell.
 */
template<class F>
double l1_to_function(Grid const& grid,
                      Field const& u,
                      F&& exact,
                      double R,
                      std::size_t sub = 16)
{
    if (u.size() != grid.n_cells())
        throw GridMismatchError("field does not match grid");
    double const h = grid.dx() / static_cast<double>(sub);
    long double acc = 0.0L;
    for (std::size_t j = 0; j < u.size(); ++j)
    {
        if (std::abs(grid.cell_center(j)) > R)
            continue;
        double const left = grid.face_x(j);
        for (std::size_t s = 0; s < sub; ++s)
            acc += std::abs(u[j] - exact(left + (static_cast<double>(s) + 0.5) * h));
    }
    return static_cast<double>(acc) * h;
}

}  // namespace capflow

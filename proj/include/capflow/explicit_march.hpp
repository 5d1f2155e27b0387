#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"

namespace capflow
{
//---------------------------------------------------------------------------//
/*!
 * Face fluxes of a conservative scheme on the current field.
 *
 * \c Scheme provides face_flux(face, left, right). Boundary faces receive a
 * ghost copy of the adjacent cell (outflow closure).
 */
template<class Scheme>
void compute_face_fluxes(Scheme const& scheme,
                         Grid const& grid,
                         std::span<double const> u,
                         std::vector<double>& fluxes)
{
    std::size_t const n = grid.n_cells();
    fluxes.resize(n + 1);
    fluxes[0] = scheme.face_flux(0, u[0], u[0]);
    for (std::size_t k = 1; k < n; ++k)
        fluxes[k] = scheme.face_flux(k, u[k - 1], u[k]);
    fluxes[n] = scheme.face_flux(n, u[n - 1], u[n - 1]);
}

//! u_j - (dt/dx)(F_{j+1} - F_j) for every cell.
inline void conservative_update(Grid const& grid,
                                std::span<double const> u,
                                std::span<double const> fluxes,
                                double dt,
                                std::vector<double>& out)
{
    double const ratio = dt / grid.dx();
    out.resize(u.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        out[j] = u[j] - ratio * (fluxes[j + 1] - fluxes[j]);
}

//! Options shared by the explicit time loops.
struct MarchOptions
{
    double t_end = 0.0;
    //! Extra times at which frames are recorded (sorted, within (0, t_end)).
    std::vector<double> output_times;
    //! Record every step; required by the cell-entropy diagnostics.
    bool record_every_step = false;
};

//! Observer that ignores every step.
struct NullObserver
{
    void operator()(Field const&, std::span<double const>, double, Field const&)
    {
    }
};

/*!
 * Explicit forward Euler loop with a fixed maximal step.
 *
 * Steps are shortened to land exactly on requested output times and on
 * t_end. The observer sees (before, face fluxes, dt, after) for each step.
 */
template<class Scheme, class Observer = NullObserver>
Trajectory march(Scheme const& scheme,
                 Field u0,
                 double dt_max,
                 MarchOptions const& opts,
                 Observer&& observer = {})
{
    Grid const& grid = scheme.grid();
    validate_field(grid, u0);
    if (!(dt_max > 0.0))
        throw StabilityError("time step must be positive");
    Trajectory traj;
    traj.frames.push_back(u0);

    std::vector<double> stops;
    for (double t : opts.output_times)
        if (t > u0.time && t < opts.t_end)
            stops.push_back(t);
    std::sort(stops.begin(), stops.end());
    stops.push_back(opts.t_end);

    Field cur = std::move(u0);
    Field next;
    std::vector<double> fluxes;
    for (double const stop : stops)
    {
        while (stop - cur.time > 1e-14 * std::max(1.0, stop))
        {
            double const remaining = stop - cur.time;
            double dt = std::min(dt_max, remaining);
            // Avoid a sliver step right before the stop.
            bool const lands = remaining - dt < 1e-9 * dt_max;
            if (lands)
                dt = remaining;
            compute_face_fluxes(scheme, grid, cur.values, fluxes);
            conservative_update(grid, cur.values, fluxes, dt, next.values);
            next.time = lands ? stop : cur.time + dt;
            observer(cur, std::span<double const>(fluxes), dt, next);
            std::swap(cur, next);
            if (opts.record_every_step)
                traj.frames.push_back(cur);
        }
        if (traj.frames.back().time != cur.time)
            traj.frames.push_back(cur);
    }
    return traj;
}

}  // namespace capflow

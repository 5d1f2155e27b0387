#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "connections.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "parabolic.hpp"
#include "root_finding.hpp"

namespace capflow
{
namespace detail
{
struct SteadyLevels
{
    double level;
    LevelRoots r1;
    LevelRoots r2;
};

inline SteadyLevels steady_levels(MediumPair const& pair,
                                  Side j,
                                  double kappa,
                                  SteadyVariant variant,
                                  double eps)
{
    if (!in_attainable_set(pair, j, kappa))
        throw LevelError("kappa is not in the attainable set of its side");
    if (!(eps > 0.0) || eps >= pair.capillary_gap())
        throw RegimeError("capillarity eps must satisfy 0 < eps < P2 - P1");
    double const z = pair.flux(j)(kappa);
    if (variant == SteadyVariant::under_under && z > 0.0)
        throw VariantError(
            "lower-lower steady state requires a non-positive level");
    return {z, connect_level(pair.first().flux(), z),
            connect_level(pair.second().flux(), z)};
}
}  // namespace detail

/*!
 * Discrete steady state of the parabolic scheme at the level of kappa.
 *
 * Every face flux equals z = f_j(kappa) up to bisection roundoff. Variants
 * over_*: constant root on medium 2, interface cell from the interface solve,
 * then cells marched leftwards so that each face carries z. Variant
 * under_under: constant lower root on medium 1 and a rightward march. Level
 * 0 with under_under is the zero field.
 */
inline Field build_kappa_eps(MediumPair const& pair,
                             Side j,
                             double kappa,
                             double eps,
                             Grid const& grid,
                             SteadyVariant variant = SteadyVariant::over_under)
{
    auto const lv = detail::steady_levels(pair, j, kappa, variant, eps);
    double const z = lv.level;
    double const dx = grid.dx();
    std::size_t const n = grid.n_cells();
    std::size_t const iface = grid.interface_face();
    Medium const& m1 = pair.first();
    Medium const& m2 = pair.second();
    Field out;
    out.values.assign(n, 0.0);

    auto q_int = [&](double ul, double ur) {
        return interface_solve(pair, eps, dx, ul, ur).flux;
    };

    if (variant == SteadyVariant::under_under)
    {
        if (z >= 0.0)
            return out;
        double const left = lv.r1.under;
        for (std::size_t c = 0; c < iface; ++c)
            out[c] = left;
        auto decreasing_at = [](auto const& flux, double lo, double hi) {
            // inf{u in [lo,hi] : flux(u) <= z-test}, flux non-increasing.
            if (flux(lo))
                return lo;
            if (!flux(hi))
                return hi;
            return bisect_first_true(flux, lo, hi);
        };
        out[iface] = decreasing_at(
            [&](double u) { return q_int(left, u) <= z; }, 0.0, 1.0);
        for (std::size_t c = iface + 1; c < n; ++c)
        {
            double const a = out[c - 1];
            out[c] = decreasing_at(
                [&](double b) {
                    return godunov(m2.flux(), a, b)
                               - eps * (m2.phi(b) - m2.phi(a)) / dx
                           <= z;
                },
                a, 1.0);
        }
        return out;
    }

    double const right = kappa >= 1.0 ? 1.0
                         : variant == SteadyVariant::over_under
                             ? lv.r2.under
                             : lv.r2.over;
    for (std::size_t c = iface; c < n; ++c)
        out[c] = right;
    // sup{u : Q(u, right) <= z}; Q is non-decreasing in its first argument.
    auto const above = [&](double u) { return q_int(u, right) > z; };
    if (!above(1.0))
        out[iface - 1] = 1.0;
    else if (above(0.0))
        out[iface - 1] = 0.0;
    else
        out[iface - 1] = bisect_last_false(above, 0.0, 1.0);
    for (std::size_t c = iface - 1; c-- > 0;)
    {
        double const b = out[c + 1];
        auto const reaches = [&](double a) {
            return godunov(m1.flux(), a, b) - eps * (m1.phi(b) - m1.phi(a)) / dx
                   >= z;
        };
        if (reaches(0.0))
            out[c] = 0.0;
        else if (!reaches(b))
            out[c] = b;
        else
            out[c] = bisect_first_true(reaches, 0.0, b);
    }
    return out;
}

/*!
 * Cell averages of the continuous steady profile, stretched by eps.
 *
 * Over variants: y(-x/eps) on x < 0 and the medium-2 constant on x > 0.
 * under_under: the medium-1 constant on x < 0 and w(x/eps) on x > 0.
 */
inline Field sample_kappa_eps(MediumPair const& pair,
                              Side j,
                              double kappa,
                              double eps,
                              Grid const& grid,
                              SteadyVariant variant = SteadyVariant::over_under)
{
    auto const lv = detail::steady_levels(pair, j, kappa, variant, eps);
    double const z = lv.level;
    if (variant == SteadyVariant::under_under && z >= 0.0)
        return two_state_field(grid, 0.0, 0.0);

    double const extent = std::max(-grid.x_min(), grid.x_max());
    double const xi_max = extent / eps;
    auto const nodes = static_cast<std::size_t>(
        std::clamp(64.0 * xi_max, 2048.0, 200000.0));
    SteadyProfile const prof
        = steady_profile(pair, j, kappa, variant, xi_max, nodes);
    auto interp = [&prof](double xi) {
        double const h = prof.xi[1] - prof.xi[0];
        double const pos = std::clamp(xi / h, 0.0,
                                      static_cast<double>(prof.xi.size() - 1));
        auto const k = std::min(static_cast<std::size_t>(pos),
                                prof.xi.size() - 2);
        double const w = pos - static_cast<double>(k);
        return (1.0 - w) * prof.y[k] + w * prof.y[k + 1];
    };

    if (variant == SteadyVariant::under_under)
    {
        double const left = lv.r1.under;
        return average_cells(grid, [&](double x) {
            return x < 0.0 ? left : interp(x / eps);
        });
    }
    double const right = kappa >= 1.0 ? 1.0
                         : variant == SteadyVariant::over_under
                             ? lv.r2.under
                             : lv.r2.over;
    return average_cells(grid, [&](double x) {
        return x < 0.0 ? interp(-x / eps) : right;
    });
}

}  // namespace capflow

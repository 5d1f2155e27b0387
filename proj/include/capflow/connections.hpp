#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "flux_model.hpp"
#include "root_finding.hpp"

namespace capflow
{
//---------------------------------------------------------------------------//
// GODUNOV SOLVERS
//---------------------------------------------------------------------------//
/*!
 * Godunov flux of a unimodal flux: min of f over [u,v] when u <= v, max of f
 * over [v,u] otherwise.
 *
 * Closed form from unimodality: the minimum is attained at an endpoint or at
 * b, the maximum at an endpoint. Unchecked hot-path version.
 */
inline double godunov(FluxSpec const& f, double u, double v) noexcept
{
    double const fu = f(u);
    double const fv = f(v);
    if (u <= v)
    {
        double m = std::min(fu, fv);
        double const b = f.minimizer();
        if (u < b && b < v)
            m = std::min(m, f.min_value());
        return m;
    }
    return std::max(fu, fv);
}

inline double godunov_flux(FluxSpec const& f, double u, double v)
{
    detail::require_saturation(u, "godunov_flux");
    detail::require_saturation(v, "godunov_flux");
    return godunov(f, u, v);
}

//! Interface flux max{G1(u1,1), G2(0,u2)}; unchecked.
inline double interface_godunov(MediumPair const& pair, double u1, double u2) noexcept
{
    return std::max(godunov(pair.first().flux(), u1, 1.0),
                    godunov(pair.second().flux(), 0.0, u2));
}

inline double interface_flux(MediumPair const& pair, double u1, double u2)
{
    detail::require_saturation(u1, "interface_flux");
    detail::require_saturation(u2, "interface_flux");
    return interface_godunov(pair, u1, u2);
}

//---------------------------------------------------------------------------//
// LEVELS AND CONNECTIONS
//---------------------------------------------------------------------------//
//! Roots min/max{nu | f(nu) = z}.
struct LevelRoots
{
    double under;
    double over;
};

namespace detail
{
inline constexpr double level_tol = 1e-14;

inline bool level_in_range(FluxSpec const& f, double z) noexcept
{
    double const scale = std::max(1.0, std::abs(f.total_rate()));
    return z >= f.min_value() - level_tol * scale
           && z <= f.total_rate() + level_tol * scale;
}
}  // namespace detail

/*!
 * Leftmost and rightmost preimages of level z.
 *
 * Bisection on the monotone branches [0,b] (decreasing) and [b,1]
 * (increasing); on plateaus the leftmost point is returned for the lower
 * root and the rightmost for the upper root.
 */
inline LevelRoots connect_level(FluxSpec const& f, double z)
{
    if (!detail::level_in_range(f, z))
        throw LevelError("level outside the flux range [f(b), q]");
    double const b = f.minimizer();
    // Upper root: last point of the increasing branch with f <= z.
    double over;
    if (f(1.0) <= z)
        over = 1.0;
    else if (f(b) > z)
        over = b;
    else
        over = bisect_last_false([&](double u) { return f(u) > z; }, b, 1.0);

    // Lower root. Positive levels only live on the increasing branch, where
    // the preimage is unique.
    double under;
    if (z > f(0.0))
        under = over;
    else if (z >= f(0.0))
        under = 0.0;
    else if (f(b) >= z)
        under = b;
    else
        under = bisect_first_true([&](double u) { return f(u) <= z; }, 0.0, b);
    return {under, over};
}

//! Membership of kappa in the attainable set E_j.
inline bool in_attainable_set(MediumPair const& pair, Side j, double kappa)
{
    detail::require_saturation(kappa, "in_attainable_set");
    return detail::level_in_range(pair.flux(opposite(j)), pair.flux(j)(kappa));
}

//! Level kappa on side j with its under/over connections on the other side.
struct ConnectionPair
{
    Side side;
    double kappa;
    double level;
    double under;
    double over;
};

inline ConnectionPair make_connection(MediumPair const& pair, Side j, double kappa)
{
    if (!in_attainable_set(pair, j, kappa))
        throw LevelError("kappa is not in the attainable set of its side");
    double const z = pair.flux(j)(kappa);
    auto const roots = connect_level(pair.flux(opposite(j)), z);
    return {j, kappa, z, roots.under, roots.over};
}

enum class OptimalCase
{
    k_opt_1,  //!< f1(b1) <= f2(b2): right value b2
    k_opt_2   //!< f1(b1) > f2(b2): left value b1
};

inline std::string_view to_string(OptimalCase c)
{
    return c == OptimalCase::k_opt_1 ? "k_opt_1" : "k_opt_2";
}

struct OptimalConnection
{
    double left_value;
    double right_value;
    OptimalCase case_tag;
};

//! The optimal entropy connection of the two media.
inline OptimalConnection optimal_connection(MediumPair const& pair)
{
    FluxSpec const& f1 = pair.first().flux();
    FluxSpec const& f2 = pair.second().flux();
    if (f1.min_value() <= f2.min_value())
    {
        double const right = f2.minimizer();
        double const left = connect_level(f1, f2.min_value()).under;
        return {left, right, OptimalCase::k_opt_1};
    }
    double const left = f1.minimizer();
    double const right = connect_level(f2, f1.min_value()).over;
    return {left, right, OptimalCase::k_opt_2};
}

//---------------------------------------------------------------------------//
/*!
 * States at x = 0- and x = 0+ selected by the interface Riemann solver for
 * adjacent cell values (u_left, u_right).
 *
 * When G1(u_left,1) drives the flux the left trace is max(u_left, b1) and the
 * right trace the upper preimage through f2; otherwise the right trace is
 * min(u_right, b2) and the left trace the lower preimage through f1. Both
 * traces carry the interface flux exactly.
 */
struct InterfaceTraces
{
    double left;
    double right;
    double flux;
};

inline InterfaceTraces
interface_riemann_traces(MediumPair const& pair, double u_left, double u_right)
{
    FluxSpec const& f1 = pair.first().flux();
    FluxSpec const& f2 = pair.second().flux();
    double const from_left = godunov(f1, u_left, 1.0);
    double const from_right = godunov(f2, 0.0, u_right);
    if (from_left >= from_right)
    {
        double const left = std::max(u_left, f1.minimizer());
        return {left, connect_level(f2, from_left).over, from_left};
    }
    double const right = std::min(u_right, f2.minimizer());
    return {connect_level(f1, from_right).under, right, from_right};
}

//---------------------------------------------------------------------------//
// REACHABLE STEADY STATES
//---------------------------------------------------------------------------//
/*!
 * The three limit families of steady regularized solutions.
 *
 * over_under: (upper root on medium 1, lower root on medium 2);
 * over_over: (upper, upper); under_under: (lower, lower).
 */
enum class SteadyVariant
{
    over_under,
    over_over,
    under_under
};

inline std::string_view to_string(SteadyVariant v)
{
    switch (v)
    {
        case SteadyVariant::over_under:
            return "i";
        case SteadyVariant::over_over:
            return "ii";
        case SteadyVariant::under_under:
            return "iii";
    }
    return "?";
}

struct ReachableState
{
    SteadyVariant variant;
    double left;
    double right;
    bool optimal;
};

/*!
 * Piecewise constant limits reachable from level kappa on side j.
 *
 * Level q (kappa = 1) gives the single state 1; a positive level gives one
 * state since every preimage is unique. Non-positive levels give the three
 * variants; at level 0 the third one is the zero state.
 */
inline std::vector<ReachableState>
reachable_limits(MediumPair const& pair, Side j, double kappa)
{
    if (!in_attainable_set(pair, j, kappa))
        throw LevelError("kappa is not in the attainable set of its side");
    double const z = pair.flux(j)(kappa);
    auto const r1 = connect_level(pair.first().flux(), z);
    auto const r2 = connect_level(pair.second().flux(), z);
    auto const opt = optimal_connection(pair);
    auto is_opt = [&opt](double l, double r) {
        return std::abs(l - opt.left_value) <= 1e-10
               && std::abs(r - opt.right_value) <= 1e-10;
    };
    std::vector<ReachableState> out;
    if (kappa >= 1.0 || z > 0.0)
    {
        double const l = kappa >= 1.0 ? 1.0 : r1.over;
        double const r = kappa >= 1.0 ? 1.0 : r2.under;
        out.push_back({SteadyVariant::over_under, l, r, is_opt(l, r)});
        return out;
    }
    out.push_back({SteadyVariant::over_under, r1.over, r2.under,
                   is_opt(r1.over, r2.under)});
    out.push_back({SteadyVariant::over_over, r1.over, r2.over,
                   is_opt(r1.over, r2.over)});
    out.push_back({SteadyVariant::under_under, r1.under, r2.under,
                   is_opt(r1.under, r2.under)});
    return out;
}

//---------------------------------------------------------------------------//
// STEADY PROFILES
//---------------------------------------------------------------------------//
struct SteadyProfile
{
    std::vector<double> xi;
    std::vector<double> y;
    double limit = 0.0;
    SteadyVariant variant = SteadyVariant::over_under;
    //! |y(xi_max) - limit|
    double tail_error = 0.0;
};

namespace detail
{
/*!
 * Implicit Euler in the Kirchhoff variable for d phi(y)/dxi = rhs(y).
 *
 * Each step solves phi(y_new) - h rhs(y_new) = phi(y_old) by bisection on
 * the bracket [y_old, target] where the map is monotone, so the iterate never
 * crosses the equilibrium and the degenerate start (lambda = 0) is harmless.
 * Step size adapts by step doubling against \c tol.
 */
template<class Phi, class Rhs>
double implicit_kirchhoff_step(Phi const& phi,
                               Rhs const& rhs,
                               double y_old,
                               double target,
                               double h)
{
    double const rhs_val = phi(y_old);
    auto g = [&](double y) { return phi(y) - h * rhs(y) - rhs_val; };
    double lo = std::min(y_old, target);
    double hi = std::max(y_old, target);
    // g is non-decreasing on the bracket by construction.
    if (g(lo) >= 0.0)
        return lo;
    if (g(hi) <= 0.0)
        return hi;
    return bisect_first_true([&](double y) { return g(y) >= 0.0; }, lo, hi);
}

template<class Phi, class Rhs>
std::vector<double> integrate_kirchhoff_ode(Phi const& phi,
                                            Rhs const& rhs,
                                            double y0,
                                            double target,
                                            std::vector<double> const& nodes,
                                            double tol)
{
    std::vector<double> out;
    out.reserve(nodes.size());
    double y = y0;
    double xi = 0.0;
    double h = 1e-6;
    out.push_back(y);
    for (std::size_t k = 1; k < nodes.size(); ++k)
    {
        double const stop = nodes[k];
        while (xi < stop)
        {
            double const step = std::min(h, stop - xi);
            double const full = implicit_kirchhoff_step(phi, rhs, y, target, step);
            double const half1
                = implicit_kirchhoff_step(phi, rhs, y, target, 0.5 * step);
            double const half2
                = implicit_kirchhoff_step(phi, rhs, half1, target, 0.5 * step);
            double const err = std::abs(full - half2);
            if (err > tol && step > 1e-14)
            {
                h = 0.5 * step;
                continue;
            }
            // Richardson extrapolation of the first-order pair, clipped to
            // the bracket so monotonicity is preserved.
            double next = 2.0 * half2 - full;
            double const lo = std::min(y, target);
            double const hi = std::max(y, target);
            next = std::clamp(next, lo, hi);
            y = next;
            xi += step;
            if (err < 0.25 * tol)
                h = 2.0 * step;
        }
        out.push_back(y);
    }
    return out;
}
}  // namespace detail

/*!
 * Sampled solution of the steady connection ODE in the stretched variable.
 *
 * Variants over_* integrate d phi1(y)/dxi = f_j(kappa) - f1(y), y(0) = 1,
 * towards the upper root on medium 1. Variant under_under integrates
 * d phi2(w)/dxi = f2(w) - f_j(kappa), w(0) = 0, towards the lower root on
 * medium 2; it requires a negative level.
 */
inline SteadyProfile steady_profile(MediumPair const& pair,
                                    Side j,
                                    double kappa,
                                    SteadyVariant variant,
                                    double xi_max,
                                    std::size_t n)
{
    if (!in_attainable_set(pair, j, kappa))
        throw LevelError("kappa is not in the attainable set of its side");
    if (!(xi_max > 0.0) || n < 2)
        throw DomainError("steady_profile needs xi_max > 0 and n >= 2");
    double const z = pair.flux(j)(kappa);
    SteadyProfile p;
    p.variant = variant;
    p.xi.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        p.xi[k] = xi_max * static_cast<double>(k) / static_cast<double>(n - 1);

    constexpr double ode_tol = 1e-10;
    if (variant == SteadyVariant::under_under)
    {
        if (!(z < 0.0))
            throw VariantError(
                "lower-lower profile requires a negative connection level");
        Medium const& m2 = pair.second();
        p.limit = connect_level(m2.flux(), z).under;
        p.y = detail::integrate_kirchhoff_ode(
            [&m2](double w) { return m2.phi(w); },
            [&m2, z](double w) { return m2.flux()(w) - z; }, 0.0, p.limit, p.xi,
            ode_tol);
    }
    else
    {
        Medium const& m1 = pair.first();
        p.limit = connect_level(m1.flux(), z).over;
        if (p.limit >= 1.0)
            p.y.assign(n, 1.0);
        else
            p.y = detail::integrate_kirchhoff_ode(
                [&m1](double y) { return m1.phi(y); },
                [&m1, z](double y) { return z - m1.flux()(y); }, 1.0, p.limit,
                p.xi, ode_tol);
    }
    p.tail_error = std::abs(p.y.back() - p.limit);
    return p;
}

}  // namespace capflow

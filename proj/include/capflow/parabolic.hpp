#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "connections.hpp"
#include "errors.hpp"
#include "explicit_march.hpp"
#include "flux_model.hpp"
#include "grid.hpp"
#include "root_finding.hpp"

namespace capflow
{
struct ParabolicConfig
{
    double eps = 0.1;
    double cfl = 0.9;
    double t_end = 1.0;
    double interface_tol = 1e-12;
    std::vector<double> output_times;
    bool record_every_step = false;
};

inline void check_parabolic_config(MediumPair const& pair,
                                   ParabolicConfig const& cfg)
{
    if (!(cfg.eps > 0.0) || cfg.eps >= pair.capillary_gap())
    {
        std::ostringstream os;
        os << "capillarity eps = " << cfg.eps
           << " must satisfy 0 < eps < P2 - P1 = " << pair.capillary_gap();
        throw RegimeError(os.str());
    }
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
        throw DomainError("cfl must lie in (0,1]");
    if (!(cfg.t_end > 0.0))
        throw DomainError("t_end must be positive");
    if (!(cfg.interface_tol > 0.0))
        throw DomainError("interface_tol must be positive");
}

//---------------------------------------------------------------------------//
// INTERFACE
//---------------------------------------------------------------------------//
/*!
 * Traces at 0- / 0+ and the common flux through the interface face.
 *
 * s is the position on the admissible trace path: (s, 0) for s <= 1,
 * (1, s - 1) beyond.
 */
struct InterfaceState
{
    double u1;
    double u2;
    double flux;
    double s;
    //! |F1 - F2| at the returned traces.
    double mismatch;
};

namespace detail
{
struct HalfFluxes
{
    double left;
    double right;
};

inline HalfFluxes half_cell_fluxes(MediumPair const& pair,
                                   double eps,
                                   double dx,
                                   double u_left,
                                   double u_right,
                                   double t1,
                                   double t2) noexcept
{
    Medium const& m1 = pair.first();
    Medium const& m2 = pair.second();
    double const k = 2.0 * eps / dx;
    double const f1 = godunov(m1.flux(), u_left, t1)
                      - k * (m1.phi(t1) - m1.phi(u_left));
    double const f2 = godunov(m2.flux(), t2, u_right)
                      - k * (m2.phi(u_right) - m2.phi(t2));
    return {f1, f2};
}

constexpr std::pair<double, double> trace_path(double s) noexcept
{
    return s <= 1.0 ? std::pair{s, 0.0} : std::pair{1.0, s - 1.0};
}
}  // namespace detail

namespace detail
{
inline InterfaceState solve_interface(MediumPair const& pair,
                                      double eps,
                                      double dx,
                                      double u_left,
                                      double u_right) noexcept
{
    auto diff = [&](double s) {
        auto const [t1, t2] = trace_path(s);
        auto const h = half_cell_fluxes(pair, eps, dx, u_left, u_right, t1, t2);
        return h.left - h.right;
    };
    double s = 0.0;
    if (diff(0.0) > 0.0)
        s = bisect_first_true([&](double t) { return diff(t) <= 0.0; }, 0.0,
                              2.0);
    auto const [t1, t2] = trace_path(s);
    auto const h = half_cell_fluxes(pair, eps, dx, u_left, u_right, t1, t2);
    return {t1, t2, 0.5 * (h.left + h.right), s, std::abs(h.left - h.right)};
}
}  // namespace detail

/*!
 * Solve the transmission conditions across the interface face.
 *
 * Half-cell fluxes F1(s), F2(s) use diffusion distance dx/2. Their
 * difference is non-increasing along the path with D(0) >= 0 >= D(2), so
 * bisection finds the leftmost zero.
 */
inline InterfaceState interface_solve(MediumPair const& pair,
                                      double eps,
                                      double dx,
                                      double u_left,
                                      double u_right)
{
    detail::require_saturation(u_left, "interface_solve");
    detail::require_saturation(u_right, "interface_solve");
    if (!(eps > 0.0) || eps >= pair.capillary_gap())
        throw RegimeError("interface_solve needs 0 < eps < P2 - P1");
    if (!(dx > 0.0))
        throw DomainError("interface_solve needs dx > 0");
    return detail::solve_interface(pair, eps, dx, u_left, u_right);
}

//---------------------------------------------------------------------------//
// SCHEME
//---------------------------------------------------------------------------//
/*!
 * Explicit scheme for the regularized problem: Godunov convection plus
 * centered Kirchhoff diffusion, interface flux from interface_solve.
 */
class ParabolicScheme
{
  public:
    ParabolicScheme(MediumPair const& pair, Grid const& grid, double eps)
        : pair_(&pair), grid_(&grid), eps_(eps)
    {
        if (!(eps > 0.0) || eps >= pair.capillary_gap())
            throw RegimeError("capillarity eps must satisfy 0 < eps < P2 - P1");
    }

    MediumPair const& pair() const noexcept { return *pair_; }
    Grid const& grid() const noexcept { return *grid_; }
    double eps() const noexcept { return eps_; }

    double face_flux(std::size_t face, double left, double right) const
    {
        std::size_t const iface = grid_->interface_face();
        // Roundoff may leave values a few ulps outside [0,1].
        if (face == iface)
            return detail::solve_interface(*pair_, eps_, grid_->dx(),
                                           std::clamp(left, 0.0, 1.0),
                                           std::clamp(right, 0.0, 1.0))
                .flux;
        Medium const& m = face < iface ? pair_->first() : pair_->second();
        return godunov(m.flux(), left, right)
               - eps_ * (m.phi(right) - m.phi(left)) / grid_->dx();
    }

    /*!
     * Monotone step: dt (L/dx + 3 eps Lambda/dx^2) <= cfl.
     *
     * The factor 3 covers the interface cells, whose half-cell diffusion
     * doubles one of the two face coefficients.
     */
    double time_step(double cfl) const noexcept
    {
        double const dx = grid_->dx();
        double const rate = pair_->lipschitz() / dx
                            + 3.0 * eps_ * pair_->max_mobility() / (dx * dx);
        return cfl / rate;
    }

  private:
    MediumPair const* pair_;
    Grid const* grid_;
    double eps_;
};

inline void check_parabolic_step(ParabolicScheme const& scheme, double dt)
{
    double const limit = scheme.time_step(1.0);
    if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12))
    {
        std::ostringstream os;
        os << "parabolic step dt = " << dt << " exceeds the stability limit "
           << limit;
        throw StabilityError(os.str());
    }
}

//! One explicit step with a caller-chosen dt.
inline Field parabolic_step(MediumPair const& pair,
                            Grid const& grid,
                            Field const& field,
                            double eps,
                            double dt)
{
    ParabolicScheme const scheme(pair, grid, eps);
    check_parabolic_step(scheme, dt);
    validate_field(grid, field);
    std::vector<double> fluxes;
    compute_face_fluxes(scheme, grid, field.values, fluxes);
    Field out;
    conservative_update(grid, field.values, fluxes, dt, out.values);
    out.time = field.time + dt;
    return out;
}

//! One explicit step of the largest stable size for cfg.
inline Field parabolic_step(MediumPair const& pair,
                            Grid const& grid,
                            Field const& field,
                            ParabolicConfig const& cfg)
{
    check_parabolic_config(pair, cfg);
    ParabolicScheme const scheme(pair, grid, cfg.eps);
    return parabolic_step(pair, grid, field, cfg.eps, scheme.time_step(cfg.cfl));
}

//---------------------------------------------------------------------------//
// INITIAL DATA
//---------------------------------------------------------------------------//
struct SmoothedData
{
    Field field;
    double alpha;
};

namespace detail
{
inline Field truncate_and_mollify(Grid const& grid,
                                  std::span<double const> u,
                                  double alpha)
{
    std::size_t const n = grid.n_cells();
    std::vector<double> cut(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
    {
        double const ax = std::abs(grid.cell_center(j));
        if (ax > alpha && ax < 1.0 / alpha)
            cut[j] = u[j];
    }
    // Triangular kernel of radius alpha/2 keeps a zero neighborhood of x=0.
    auto const r = static_cast<std::ptrdiff_t>(
        std::max(1.0, std::floor(0.5 * alpha / grid.dx())));
    auto const last = static_cast<std::ptrdiff_t>(n) - 1;
    double const norm = static_cast<double>((r + 1) * (r + 1));
    Field out;
    out.values.resize(n);
    for (std::ptrdiff_t j = 0; j <= last; ++j)
    {
        double acc = 0.0;
        for (std::ptrdiff_t k = -r; k <= r; ++k)
        {
            std::ptrdiff_t const idx = std::clamp(j + k, std::ptrdiff_t{0}, last);
            acc += static_cast<double>(r + 1 - std::abs(k)) * cut[static_cast<std::size_t>(idx)];
        }
        out.values[static_cast<std::size_t>(j)] = std::clamp(acc / norm, 0.0, 1.0);
    }
    return out;
}

inline double max_gradient(Grid const& grid, Field const& f) noexcept
{
    double g = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j)
        g = std::max(g, std::abs(f[j + 1] - f[j]));
    return g / grid.dx();
}
}  // namespace detail

/*!
 * Regularized initial data for capillarity eps.
 *
 * Truncate to alpha < |x| < 1/alpha, mollify with a triangular kernel of
 * radius alpha/2, and shrink alpha by halves while eps max|du/dx| <= 1 still
 * holds and the kernel spans at least one cell.
 */
inline SmoothedData smooth_initial_data_alpha(Grid const& grid,
                                              Field const& u0,
                                              double eps)
{
    validate_field(grid, u0);
    if (!(eps > 0.0))
        throw DomainError("smooth_initial_data needs eps > 0");
    auto build = [&](double a) {
        Field f = detail::truncate_and_mollify(grid, u0.values, a);
        f.time = u0.time;
        return f;
    };
    auto ok = [&](Field const& f) {
        return eps * detail::max_gradient(grid, f) <= 1.0;
    };
    double alpha = 0.5;
    Field best = build(alpha);
    while (!ok(best) && alpha < 1.0)
    {
        alpha = std::min(1.0, 2.0 * alpha);
        best = build(alpha);
    }
    while (0.5 * alpha >= 2.0 * grid.dx())
    {
        Field trial = build(0.5 * alpha);
        if (!ok(trial))
            break;
        alpha *= 0.5;
        best = std::move(trial);
    }
    return {std::move(best), alpha};
}

inline Field smooth_initial_data(Grid const& grid, Field const& u0, double eps)
{
    return smooth_initial_data_alpha(grid, u0, eps).field;
}

//! Evaluator form: cell averages of u0 are smoothed.
inline Field smooth_initial_data(Grid const& grid,
                                 std::function<double(double)> const& u0,
                                 double eps)
{
    return smooth_initial_data(grid, average_cells(grid, u0), eps);
}

/*!
 * Whether a field has the shape produced by smooth_initial_data: zero in the
 * two interface cells and eps max|du/dx| <= 1.
 */
inline bool has_smoothed_shape(Grid const& grid, Field const& u0, double eps)
{
    std::size_t const k = grid.interface_face();
    return u0[k - 1] == 0.0 && u0[k] == 0.0
           && eps * detail::max_gradient(grid, u0) <= 1.0;
}

//---------------------------------------------------------------------------//
// DIAGNOSTICS
//---------------------------------------------------------------------------//
struct InterfaceSample
{
    double t;
    double u1;
    double u2;
    double flux;
};

struct DiagnosticsRecord
{
    //! sup over faces and steps of the discrete total flux.
    double flux_sup = 0.0;
    //! Same sup on the initial field.
    double initial_flux_sup = 0.0;
    //! eps sum (dphi/dx)^2 dx dt, per medium.
    double energy[2] = {0.0, 0.0};
    //! sum |u^{n+1} - u^n| dx.
    double time_variation = 0.0;
    double max_phi_gradient = 0.0;
    double max_interface_product = 0.0;
    double max_interface_mismatch = 0.0;
    //! Initial data has the regularized shape (vanishes near 0, eps-Lipschitz).
    bool smoothed_input = false;
    std::size_t steps = 0;
    std::vector<InterfaceSample> interface_series;
};

namespace detail
{
class DiagnosticsObserver
{
  public:
    DiagnosticsObserver(ParabolicScheme const& scheme, DiagnosticsRecord& rec)
        : scheme_(&scheme), rec_(&rec)
    {
    }

    void operator()(Field const& before,
                    std::span<double const> fluxes,
                    double dt,
                    Field const& after)
    {
        Grid const& grid = scheme_->grid();
        MediumPair const& pair = scheme_->pair();
        double const dx = grid.dx();
        double const eps = scheme_->eps();
        std::size_t const n = grid.n_cells();
        std::size_t const iface = grid.interface_face();

        for (double f : fluxes)
            rec_->flux_sup = std::max(rec_->flux_sup, std::abs(f));

        auto add = [&](int m, double grad, double width) {
            rec_->energy[m] += eps * grad * grad * width * dt;
            rec_->max_phi_gradient
                = std::max(rec_->max_phi_gradient, std::abs(grad));
        };
        for (std::size_t k = 1; k < n; ++k)
        {
            if (k == iface)
                continue;
            Medium const& m = k < iface ? pair.first() : pair.second();
            add(k < iface ? 0 : 1,
                (m.phi(before[k]) - m.phi(before[k - 1])) / dx, dx);
        }
        auto const st = detail::solve_interface(
            pair, eps, dx, std::clamp(before[iface - 1], 0.0, 1.0),
            std::clamp(before[iface], 0.0, 1.0));
        add(0, (pair.first().phi(st.u1) - pair.first().phi(before[iface - 1]))
                   / (0.5 * dx),
            0.5 * dx);
        add(1, (pair.second().phi(before[iface]) - pair.second().phi(st.u2))
                   / (0.5 * dx),
            0.5 * dx);
        rec_->max_interface_product
            = std::max(rec_->max_interface_product, (1.0 - st.u1) * st.u2);
        rec_->max_interface_mismatch
            = std::max(rec_->max_interface_mismatch, st.mismatch);
        rec_->interface_series.push_back({before.time, st.u1, st.u2, st.flux});

        double tv = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            tv += std::abs(after[j] - before[j]);
        rec_->time_variation += tv * dx;
        ++rec_->steps;
    }

  private:
    ParabolicScheme const* scheme_;
    DiagnosticsRecord* rec_;
};
}  // namespace detail

struct ParabolicResult
{
    Trajectory trajectory;
    DiagnosticsRecord diagnostics;
};

//! March the regularized problem to t_end and accumulate diagnostics.
inline ParabolicResult parabolic_solve(MediumPair const& pair,
                                       Grid const& grid,
                                       Field const& u0,
                                       ParabolicConfig const& cfg)
{
    check_parabolic_config(pair, cfg);
    validate_field(grid, u0);
    ParabolicScheme const scheme(pair, grid, cfg.eps);
    ParabolicResult res;
    auto& rec = res.diagnostics;
    rec.smoothed_input = has_smoothed_shape(grid, u0, cfg.eps);
    {
        std::vector<double> fluxes;
        compute_face_fluxes(scheme, grid, u0.values, fluxes);
        for (double f : fluxes)
            rec.initial_flux_sup = std::max(rec.initial_flux_sup, std::abs(f));
    }
    MarchOptions opts{cfg.t_end, cfg.output_times, cfg.record_every_step};
    detail::DiagnosticsObserver obs(scheme, rec);
    res.trajectory = march(scheme, u0, scheme.time_step(cfg.cfl), opts, obs);
    return res;
}

}  // namespace capflow

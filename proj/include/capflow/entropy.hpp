#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "connections.hpp"
#include "errors.hpp"
#include "explicit_march.hpp"
#include "flux_model.hpp"
#include "grid.hpp"
#include "hyperbolic.hpp"

namespace capflow
{
//---------------------------------------------------------------------------//
//! Kruzkov entropy flux F_i(a,b) = sign(a-b)(f_i(a) - f_i(b)).
class KruzkovFlux
{
  public:
    explicit KruzkovFlux(MediumPair const& pair) : pair_(&pair) {}

    double operator()(Side i, double a, double b) const noexcept
    {
        FluxSpec const& f = pair_->flux(i);
        if (a == b)
            return 0.0;
        return a > b ? f(a) - f(b) : f(b) - f(a);
    }

  private:
    MediumPair const* pair_;
};

namespace detail
{
inline void require_same_grid(Grid const& grid, Trajectory const& traj)
{
    if (traj.frames.empty())
        throw GridMismatchError("empty trajectory");
    for (auto const& f : traj.frames)
        if (f.size() != grid.n_cells())
            throw GridMismatchError("trajectory frame does not match grid");
}
}  // namespace detail

//---------------------------------------------------------------------------//
// KRUZKOV CELL INEQUALITIES
//---------------------------------------------------------------------------//
struct CellResidual
{
    //! Most positive value of |u^{n+1}-k| - |u^n-k| + dt/dx (Phi_+ - Phi_-).
    double worst = 0.0;
    std::size_t step = 0;
    std::size_t cell = 0;
    double kappa = 0.0;
};

/*!
 * Discrete Kruzkov inequalities of the Godunov scheme in every cell whose
 * faces both lie inside one medium.
 *
 * Consecutive frames are treated as single steps of length t^{n+1} - t^n,
 * so the trajectory must record every step.
 */
inline CellResidual kruzkov_cell_residuals(Trajectory const& traj,
                                           MediumPair const& pair,
                                           Grid const& grid,
                                           std::span<double const> kappas)
{
    detail::require_same_grid(grid, traj);
    std::size_t const n = grid.n_cells();
    std::size_t const iface = grid.interface_face();
    CellResidual res;
    std::vector<double> phi(n + 1);
    for (std::size_t s = 0; s + 1 < traj.frames.size(); ++s)
    {
        Field const& u = traj.frames[s];
        Field const& v = traj.frames[s + 1];
        double const ratio = (v.time - u.time) / grid.dx();
        for (double k : kappas)
        {
            auto entropy_flux = [&](FluxSpec const& f, double a, double b) {
                return godunov(f, std::max(a, k), std::max(b, k))
                       - godunov(f, std::min(a, k), std::min(b, k));
            };
            FluxSpec const& f1 = pair.first().flux();
            FluxSpec const& f2 = pair.second().flux();
            phi[0] = entropy_flux(f1, u[0], u[0]);
            phi[n] = entropy_flux(f2, u[n - 1], u[n - 1]);
            for (std::size_t f = 1; f < n; ++f)
                if (f != iface)
                    phi[f] = entropy_flux(f < iface ? f1 : f2, u[f - 1], u[f]);
            for (std::size_t j = 0; j < n; ++j)
            {
                if (j + 1 == iface || j == iface)
                    continue;
                double const r = std::abs(v[j] - k) - std::abs(u[j] - k)
                                 + ratio * (phi[j + 1] - phi[j]);
                if (r > res.worst)
                    res = {r, s, j, k};
            }
        }
    }
    return res;
}

//! n equispaced levels in [0,1].
inline std::vector<double> kappa_levels(std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = n == 1 ? 0.5
                        : static_cast<double>(k) / static_cast<double>(n - 1);
    return out;
}

//---------------------------------------------------------------------------//
// ADAPTED ENTROPY INEQUALITY
//---------------------------------------------------------------------------//
struct AdaptedResidual
{
    //! Most negative weak residual over the test family.
    double worst = 0.0;
    double center = 0.0;
    double width = 0.0;
    double time_center = 0.0;
};

//! Space widths (in cells) and positions per width of the hat family.
inline constexpr std::array<double, 5> adapted_widths = {2, 4, 8, 16, 32};
inline constexpr int adapted_positions = 4;
inline constexpr int adapted_time_hats = 5;

/*!
 * Weak adapted entropy inequality against a steady comparison field.
 *
 * With eta = |u - kappa| and numerical entropy fluxes
 * Phi = F(u v kappa) - F(u ^ kappa) built from the scheme's face flux, each
 * test function psi >= 0 yields
 *   sum_n sum_j dx psi_j^{n+1} (eta_j^n - eta_j^{n+1} - dt/dx (Phi_{j+1} - Phi_j)),
 * which is non-negative for entropy solutions. psi runs over tensor products
 * of hats in x (widths 2..32 cells, centers spaced by half a width around the
 * interface) and hats in t (five centers from 0 to T).
 */
template<class Scheme>
AdaptedResidual adapted_entropy_residual(Trajectory const& traj,
                                         Scheme const& scheme,
                                         Field const& kappa)
{
    Grid const& grid = scheme.grid();
    detail::require_same_grid(grid, traj);
    if (kappa.size() != grid.n_cells())
        throw GridMismatchError("comparison field does not match grid");
    std::size_t const n = grid.n_cells();
    double const dx = grid.dx();
    double const t0 = traj.initial().time;
    double const span_t = traj.final().time - t0;
    double const tau = span_t > 0.0 ? span_t / (adapted_time_hats - 1) : 1.0;

    // Per time hat, the time-weighted cell residuals.
    std::vector<std::vector<double>> acc(adapted_time_hats,
                                         std::vector<double>(n, 0.0));
    std::vector<double> hi(n);
    std::vector<double> lo(n);
    std::vector<double> fhi;
    std::vector<double> flo;
    for (std::size_t s = 0; s + 1 < traj.frames.size(); ++s)
    {
        Field const& u = traj.frames[s];
        Field const& v = traj.frames[s + 1];
        double const ratio = (v.time - u.time) / dx;
        for (std::size_t j = 0; j < n; ++j)
        {
            hi[j] = std::max(u[j], kappa[j]);
            lo[j] = std::min(u[j], kappa[j]);
        }
        compute_face_fluxes(scheme, grid, hi, fhi);
        compute_face_fluxes(scheme, grid, lo, flo);
        for (int m = 0; m < adapted_time_hats; ++m)
        {
            double const tc = t0 + m * tau;
            double const theta
                = std::max(0.0, 1.0 - std::abs(v.time - tc) / tau);
            if (theta == 0.0)
                continue;
            auto& row = acc[static_cast<std::size_t>(m)];
            for (std::size_t j = 0; j < n; ++j)
            {
                double const dphi = (fhi[j + 1] - flo[j + 1]) - (fhi[j] - flo[j]);
                double const r = std::abs(u[j] - kappa[j])
                                 - std::abs(v[j] - kappa[j]) - ratio * dphi;
                row[j] += theta * dx * r;
            }
        }
    }

    AdaptedResidual res;
    bool first = true;
    for (double wc : adapted_widths)
    {
        double const w = wc * dx;
        for (int p = -adapted_positions; p <= adapted_positions; ++p)
        {
            double const c = 0.5 * w * p;
            for (int m = 0; m < adapted_time_hats; ++m)
            {
                double sum = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                {
                    double const psi = std::max(
                        0.0, 1.0 - std::abs(grid.cell_center(j) - c) / w);
                    if (psi > 0.0)
                        sum += psi * acc[static_cast<std::size_t>(m)][j];
                }
                if (first || sum < res.worst)
                {
                    res = {sum, c, w, t0 + m * tau};
                    first = false;
                }
            }
        }
    }
    return res;
}

//! Hyperbolic scheme against a piecewise constant connection (left, right).
inline AdaptedResidual adapted_entropy_residual(Trajectory const& traj,
                                                MediumPair const& pair,
                                                Grid const& grid,
                                                double left,
                                                double right)
{
    FluxSpec const& f1 = pair.first().flux();
    FluxSpec const& f2 = pair.second().flux();
    if (std::abs(f1(left) - f2(right)) > 1e-10)
        throw LevelError("connection values do not share a flux level");
    return adapted_entropy_residual(traj, HyperbolicScheme(pair, grid),
                                    two_state_field(grid, left, right));
}

//---------------------------------------------------------------------------//
// UNDERCOMPRESSIVITY
//---------------------------------------------------------------------------//
inline constexpr double derivative_step = 1e-6;
inline constexpr double undercompressive_tol = 1e-6;

//! Central difference; second-order one-sided stencils within h of 0 or 1.
inline double numeric_slope(FluxSpec const& f, double u) noexcept
{
    double const h = derivative_step;
    if (u - h < 0.0)
        return (-3.0 * f(u) + 4.0 * f(u + h) - f(u + 2.0 * h)) / (2.0 * h);
    if (u + h > 1.0)
        return (3.0 * f(u) - 4.0 * f(u - h) + f(u - 2.0 * h)) / (2.0 * h);
    return (f(u + h) - f(u - h)) / (2.0 * h);
}

//! min{0, f1'(u1)} max{0, f2'(u2)}; zero unless the jump is undercompressive.
inline double undercompressive_check(MediumPair const& pair, double u1, double u2)
{
    detail::require_saturation(u1, "undercompressive_check");
    detail::require_saturation(u2, "undercompressive_check");
    return std::min(0.0, numeric_slope(pair.first().flux(), u1))
           * std::max(0.0, numeric_slope(pair.second().flux(), u2));
}

//---------------------------------------------------------------------------//
// CONSERVATION AND COMPARISON
//---------------------------------------------------------------------------//
/*!
 * max_n |M(t_n) - M(0) + int_0^{t_n} (F_right - F_left) dt| for the outflow
 * closure.
 *
 * Boundary fluxes are f1(u_first) and f2(u_last) on each frame, matching the
 * ghost-copy faces of both schemes; frames must be consecutive steps.
 */
inline double mass_conservation_check(Trajectory const& traj,
                                      MediumPair const& pair,
                                      Grid const& grid)
{
    detail::require_same_grid(grid, traj);
    auto mass = [&](Field const& f) {
        long double m = 0.0L;
        for (double v : f.values)
            m += v;
        return m * static_cast<long double>(grid.dx());
    };
    long double const m0 = mass(traj.initial());
    long double boundary = 0.0L;
    long double worst = 0.0L;
    for (std::size_t s = 0; s + 1 < traj.frames.size(); ++s)
    {
        Field const& u = traj.frames[s];
        double const dt = traj.frames[s + 1].time - u.time;
        double const out = pair.second().flux()(u[u.size() - 1])
                           - pair.first().flux()(u[0]);
        boundary += static_cast<long double>(dt) * out;
        worst = std::max(worst, std::abs(mass(traj.frames[s + 1]) - m0 + boundary));
    }
    return static_cast<double>(worst);
}

struct ComparisonSlack
{
    //! max over frames and signs of the localized L1 growth.
    double worst;
    std::size_t frame;
};

/*!
 * Localized L1 comparison: for each frame,
 *   sum_{|x_j|<=R} (u-v)^+- dx - sum_{|x_j|<=R+Ct} (u0-v0)^+- dx,
 * with x_j the cell centers.
 */
inline ComparisonSlack l1_comparison(Trajectory const& u,
                                     Trajectory const& v,
                                     Grid const& grid,
                                     double R,
                                     double C)
{
    detail::require_same_grid(grid, u);
    detail::require_same_grid(grid, v);
    if (u.frames.size() != v.frames.size())
        throw GridMismatchError("trajectories have different frame counts");
    for (std::size_t s = 0; s < u.frames.size(); ++s)
        if (std::abs(u.frames[s].time - v.frames[s].time) > 1e-12)
            throw GridMismatchError("trajectories are sampled at different times");
    auto parts = [&](Field const& a, Field const& b, double radius) {
        long double pos = 0.0L;
        long double neg = 0.0L;
        for (std::size_t j = 0; j < a.size(); ++j)
        {
            if (std::abs(grid.cell_center(j)) > radius)
                continue;
            double const d = a[j] - b[j];
            (d > 0.0 ? pos : neg) += std::abs(d);
        }
        return std::array<double, 2>{static_cast<double>(pos) * grid.dx(),
                                     static_cast<double>(neg) * grid.dx()};
    };
    Field const& u0 = u.initial();
    Field const& v0 = v.initial();
    ComparisonSlack res{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t s = 0; s < u.frames.size(); ++s)
    {
        double const t = u.frames[s].time - u0.time;
        auto const now = parts(u.frames[s], v.frames[s], R);
        auto const then = parts(u0, v0, R + C * t);
        for (int k = 0; k < 2; ++k)
        {
            double const slack = now[k] - then[k];
            if (slack > res.worst)
                res = {slack, s};
        }
    }
    return res;
}

//---------------------------------------------------------------------------//
struct EntropyReport
{
    double worst_kruzkov_residual = 0.0;
    double worst_adapted_residual = 0.0;
    double undercompressivity_product = 0.0;
    double flux_mismatch = 0.0;
    double mass_defect = 0.0;

    double kruzkov_tol = 1e-12;
    double adapted_tol = 1e-8;
    double undercompressive_tol = capflow::undercompressive_tol;
    double flux_tol = 1e-3;
    double mass_tol = 1e-12;

    CellResidual kruzkov_location;
    AdaptedResidual adapted_location;

    bool kruzkov_pass() const { return worst_kruzkov_residual <= kruzkov_tol; }
    bool adapted_pass() const { return worst_adapted_residual >= -adapted_tol; }
    bool undercompressive_pass() const
    {
        return std::abs(undercompressivity_product) <= undercompressive_tol;
    }
    bool flux_pass() const { return flux_mismatch <= flux_tol; }
    bool mass_pass() const { return mass_defect <= mass_tol; }
    bool pass() const
    {
        return kruzkov_pass() && adapted_pass() && undercompressive_pass()
               && flux_pass() && mass_pass();
    }
};

/*!
 * Full certification of a hyperbolic trajectory recorded at every step.
 *
 * Undercompressivity uses the interface Riemann states at 0-/0+ of the final
 * frame; flux matching uses the adjacent cell averages.
 */
inline EntropyReport certify_hyperbolic(Trajectory const& traj,
                                        MediumPair const& pair,
                                        Grid const& grid,
                                        std::size_t n_kappa = 33)
{
    EntropyReport rep;
    auto const levels = kappa_levels(n_kappa);
    rep.kruzkov_location = kruzkov_cell_residuals(traj, pair, grid, levels);
    rep.worst_kruzkov_residual = rep.kruzkov_location.worst;
    auto const opt = optimal_connection(pair);
    rep.adapted_location = adapted_entropy_residual(
        traj, pair, grid, opt.left_value, opt.right_value);
    rep.worst_adapted_residual = rep.adapted_location.worst;
    rep.mass_defect = mass_conservation_check(traj, pair, grid);
    auto const [c1, c2] = interface_traces(grid, traj.final());
    auto const tr = interface_riemann_traces(pair, c1, c2);
    rep.undercompressivity_product = undercompressive_check(pair, tr.left, tr.right);
    rep.flux_mismatch
        = std::abs(pair.first().flux()(c1) - pair.second().flux()(c2));
    return rep;
}

}  // namespace capflow

#pragma once

#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "connections.hpp"
#include "errors.hpp"
#include "explicit_march.hpp"
#include "flux_model.hpp"
#include "grid.hpp"

namespace capflow
{
//---------------------------------------------------------------------------//
/*!
 * First-order Godunov scheme for the two-medium conservation law.
 *
 * Interior faces use the Godunov flux of their medium; the face at x = 0 uses
 * the interface flux max{G1(u1,1), G2(0,u2)}.
 */
class HyperbolicScheme
{
  public:
    HyperbolicScheme(MediumPair const& pair, Grid const& grid)
        : pair_(&pair), grid_(&grid)
    {
    }

    MediumPair const& pair() const noexcept { return *pair_; }
    Grid const& grid() const noexcept { return *grid_; }

    double face_flux(std::size_t face, double left, double right) const noexcept
    {
        std::size_t const iface = grid_->interface_face();
        if (face == iface)
            return interface_godunov(*pair_, left, right);
        FluxSpec const& f = face < iface ? pair_->first().flux()
                                         : pair_->second().flux();
        return godunov(f, left, right);
    }

    //! Largest step with dt max(L1, L2) / dx <= cfl.
    double time_step(double cfl) const noexcept
    {
        return cfl * grid_->dx() / pair_->lipschitz();
    }

  private:
    MediumPair const* pair_;
    Grid const* grid_;
};

struct HyperbolicConfig
{
    double cfl = 0.9;
    double t_end = 1.0;
    std::vector<double> output_times;
    bool record_every_step = false;
};

inline void check_hyperbolic_config(HyperbolicConfig const& cfg)
{
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
        throw DomainError("cfl must lie in (0,1]");
    if (!(cfg.t_end > 0.0))
        throw DomainError("t_end must be positive");
}

inline void check_hyperbolic_step(HyperbolicScheme const& scheme, double dt)
{
    double const courant = dt * scheme.pair().lipschitz() / scheme.grid().dx();
    if (!(dt > 0.0) || courant > 1.0 + 1e-12)
    {
        std::ostringstream os;
        os << "hyperbolic step violates CFL: dt max(L)/dx = " << courant;
        throw StabilityError(os.str());
    }
}

//! One conservative Godunov step.
inline Field hyperbolic_step(MediumPair const& pair,
                             Grid const& grid,
                             Field const& field,
                             double dt)
{
    HyperbolicScheme const scheme(pair, grid);
    check_hyperbolic_step(scheme, dt);
    validate_field(grid, field);
    std::vector<double> fluxes;
    compute_face_fluxes(scheme, grid, field.values, fluxes);
    Field out;
    conservative_update(grid, field.values, fluxes, dt, out.values);
    out.time = field.time + dt;
    return out;
}

//! March the Godunov scheme to t_end, recording the requested frames.
template<class Observer = NullObserver>
Trajectory hyperbolic_solve(MediumPair const& pair,
                            Grid const& grid,
                            Field const& u0,
                            HyperbolicConfig const& cfg,
                            Observer&& observer = {})
{
    check_hyperbolic_config(cfg);
    HyperbolicScheme const scheme(pair, grid);
    MarchOptions opts{cfg.t_end, cfg.output_times, cfg.record_every_step};
    return march(scheme, u0, scheme.time_step(cfg.cfl), opts,
                 std::forward<Observer>(observer));
}

//! Cell averages on both sides of the interface face.
inline std::pair<double, double> interface_traces(Grid const& grid,
                                                  Field const& field)
{
    if (field.size() != grid.n_cells())
        throw GridMismatchError("field size does not match grid");
    std::size_t const k = grid.interface_face();
    return {field[k - 1], field[k]};
}

}  // namespace capflow

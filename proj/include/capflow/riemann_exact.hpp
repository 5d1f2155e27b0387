#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "flux_model.hpp"
#include "root_finding.hpp"

namespace capflow
{
//---------------------------------------------------------------------------//
/*!
 * Self-similar entropy solution of a single-medium Riemann problem.
 *
 * For u_L < u_R the solution follows the lower convex envelope of f on
 * [u_L, u_R]; the case u_L > u_R is mapped to it through x -> -x, f -> -f.
 * Quadratic fluxes use the closed form. Other fluxes build the envelope on a
 * 2000-point grid (monotone chain) and invert f' exactly on curved parts of
 * the hull, falling back to the hull vertex on linear (shock) parts.
 */
class RiemannFan
{
  public:
    static constexpr std::size_t hull_points = 2000;

    RiemannFan(FluxSpec const& f, double u_left, double u_right)
        : f_(&f), u_left_(u_left), u_right_(u_right), reflect_(u_left > u_right)
    {
        auto const& poly = f.shape().polynomial();
        if (poly.degree() <= 2)
        {
            auto c = poly.coefficients();
            quad_a_ = c.size() > 2 ? c[2] : 0.0;
            quad_c_ = c.size() > 1 ? c[1] : 0.0;
            quadratic_ = true;
        }
        else if (u_left != u_right)
        {
            build_hull();
        }
    }

    //! Solution value at x/t = xi.
    double operator()(double xi) const
    {
        if (u_left_ == u_right_)
            return u_left_;
        // Reflected problem: v(-xi) with states (u_R, u_L) and flux -f.
        double const s = reflect_ ? -xi : xi;
        return quadratic_ ? eval_quadratic(s) : eval_hull(s);
    }

  private:
    FluxSpec const* f_;
    double u_left_;
    double u_right_;
    bool reflect_;
    bool quadratic_ = false;
    double quad_a_ = 0.0;
    double quad_c_ = 0.0;
    std::vector<double> vu_;     // hull vertices (increasing u)
    std::vector<double> slope_;  // slopes between consecutive vertices
    std::vector<bool> curved_;   // segment spans a single grid cell
    double h_ = 0.0;

    double lo() const noexcept { return std::min(u_left_, u_right_); }
    double hi() const noexcept { return std::max(u_left_, u_right_); }
    //! Flux of the (possibly reflected) convex-envelope problem.
    double g(double u) const noexcept { return reflect_ ? -(*f_)(u) : (*f_)(u); }
    double dg(double u) const noexcept
    {
        return reflect_ ? -f_->slope(u) : f_->slope(u);
    }

    double eval_quadratic(double xi) const noexcept
    {
        double const a = reflect_ ? -quad_a_ : quad_a_;
        double const c = reflect_ ? -quad_c_ : quad_c_;
        double const ul = lo();
        double const ur = hi();
        if (a > 0.0)
            return std::clamp((xi - c) / (2.0 * a), ul, ur);
        double const sigma = (g(ur) - g(ul)) / (ur - ul);
        return xi <= sigma ? ul : ur;
    }

    void build_hull()
    {
        double const a = lo();
        double const b = hi();
        h_ = (b - a) / static_cast<double>(hull_points);
        std::vector<double> hu;
        std::vector<double> hg;
        for (std::size_t k = 0; k <= hull_points; ++k)
        {
            double const u = k == hull_points ? b : a + static_cast<double>(k) * h_;
            double const gu = g(u);
            while (hu.size() >= 2)
            {
                std::size_t const m = hu.size();
                double const cross = (hu[m - 1] - hu[m - 2]) * (gu - hg[m - 2])
                                     - (hg[m - 1] - hg[m - 2]) * (u - hu[m - 2]);
                if (cross <= 0.0)
                {
                    hu.pop_back();
                    hg.pop_back();
                }
                else
                    break;
            }
            hu.push_back(u);
            hg.push_back(gu);
        }
        vu_ = hu;
        for (std::size_t k = 0; k + 1 < hu.size(); ++k)
        {
            slope_.push_back((hg[k + 1] - hg[k]) / (hu[k + 1] - hu[k]));
            curved_.push_back(hu[k + 1] - hu[k] <= 1.5 * h_);
        }
    }

    double eval_hull(double xi) const
    {
        std::size_t const m = slope_.size();
        // First segment whose slope exceeds xi; the state sits at its left
        // vertex.
        auto it = std::upper_bound(slope_.begin(), slope_.end(), xi);
        std::size_t const k = static_cast<std::size_t>(it - slope_.begin());
        if (k == 0 && !(m > 0 && curved_[0]))
            return vu_.front();
        if (k == m && !(m > 0 && curved_[m - 1]))
            return vu_.back();
        // Bracket of adjacent curved segments around vertex k.
        double a = vu_[k];
        double b = vu_[k];
        if (k > 0 && curved_[k - 1])
            a = vu_[k - 1];
        if (k < m && curved_[k])
            b = vu_[k + 1];
        if (a < b && dg(a) <= xi && xi <= dg(b))
            return bisect_first_true([&](double u) { return dg(u) >= xi; }, a, b);
        if (a < b && xi < dg(a))
            return a;
        if (a < b && xi > dg(b))
            return b;
        return vu_[k];
    }
};

//! Convenience wrapper around RiemannFan for a single evaluation.
inline double exact_riemann_single_medium(FluxSpec const& f,
                                          double u_left,
                                          double u_right,
                                          double xi)
{
    detail::require_saturation(u_left, "exact_riemann_single_medium");
    detail::require_saturation(u_right, "exact_riemann_single_medium");
    return RiemannFan(f, u_left, u_right)(xi);
}

}  // namespace capflow

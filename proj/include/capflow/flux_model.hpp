#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "root_finding.hpp"

namespace capflow
{
//! Number of samples used to validate the structural hypotheses.
inline constexpr std::size_t validation_samples = 10000;

//---------------------------------------------------------------------------//
/*!
 * Decomposed flux f(u) = q r(u) + gamma lambda(u) of one medium.
 *
 * Construction checks the decomposition itself: q >= 0, r(0) = 0, r(1) = 1,
 * r non-decreasing, lambda(0) = lambda(1) = 0 and lambda >= 0 (sampled).
 * Unimodality is not required here; see validate_unimodal and FluxSpec.
 */
class FluxDecomposition
{
  public:
    FluxDecomposition(double total_rate,
                      double gravity_coefficient,
                      Polynomial fractional_flow,
                      Polynomial mobility)
        : q_(total_rate)
        , gamma_(gravity_coefficient)
        , r_(std::move(fractional_flow))
        , lambda_(std::move(mobility))
    {
        check();
        flux_ = q_ * r_ + gamma_ * lambda_;
        slope_ = flux_.derivative();
    }

    double total_rate() const noexcept { return q_; }
    double gravity_coefficient() const noexcept { return gamma_; }
    Polynomial const& fractional_flow() const noexcept { return r_; }
    Polynomial const& mobility() const noexcept { return lambda_; }
    //! Combined flux polynomial q r + gamma lambda.
    Polynomial const& polynomial() const noexcept { return flux_; }

    //! Flux value; no range check (hot path).
    double operator()(double u) const noexcept { return flux_(u); }
    //! Exact derivative of the closed form.
    double slope(double u) const noexcept { return slope_(u); }

  private:
    double q_;
    double gamma_;
    Polynomial r_;
    Polynomial lambda_;
    Polynomial flux_;
    Polynomial slope_;

    void check() const
    {
        constexpr double tol = 1e-12;
        if (!(q_ >= 0.0) || !std::isfinite(q_))
            throw StructuralError("total rate must be finite and >= 0");
        if (!std::isfinite(gamma_))
            throw StructuralError("gravity coefficient must be finite");
        if (std::abs(r_(0.0)) > tol || std::abs(r_(1.0) - 1.0) > tol)
            throw StructuralError("fractional flow must satisfy r(0)=0, r(1)=1",
                                  0.0, 1.0);
        if (std::abs(lambda_(0.0)) > tol || std::abs(lambda_(1.0)) > tol)
            throw StructuralError("mobility must vanish at 0 and 1", 0.0, 1.0);
        std::size_t const n = validation_samples;
        double prev_u = 0.0;
        double prev_r = r_(0.0);
        for (std::size_t k = 1; k <= n; ++k)
        {
            double const u = static_cast<double>(k) / static_cast<double>(n);
            double const rv = r_(u);
            if (rv < prev_r - tol)
                throw StructuralError("fractional flow is not non-decreasing",
                                      prev_u, u);
            if (lambda_(u) < -tol)
                throw StructuralError("mobility is negative", u, u);
            prev_u = u;
            prev_r = rv;
        }
    }
};

//---------------------------------------------------------------------------//
//! Sample triple where the flux increases and later decreases.
struct UnimodalViolation
{
    double u_prev;
    double u_mid;
    double u_next;
};

struct UnimodalityReport
{
    std::vector<UnimodalViolation> violations;
    bool pass() const noexcept { return violations.empty(); }
};

/*!
 * Check the decrease-then-increase shape on \c n_samples uniform points.
 *
 * Once the sampled flux has increased, any later decrease is reported as the
 * triple around the offending step. Differences smaller than a roundoff
 * tolerance count as flat.
 */
inline UnimodalityReport
validate_unimodal(FluxDecomposition const& f, std::size_t n_samples)
{
    if (n_samples < 3)
        throw DomainError("validate_unimodal needs at least 3 samples");
    UnimodalityReport report;
    double const tol = 1e-14 * std::max(1.0, f.total_rate());
    auto u_at = [n_samples](std::size_t k) {
        return static_cast<double>(k) / static_cast<double>(n_samples - 1);
    };
    bool increased = false;
    for (std::size_t k = 1; k < n_samples; ++k)
    {
        double const diff = f(u_at(k)) - f(u_at(k - 1));
        if (diff > tol)
        {
            increased = true;
        }
        else if (diff < -tol && increased)
        {
            std::size_t const mid = k - 1;
            report.violations.push_back(
                {u_at(mid > 0 ? mid - 1 : 0), u_at(mid), u_at(k)});
        }
    }
    return report;
}

namespace detail
{
inline void require_unimodal(FluxDecomposition const& f)
{
    auto report = validate_unimodal(f, validation_samples);
    if (!report.pass())
    {
        auto const& v = report.violations.front();
        std::ostringstream os;
        os << "flux is not decreasing-then-increasing: decrease after increase "
              "between u="
           << v.u_mid << " and u=" << v.u_next;
        throw StructuralError(os.str(), v.u_mid, v.u_next);
    }
}
}  // namespace detail

/*!
 * Minimizer b in [0,1) of a unimodal flux.
 *
 * Dense scan on the validation grid, ternary search to 1e-12 on the values,
 * then a derivative-sign bisection polish (the value-based search cannot
 * resolve a quadratic minimum beyond sqrt(machine epsilon)).
 */
inline double flux_minimizer(FluxDecomposition const& f)
{
    detail::require_unimodal(f);
    std::size_t const n = validation_samples;
    std::size_t best = 0;
    double best_val = f(0.0);
    for (std::size_t k = 1; k <= n; ++k)
    {
        double const v = f(static_cast<double>(k) / static_cast<double>(n));
        if (v < best_val)
        {
            best_val = v;
            best = k;
        }
    }
    if (best == 0)
        return 0.0;
    double lo = static_cast<double>(best - 1) / static_cast<double>(n);
    double hi = std::min(1.0, static_cast<double>(best + 1) / n);
    double b = ternary_minimize(f, lo, hi, 1e-12);
    // Polish on the sign change of the exact derivative when bracketed.
    if (f.slope(lo) < 0.0 && f.slope(hi) > 0.0)
        b = bisect_first_true([&f](double u) { return f.slope(u) >= 0.0; },
                              lo, hi);
    if (f(b) > best_val)
        b = static_cast<double>(best) / static_cast<double>(n);
    return std::min(b, std::nextafter(1.0, 0.0));
}

//! Lipschitz bound: max |f'| on the validation grid refined around the peak.
inline double flux_lipschitz(FluxDecomposition const& f)
{
    std::size_t const n = validation_samples;
    std::size_t best = 0;
    double best_val = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
    {
        double const v
            = std::abs(f.slope(static_cast<double>(k) / static_cast<double>(n)));
        if (v > best_val)
        {
            best_val = v;
            best = k;
        }
    }
    double const lo = static_cast<double>(best > 0 ? best - 1 : 0) / n;
    double const hi = static_cast<double>(std::min(best + 1, n)) / n;
    double const u = ternary_minimize(
        [&f](double s) { return -std::abs(f.slope(s)); }, lo, hi, 1e-13);
    double lip = std::max(best_val, std::abs(f.slope(u)));
    // Finite-difference slopes cannot exceed the derivative bound, but keep
    // the invariant literal on the grid.
    for (std::size_t k = 1; k <= n; ++k)
    {
        double const a = static_cast<double>(k - 1) / n;
        double const b = static_cast<double>(k) / n;
        lip = std::max(lip, std::abs(f(b) - f(a)) / (b - a));
    }
    return lip > 0.0 ? lip : 1e-300;
}

//---------------------------------------------------------------------------//
/*!
 * Validated unimodal flux with cached minimizer and Lipschitz bound.
 */
class FluxSpec
{
  public:
    explicit FluxSpec(FluxDecomposition shape)
        : shape_(std::move(shape))
        , b_(flux_minimizer(shape_))
        , lip_(flux_lipschitz(shape_))
        , min_value_(shape_(b_))
    {
    }

    FluxSpec(double q, double gamma, Polynomial r, Polynomial lambda)
        : FluxSpec(FluxDecomposition(q, gamma, std::move(r), std::move(lambda)))
    {
    }

    double operator()(double u) const noexcept { return shape_(u); }
    double slope(double u) const noexcept { return shape_.slope(u); }

    double total_rate() const noexcept { return shape_.total_rate(); }
    double gravity_coefficient() const noexcept
    {
        return shape_.gravity_coefficient();
    }
    //! Minimizer b.
    double minimizer() const noexcept { return b_; }
    //! f(b), the lower end of the flux range.
    double min_value() const noexcept { return min_value_; }
    double lipschitz() const noexcept { return lip_; }
    FluxDecomposition const& shape() const noexcept { return shape_; }

  private:
    FluxDecomposition shape_;
    double b_;
    double lip_;
    double min_value_;
};

//---------------------------------------------------------------------------//
//! Which half line: medium 1 is x < 0, medium 2 is x > 0.
enum class Side
{
    one = 1,
    two = 2
};

constexpr Side opposite(Side s) noexcept
{
    return s == Side::one ? Side::two : Side::one;
}

/*!
 * One homogeneous medium: flux, Kirchhoff transform and capillary level.
 */
class Medium
{
  public:
    Medium(FluxSpec flux, double capillary_level)
        : flux_(std::move(flux))
        , phi_(flux_.shape().mobility().antiderivative())
        , level_(capillary_level)
    {
        auto const& lam = flux_.shape().mobility();
        for (std::size_t k = 0; k <= validation_samples; ++k)
            max_mobility_ = std::max(
                max_mobility_,
                lam(static_cast<double>(k) / validation_samples));
        max_mobility_ *= 1.0 + 1e-12;
    }

    FluxSpec const& flux() const noexcept { return flux_; }
    //! Kirchhoff transform phi(u) = int_0^u lambda; no range check.
    double phi(double u) const noexcept { return phi_(u); }
    double mobility(double u) const noexcept
    {
        return flux_.shape().mobility()(u);
    }
    Polynomial const& kirchhoff_polynomial() const noexcept { return phi_; }
    double capillary_level() const noexcept { return level_; }
    double max_mobility() const noexcept { return max_mobility_; }

  private:
    FluxSpec flux_;
    Polynomial phi_;
    double level_;
    double max_mobility_ = 0.0;
};

/*!
 * The two media with a shared total rate.
 */
class MediumPair
{
  public:
    MediumPair(Medium m1, Medium m2) : m1_(std::move(m1)), m2_(std::move(m2))
    {
        double const q1 = m1_.flux().total_rate();
        double const q2 = m2_.flux().total_rate();
        if (std::abs(q1 - q2) > 1e-14 * std::max(1.0, std::abs(q1)))
            throw StructuralError("both media must share the total rate q");
    }

    Medium const& medium(Side s) const noexcept
    {
        return s == Side::one ? m1_ : m2_;
    }
    Medium const& first() const noexcept { return m1_; }
    Medium const& second() const noexcept { return m2_; }
    FluxSpec const& flux(Side s) const noexcept { return medium(s).flux(); }

    double total_rate() const noexcept { return m1_.flux().total_rate(); }
    //! Capillary forces oriented with gravity: P1 < P2.
    bool negatively_oriented() const noexcept
    {
        return m1_.capillary_level() < m2_.capillary_level();
    }
    //! Gap P2 - P1; the epsilon-regime requires 0 < eps < gap.
    double capillary_gap() const noexcept
    {
        return m2_.capillary_level() - m1_.capillary_level();
    }
    double lipschitz() const noexcept
    {
        return std::max(m1_.flux().lipschitz(), m2_.flux().lipschitz());
    }
    double max_mobility() const noexcept
    {
        return std::max(m1_.max_mobility(), m2_.max_mobility());
    }

  private:
    Medium m1_;
    Medium m2_;
};

//---------------------------------------------------------------------------//
namespace detail
{
inline void require_saturation(double u, char const* what)
{
    if (!(u >= 0.0 && u <= 1.0))
    {
        std::ostringstream os;
        os << what << ": saturation " << u << " outside [0,1]";
        throw DomainError(os.str());
    }
}
}  // namespace detail

//! Checked flux evaluation.
inline double eval_flux(Medium const& m, double u)
{
    detail::require_saturation(u, "eval_flux");
    return m.flux()(u);
}

//! Checked Kirchhoff transform.
inline double kirchhoff(Medium const& m, double u)
{
    detail::require_saturation(u, "kirchhoff");
    return m.phi(u);
}

/*!
 * Whether the regularized capillary graphs of both media meet.
 *
 * Graph of medium i at level P_i with pi_i(u) = P_i + eps u: the half line
 * (-inf, P_i] at u = 0, the point P_i + eps u inside, [P_i + eps, inf) at
 * u = 1. Saturations within 1e-12 of 0 or 1 take the vertical branch.
 */
inline bool capillary_graphs_intersect(MediumPair const& pair,
                                       double u1,
                                       double u2,
                                       double eps)
{
    detail::require_saturation(u1, "capillary_graphs_intersect");
    detail::require_saturation(u2, "capillary_graphs_intersect");
    if (!(eps > 0.0) || eps >= pair.capillary_gap())
        throw RegimeError(
            "capillarity eps must satisfy 0 < eps < P2 - P1 (disjoint graphs)");
    constexpr double tol = 1e-12;
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto graph = [eps, tol, inf](double level, double u) -> std::pair<double, double> {
        if (u <= tol)
            return {-inf, level};
        if (u >= 1.0 - tol)
            return {level + eps, inf};
        return {level + eps * u, level + eps * u};
    };
    auto const g1 = graph(pair.first().capillary_level(), u1);
    auto const g2 = graph(pair.second().capillary_level(), u2);
    return std::max(g1.first, g2.first) <= std::min(g1.second, g2.second);
}

}  // namespace capflow

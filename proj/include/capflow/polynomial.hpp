#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace capflow
{
//---------------------------------------------------------------------------//
/*!
 * Dense polynomial in monomial basis, coefficients in increasing degree.
 *
 * Used for the fractional flow and mobility closed forms so that fluxes,
 * their derivatives and Kirchhoff transforms stay exact.
 */
class Polynomial
{
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs))
    {
        trim();
    }
    Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

    double operator()(double x) const noexcept
    {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    //! Degree, with the zero polynomial reported as 0.
    std::size_t degree() const noexcept
    {
        return c_.empty() ? 0 : c_.size() - 1;
    }
    bool is_zero() const noexcept { return c_.empty(); }
    std::span<double const> coefficients() const noexcept { return c_; }

    Polynomial derivative() const
    {
        std::vector<double> d;
        for (std::size_t k = 1; k < c_.size(); ++k)
            d.push_back(static_cast<double>(k) * c_[k]);
        return Polynomial(std::move(d));
    }

    //! Antiderivative vanishing at zero.
    Polynomial antiderivative() const
    {
        std::vector<double> a(c_.size() + 1, 0.0);
        for (std::size_t k = 0; k < c_.size(); ++k)
            a[k + 1] = c_[k] / static_cast<double>(k + 1);
        return Polynomial(std::move(a));
    }

    friend Polynomial operator+(Polynomial const& a, Polynomial const& b)
    {
        std::vector<double> s(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t k = 0; k < a.c_.size(); ++k)
            s[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k)
            s[k] += b.c_[k];
        return Polynomial(std::move(s));
    }

    friend Polynomial operator*(double s, Polynomial const& p)
    {
        std::vector<double> r(p.c_);
        for (auto& v : r)
            v *= s;
        return Polynomial(std::move(r));
    }

  private:
    std::vector<double> c_;

    void trim()
    {
        while (!c_.empty() && c_.back() == 0.0)
            c_.pop_back();
    }
};

}  // namespace capflow

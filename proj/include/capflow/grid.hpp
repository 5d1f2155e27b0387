#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "flux_model.hpp"

namespace capflow
{
//---------------------------------------------------------------------------//
/*!
 * Uniform partition of [x_min, x_max] with x = 0 on a cell face.
 *
 * Faces are numbered 0..n_cells; cell j lies between faces j and j+1. Cells
 * left of the interface face belong to medium 1.
 */
class Grid
{
  public:
    Grid(double x_min, double x_max, std::size_t n_cells)
        : x_min_(x_min), x_max_(x_max), n_(n_cells)
    {
        if (!(x_min < 0.0 && 0.0 < x_max))
            throw DomainError("grid must satisfy x_min < 0 < x_max");
        if (n_cells < 2 || n_cells % 2 != 0)
            throw DomainError("grid needs an even number of cells >= 2");
        dx_ = (x_max - x_min) / static_cast<double>(n_cells);
        double const k = -x_min / dx_;
        double const k_round = std::round(k);
        if (std::abs(k - k_round) > 1e-9 * std::max(1.0, k))
        {
            std::ostringstream os;
            os << "x = 0 does not fall on a cell face (face index " << k << ")";
            throw DomainError(os.str());
        }
        interface_ = static_cast<std::size_t>(k_round);
        if (interface_ == 0 || interface_ == n_cells)
            throw DomainError("interface face must be interior");
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t n_cells() const noexcept { return n_; }
    std::size_t n_faces() const noexcept { return n_ + 1; }
    double dx() const noexcept { return dx_; }
    //! Face index located at x = 0.
    std::size_t interface_face() const noexcept { return interface_; }

    double face_x(std::size_t k) const noexcept
    {
        // Measured from the interface so that face_x(interface_face()) == 0.
        return (static_cast<double>(k) - static_cast<double>(interface_)) * dx_;
    }
    double cell_center(std::size_t j) const noexcept
    {
        return (static_cast<double>(j) - static_cast<double>(interface_) + 0.5)
               * dx_;
    }
    Side side_of_cell(std::size_t j) const noexcept
    {
        return j < interface_ ? Side::one : Side::two;
    }
    bool is_boundary_face(std::size_t k) const noexcept
    {
        return k == 0 || k == n_;
    }

    friend bool operator==(Grid const& a, Grid const& b) noexcept
    {
        return a.n_ == b.n_ && a.x_min_ == b.x_min_ && a.x_max_ == b.x_max_;
    }

  private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double dx_;
    std::size_t interface_;
};

//! Cell-averaged saturation at one time.
struct Field
{
    std::vector<double> values;
    double time = 0.0;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t j) const noexcept { return values[j]; }
    double& operator[](std::size_t j) noexcept { return values[j]; }
};

//! Fields at increasing times on a common grid.
struct Trajectory
{
    std::vector<Field> frames;

    Field const& initial() const { return frames.front(); }
    Field const& final() const { return frames.back(); }
};

//! Saturations must lie in [0,1] up to roundoff.
inline void validate_field(Grid const& grid, Field const& field)
{
    if (field.size() != grid.n_cells())
        throw GridMismatchError("field size does not match grid");
    for (std::size_t j = 0; j < field.size(); ++j)
    {
        double const v = field[j];
        if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
        {
            std::ostringstream os;
            os << "field value " << v << " outside [0,1] in cell " << j;
            throw DomainError(os.str());
        }
    }
}

//! Sample a function of x at the cell centers.
template<class F>
Field sample_cells(Grid const& grid, F&& u_of_x, double time = 0.0)
{
    Field f;
    f.time = time;
    f.values.resize(grid.n_cells());
    for (std::size_t j = 0; j < grid.n_cells(); ++j)
        f.values[j] = u_of_x(grid.cell_center(j));
    return f;
}

//! Cell averages of a function by midpoint sub-sampling.
template<class F>
Field average_cells(Grid const& grid,
                    F&& u_of_x,
                    std::size_t sub = 16,
                    double time = 0.0)
{
    Field f;
    f.time = time;
    f.values.resize(grid.n_cells());
    for (std::size_t j = 0; j < grid.n_cells(); ++j)
    {
        double const left = grid.face_x(j);
        double acc = 0.0;
        for (std::size_t s = 0; s < sub; ++s)
            acc += u_of_x(left + (static_cast<double>(s) + 0.5) * grid.dx()
                                     / static_cast<double>(sub));
        f.values[j] = acc / static_cast<double>(sub);
    }
    return f;
}

//! Piecewise constant field: value kappa_left for x < 0, kappa_right for x > 0.
inline Field two_state_field(Grid const& grid, double left, double right)
{
    Field f;
    f.values.resize(grid.n_cells());
    for (std::size_t j = 0; j < grid.n_cells(); ++j)
        f.values[j] = grid.side_of_cell(j) == Side::one ? left : right;
    return f;
}

}  // namespace capflow

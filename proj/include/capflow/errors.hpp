#pragma once

#include <stdexcept>
#include <string>

namespace capflow
{
//! Saturation or argument outside its admissible interval.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! A flux violates the structural hypotheses (decomposition, unimodality).
class StructuralError : public std::runtime_error
{
  public:
    StructuralError(std::string const& what, double u_a, double u_b)
        : std::runtime_error(what), u_a_(u_a), u_b_(u_b)
    {
    }
    explicit StructuralError(std::string const& what)
        : StructuralError(what, -1.0, -1.0)
    {
    }

    //! Sample pair that violated the hypothesis (-1 when not applicable).
    double sample_a() const noexcept { return u_a_; }
    double sample_b() const noexcept { return u_b_; }

  private:
    double u_a_;
    double u_b_;
};

//! Requested flux level is not attained by the flux.
class LevelError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Capillarity parameter outside the disjoint-graph regime.
class RegimeError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Time step exceeds the explicit stability bound.
class StabilityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Steady profile variant not available at the requested level.
class VariantError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Trajectories or fields that do not share a grid / sampling.
class GridMismatchError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace capflow

#pragma once

#include <concepts>

namespace capflow
{
//---------------------------------------------------------------------------//
/*!
 * Locate the transition point of a monotone predicate on [lo, hi].
 *
 * Requires pred(lo) == false and pred(hi) == true. Iterates until the bracket
 * cannot be split in double precision (well below the 1e-12 tolerance used
 * by callers) and returns the upper end, where the predicate holds. On a
 * plateau of the underlying function this is the leftmost point satisfying
 * the predicate.
 */
template<std::predicate<double> Pred>
double bisect_first_true(Pred&& pred, double lo, double hi)
{
    for (int iter = 0; iter < 200; ++iter)
    {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

//! Mirror of bisect_first_true: returns the last point where pred is false.
template<std::predicate<double> Pred>
double bisect_last_false(Pred&& pred, double lo, double hi)
{
    for (int iter = 0; iter < 200; ++iter)
    {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

//---------------------------------------------------------------------------//
/*!
 * Ternary search for the minimizer of a unimodal function on [lo, hi].
 *
 * Stops once the bracket is narrower than \c tol. Ties shrink the bracket
 * from both ends so flat regions terminate.
 */
template<std::invocable<double> F>
double ternary_minimize(F&& f, double lo, double hi, double tol)
{
    for (int iter = 0; iter < 500 && hi - lo > tol; ++iter)
    {
        double const m1 = lo + (hi - lo) / 3.0;
        double const m2 = hi - (hi - lo) / 3.0;
        double const f1 = f(m1);
        double const f2 = f(m2);
        if (f1 < f2)
            hi = m2;
        else if (f1 > f2)
            lo = m1;
        else
        {
            lo = m1;
            hi = m2;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace capflow

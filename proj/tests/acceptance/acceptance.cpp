// Acceptance suite: one PASS/FAIL line per criterion; exit code 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <capflow/capflow.hpp>
#include <capflow/harness/runner.hpp>

#include "test_support.hpp"

using namespace capflow;

namespace
{
struct Outcome
{
    bool pass = true;
    std::string detail;
};

using Criterion = std::function<Outcome()>;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

//---------------------------------------------------------------------------//
// 1. Single-medium Riemann convergence
Outcome riemann_convergence()
{
    struct Case
    {
        FluxSpec f;
        char const* name;
        double ul;
        double ur;
    };
    std::vector<Case> const cases{
        {test::flux_one(), "f1 0->1", 0.0, 1.0},   {test::flux_one(), "f1 1->0", 1.0, 0.0},
        {test::flux_one(), "f1 .2->.8", 0.2, 0.8}, {test::flux_two(), "f2 0->1", 0.0, 1.0},
        {test::flux_two(), "f2 1->0", 1.0, 0.0},   {test::flux_two(), "f2 .9->.1", 0.9, 0.1}};
    std::vector<std::size_t> const ns{512, 1024, 2048, 4096};
    double const t_end = 0.5;
    Outcome out;
    std::ostringstream os;
    os << "orders:";
    for (auto const& c : cases)
    {
        auto const pair = test::single_medium(c.f);
        RiemannFan const fan(c.f, c.ul, c.ur);
        std::vector<double> err;
        for (std::size_t n : ns)
        {
            Grid const g(-2.0, 2.0, n);
            HyperbolicConfig cfg;
            cfg.t_end = t_end;
            auto const tr = hyperbolic_solve(pair, g, two_state_field(g, c.ul, c.ur), cfg);
            err.push_back(l1_to_function(
                g, tr.final(), [&](double x) { return fan(x / t_end); }, 2.0));
        }
        for (std::size_t k = 1; k < err.size(); ++k)
            out.pass = out.pass && err[k] < err[k - 1];
        double const order = std::log(err.front() / err.back())
                             / std::log(static_cast<double>(ns.back()) / ns.front());
        out.pass = out.pass && order >= 0.5;
        os << ' ' << fmt(order);
    }
    out.detail = os.str();
    return out;
}

//---------------------------------------------------------------------------//
// 2. Steady-state fixpoints
Outcome steady_fixpoints()
{
    auto const pair = test::canonical_pair();
    Outcome out;
    double worst_step = 0.0;
    double worst_drift = 0.0;
    std::size_t states = 0;
    std::size_t fields = 0;

    Grid const gh(-2.0, 2.0, 256);
    double const dt = HyperbolicScheme(pair, gh).time_step(0.9);
    auto step_residual = [&](double l, double r) {
        Field const u = two_state_field(gh, l, r);
        Field const v = hyperbolic_step(pair, gh, u, dt);
        double w = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            w = std::max(w, std::abs(v[j] - u[j]));
        ++states;
        return w;
    };
    auto const opt = optimal_connection(pair);
    worst_step = std::max(worst_step, step_residual(opt.left_value, opt.right_value));

    Grid const gp(-4.0, 4.0, 1024);
    double const eps = 0.05;
    struct Level
    {
        Side side;
        double kappa;
    };
    std::vector<Level> levels;
    for (double k : {0.0, 0.02, 0.6, 0.8, 1.0})
        levels.push_back({Side::one, k});
    for (double k : {0.1, 1.0 / 6.0, 0.4, 0.8, 1.0})
        levels.push_back({Side::two, k});
    for (auto const& lv : levels)
    {
        for (auto const& s : reachable_limits(pair, lv.side, lv.kappa))
        {
            worst_step = std::max(worst_step, step_residual(s.left, s.right));
            double const z = pair.flux(lv.side)(lv.kappa);
            if (s.variant == SteadyVariant::under_under && z > 0.0)
                continue;
            Field const k = build_kappa_eps(pair, lv.side, lv.kappa, eps, gp, s.variant);
            ParabolicConfig cfg;
            cfg.eps = eps;
            cfg.t_end = 1.0;
            auto const res = parabolic_solve(pair, gp, k, cfg);
            worst_drift = std::max(
                worst_drift, l1_distance(gp, res.trajectory.final(), k,
                                         std::numeric_limits<double>::infinity())
                                 / cfg.t_end);
            ++fields;
        }
    }
    out.pass = worst_step <= 1e-12 && worst_drift <= 2e-3;
    out.detail = std::to_string(states) + " states, step residual " + fmt(worst_step) + "; "
                 + std::to_string(fields) + " fields, drift/time " + fmt(worst_drift);
    return out;
}

//---------------------------------------------------------------------------//
// 3. Entropy certification on a seeded suite
Outcome entropy_certification()
{
    auto const pair = test::canonical_pair();
    std::mt19937_64 rng(20240601);
    Grid const g(-2.0, 2.0, 512);
    Outcome out;
    double kr = 0.0;
    double ad = 0.0;
    double mass = 0.0;
    double prod = 0.0;
    double flux = 0.0;
    for (int i = 0; i < 20; ++i)
    {
        double const ul = harness::detail::uniform(rng);
        double const ur = harness::detail::uniform(rng);
        HyperbolicConfig cfg;
        cfg.t_end = 0.5;
        cfg.record_every_step = true;
        auto const tr = hyperbolic_solve(pair, g, two_state_field(g, ul, ur), cfg);
        auto const rep = certify_hyperbolic(tr, pair, g, 33);
        out.pass = out.pass && rep.pass();
        kr = std::max(kr, rep.worst_kruzkov_residual);
        ad = std::min(ad, rep.worst_adapted_residual);
        mass = std::max(mass, rep.mass_defect);
        prod = std::max(prod, std::abs(rep.undercompressivity_product));
        flux = std::max(flux, rep.flux_mismatch);
    }
    out.detail = "kruzkov " + fmt(kr) + ", adapted " + fmt(ad) + ", mass " + fmt(mass)
                 + ", |product| " + fmt(prod) + ", flux " + fmt(flux);
    return out;
}

//---------------------------------------------------------------------------//
// 4. L1 contraction with domain of dependence
Outcome contraction()
{
    auto const pair = test::canonical_pair();
    Grid const g(-4.0, 4.0, 512);
    double const C = pair.lipschitz();
    std::vector<double> times;
    for (int k = 1; k < 10; ++k)
        times.push_back(0.05 * k);
    Outcome out;
    double worst_h = -std::numeric_limits<double>::infinity();
    double worst_p = worst_h;
    for (std::size_t i = 0; i < 10; ++i)
    {
        auto rng = harness::detail::pair_rng(20240601, i);
        Field const a = average_cells(g, harness::detail::random_step_data(rng, 6));
        Field const b = average_cells(g, harness::detail::random_step_data(rng, 6));

        HyperbolicConfig hc;
        hc.t_end = 0.5;
        hc.output_times = times;
        auto const u = hyperbolic_solve(pair, g, a, hc);
        auto const v = hyperbolic_solve(pair, g, b, hc);
        for (double R : {0.5, 1.0})
            worst_h = std::max(worst_h, l1_comparison(u, v, g, R, C).worst);

        ParabolicConfig pc;
        pc.eps = 0.05;
        pc.t_end = 0.5;
        pc.output_times = times;
        auto const p = parabolic_solve(pair, g, a, pc);
        auto const q = parabolic_solve(pair, g, b, pc);
        worst_p = std::max(worst_p, l1_comparison(p.trajectory, q.trajectory, g, 4.0, C).worst);
    }
    out.pass = worst_h <= 1e-10 && worst_p <= 1e-10;
    out.detail = "worst slack hyperbolic " + fmt(worst_h) + ", parabolic " + fmt(worst_p);
    return out;
}

//---------------------------------------------------------------------------//
// 5 and 6. Vanishing capillarity sweep and a-priori estimates
struct SweepResult
{
    Outcome convergence;
    Outcome estimates;
};

SweepResult capillarity_sweep()
{
    auto const pair = test::canonical_pair();
    Grid const g(-4.0, 4.0, 4096);
    std::vector<double> times;
    for (int k = 1; k < 50; ++k)
        times.push_back(0.01 * k);
    std::vector<double> const eps{0.2, 0.1, 0.05, 0.025};
    struct Data
    {
        char const* name;
        std::function<double(double)> u0;
    };
    std::vector<Data> const data{
        {"dam_break", [](double x) { return x < 0.0 ? 1.0 : 0.0; }},
        {"box", [](double x) { return x > -1.5 && x < 1.0 ? 1.0 : 0.0; }},
        {"three_level", [](double x) { return x < -1.0 ? 0.8 : (x < 0.5 ? 0.3 : 0.6); }}};

    SweepResult res;
    std::ostringstream conv;
    std::ostringstream est;
    double flux_excess = -std::numeric_limits<double>::infinity();
    double energy_ratio = 0.0;
    double tv_ratio = 0.0;
    for (auto const& d : data)
    {
        Field const u0 = average_cells(g, d.u0);
        HyperbolicConfig hc;
        hc.t_end = 0.5;
        hc.output_times = times;
        auto const ref = hyperbolic_solve(pair, g, u0, hc);
        std::vector<double> err;
        double e0 = 0.0;
        double tv0 = 0.0;
        for (double e : eps)
        {
            ParabolicConfig pc;
            pc.eps = e;
            pc.t_end = 0.5;
            pc.output_times = times;
            auto const run = parabolic_solve(pair, g, smooth_initial_data(g, u0, e), pc);
            err.push_back(spacetime_l1(g, run.trajectory, g, ref, 2.0));
            auto const& diag = run.diagnostics;
            flux_excess = std::max(flux_excess, diag.flux_sup - diag.initial_flux_sup);
            double const energy = diag.energy[0] + diag.energy[1];
            if (e == eps.front())
            {
                e0 = energy;
                tv0 = diag.time_variation;
            }
            energy_ratio = std::max(energy_ratio, energy / e0);
            tv_ratio = std::max(tv_ratio, diag.time_variation / tv0);
        }
        bool dec = true;
        for (std::size_t k = 1; k < err.size(); ++k)
            dec = dec && err[k] < err[k - 1];
        bool const factor = err.front() >= 2.0 * err.back();
        res.convergence.pass = res.convergence.pass && dec && factor;
        conv << d.name << " [";
        for (std::size_t k = 0; k < err.size(); ++k)
            conv << (k ? " " : "") << fmt(err[k]);
        conv << "] ";
    }
    res.convergence.detail = conv.str();
    res.estimates.pass = flux_excess <= 1e-8 && energy_ratio <= 3.0 && tv_ratio <= 3.0;
    est << "flux_sup - initial " << fmt(flux_excess) << ", energy ratio " << fmt(energy_ratio)
        << ", variation ratio " << fmt(tv_ratio);
    res.estimates.detail = est.str();
    return res;
}

//---------------------------------------------------------------------------//
// 7. Negative controls
Outcome negative_controls()
{
    Outcome out;
    auto const f1 = test::flux_one();
    auto const single = test::single_medium(f1);
    Grid const g(-2.0, 2.0, 256);
    double const dt = HyperbolicScheme(single, g).time_step(0.9);
    Trajectory shock;
    for (int s = 0; s <= 40; ++s)
    {
        double const t = s * dt;
        shock.frames.push_back(
            average_cells(g, [t](double x) { return x < t ? 0.0 : 1.0; }, 16, t));
    }
    auto const levels = kappa_levels(33);
    double const kr = kruzkov_cell_residuals(shock, single, g, levels).worst;

    auto const pair = test::canonical_pair();
    HyperbolicConfig cfg;
    cfg.t_end = 0.5;
    cfg.record_every_step = true;
    auto tr = hyperbolic_solve(pair, g, two_state_field(g, 1.0, 0.0), cfg);
    double const clean = mass_conservation_check(tr, pair, g);
    tr.frames[tr.frames.size() / 2].values[100] += 1e-6;
    double const dirty = mass_conservation_check(tr, pair, g);

    out.pass = kr > 1e-12 && clean <= 1e-12 && dirty > 1e-12;
    out.detail = "expansion shock residual " + fmt(kr) + "; mass defect clean " + fmt(clean)
                 + ", perturbed " + fmt(dirty);
    return out;
}

}  // namespace

int main()
{
    bool all = true;
    auto report = [&](int id, char const* name, Outcome const& o, double seconds) {
        std::printf("[%s] criterion %d: %s (%s) [%.1f s]\n", o.pass ? "PASS" : "FAIL", id,
                    name, o.detail.c_str(), seconds);
        std::fflush(stdout);
        all = all && o.pass;
    };
    auto timed = [](auto&& fn) {
        auto const start = std::chrono::steady_clock::now();
        auto result = fn();
        double const s
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return std::pair{result, s};
    };

    auto [c1, t1] = timed(riemann_convergence);
    report(1, "single-medium Riemann convergence", c1, t1);
    auto [c2, t2] = timed(steady_fixpoints);
    report(2, "steady-state fixpoints", c2, t2);
    auto [c3, t3] = timed(entropy_certification);
    report(3, "entropy certification", c3, t3);
    auto [c4, t4] = timed(contraction);
    report(4, "L1 contraction", c4, t4);
    auto [c56, t5] = timed(capillarity_sweep);
    report(5, "vanishing capillarity convergence", c56.convergence, t5);
    report(6, "a-priori estimates along the sweep", c56.estimates, 0.0);
    auto [c7, t7] = timed(negative_controls);
    report(7, "negative controls", c7, t7);
    return all ? 0 : 1;
}

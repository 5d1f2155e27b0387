#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../capflow.hpp"
#include "config.hpp"

namespace capflow::harness
{
//---------------------------------------------------------------------------//
// REPORT TYPES
//---------------------------------------------------------------------------//
//! One solver run; ids are assigned in submission order ("r000", ...).
struct RunRecord
{
    std::size_t index = 0;
    std::string id;
    std::string label;
    ordered_json params = ordered_json::object();
    ordered_json metrics = ordered_json::object();
    bool ok = true;
    std::string error;
    double wall_seconds = 0.0;

    //! Cell centers and frames for the profiles CSV.
    std::vector<double> x;
    Trajectory profile;
    std::optional<DiagnosticsRecord> diagnostics;
    std::optional<EntropyReport> entropy;
};

//! Row of errors.csv: resolution key (eps or n_cells) against an L1 error.
struct ErrorRow
{
    std::string run_id;
    std::string label;
    std::string key_name;
    double key = 0.0;
    double l1_error = 0.0;
    std::optional<double> order;
};

struct Verdict
{
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentReport
{
    std::string name;
    std::string kind;
    std::uint64_t seed = 0;
    json config;
    std::vector<RunRecord> runs;
    std::vector<ErrorRow> errors;
    std::vector<Verdict> verdicts;

    bool empty() const noexcept { return runs.empty(); }
    bool runs_ok() const
    {
        return std::all_of(runs.begin(), runs.end(),
                           [](RunRecord const& r) { return r.ok; });
    }
    bool checks_pass() const
    {
        return std::all_of(verdicts.begin(), verdicts.end(),
                           [](Verdict const& v) { return v.pass; });
    }
};

//---------------------------------------------------------------------------//
// HELPERS
//---------------------------------------------------------------------------//
namespace detail
{
inline std::string run_id(std::size_t i)
{
    std::ostringstream os;
    os << 'r';
    os.width(3);
    os.fill('0');
    os << i;
    return os.str();
}

//! Output times k dt in (0, t_end).
inline std::vector<double> output_times(double t_end, double interval)
{
    std::vector<double> out;
    for (std::size_t k = 1;; ++k)
    {
        double const t = static_cast<double>(k) * interval;
        if (t >= t_end - 1e-12)
            break;
        out.push_back(t);
    }
    return out;
}

inline std::vector<double> cell_centers(Grid const& g)
{
    std::vector<double> x(g.n_cells());
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = g.cell_center(j);
    return x;
}

/*!
 * Runs tasks on up to \c threads workers. Results stay in submission order;
 * an exception aborts only its own run.
 */
inline void run_parallel(std::vector<RunRecord>& runs,
                         std::vector<std::function<void(RunRecord&)>> const& tasks,
                         std::size_t threads)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
        {
            auto const start = std::chrono::steady_clock::now();
            try
            {
                tasks[i](runs[i]);
            }
            catch (std::exception const& e)
            {
                runs[i].ok = false;
                runs[i].error = e.what();
            }
            runs[i].wall_seconds = std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - start)
                                       .count();
        }
    };
    std::size_t const n = std::max<std::size_t>(1, std::min(threads, tasks.size()));
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < n; ++k)
        pool.emplace_back(worker);
    worker();
}

//! Appends records for a batch and runs it.
class Batch
{
  public:
    Batch(ExperimentReport& report, std::size_t threads)
        : report_(&report), threads_(threads)
    {
    }

    RunRecord& add(std::string label, std::function<void(RunRecord&)> task)
    {
        RunRecord r;
        r.index = report_->runs.size() + pending_.size();
        r.id = run_id(r.index);
        r.label = std::move(label);
        pending_.push_back(std::move(r));
        tasks_.push_back(std::move(task));
        return pending_.back();
    }

    //! Runs the batch; returns the index of its first record in the report.
    std::size_t run()
    {
        run_parallel(pending_, tasks_, threads_);
        std::size_t const first = report_->runs.size();
        for (auto& r : pending_)
            report_->runs.push_back(std::move(r));
        pending_.clear();
        tasks_.clear();
        return first;
    }

  private:
    ExperimentReport* report_;
    std::size_t threads_;
    std::vector<RunRecord> pending_;
    std::vector<std::function<void(RunRecord&)>> tasks_;
};

inline double uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/*!
 * Random step data: \c pieces constant pieces on [-1, 1] with random breaks
 * and levels, and 0.5 + 0.5 sin(7x) outside.
 */
inline std::function<double(double)> random_step_data(std::mt19937_64& rng,
                                                      std::size_t pieces)
{
    std::vector<double> breaks(pieces - 1);
    for (double& b : breaks)
        b = -1.0 + 2.0 * uniform(rng);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> levels(pieces);
    for (double& v : levels)
        v = uniform(rng);
    return [breaks, levels](double x) {
        if (x < -1.0 || x > 1.0)
            return 0.5 + 0.5 * std::sin(7.0 * x);
        std::size_t k = 0;
        while (k < breaks.size() && x >= breaks[k])
            ++k;
        return levels[k];
    };
}

//! Per-pair generator, independent of scheduling.
inline std::mt19937_64 pair_rng(std::uint64_t seed, std::size_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

inline double total_energy(DiagnosticsRecord const& d)
{
    return d.energy[0] + d.energy[1];
}

inline void keep_profile(RunRecord& r, ExperimentConfig const& cfg, Grid const& g,
                         Trajectory const& traj)
{
    if (!cfg.diagnostics.profiles)
        return;
    r.x = cell_centers(g);
    r.profile = traj;
}

inline std::string describe_failures(ExperimentReport const& rep,
                                     std::size_t first,
                                     std::size_t last)
{
    std::ostringstream os;
    for (std::size_t i = first; i < last; ++i)
        if (!rep.runs[i].ok)
            os << rep.runs[i].id << ": " << rep.runs[i].error << "; ";
    return os.str();
}

//---------------------------------------------------------------------------//
// EXPERIMENT KINDS
//---------------------------------------------------------------------------//
inline void run_riemann(ExperimentConfig const& cfg,
                        MediumPair const& pair,
                        ExperimentReport& rep,
                        std::size_t threads)
{
    bool const oracle = cfg.single_medium();
    auto const& ns = cfg.grid.n_cells;
    double const R = cfg.diagnostics.radius;
    auto const times = output_times(cfg.solver.t_end, cfg.solver.output_interval);
    Batch batch(rep, threads);
    // Final fields for self-convergence when no exact oracle exists.
    auto finals = std::make_shared<std::vector<Field>>(cfg.initial.size() * ns.size());

    for (std::size_t c = 0; c < cfg.initial.size(); ++c)
        for (std::size_t k = 0; k < ns.size(); ++k)
        {
            auto& r = batch.add(cfg.initial[c].label, [&, c, k, finals](RunRecord& r) {
                Grid const g(cfg.grid.x_min, cfg.grid.x_max, ns[k]);
                Field const u0 = average_cells(g, cfg.initial[c]);
                HyperbolicConfig hc;
                hc.cfl = cfg.solver.cfl;
                hc.t_end = cfg.solver.t_end;
                hc.output_times = times;
                auto const traj = hyperbolic_solve(pair, g, u0, hc);
                (*finals)[c * ns.size() + k] = traj.final();
                if (oracle && cfg.initial[c].type == InitialData::Type::riemann)
                {
                    RiemannFan const fan(pair.first().flux(), cfg.initial[c].left,
                                         cfg.initial[c].right);
                    double const t = cfg.solver.t_end;
                    r.metrics["l1_error"] = l1_to_function(
                        g, traj.final(), [&fan, t](double x) { return fan(x / t); }, R);
                }
                auto const [c1, c2] = interface_traces(g, traj.final());
                r.metrics["interface_left"] = c1;
                r.metrics["interface_right"] = c2;
                keep_profile(r, cfg, g, traj);
            });
            r.params["solver"] = "hyperbolic";
            r.params["n_cells"] = ns[k];
            r.params["case"] = cfg.initial[c].label;
        }
    std::size_t const first = batch.run();

    // Error table: exact oracle, or distance to the finest run of the case.
    bool orders_ok = true;
    bool errors_ok = true;
    std::ostringstream detail_os;
    for (std::size_t c = 0; c < cfg.initial.size(); ++c)
    {
        std::vector<ErrorRow> rows;
        for (std::size_t k = 0; k < ns.size(); ++k)
        {
            auto const& r = rep.runs[first + c * ns.size() + k];
            if (!r.ok)
            {
                errors_ok = false;
                continue;
            }
            ErrorRow row{r.id, r.label, "n_cells", static_cast<double>(ns[k]), 0.0, {}};
            if (r.metrics.contains("l1_error"))
                row.l1_error = r.metrics["l1_error"].get<double>();
            else
            {
                if (k + 1 == ns.size())
                    continue;
                auto const& fine_run = rep.runs[first + c * ns.size() + ns.size() - 1];
                if (!fine_run.ok)
                    continue;
                Grid const g(cfg.grid.x_min, cfg.grid.x_max, ns[k]);
                Grid const gf(cfg.grid.x_min, cfg.grid.x_max, ns.back());
                row.l1_error = l1_distance(g, (*finals)[c * ns.size() + k], gf,
                                           (*finals)[c * ns.size() + ns.size() - 1], R);
                row.key_name = "n_cells_vs_finest";
            }
            if (!rows.empty() && rows.back().l1_error > 0.0 && row.l1_error > 0.0)
                row.order = std::log(rows.back().l1_error / row.l1_error)
                            / std::log(row.key / rows.back().key);
            rows.push_back(row);
        }
        if (rows.size() >= 2)
        {
            double const overall = std::log(rows.front().l1_error / rows.back().l1_error)
                                   / std::log(rows.back().key / rows.front().key);
            detail_os << rows.front().label << ": order " << overall << "; ";
            if (!(overall >= cfg.diagnostics.tol.min_order))
                orders_ok = false;
        }
        for (auto& row : rows)
            rep.errors.push_back(row);
    }
    if (!errors_ok)
        rep.verdicts.push_back({"runs", false, describe_failures(rep, first, rep.runs.size())});
    if (!rep.errors.empty())
        rep.verdicts.push_back({"convergence_order", orders_ok, detail_os.str()});

    if (!cfg.diagnostics.entropy)
        return;
    std::size_t const ne = cfg.diagnostics.entropy_cells;
    for (std::size_t c = 0; c < cfg.initial.size(); ++c)
    {
        auto& r = batch.add(cfg.initial[c].label, [&, c, ne](RunRecord& r) {
            Grid const g(cfg.grid.x_min, cfg.grid.x_max, ne);
            HyperbolicConfig hc;
            hc.cfl = cfg.solver.cfl;
            hc.t_end = cfg.solver.t_end;
            hc.record_every_step = true;
            auto const traj = hyperbolic_solve(pair, g, average_cells(g, cfg.initial[c]), hc);
            auto rpt = certify_hyperbolic(traj, pair, g, cfg.diagnostics.kappa_levels);
            auto const& t = cfg.diagnostics.tol;
            rpt.kruzkov_tol = t.kruzkov;
            rpt.adapted_tol = t.adapted;
            rpt.undercompressive_tol = t.undercompressive;
            rpt.flux_tol = t.flux;
            rpt.mass_tol = t.mass;
            r.metrics["entropy_pass"] = rpt.pass();
            r.entropy = rpt;
        });
        r.params["solver"] = "hyperbolic_certify";
        r.params["n_cells"] = ne;
        r.params["case"] = cfg.initial[c].label;
    }
    std::size_t const first_e = batch.run();
    bool pass = true;
    for (std::size_t i = first_e; i < rep.runs.size(); ++i)
        pass = pass && rep.runs[i].ok && rep.runs[i].entropy && rep.runs[i].entropy->pass();
    rep.verdicts.push_back(
        {"entropy_certification", pass, describe_failures(rep, first_e, rep.runs.size())});
}

inline void run_eps_sweep(ExperimentConfig const& cfg,
                          MediumPair const& pair,
                          ExperimentReport& rep,
                          std::size_t threads)
{
    std::size_t const n = cfg.grid.n_cells.front();
    std::size_t const n_ref
        = cfg.solver.reference_cells ? cfg.solver.reference_cells : n;
    Grid const g(cfg.grid.x_min, cfg.grid.x_max, n);
    Grid const g_ref(cfg.grid.x_min, cfg.grid.x_max, n_ref);
    double const R = cfg.diagnostics.radius;
    auto const times = output_times(cfg.solver.t_end, cfg.solver.output_interval);
    std::size_t const nc = cfg.initial.size();
    auto refs = std::make_shared<std::vector<Trajectory>>(nc);

    Batch batch(rep, threads);
    for (std::size_t c = 0; c < nc; ++c)
    {
        auto& r = batch.add(cfg.initial[c].label, [&, c, refs](RunRecord& r) {
            HyperbolicConfig hc;
            hc.cfl = cfg.solver.cfl;
            hc.t_end = cfg.solver.t_end;
            hc.output_times = times;
            (*refs)[c] = hyperbolic_solve(pair, g_ref, average_cells(g_ref, cfg.initial[c]), hc);
            keep_profile(r, cfg, g_ref, (*refs)[c]);
        });
        r.params["solver"] = "hyperbolic_reference";
        r.params["n_cells"] = n_ref;
        r.params["case"] = cfg.initial[c].label;
    }
    std::size_t const first_ref = batch.run();

    auto const& eps = cfg.solver.eps;
    for (std::size_t c = 0; c < nc; ++c)
        for (double e : eps)
        {
            auto& r = batch.add(cfg.initial[c].label, [&, c, e, refs, first_ref](RunRecord& r) {
                if (!rep.runs[first_ref + c].ok)
                    throw std::runtime_error("hyperbolic reference failed");
                Field u0 = average_cells(g, cfg.initial[c]);
                if (cfg.solver.smooth_initial_data)
                {
                    auto const s = smooth_initial_data_alpha(g, u0, e);
                    u0 = s.field;
                    r.metrics["alpha"] = s.alpha;
                }
                ParabolicConfig pc;
                pc.eps = e;
                pc.cfl = cfg.solver.cfl;
                pc.t_end = cfg.solver.t_end;
                pc.output_times = times;
                auto res = parabolic_solve(pair, g, u0, pc);
                double const d = spacetime_l1(g, res.trajectory, g_ref, (*refs)[c], R);
                auto const& dg = res.diagnostics;
                r.metrics["l1_error"] = d;
                r.metrics["flux_sup"] = dg.flux_sup;
                r.metrics["initial_flux_sup"] = dg.initial_flux_sup;
                r.metrics["energy_total"] = total_energy(dg);
                r.metrics["time_variation"] = dg.time_variation;
                keep_profile(r, cfg, g, res.trajectory);
                r.diagnostics = std::move(res.diagnostics);
                if (!cfg.diagnostics.interface_series)
                    r.diagnostics->interface_series.clear();
            });
            r.params["solver"] = "parabolic";
            r.params["n_cells"] = n;
            r.params["eps"] = e;
            r.params["case"] = cfg.initial[c].label;
        }
    std::size_t const first = batch.run();

    bool runs_ok = true;
    bool decreasing = true;
    bool factor_ok = true;
    bool flux_ok = true;
    bool bounded = true;
    std::ostringstream dec, fac, bnd;
    double const gf = cfg.diagnostics.growth_factor;
    for (std::size_t c = 0; c < nc; ++c)
    {
        std::vector<double> err;
        RunRecord const* base = nullptr;
        for (std::size_t k = 0; k < eps.size(); ++k)
        {
            auto const& r = rep.runs[first + c * eps.size() + k];
            if (!r.ok)
            {
                runs_ok = false;
                continue;
            }
            double const e = r.metrics["l1_error"].get<double>();
            rep.errors.push_back({r.id, r.label, "eps", eps[k], e, {}});
            if (!err.empty() && !(e < err.back()))
                decreasing = false;
            err.push_back(e);
            auto const& d = *r.diagnostics;
            if (!(d.flux_sup <= d.initial_flux_sup + cfg.diagnostics.tol.flux_bound))
            {
                flux_ok = false;
                bnd << r.id << " flux_sup " << d.flux_sup << "; ";
            }
            if (!base)
                base = &r;
            else if (total_energy(d) > gf * total_energy(*base->diagnostics)
                     || d.time_variation > gf * base->diagnostics->time_variation)
            {
                bounded = false;
                bnd << r.id << " energy/variation exceed bound; ";
            }
        }
        dec << cfg.initial[c].label << ":";
        for (double e : err)
            dec << ' ' << e;
        dec << "; ";
        if (err.size() >= 2)
        {
            fac << cfg.initial[c].label << ": " << err.front() / err.back() << "; ";
            if (!(err.front() >= 2.0 * err.back()))
                factor_ok = false;
        }
    }
    if (!runs_ok)
        rep.verdicts.push_back({"runs", false, describe_failures(rep, first_ref, rep.runs.size())});
    rep.verdicts.push_back({"l1_strictly_decreasing", decreasing && runs_ok, dec.str()});
    rep.verdicts.push_back({"decrease_factor_2", factor_ok && runs_ok, fac.str()});
    rep.verdicts.push_back({"flux_maximum_principle", flux_ok, bnd.str()});
    rep.verdicts.push_back({"energy_variation_bounded", bounded, bnd.str()});
}

inline void run_steady(ExperimentConfig const& cfg,
                       MediumPair const& pair,
                       ExperimentReport& rep,
                       std::size_t threads)
{
    Grid const g(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_cells.front());
    auto const& sc = cfg.steady;
    Batch batch(rep, threads);
    auto fixpoint = [&](double left, double right) {
        Field const u = two_state_field(g, left, right);
        double const dt = HyperbolicScheme(pair, g).time_step(cfg.solver.cfl);
        Field const v = hyperbolic_step(pair, g, u, dt);
        double worst = 0.0;
        for (std::size_t j = 0; j < g.n_cells(); ++j)
            worst = std::max(worst, std::abs(v[j] - u[j]));
        return worst;
    };
    {
        auto& r = batch.add("kappa_opt", [&](RunRecord& r) {
            auto const opt = optimal_connection(pair);
            r.metrics["left"] = opt.left_value;
            r.metrics["right"] = opt.right_value;
            r.metrics["hyperbolic_residual"] = fixpoint(opt.left_value, opt.right_value);
        });
        r.params["solver"] = "hyperbolic_step";
    }
    for (double kappa : sc.kappas)
    {
        std::ostringstream label;
        label << "kappa_" << kappa;
        auto& r = batch.add(label.str(), [&, kappa](RunRecord& r) {
            double worst = 0.0;
            ordered_json states = ordered_json::array();
            for (auto const& s : reachable_limits(pair, sc.side, kappa))
            {
                double const res = fixpoint(s.left, s.right);
                worst = std::max(worst, res);
                states.push_back({{"variant", std::string(to_string(s.variant))},
                                  {"left", s.left},
                                  {"right", s.right},
                                  {"optimal", s.optimal},
                                  {"residual", res}});
            }
            r.metrics["reachable"] = states;
            r.metrics["hyperbolic_residual"] = worst;

            Field const k = build_kappa_eps(pair, sc.side, kappa, sc.eps, g, sc.variant);
            ParabolicConfig pc;
            pc.eps = sc.eps;
            pc.cfl = cfg.solver.cfl;
            pc.t_end = sc.horizon;
            auto const res = parabolic_solve(pair, g, k, pc);
            double const drift = l1_distance(g, res.trajectory.final(), k,
                                             std::numeric_limits<double>::infinity())
                                 / sc.horizon;
            r.metrics["parabolic_drift"] = drift;
            keep_profile(r, cfg, g, res.trajectory);
        });
        r.params["solver"] = "steady";
        r.params["side"] = sc.side == Side::one ? 1 : 2;
        r.params["kappa"] = kappa;
        r.params["variant"] = std::string(to_string(sc.variant));
        r.params["eps"] = sc.eps;
        r.params["n_cells"] = g.n_cells();
    }
    std::size_t const first = batch.run();

    bool fix_ok = true;
    bool drift_ok = true;
    std::ostringstream os;
    for (std::size_t i = first; i < rep.runs.size(); ++i)
    {
        auto const& r = rep.runs[i];
        if (!r.ok)
        {
            fix_ok = drift_ok = false;
            os << r.id << ": " << r.error << "; ";
            continue;
        }
        double const res = r.metrics["hyperbolic_residual"].get<double>();
        fix_ok = fix_ok && res <= cfg.diagnostics.tol.steady_residual;
        if (r.metrics.contains("parabolic_drift"))
        {
            double const d = r.metrics["parabolic_drift"].get<double>();
            drift_ok = drift_ok && d <= cfg.diagnostics.tol.steady_drift;
            rep.errors.push_back({r.id, r.label, "kappa", r.params["kappa"].get<double>(), d, {}});
        }
    }
    rep.verdicts.push_back({"hyperbolic_fixpoints", fix_ok, os.str()});
    rep.verdicts.push_back({"parabolic_drift", drift_ok, os.str()});
}

inline void run_contraction(ExperimentConfig const& cfg,
                            MediumPair const& pair,
                            ExperimentReport& rep,
                            std::size_t threads)
{
    Grid const g(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_cells.front());
    auto const& cc = cfg.contraction;
    auto const times = output_times(cfg.solver.t_end, cfg.solver.output_interval);
    double const C = pair.lipschitz();
    Batch batch(rep, threads);
    for (std::size_t i = 0; i < cc.pairs; ++i)
    {
        auto rng = pair_rng(cfg.seed, i);
        auto const a = random_step_data(rng, cc.pieces);
        auto const b = random_step_data(rng, cc.pieces);
        std::string const label = "pair_" + std::to_string(i);
        if (cc.hyperbolic)
        {
            auto& r = batch.add(label, [&, a, b](RunRecord& r) {
                HyperbolicConfig hc;
                hc.cfl = cfg.solver.cfl;
                hc.t_end = cfg.solver.t_end;
                hc.output_times = times;
                auto const u = hyperbolic_solve(pair, g, average_cells(g, a), hc);
                auto const v = hyperbolic_solve(pair, g, average_cells(g, b), hc);
                auto const s = l1_comparison(u, v, g, cc.radius, C);
                r.metrics["slack"] = s.worst;
                r.metrics["frame"] = s.frame;
            });
            r.params["solver"] = "hyperbolic";
            r.params["pair"] = i;
            r.params["radius"] = cc.radius;
            r.params["C"] = C;
        }
        if (cc.parabolic)
        {
            // No finite speed of propagation: compare on the whole line.
            double const whole = std::max(-cfg.grid.x_min, cfg.grid.x_max);
            auto& r = batch.add(label, [&, a, b, whole](RunRecord& r) {
                ParabolicConfig pc;
                pc.eps = cfg.solver.eps.front();
                pc.cfl = cfg.solver.cfl;
                pc.t_end = cfg.solver.t_end;
                pc.output_times = times;
                auto const u = parabolic_solve(pair, g, average_cells(g, a), pc);
                auto const v = parabolic_solve(pair, g, average_cells(g, b), pc);
                auto const s = l1_comparison(u.trajectory, v.trajectory, g, whole, C);
                r.metrics["slack"] = s.worst;
                r.metrics["frame"] = s.frame;
            });
            r.params["solver"] = "parabolic";
            r.params["pair"] = i;
            r.params["eps"] = cfg.solver.eps.front();
            r.params["radius"] = whole;
            r.params["C"] = C;
        }
    }
    std::size_t const first = batch.run();
    bool pass = true;
    std::ostringstream os;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = first; i < rep.runs.size(); ++i)
    {
        auto const& r = rep.runs[i];
        if (!r.ok)
        {
            pass = false;
            os << r.id << ": " << r.error << "; ";
            continue;
        }
        double const s = r.metrics["slack"].get<double>();
        worst = std::max(worst, s);
        pass = pass && s <= cfg.diagnostics.tol.comparison;
    }
    os << "worst slack " << worst;
    rep.verdicts.push_back({"l1_contraction", pass, os.str()});
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Runs every member of an experiment. Solver errors are recorded on their
 * run; the report is assembled in run-id order.
 */
inline ExperimentReport run_experiment(ExperimentConfig const& cfg, std::size_t threads = 1)
{
    ExperimentReport rep;
    rep.name = cfg.name;
    rep.kind = to_string(cfg.kind);
    rep.seed = cfg.seed;
    rep.config = cfg.echo;
    MediumPair const pair = cfg.build_pair();
    switch (cfg.kind)
    {
        case ExperimentKind::riemann:
            detail::run_riemann(cfg, pair, rep, threads);
            break;
        case ExperimentKind::eps_sweep:
            detail::run_eps_sweep(cfg, pair, rep, threads);
            break;
        case ExperimentKind::steady:
            detail::run_steady(cfg, pair, rep, threads);
            break;
        case ExperimentKind::contraction:
            detail::run_contraction(cfg, pair, rep, threads);
            break;
    }
    return rep;
}

}  // namespace capflow::harness

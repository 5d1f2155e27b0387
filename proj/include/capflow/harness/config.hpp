#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "../connections.hpp"
#include "../flux_model.hpp"
#include "../grid.hpp"
#include "../polynomial.hpp"

namespace capflow::harness
{
using nlohmann::json;
using nlohmann::ordered_json;

//---------------------------------------------------------------------------//
// CONFIG TYPES
//---------------------------------------------------------------------------//
enum class ExperimentKind
{
    riemann,
    eps_sweep,
    steady,
    contraction
};

inline std::string to_string(ExperimentKind k)
{
    switch (k)
    {
        case ExperimentKind::riemann:
            return "riemann";
        case ExperimentKind::eps_sweep:
            return "eps_sweep";
        case ExperimentKind::steady:
            return "steady";
        case ExperimentKind::contraction:
            return "contraction";
    }
    return "?";
}

//! Flux f = q r + gamma lambda with polynomial r and lambda (ascending coefficients).
struct FluxConfig
{
    double q = 1.0;
    double gamma = 0.0;
    std::vector<double> r;
    std::vector<double> lambda;

    FluxSpec build() const
    {
        return FluxSpec(q, gamma, Polynomial(r), Polynomial(lambda));
    }
};

struct MediumConfig
{
    FluxConfig flux;
    double capillary_level = 0.0;
};

/*!
 * Initial data: a Riemann pair, a piecewise constant list, or a named profile.
 *
 * Piecewise data has values.size() == breaks.size() + 1 with increasing
 * breaks. Named profiles: dam_break (1 for x < 0), box (1 on (-1.5, 1)) and
 * three_level (0.8 / 0.3 / 0.6 with breaks -1 and 0.5).
 */
struct InitialData
{
    enum class Type
    {
        riemann,
        piecewise,
        profile
    };
    Type type = Type::riemann;
    double left = 1.0;
    double right = 0.0;
    std::vector<double> breaks;
    std::vector<double> values;
    std::string profile;
    std::string label;

    double operator()(double x) const
    {
        switch (type)
        {
            case Type::riemann:
                return x < 0.0 ? left : right;
            case Type::piecewise: {
                std::size_t k = 0;
                while (k < breaks.size() && x >= breaks[k])
                    ++k;
                return values[k];
            }
            case Type::profile:
                if (profile == "dam_break")
                    return x < 0.0 ? 1.0 : 0.0;
                if (profile == "box")
                    return x > -1.5 && x < 1.0 ? 1.0 : 0.0;
                // three_level
                return x < -1.0 ? 0.8 : (x < 0.5 ? 0.3 : 0.6);
        }
        return 0.0;
    }
};

struct GridConfig
{
    double x_min = -2.0;
    double x_max = 2.0;
    //! Riemann runs refine over the whole list; other kinds use the first.
    std::vector<std::size_t> n_cells{512};
};

struct SolverConfig
{
    double cfl = 0.9;
    double t_end = 0.5;
    double output_interval = 0.05;
    std::vector<double> eps;
    bool smooth_initial_data = true;
    //! Cells of the hyperbolic reference of an eps sweep (0: same grid).
    std::size_t reference_cells = 0;
};

struct Tolerances
{
    double kruzkov = 1e-12;
    double adapted = 1e-8;
    double undercompressive = 1e-6;
    double flux = 1e-3;
    double mass = 1e-12;
    double comparison = 1e-10;
    double steady_residual = 1e-12;
    double steady_drift = 2e-3;
    double flux_bound = 1e-8;
    double min_order = 0.5;
};

struct DiagnosticsConfig
{
    bool entropy = true;
    bool profiles = true;
    bool interface_series = true;
    //! Half-width of the L1 window |x| <= radius.
    double radius = 2.0;
    std::size_t kappa_levels = 33;
    //! Grid used for every-step entropy certification.
    std::size_t entropy_cells = 256;
    //! Bound factor for energy and time variation against the first eps.
    double growth_factor = 3.0;
    Tolerances tol;
};

struct SteadyConfig
{
    Side side = Side::two;
    std::vector<double> kappas;
    SteadyVariant variant = SteadyVariant::over_under;
    double eps = 0.05;
    double horizon = 1.0;
};

struct ContractionConfig
{
    std::size_t pairs = 10;
    double radius = 0.5;
    std::size_t pieces = 6;
    bool hyperbolic = true;
    bool parabolic = true;
};

struct ExperimentConfig
{
    std::string name = "experiment";
    ExperimentKind kind = ExperimentKind::riemann;
    MediumConfig medium1;
    MediumConfig medium2;
    bool allow_unvalidated_orientation = false;
    std::vector<InitialData> initial;
    GridConfig grid;
    SolverConfig solver;
    DiagnosticsConfig diagnostics;
    SteadyConfig steady;
    ContractionConfig contraction;
    std::uint64_t seed = 1;
    std::string output_dir;
    //! Parsed document, echoed into the report.
    json echo;

    MediumPair build_pair() const
    {
        return MediumPair(Medium(medium1.flux.build(), medium1.capillary_level),
                          Medium(medium2.flux.build(), medium2.capillary_level));
    }
    bool single_medium() const
    {
        return medium1.flux.q == medium2.flux.q
               && medium1.flux.gamma == medium2.flux.gamma
               && std::ranges::equal(Polynomial(medium1.flux.r).coefficients(),
                                     Polynomial(medium2.flux.r).coefficients())
               && std::ranges::equal(Polynomial(medium1.flux.lambda).coefficients(),
                                     Polynomial(medium2.flux.lambda).coefficients());
    }
};

//---------------------------------------------------------------------------//
// ERRORS
//---------------------------------------------------------------------------//
struct ConfigIssue
{
    std::string path;
    std::string message;
};

//! All violations found in a config, or a single syntax error.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<ConfigIssue> issues)
        : std::runtime_error(format(issues)), issues_(std::move(issues))
    {
    }
    ConfigError(std::string const& message, std::size_t line, std::size_t column)
        : std::runtime_error(syntax(message, line, column))
        , issues_{{"", what()}}
        , line_(line)
        , column_(column)
    {
    }

    std::vector<ConfigIssue> const& issues() const noexcept { return issues_; }
    bool is_syntax_error() const noexcept { return line_ > 0; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::vector<ConfigIssue> issues_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;

    static std::string format(std::vector<ConfigIssue> const& issues)
    {
        std::ostringstream os;
        os << issues.size() << " config error(s):";
        for (auto const& i : issues)
            os << "\n  " << (i.path.empty() ? "<root>" : i.path) << ": " << i.message;
        return os.str();
    }
    static std::string syntax(std::string const& m, std::size_t l, std::size_t c)
    {
        std::ostringstream os;
        os << "syntax error at line " << l << ", column " << c << ": " << m;
        return os.str();
    }
};

//---------------------------------------------------------------------------//
// PARSING
//---------------------------------------------------------------------------//
namespace detail
{
//! Field reader that records every violation instead of stopping.
class Reader
{
  public:
    explicit Reader(std::vector<ConfigIssue>& issues) : issues_(&issues) {}

    void fail(std::string const& path, std::string const& message)
    {
        issues_->push_back({path, message});
    }

    //! Object check plus unknown-key report.
    bool object(json const& j,
                std::string const& path,
                std::initializer_list<char const*> keys)
    {
        if (!j.is_object())
        {
            fail(path, "expected an object");
            return false;
        }
        std::set<std::string> const known(keys.begin(), keys.end());
        for (auto const& [k, v] : j.items())
            if (!known.count(k))
                fail(join(path, k), "unknown field");
        return true;
    }

    template<class Check>
    void number(json const& j,
                char const* key,
                std::string const& path,
                double& out,
                Check&& check,
                char const* requirement,
                bool required = false)
    {
        std::string const p = join(path, key);
        if (!j.contains(key))
        {
            if (required)
                fail(p, "missing required field");
            return;
        }
        auto const& v = j.at(key);
        if (!v.is_number())
        {
            fail(p, "expected a number");
            return;
        }
        double const x = v.get<double>();
        if (!std::isfinite(x) || !check(x))
        {
            fail(p, requirement);
            return;
        }
        out = x;
    }

    void number(json const& j, char const* key, std::string const& path, double& out,
                bool required = false)
    {
        number(j, key, path, out, [](double) { return true; }, "must be finite",
               required);
    }

    void positive(json const& j, char const* key, std::string const& path, double& out)
    {
        number(j, key, path, out, [](double x) { return x > 0.0; }, "must be positive");
    }

    void count(json const& j,
               char const* key,
               std::string const& path,
               std::size_t& out,
               std::size_t min_value = 1)
    {
        std::string const p = join(path, key);
        if (!j.contains(key))
            return;
        auto const& v = j.at(key);
        if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value))
        {
            fail(p, "expected an integer >= " + std::to_string(min_value));
            return;
        }
        out = v.get<std::size_t>();
    }

    void flag(json const& j, char const* key, std::string const& path, bool& out)
    {
        if (!j.contains(key))
            return;
        if (!j.at(key).is_boolean())
        {
            fail(join(path, key), "expected true or false");
            return;
        }
        out = j.at(key).get<bool>();
    }

    void text(json const& j, char const* key, std::string const& path, std::string& out)
    {
        if (!j.contains(key))
            return;
        if (!j.at(key).is_string())
        {
            fail(join(path, key), "expected a string");
            return;
        }
        out = j.at(key).get<std::string>();
    }

    //! Array of finite numbers (a scalar is accepted as a one-element list).
    bool numbers(json const& j,
                 char const* key,
                 std::string const& path,
                 std::vector<double>& out,
                 bool required = false)
    {
        std::string const p = join(path, key);
        if (!j.contains(key))
        {
            if (required)
                fail(p, "missing required field");
            return false;
        }
        json const& v = j.at(key);
        json const arr = v.is_array() ? v : json::array({v});
        std::vector<double> tmp;
        bool ok = true;
        for (std::size_t i = 0; i < arr.size(); ++i)
        {
            if (!arr[i].is_number() || !std::isfinite(arr[i].get<double>()))
            {
                fail(p + "[" + std::to_string(i) + "]", "expected a finite number");
                ok = false;
                continue;
            }
            tmp.push_back(arr[i].get<double>());
        }
        if (ok)
            out = std::move(tmp);
        return ok;
    }

    static std::string join(std::string const& path, std::string const& key)
    {
        return path.empty() ? key : path + "." + key;
    }

  private:
    std::vector<ConfigIssue>* issues_;
};

inline std::pair<std::size_t, std::size_t> line_column(std::string const& text,
                                                       std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i)
    {
        if (text[i] == '\n')
        {
            ++line;
            col = 1;
        }
        else
            ++col;
    }
    return {line, col};
}

inline void read_flux(Reader& rd, json const& j, std::string const& path, FluxConfig& f)
{
    if (!rd.object(j, path, {"q", "gamma", "r", "lambda"}))
        return;
    rd.number(j, "q", path, f.q, [](double x) { return x >= 0.0; }, "must be >= 0");
    rd.number(j, "gamma", path, f.gamma);
    rd.numbers(j, "r", path, f.r, true);
    rd.numbers(j, "lambda", path, f.lambda, true);
}

inline void read_medium(Reader& rd, json const& j, std::string const& path, MediumConfig& m)
{
    if (!rd.object(j, path, {"flux", "capillary_level"}))
        return;
    if (j.contains("flux"))
        read_flux(rd, j.at("flux"), Reader::join(path, "flux"), m.flux);
    else
        rd.fail(Reader::join(path, "flux"), "missing required field");
    rd.number(j, "capillary_level", path, m.capillary_level, true);
}

inline void read_initial(Reader& rd, json const& j, std::string const& path, InitialData& d)
{
    if (!rd.object(j, path, {"type", "left", "right", "breaks", "values", "name", "label"}))
        return;
    std::string type = "riemann";
    rd.text(j, "type", path, type);
    rd.text(j, "label", path, d.label);
    auto saturation = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (type == "riemann")
    {
        d.type = InitialData::Type::riemann;
        rd.number(j, "left", path, d.left, saturation, "must lie in [0,1]", true);
        rd.number(j, "right", path, d.right, saturation, "must lie in [0,1]", true);
        if (d.label.empty())
        {
            std::ostringstream os;
            os << "riemann_" << d.left << "_" << d.right;
            d.label = os.str();
        }
    }
    else if (type == "piecewise")
    {
        d.type = InitialData::Type::piecewise;
        rd.numbers(j, "breaks", path, d.breaks, true);
        if (rd.numbers(j, "values", path, d.values, true))
        {
            for (std::size_t i = 0; i < d.values.size(); ++i)
                if (!saturation(d.values[i]))
                    rd.fail(Reader::join(path, "values") + "[" + std::to_string(i) + "]",
                            "must lie in [0,1]");
            if (d.values.size() != d.breaks.size() + 1)
                rd.fail(Reader::join(path, "values"),
                        "needs exactly one more entry than breaks");
        }
        for (std::size_t i = 1; i < d.breaks.size(); ++i)
            if (!(d.breaks[i] > d.breaks[i - 1]))
                rd.fail(Reader::join(path, "breaks"), "must be strictly increasing");
        if (d.label.empty())
            d.label = "piecewise";
    }
    else if (type == "profile")
    {
        d.type = InitialData::Type::profile;
        rd.text(j, "name", path, d.profile);
        if (d.profile != "dam_break" && d.profile != "box" && d.profile != "three_level")
            rd.fail(Reader::join(path, "name"),
                    "unknown profile (dam_break, box, three_level)");
        if (d.label.empty())
            d.label = d.profile;
    }
    else
    {
        rd.fail(Reader::join(path, "type"), "unknown type (riemann, piecewise, profile)");
    }
}

//! Constructs the media to surface structural errors as config issues.
inline void check_media(Reader& rd, ExperimentConfig const& cfg)
{
    bool built = true;
    for (int i = 0; i < 2; ++i)
    {
        auto const& m = i == 0 ? cfg.medium1 : cfg.medium2;
        std::string const path = i == 0 ? "media.medium1.flux" : "media.medium2.flux";
        if (m.flux.r.empty() || m.flux.lambda.empty())
        {
            built = false;
            continue;
        }
        try
        {
            (void)m.flux.build();
        }
        catch (std::exception const& e)
        {
            rd.fail(path, e.what());
            built = false;
        }
    }
    if (!built)
        return;
    try
    {
        (void)cfg.build_pair();
    }
    catch (std::exception const& e)
    {
        rd.fail("media", e.what());
    }
    if (!(cfg.medium1.capillary_level < cfg.medium2.capillary_level)
        && !cfg.allow_unvalidated_orientation)
        rd.fail("media.medium2.capillary_level",
                "interface orientation condition P1 < P2 is violated (negatively "
                "oriented interface required); set "
                "media.allow_unvalidated_orientation to run the unvalidated regime");
}
}  // namespace detail

/*!
 * Parses and validates a JSON experiment config.
 *
 * Throws ConfigError listing every violation with its field path, or a
 * syntax error with line and column.
 */
inline ExperimentConfig parse_config(std::string const& text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        auto const [line, col] = detail::line_column(text, e.byte);
        std::string msg = e.what();
        if (auto p = msg.find("]: "); p != std::string::npos)
            msg = msg.substr(p + 3);
        throw ConfigError(msg, line, col);
    }

    std::vector<ConfigIssue> issues;
    detail::Reader rd(issues);
    ExperimentConfig cfg;
    cfg.echo = root;
    if (!rd.object(root, "", {"name", "kind", "media", "initial", "grid", "solver",
                              "diagnostics", "steady", "contraction", "seed",
                              "output_dir"}))
        throw ConfigError(issues);

    rd.text(root, "name", "", cfg.name);
    rd.text(root, "output_dir", "", cfg.output_dir);
    if (root.contains("seed"))
    {
        if (root.at("seed").is_number_unsigned())
            cfg.seed = root.at("seed").get<std::uint64_t>();
        else
            rd.fail("seed", "expected a non-negative integer");
    }

    if (!root.contains("kind"))
        rd.fail("kind", "missing required field");
    else
    {
        std::string kind;
        rd.text(root, "kind", "", kind);
        if (kind == "riemann")
            cfg.kind = ExperimentKind::riemann;
        else if (kind == "eps_sweep")
            cfg.kind = ExperimentKind::eps_sweep;
        else if (kind == "steady")
            cfg.kind = ExperimentKind::steady;
        else if (kind == "contraction")
            cfg.kind = ExperimentKind::contraction;
        else
            rd.fail("kind", "unknown kind (riemann, eps_sweep, steady, contraction)");
    }

    if (!root.contains("media"))
        rd.fail("media", "missing required field");
    else if (json const& m = root.at("media");
             rd.object(m, "media", {"medium1", "medium2", "allow_unvalidated_orientation"}))
    {
        for (auto [key, dst] : {std::pair{"medium1", &cfg.medium1},
                                std::pair{"medium2", &cfg.medium2}})
        {
            if (m.contains(key))
                detail::read_medium(rd, m.at(key), std::string("media.") + key, *dst);
            else
                rd.fail(std::string("media.") + key, "missing required field");
        }
        rd.flag(m, "allow_unvalidated_orientation", "media",
                cfg.allow_unvalidated_orientation);
    }

    if (root.contains("initial"))
    {
        json const& v = root.at("initial");
        json const arr = v.is_array() ? v : json::array({v});
        cfg.initial.resize(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i)
            detail::read_initial(rd, arr[i],
                                 v.is_array() ? "initial[" + std::to_string(i) + "]"
                                              : std::string("initial"),
                                 cfg.initial[i]);
    }
    bool const needs_initial
        = cfg.kind == ExperimentKind::riemann || cfg.kind == ExperimentKind::eps_sweep;
    if (needs_initial && cfg.initial.empty())
        rd.fail("initial", "required for riemann and eps_sweep experiments");

    if (root.contains("grid"))
    {
        json const& g = root.at("grid");
        if (rd.object(g, "grid", {"x_min", "x_max", "n_cells"}))
        {
            rd.number(g, "x_min", "grid", cfg.grid.x_min);
            rd.number(g, "x_max", "grid", cfg.grid.x_max);
            std::vector<double> n;
            if (rd.numbers(g, "n_cells", "grid", n))
            {
                cfg.grid.n_cells.clear();
                for (std::size_t i = 0; i < n.size(); ++i)
                {
                    if (!(n[i] >= 2.0) || n[i] != std::floor(n[i]))
                        rd.fail("grid.n_cells[" + std::to_string(i) + "]",
                                "expected an integer >= 2");
                    else
                        cfg.grid.n_cells.push_back(static_cast<std::size_t>(n[i]));
                }
                if (n.empty())
                    rd.fail("grid.n_cells", "must not be empty");
            }
        }
        if (!(cfg.grid.x_min < 0.0 && cfg.grid.x_max > 0.0))
            rd.fail("grid", "domain must contain the interface: x_min < 0 < x_max");
        else
            for (std::size_t n : cfg.grid.n_cells)
                try
                {
                    (void)Grid(cfg.grid.x_min, cfg.grid.x_max, n);
                }
                catch (std::exception const& e)
                {
                    rd.fail("grid.n_cells", e.what());
                }
    }

    if (root.contains("solver"))
    {
        json const& s = root.at("solver");
        if (rd.object(s, "solver", {"cfl", "t_end", "output_interval", "eps",
                                    "smooth_initial_data", "reference_cells"}))
        {
            rd.number(s, "cfl", "solver", cfg.solver.cfl,
                      [](double x) { return x > 0.0 && x <= 1.0; }, "must lie in (0,1]");
            rd.positive(s, "t_end", "solver", cfg.solver.t_end);
            rd.positive(s, "output_interval", "solver", cfg.solver.output_interval);
            if (rd.numbers(s, "eps", "solver", cfg.solver.eps))
                for (std::size_t i = 0; i < cfg.solver.eps.size(); ++i)
                    if (!(cfg.solver.eps[i] > 0.0))
                        rd.fail("solver.eps[" + std::to_string(i) + "]", "must be positive");
            rd.flag(s, "smooth_initial_data", "solver", cfg.solver.smooth_initial_data);
            rd.count(s, "reference_cells", "solver", cfg.solver.reference_cells, 0);
        }
    }
    if (cfg.kind == ExperimentKind::eps_sweep && cfg.solver.eps.empty())
        rd.fail("solver.eps", "eps_sweep needs at least one eps");

    if (root.contains("diagnostics"))
    {
        json const& d = root.at("diagnostics");
        auto& dc = cfg.diagnostics;
        if (rd.object(d, "diagnostics", {"entropy", "profiles", "interface_series",
                                         "radius", "kappa_levels", "entropy_cells",
                                         "growth_factor", "tolerances"}))
        {
            rd.flag(d, "entropy", "diagnostics", dc.entropy);
            rd.flag(d, "profiles", "diagnostics", dc.profiles);
            rd.flag(d, "interface_series", "diagnostics", dc.interface_series);
            rd.positive(d, "radius", "diagnostics", dc.radius);
            rd.count(d, "kappa_levels", "diagnostics", dc.kappa_levels, 2);
            rd.count(d, "entropy_cells", "diagnostics", dc.entropy_cells, 2);
            rd.positive(d, "growth_factor", "diagnostics", dc.growth_factor);
            if (d.contains("tolerances"))
            {
                json const& t = d.at("tolerances");
                std::string const p = "diagnostics.tolerances";
                if (rd.object(t, p, {"kruzkov", "adapted", "undercompressive", "flux",
                                     "mass", "comparison", "steady_residual",
                                     "steady_drift", "flux_bound", "min_order"}))
                {
                    rd.positive(t, "kruzkov", p, dc.tol.kruzkov);
                    rd.positive(t, "adapted", p, dc.tol.adapted);
                    rd.positive(t, "undercompressive", p, dc.tol.undercompressive);
                    rd.positive(t, "flux", p, dc.tol.flux);
                    rd.positive(t, "mass", p, dc.tol.mass);
                    rd.positive(t, "comparison", p, dc.tol.comparison);
                    rd.positive(t, "steady_residual", p, dc.tol.steady_residual);
                    rd.positive(t, "steady_drift", p, dc.tol.steady_drift);
                    rd.positive(t, "flux_bound", p, dc.tol.flux_bound);
                    rd.positive(t, "min_order", p, dc.tol.min_order);
                }
            }
        }
        if (cfg.grid.x_min < 0.0)
            for (std::size_t n : {cfg.diagnostics.entropy_cells})
                try
                {
                    (void)Grid(cfg.grid.x_min, cfg.grid.x_max, n);
                }
                catch (std::exception const& e)
                {
                    rd.fail("diagnostics.entropy_cells", e.what());
                }
    }

    if (root.contains("steady"))
    {
        json const& s = root.at("steady");
        auto& sc = cfg.steady;
        if (rd.object(s, "steady", {"side", "kappa", "variant", "eps", "horizon"}))
        {
            if (s.contains("side"))
            {
                auto const& v = s.at("side");
                if (v == 1)
                    sc.side = Side::one;
                else if (v == 2)
                    sc.side = Side::two;
                else
                    rd.fail("steady.side", "expected 1 or 2");
            }
            if (rd.numbers(s, "kappa", "steady", sc.kappas, true))
                for (std::size_t i = 0; i < sc.kappas.size(); ++i)
                    if (!(sc.kappas[i] >= 0.0 && sc.kappas[i] <= 1.0))
                        rd.fail("steady.kappa[" + std::to_string(i) + "]",
                                "must lie in [0,1]");
            std::string variant = "i";
            rd.text(s, "variant", "steady", variant);
            if (variant == "i")
                sc.variant = SteadyVariant::over_under;
            else if (variant == "ii")
                sc.variant = SteadyVariant::over_over;
            else if (variant == "iii")
                sc.variant = SteadyVariant::under_under;
            else
                rd.fail("steady.variant", "expected i, ii or iii");
            rd.positive(s, "eps", "steady", sc.eps);
            rd.positive(s, "horizon", "steady", sc.horizon);
        }
    }
    else if (cfg.kind == ExperimentKind::steady)
        rd.fail("steady", "required for steady experiments");

    if (root.contains("contraction"))
    {
        json const& c = root.at("contraction");
        auto& cc = cfg.contraction;
        if (rd.object(c, "contraction", {"pairs", "radius", "pieces", "hyperbolic",
                                         "parabolic"}))
        {
            rd.count(c, "pairs", "contraction", cc.pairs);
            rd.positive(c, "radius", "contraction", cc.radius);
            rd.count(c, "pieces", "contraction", cc.pieces);
            rd.flag(c, "hyperbolic", "contraction", cc.hyperbolic);
            rd.flag(c, "parabolic", "contraction", cc.parabolic);
        }
    }
    if (cfg.kind == ExperimentKind::contraction && cfg.contraction.parabolic
        && cfg.solver.eps.empty())
        rd.fail("solver.eps", "parabolic contraction runs need an eps");

    detail::check_media(rd, cfg);
    if (!issues.empty())
        throw ConfigError(issues);
    return cfg;
}

inline ExperimentConfig load_config(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

}  // namespace capflow::harness

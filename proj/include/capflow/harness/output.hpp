#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "runner.hpp"

namespace capflow::harness
{
//! Failure to create or write an artifact; carries the path.
class OutputError : public std::runtime_error
{
  public:
    OutputError(std::string const& what, std::filesystem::path path)
        : std::runtime_error(what + ": " + path.string()), path_(std::move(path))
    {
    }
    std::filesystem::path const& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
};

struct ManifestEntry
{
    std::string file;
    std::string sha256;
    std::size_t bytes = 0;
};

//! Hex SHA-256 digest of a byte string.
inline std::string sha256_hex(std::string const& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
        os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

namespace detail
{
//! Interface series rows kept per run.
inline constexpr std::size_t max_interface_rows = 2000;

inline ordered_json to_json(DiagnosticsRecord const& d)
{
    return {{"flux_sup", d.flux_sup},
            {"initial_flux_sup", d.initial_flux_sup},
            {"energy", {d.energy[0], d.energy[1]}},
            {"time_variation", d.time_variation},
            {"max_phi_gradient", d.max_phi_gradient},
            {"max_interface_product", d.max_interface_product},
            {"max_interface_mismatch", d.max_interface_mismatch},
            {"smoothed_input", d.smoothed_input},
            {"steps", d.steps}};
}

inline ordered_json to_json(EntropyReport const& e)
{
    auto check = [](double value, double tol, bool pass) {
        return ordered_json{{"value", value}, {"tolerance", tol}, {"pass", pass}};
    };
    ordered_json j;
    j["kruzkov_residual"] = check(e.worst_kruzkov_residual, e.kruzkov_tol, e.kruzkov_pass());
    j["kruzkov_residual"]["step"] = e.kruzkov_location.step;
    j["kruzkov_residual"]["cell"] = e.kruzkov_location.cell;
    j["kruzkov_residual"]["kappa"] = e.kruzkov_location.kappa;
    j["adapted_residual"] = check(e.worst_adapted_residual, e.adapted_tol, e.adapted_pass());
    j["adapted_residual"]["center"] = e.adapted_location.center;
    j["adapted_residual"]["width"] = e.adapted_location.width;
    j["adapted_residual"]["time_center"] = e.adapted_location.time_center;
    j["undercompressivity_product"] = check(
        e.undercompressivity_product, e.undercompressive_tol, e.undercompressive_pass());
    j["flux_mismatch"] = check(e.flux_mismatch, e.flux_tol, e.flux_pass());
    j["mass_defect"] = check(e.mass_defect, e.mass_tol, e.mass_pass());
    j["pass"] = e.pass();
    return j;
}

inline ordered_json verdicts_json(ExperimentReport const& rep)
{
    ordered_json v = ordered_json::array();
    for (auto const& x : rep.verdicts)
        v.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    return v;
}

class ArtifactWriter
{
  public:
    explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec || !std::filesystem::is_directory(dir_))
            throw OutputError("cannot create output directory", dir_);
    }

    void write(std::string const& name, std::string const& content)
    {
        auto const path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw OutputError("cannot open file for writing", path);
        out << content;
        out.close();
        if (!out)
            throw OutputError("write failed", path);
        entries_.push_back({name, sha256_hex(content), content.size()});
    }

    std::vector<ManifestEntry> const& entries() const noexcept { return entries_; }

  private:
    std::filesystem::path dir_;
    std::vector<ManifestEntry> entries_;
};

inline std::ostringstream csv_stream()
{
    std::ostringstream os;
    os << std::setprecision(12);
    return os;
}
}  // namespace detail

/*!
 * Writes the artifact set of a report and returns its manifest.
 *
 * Files: profiles_<run>.csv (t,x,u), interface_<run>.csv (t,u1,u2,Q),
 * errors.csv, diagnostics.json, entropy_report.json, timings.json and
 * manifest.json. Only timings.json (and so the manifest) depends on wall
 * clock; an empty report yields the manifest alone.
 */
inline std::vector<ManifestEntry> write_outputs(ExperimentReport const& rep,
                                                std::filesystem::path const& dir)
{
    detail::ArtifactWriter w(dir);
    if (!rep.empty())
    {
        for (auto const& r : rep.runs)
        {
            if (!r.profile.frames.empty())
            {
                auto os = detail::csv_stream();
                os << "t,x,u\n";
                for (auto const& f : r.profile.frames)
                    for (std::size_t j = 0; j < f.size(); ++j)
                        os << f.time << ',' << r.x[j] << ',' << f[j] << '\n';
                w.write("profiles_" + r.id + ".csv", os.str());
            }
            if (r.diagnostics && !r.diagnostics->interface_series.empty())
            {
                auto const& s = r.diagnostics->interface_series;
                std::size_t const stride
                    = std::max<std::size_t>(1, s.size() / detail::max_interface_rows);
                auto os = detail::csv_stream();
                os << "t,u1,u2,Q\n";
                for (std::size_t k = 0; k < s.size(); k += stride)
                    os << s[k].t << ',' << s[k].u1 << ',' << s[k].u2 << ',' << s[k].flux
                       << '\n';
                w.write("interface_" + r.id + ".csv", os.str());
            }
        }
        if (!rep.errors.empty())
        {
            auto os = detail::csv_stream();
            os << "run_id,label,key_name,key,L1_error,order\n";
            for (auto const& e : rep.errors)
            {
                os << e.run_id << ',' << e.label << ',' << e.key_name << ',' << e.key
                   << ',' << e.l1_error << ',';
                if (e.order)
                    os << *e.order;
                os << '\n';
            }
            w.write("errors.csv", os.str());
        }

        ordered_json diag;
        diag["name"] = rep.name;
        diag["kind"] = rep.kind;
        diag["seed"] = rep.seed;
        diag["verdicts"] = detail::verdicts_json(rep);
        diag["runs"] = ordered_json::array();
        ordered_json ent = ordered_json::array();
        ordered_json times = ordered_json::array();
        for (auto const& r : rep.runs)
        {
            ordered_json j{{"id", r.id},       {"label", r.label}, {"params", r.params},
                           {"ok", r.ok},       {"error", r.error}, {"metrics", r.metrics}};
            if (r.diagnostics)
                j["diagnostics"] = detail::to_json(*r.diagnostics);
            diag["runs"].push_back(std::move(j));
            if (r.entropy)
            {
                auto e = detail::to_json(*r.entropy);
                e["id"] = r.id;
                e["label"] = r.label;
                ent.push_back(std::move(e));
            }
            times.push_back({{"id", r.id}, {"wall_seconds", r.wall_seconds}});
        }
        w.write("diagnostics.json", diag.dump(2) + "\n");
        if (!ent.empty())
        {
            bool const pass = std::all_of(ent.begin(), ent.end(), [](auto const& e) {
                return e["pass"].template get<bool>();
            });
            ordered_json j{{"pass", pass}, {"runs", std::move(ent)}};
            w.write("entropy_report.json", j.dump(2) + "\n");
        }
        w.write("timings.json", times.dump(2) + "\n");
    }

    ordered_json manifest;
    manifest["name"] = rep.name;
    manifest["kind"] = rep.kind;
    manifest["seed"] = rep.seed;
    manifest["config"] = rep.config;
    manifest["runs_ok"] = rep.runs_ok();
    manifest["checks_pass"] = rep.checks_pass();
    manifest["files"] = ordered_json::array();
    for (auto const& e : w.entries())
        manifest["files"].push_back({{"file", e.file}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    w.write("manifest.json", manifest.dump(2) + "\n");
    return w.entries();
}

}  // namespace capflow::harness

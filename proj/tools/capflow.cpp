// Command-line front end of the experiment harness.
//
//   capflow run --config <file> --out <dir> [--seed N] [--threads K]
//   capflow check --config <file>
//
// Exit codes: 0 pass, 1 run failure, 2 config failure, 3 check failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include <capflow/harness/harness.hpp>

namespace
{
enum ExitCode
{
    exit_pass = 0,
    exit_run_failure = 1,
    exit_config_failure = 2,
    exit_check_failure = 3
};

int report_config_error(capflow::harness::ConfigError const& e)
{
    std::cerr << e.what() << '\n';
    return exit_config_failure;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-medium capillarity experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());

    auto* run = app.add_subcommand("run", "Run an experiment and write its artifacts");
    run->add_option("--config", config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("check", "Validate a config without running it");
    check->add_option("--config", config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_pass : exit_config_failure;
    }

    capflow::harness::ExperimentConfig cfg;
    try
    {
        cfg = capflow::harness::load_config(config_path);
    }
    catch (capflow::harness::ConfigError const& e)
    {
        return report_config_error(e);
    }
    catch (std::exception const& e)
    {
        std::cerr << e.what() << '\n';
        return exit_config_failure;
    }

    if (check->parsed())
    {
        std::cout << config_path << ": ok (" << to_string(cfg.kind) << ")\n";
        return exit_pass;
    }

    if (*seed_opt)
        cfg.seed = seed;
    capflow::harness::ExperimentReport report;
    try
    {
        report = capflow::harness::run_experiment(cfg, threads);
        capflow::harness::write_outputs(report, out_dir);
    }
    catch (std::exception const& e)
    {
        std::cerr << "run failed: " << e.what() << '\n';
        return exit_run_failure;
    }

    for (auto const& r : report.runs)
        if (!r.ok)
            std::cerr << r.id << " (" << r.label << ") failed: " << r.error << '\n';
    for (auto const& v : report.verdicts)
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name
                  << (v.detail.empty() ? "" : "  [" + v.detail + "]") << '\n';
    if (!report.runs_ok())
        return exit_run_failure;
    return report.checks_pass() ? exit_pass : exit_check_failure;
}

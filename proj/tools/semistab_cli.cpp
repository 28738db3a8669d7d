#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <semistab/config.hpp>
#include <semistab/scenario.hpp>

using namespace semistab;
namespace fs = std::filesystem;

namespace {

// exit codes: 0 match, 2 verdict mismatch, 3 undecided verdict, 4 config error
int report_status(const StabilityReport& rep, const std::string& expected) {
    for (auto p : all_properties) {
        const Verdict v = rep.at(p).verdict;
        if (v == Verdict::Inconclusive || v == Verdict::NotEvaluated) return 3;
    }
    if (!expected.empty() && verdict_row(rep) != expected) return 2;
    return 0;
}

std::string csv_table(const std::vector<double>& times,
                      const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
    std::string out = "t,series_label,value\n";
    char buf[64];
    for (const auto& [label, values] : rows) {
        for (std::size_t i = 0; i < times.size() && i < values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", times[i]);
            out += buf;
            out += ',';
            out += label;
            out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            out += buf;
            out += '\n';
        }
    }
    return out;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

void emit_run(const ScenarioRun& run, const std::string& out_dir, const std::string& stem) {
    const std::string doc = run.report.to_json().dump(2) + "\n";
    if (out_dir.empty()) {
        std::cout << doc;
        return;
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / (stem + ".report.json"), doc);
    write_file(fs::path(out_dir) / (stem + ".csv"), csv_table(run.times, run.trajectories));
    std::cerr << "wrote " << (fs::path(out_dir) / (stem + ".report.json")).string() << " and "
              << (fs::path(out_dir) / (stem + ".csv")).string() << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certification of C0-semigroup stability on locally convex spaces"};
    app.require_subcommand(1);

    auto* scenario = app.add_subcommand("scenario", "inspect or run registered scenarios");
    scenario->require_subcommand(1);
    scenario->add_subcommand("list", "print the scenario registry");

    auto* run_cmd = scenario->add_subcommand("run", "run one scenario and emit its report");
    std::string name;
    std::size_t truncation = 0;
    double t_max = 0.0;
    std::string out_dir;
    run_cmd->add_option("name", name, "registered scenario name")->required();
    run_cmd->add_option("--truncation", truncation, "index truncation override");
    run_cmd->add_option("--t-max", t_max, "time horizon override");
    run_cmd->add_option("--out", out_dir, "directory for <name>.report.json and <name>.csv");

    auto* classify_cmd = app.add_subcommand("classify", "classify an ad-hoc configured scenario");
    std::string config_path;
    std::string classify_out;
    classify_cmd->add_option("--config", config_path, "JSON configuration file")->required();
    classify_cmd->add_option("--out", classify_out, "directory for report and trajectories");

    auto* sweep_cmd = app.add_subcommand("sweep", "run the whole registry");
    bool sweep_all = false;
    unsigned jobs = 1;
    std::string sweep_out;
    sweep_cmd->add_flag("--all", sweep_all, "run every registered scenario");
    sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 64u));
    sweep_cmd->add_option("--out", sweep_out, "directory for per-scenario reports");

    CLI11_PARSE(app, argc, argv);

    if (scenario->got_subcommand("list")) {
        std::printf("%-26s %-9s %s\n", "name", "expected", "setting");
        for (const auto& e : scenario_registry())
            std::printf("%-26s %-9s %s\n", e.name.c_str(), e.expected.c_str(),
                        e.setting.c_str());
        return 0;
    }

    if (scenario->got_subcommand("run")) {
        const ScenarioEntry* e = find_scenario(name);
        if (!e) {
            std::cerr << "unknown scenario: " << name << "\n";
            return 4;
        }
        TruncationProfile prof;
        if (truncation > 0) prof.index_count = truncation;
        if (t_max > 0.0) prof.times.t_max = t_max;
        const auto t0 = std::chrono::steady_clock::now();
        const ScenarioRun run = run_scenario(*e, prof);
        std::cerr << e->name << ": " << seconds_since(t0) << " s\n";
        emit_run(run, out_dir, e->name);
        const int status = report_status(run.report, e->expected);
        if (status == 2)
            std::cerr << "verdict mismatch: got " << verdict_row(run.report) << ", expected "
                      << e->expected << "\n";
        if (status == 3) std::cerr << "undecided verdict at this truncation\n";
        return status;
    }

    if (classify_cmd->parsed()) {
        LoadedConfig cfg;
        try {
            cfg = load_config_file(config_path);
        } catch (const ConfigError& err) {
            std::cerr << "config error: " << err.what() << "\n";
            return 4;
        }
        const auto t0 = std::chrono::steady_clock::now();
        ScenarioRun run;
        try {
            run = run_config(cfg);
        } catch (const std::exception& err) {
            std::cerr << "config error: " << err.what() << "\n";
            return 4;
        }
        std::cerr << "classify: " << seconds_since(t0) << " s\n";
        emit_run(run, classify_out,
                 cfg.kind == ScenarioKind::Diagonal ? cfg.diag.name : cfg.fun.name);
        return report_status(run.report, "");
    }

    // sweep
    if (!sweep_all) {
        std::cerr << "sweep requires --all\n";
        return 4;
    }
    const auto& reg = scenario_registry();
    struct Line {
        std::string row;
        int status = 4;
        std::string error;
    };
    std::vector<Line> lines(reg.size());
    std::atomic<std::size_t> next{0};
    const auto t0 = std::chrono::steady_clock::now();
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < reg.size(); i = next.fetch_add(1)) {
            try {
                const ScenarioRun run = run_scenario(reg[i]);
                lines[i].row = verdict_row(run.report);
                lines[i].status = report_status(run.report, reg[i].expected);
                if (!sweep_out.empty()) emit_run(run, sweep_out, reg[i].name);
            } catch (const std::exception& err) {
                lines[i].error = err.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    std::cerr << "sweep: " << seconds_since(t0) << " s\n";

    int exit_code = 0;
    bool any_undecided = false;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const char* tag = "OK";
        if (!lines[i].error.empty()) {
            tag = "ERROR";
            exit_code = 4;
        } else if (lines[i].status == 2) {
            tag = "MISMATCH";
            exit_code = 2;
        } else if (lines[i].status == 3) {
            tag = "UNDECIDED";
            any_undecided = true;
        }
        std::printf("%-26s %-8s expected %-8s %s%s\n", reg[i].name.c_str(),
                    lines[i].row.empty() ? "-" : lines[i].row.c_str(), reg[i].expected.c_str(),
                    tag, lines[i].error.empty() ? "" : (": " + lines[i].error).c_str());
    }
    if (exit_code == 0 && any_undecided) exit_code = 3;
    return exit_code;
}

// zcssc_cli: run ZC-QO-SSC link simulations, sweeps, self-checks and emit
// codec test vectors.
//
// Exit codes: 0 success, 1 runtime failure, 2 config error, 3 capacity error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zcssc/errors.hpp"
#include "zcssc/sim.hpp"
#include "zcssc/vectors.hpp"
#include "zcssc/verify.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

zcssc::SimConfig build_config(const std::string& path, const std::vector<std::string>& overrides, int workers) {
    zcssc::SimConfig cfg = path.empty() ? zcssc::SimConfig{} : zcssc::load_config(path);
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw zcssc::ConfigError("override '" + kv + "' is not key=value");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (workers > 0) cfg.workers = workers;
    return cfg;
}

zcssc::ResultFormat parse_format(const std::string& f, const std::string& out) {
    if (f == "json") return zcssc::ResultFormat::kJson;
    if (f == "csv") return zcssc::ResultFormat::kCsv;
    if (f.empty() && out.size() >= 5 && out.substr(out.size() - 5) == ".json") return zcssc::ResultFormat::kJson;
    if (f.empty()) return zcssc::ResultFormat::kCsv;
    throw zcssc::ConfigError("unknown format '" + f + "'");
}

void write_out(const std::vector<zcssc::SimResult>& results, zcssc::ResultFormat fmt, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << zcssc::format_results(results, fmt);
    } else {
        zcssc::emit_results(results, fmt, out);
    }
}

std::vector<std::string> split_values(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ZC-QO sparse superposition coding link simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format;
    int workers = 0;

    auto* simulate = app.add_subcommand("simulate", "Run one Monte-Carlo campaign");
    simulate->add_option("--config", config_path, "Key-value config file")->required();
    simulate->add_option("--override", overrides, "key=value, repeatable");
    simulate->add_option("--out", out_path, "Results file (.csv or .json); '-' for stdout")->required();
    simulate->add_option("--format", format, "csv or json (default from --out extension)");
    simulate->add_option("--workers", workers, "Worker threads (overrides config)");

    std::string axis;
    std::string values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one campaign per value of a config key");
    sweep_cmd->add_option("--config", config_path, "Key-value config file")->required();
    sweep_cmd->add_option("--axis", axis, "Numeric config key to vary")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
    sweep_cmd->add_option("--override", overrides, "key=value, repeatable");
    sweep_cmd->add_option("--out", out_path, "Results file; stdout when omitted");
    sweep_cmd->add_option("--format", format, "csv or json");
    sweep_cmd->add_option("--workers", workers, "Worker threads (overrides config)");

    auto* verify = app.add_subcommand("verify", "Run the analytic and oracle self-checks");

    std::string emit_path;
    auto* vectors = app.add_subcommand("vectors", "Write codec test vectors");
    vectors->add_option("--emit", emit_path, "Output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const zcssc::SimConfig cfg = build_config(config_path, overrides, workers);
            const auto fmt = parse_format(format, out_path);
            write_out({zcssc::run_campaign(cfg)}, fmt, out_path);
        } else if (*sweep_cmd) {
            const zcssc::SimConfig cfg = build_config(config_path, overrides, workers);
            const auto fmt = parse_format(format, out_path);
            write_out(zcssc::sweep(cfg, axis, split_values(values)), fmt, out_path);
        } else if (*verify) {
            return zcssc::run_verification(std::cout) ? 0 : kExitRuntime;
        } else if (*vectors) {
            std::ofstream out(emit_path);
            if (!out) throw std::runtime_error("cannot write '" + emit_path + "'");
            zcssc::write_vectors(out, zcssc::standard_vectors());
        }
    } catch (const zcssc::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const zcssc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const zcssc::ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}

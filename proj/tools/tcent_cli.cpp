// Command-line front end: parameter scans, validation suites, entanglement
// spectrum dumps, and canned figure-data presets.
//
// Exit codes: 0 success, 1 unexpected error, 2 domain error or failed
// validation checks, 3 capacity limit, 4 configuration/usage error.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcent/scan.hpp"
#include "tcent/util.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tcent::ConfigError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw tcent::ConfigError("failed writing output file '" + path + "'");
    std::cerr << "wrote " << path << "\n";
}

// fig5 emits a second table; place it next to the main one.
std::string companion_path(const std::string& main_path, const std::string& companion_name) {
    if (main_path.empty()) return "";
    const auto slash = main_path.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "" : main_path.substr(0, slash + 1);
    return dir + companion_name;
}

int dispatch(const CLI::App& app, int scan_threads, double scan_tol,
             const std::string& config_path, const std::vector<std::string>& overrides,
             const std::string& out_path, const std::string& suite, const std::string& preset,
             const tcent::ScanConfig& point, double param1, double param2) {
    using namespace tcent;

    if (app.got_subcommand("scan")) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
        ScanConfig cfg = parse_scan_config(in);
        for (const auto& assignment : overrides) apply_config_override(cfg, assignment);
        if (scan_threads > 0) cfg.threads = static_cast<unsigned>(scan_threads);
        if (scan_tol >= 0) cfg.tol = scan_tol;
        if (!out_path.empty()) cfg.out_path = out_path;
        const ScanResult result = run_scan(cfg);
        write_text(cfg.out_path, result.csv);
        return 0;
    }

    if (app.got_subcommand("validate")) {
        int failures = 0;
        if (out_path.empty()) {
            failures = run_validation_suite(suite, std::cout);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
            failures = run_validation_suite(suite, out);
            std::cerr << "wrote " << out_path << "\n";
        }
        return failures == 0 ? 0 : 2;
    }

    if (app.got_subcommand("spectrum")) {
        const std::vector<double> nu = spectrum_at(point, param1, param2);
        std::string text;
        for (double v : nu) {
            text += format_double(v);
            text += '\n';
        }
        write_text(out_path, text);
        return 0;
    }

    // figdata
    const FigdataOutput result = figdata_run(preset, static_cast<unsigned>(scan_threads));
    const std::string main_path = out_path.empty() ? result.main_name : out_path;
    write_text(main_path, result.main_csv);
    if (!result.companion_name.empty())
        write_text(companion_path(main_path, result.companion_name), result.companion_csv);
    for (const auto& note : result.notes) std::cout << "note " << note << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement scans and convertibility diagnostics for perturbed loop-gas "
                 "ground states"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite, preset;
    std::vector<std::string> overrides;
    int threads = 0;
    double tol = -1.0;

    CLI::App* scan = app.add_subcommand("scan", "Run a parameter scan from a key=value config");
    scan->add_option("--config", config_path, "Configuration file (key=value lines)")->required();
    scan->add_option("--set", overrides, "Override one key=value assignment (repeatable)");
    scan->add_option("--threads", threads, "Worker threads (overrides the config)");
    scan->add_option("--tol", tol, "Dead-zone width for the derivative-sign column");
    scan->add_option("--out", out_path, "Output CSV path (default: config's out, else stdout)");

    CLI::App* validate = app.add_subcommand("validate", "Run a named validation suite");
    validate
        ->add_option("suite", suite,
                     "oracle-v1 | oracle-v2 | gauge-formulas | majorization | pfaffian")
        ->required();
    validate->add_option("--out", out_path, "Report path (default: stdout)");

    tcent::ScanConfig point;
    double param1 = 0.0, param2 = 0.0;
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Print the entanglement spectrum at one scan point");
    spectrum->add_option("--model", point.model, "cc | rowfield-thin | v3-ed | cluster-ed")
        ->required();
    auto* square = spectrum->add_option("--L", point.lx, "Square torus size");
    spectrum->add_option("--lx", point.lx, "Torus columns")->excludes(square);
    spectrum->add_option("--ly", point.ly, "Torus rows")->excludes(square);
    spectrum->add_option("--bipartition", point.bipartition, "Subsystem description")->required();
    spectrum->add_option("--param1", param1, "First coupling")->required();
    spectrum->add_option("--param2", param2, "Second coupling (v3-ed only)");
    spectrum->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* figdata = app.add_subcommand("figdata", "Run a canned figure-data preset");
    figdata->add_option("preset", preset, "fig4 | fig5 | fig7 | fig8")->required();
    figdata->add_option("--out", out_path, "Main CSV path (default: preset name)");
    figdata->add_option("--threads", threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    if (app.got_subcommand("spectrum") && *square) point.ly = point.lx;

    try {
        return dispatch(app, threads, tol, config_path, overrides, out_path, suite, preset, point,
                        param1, param2);
    } catch (const tcent::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 4;
    } catch (const tcent::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const tcent::MultiCrossingError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const tcent::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

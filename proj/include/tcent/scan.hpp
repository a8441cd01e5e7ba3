// Scan orchestration for the command-line tool: flat key=value configuration
// with overrides, model dispatch, deterministic CSV emission, entanglement
// spectrum dumps, named figure-data presets, and validation suites.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tcent/convertibility.hpp"

namespace tcent {

// Parsed scan request. `model` selects the evaluation route:
//   cc            deformed-state closed form, square torus, any bipartition
//   rowfield-thin single-plaquette closed form (thermodynamic chain)
//   rowfield-bulk two-star purity (thermodynamic chain), alpha = 2 only
//   v3-ed         two-coupling edge-Ising scan by exact diagonalization
//   cluster-ed    cluster-model scan by exact diagonalization (site lattice)
struct ScanConfig {
    std::string model;
    int lx = 0, ly = 0;          // torus columns x rows (sites for cluster-ed)
    std::string bipartition;     // plaquette:P | two_star:V1-V2 | edges:... | mask:HEX | block:R-C-H-W
    std::vector<double> param1;  // scan coordinate, strictly increasing
    std::vector<double> param2;  // v3-ed only: second coupling, zipped with param1
    std::vector<double> alphas;  // strictly increasing, nonnegative
    std::string out_path;        // empty -> stdout
    double tol = 0.0;            // dead-zone override for the sign column; 0 -> source default
    unsigned threads = 1;
};

// Key=value lines, '#' comments, lists comma-separated. Keys: model, L, lx,
// ly, bipartition, param1, param2, alpha, out, tol, threads.
ScanConfig parse_scan_config(std::istream& in);

// One "key=value" assignment applied on top of a parsed config.
void apply_config_override(ScanConfig& cfg, const std::string& assignment);

// Structural and model/bipartition compatibility checks; throws ConfigError.
// Mathematical domain limits (e.g. coupling signs) are enforced by the
// evaluation layer itself.
void validate_config(const ScanConfig& cfg);

struct ScanResult {
    RenyiSurface surface;                     // values over (param1, alpha)
    std::vector<double> param2;               // second coupling per point (zeros unless v3-ed)
    std::vector<std::vector<double>> spectra; // per-point spectrum where the model exposes one
    std::string csv;                          // deterministic table, header included
};

// Evaluates the whole grid and assembles the CSV with columns exactly
// model,L,bipartition,param1,param2,alpha,S,dS_sign. The sign column uses
// the finite-difference stencil over param1 and is all zeros when the grid
// has fewer than 3 points. Rows appear in grid order regardless of thread
// count, so reruns are byte-identical.
ScanResult run_scan(const ScanConfig& cfg);

// Entanglement spectrum behind a single scan point, descending, unfiltered.
// rowfield-bulk exposes no explicit spectrum and raises ConfigError.
std::vector<double> spectrum_at(const ScanConfig& cfg, double p1, double p2);

// Built-in figure-data presets: fig4, fig5, fig7, fig8.
ScanConfig figdata_preset(const std::string& name);

struct FigdataOutput {
    std::string main_name;           // suggested file name for the scan table
    std::string main_csv;
    std::string companion_name;      // fig5 gap table; empty otherwise
    std::string companion_csv;
    std::vector<std::string> notes;  // alpha_c findings and reference values
};

FigdataOutput figdata_run(const std::string& name, unsigned threads);

// Runs one named validation suite, streaming a deterministic report; returns
// the number of failed checks. Suites: oracle-v1, oracle-v2, gauge-formulas,
// majorization, pfaffian.
int run_validation_suite(const std::string& suite, std::ostream& out);

} // namespace tcent

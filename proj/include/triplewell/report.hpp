#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "triplewell/potential.hpp"

namespace triplewell {

using json = nlohmann::ordered_json;

/// Double rounded to 12 significant digits (the shared print precision).
double round_sig12(double v);
/// "%.12g" rendering.
std::string fmt12(double v);

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string command;              // instanton|determinant|gas|spectrum|compare|sweep
    std::vector<double> omegas{1.0};  // sweep uses the whole list
    double half_box = 0.0;            // 0 = per-command default
    int grid_n = 4001;
    int levels = 6;                   // spectrum: eigenvalue count
    CoefficientConvention convention = CoefficientConvention::canonical;
    OutputFormat format = OutputFormat::json;
    std::string output;               // empty = stdout
    int jobs = 4;
    std::string sweep_command;        // inner command for `sweep`

    double omega() const { return omegas.front(); }
    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// One report: metadata plus flat rows. CSV renders the rows under a single
/// header with a '#'-prefixed metadata line; JSON renders {"meta":..., "rows":...}.
struct Report {
    json meta;
    std::vector<json> rows;

    std::string to_csv() const;
    std::string to_json_text() const;
    std::string render(OutputFormat f) const {
        return f == OutputFormat::csv ? to_csv() : to_json_text();
    }
};

Report run_instanton(const RunConfig& cfg);
Report run_determinant(const RunConfig& cfg);
Report run_gas(const RunConfig& cfg);
Report run_spectrum(const RunConfig& cfg);
Report run_compare(const RunConfig& cfg);
Report run_sweep(const RunConfig& cfg);

/// Dispatch on cfg.command.
Report run(const RunConfig& cfg);

}  // namespace triplewell

#include "triplewell/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "triplewell/dilute_gas.hpp"
#include "triplewell/errors.hpp"
#include "triplewell/fluctuation.hpp"
#include "triplewell/instanton.hpp"
#include "triplewell/numerics.hpp"
#include "triplewell/spectrum_oracle.hpp"

namespace triplewell {

double round_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void RunConfig::validate() const {
    static const std::set<std::string> commands{"instanton", "determinant", "gas",
                                                "spectrum",  "compare",     "sweep"};
    if (!commands.count(command))
        throw std::invalid_argument("unknown command '" + command + "'");
    if (omegas.empty()) throw std::invalid_argument("omega list must be non-empty");
    for (double w : omegas)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("omega values must be positive");
    if (half_box < 0.0) throw std::invalid_argument("half-box must be positive");
    if (grid_n < 100) throw std::invalid_argument("grid-n must be at least 100");
    if (levels < 1) throw std::invalid_argument("levels must be at least 1");
    if (jobs < 1 || jobs > 64) throw std::invalid_argument("jobs must be in [1, 64]");
    if (command == "sweep") {
        static const std::set<std::string> inner{"determinant", "gas", "spectrum", "compare"};
        if (!inner.count(sweep_command))
            throw std::invalid_argument("sweep supports --command determinant|gas|spectrum|compare");
    } else if (omegas.size() != 1) {
        throw std::invalid_argument("command '" + command + "' takes a single omega (use sweep for lists)");
    }
    const std::string effective = command == "sweep" ? sweep_command : command;
    if (effective != "spectrum" && convention != CoefficientConvention::canonical)
        throw std::invalid_argument(
            "command '" + effective + "' requires the canonical convention");
}

namespace {

const char* convention_name(CoefficientConvention c) {
    return c == CoefficientConvention::canonical ? "canonical" : "literal";
}

json base_meta(const RunConfig& cfg) {
    json meta;
    meta["command"] = cfg.command;
    meta["convention"] = convention_name(cfg.convention);
    return meta;
}

double default_half_box(const RunConfig& cfg, double omega, double factor) {
    return cfg.half_box > 0.0 ? cfg.half_box : factor / omega;
}

RunConfig with_single_omega(const RunConfig& cfg, double omega, const std::string& command) {
    RunConfig sub = cfg;
    sub.command = command;
    sub.omegas = {omega};
    sub.sweep_command.clear();
    return sub;
}

}  // namespace

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "#";
    for (auto it = meta.begin(); it != meta.end(); ++it) {
        out << " " << it.key() << "=";
        if (it->is_string())
            out << it->get<std::string>();
        else if (it->is_number_float())
            out << fmt12(it->get<double>());
        else
            out << *it;
    }
    out << "\n";
    if (rows.empty()) return out.str();
    bool first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
        if (!first) out << ",";
        out << it.key();
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (!first) out << ",";
            if (it->is_string())
                out << it->get<std::string>();
            else if (it->is_number_float())
                out << fmt12(it->get<double>());
            else
                out << *it;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

std::string Report::to_json_text() const {
    json doc;
    doc["meta"] = meta;
    doc["rows"] = json::array();
    for (const auto& row : rows) doc["rows"].push_back(row);
    return doc.dump(2) + "\n";
}

Report run_instanton(const RunConfig& cfg) {
    const double omega = cfg.omega();
    const double half_box = default_half_box(cfg, omega, 20.0);
    const double tol = 1e-10;
    PotentialSpec spec{PotentialFamily::triple_well, omega, cfg.convention};
    const auto grid = uniform_symmetric_grid(half_box, 0.01 / omega);
    const auto profile = solve_bogomolny(spec, 0.0, 1.0, grid, tol);
    const auto mode = zero_mode(profile);
    const auto fitted = asymptotic_constants(
        profile, FitWindow{0.3 * half_box, 0.7 * half_box});

    Report report;
    report.meta = base_meta(cfg);
    report.meta["omega"] = round_sig12(omega);
    report.meta["half_box"] = round_sig12(half_box);
    report.meta["tol"] = tol;
    report.meta["tau_c"] = round_sig12(profile.tau_c);
    report.meta["action"] = round_sig12(profile.action);
    report.meta["c_const"] = round_sig12(profile.c_const);
    report.meta["d_const"] = round_sig12(profile.d_const);
    report.meta["c_fitted"] = round_sig12(fitted.c);
    report.meta["d_fitted"] = round_sig12(fitted.d);
    for (std::size_t i = 0; i < profile.size(); ++i) {
        json row;
        row["tau"] = round_sig12(profile.tau_grid[i]);
        row["x_c"] = round_sig12(profile.x_c[i]);
        row["dx_c"] = round_sig12(profile.dx_c[i]);
        row["x_o"] = round_sig12(mode[i]);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

json determinant_row(const RunConfig& cfg, double omega) {
    const double half_box = default_half_box(cfg, omega, 8.0);
    PotentialSpec spec{PotentialFamily::triple_well, omega,
                       CoefficientConvention::canonical};
    const auto grid = uniform_symmetric_grid(half_box, 0.01 / omega);
    const auto profile = closed_form_profile(omega, 0.0, grid);
    const auto problem = triple_well_stability(spec, 0.0, half_box);
    const auto result = reduced_ratio(profile, problem);

    json row;
    row["omega"] = round_sig12(omega);
    row["T"] = round_sig12(2.0 * half_box);
    row["f_end"] = round_sig12(result.f_end);
    row["g_end"] = round_sig12(result.g_end);
    row["lambda"] = round_sig12(result.lambda_low);
    row["raw_ratio"] = round_sig12(result.raw_ratio);
    row["reduced_ratio"] = round_sig12(result.reduced_ratio);
    return row;
}

json gas_row(const RunConfig& cfg, double omega) {
    const double half_box = default_half_box(cfg, omega, 8.0);
    const auto result = dilute_gas_report(omega, half_box);
    json row;
    row["omega"] = round_sig12(omega);
    row["d"] = round_sig12(result.density);
    row["E0"] = round_sig12(result.energies.e0);
    row["E1"] = round_sig12(result.energies.e1);
    row["E2"] = round_sig12(result.energies.e2);
    row["d_pipeline"] = round_sig12(result.d_pipeline);
    row["d_ratio"] = round_sig12(result.d_ratio);
    return row;
}

std::vector<json> spectrum_rows(const RunConfig& cfg, double omega) {
    PotentialSpec spec{PotentialFamily::triple_well, omega, cfg.convention};
    GridSpec grid{3.0, cfg.grid_n};
    const auto levels = diagonalize_schrodinger_auto_box(spec, grid, cfg.levels);
    std::vector<json> rows;
    for (std::size_t j = 0; j < levels.energies.size(); ++j) {
        json row;
        row["omega"] = round_sig12(omega);
        row["T_or_L"] = round_sig12(levels.half_width_used);
        row["N"] = levels.points_used;
        row["index"] = static_cast<int>(j);
        row["eigenvalue"] = round_sig12(levels.energies[j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

json compare_row(const RunConfig& cfg, double omega) {
    const auto semi = energy_levels(omega);

    PotentialSpec spec{PotentialFamily::triple_well, omega,
                       CoefficientConvention::canonical};
    GridSpec grid{3.0, cfg.grid_n};
    const auto numeric = diagonalize_schrodinger_auto_box(spec, grid, 3);
    // parity only needs a sign; a moderate single grid is plenty
    const auto modes = schrodinger_modes(
        spec, GridSpec{numeric.half_width_used, std::min(cfg.grid_n, 1601)}, 2);
    const int parity = parity_of(modes.states[1], modes.xs[1] - modes.xs[0]);

    const double d = instanton_density(omega);
    json row;
    row["omega"] = round_sig12(omega);
    row["E0_semi"] = round_sig12(semi.e0);
    row["E1_semi"] = round_sig12(semi.e1);
    row["E2_semi"] = round_sig12(semi.e2);
    row["E0_num"] = round_sig12(numeric.energies[0]);
    row["E1_num"] = round_sig12(numeric.energies[1]);
    row["E2_num"] = round_sig12(numeric.energies[2]);
    row["splitting_ratio"] =
        round_sig12((numeric.energies[2] - numeric.energies[0]) / (2.0 * omega * d));
    row["first_excited_parity"] = parity < 0 ? "odd" : "even";
    return row;
}

}  // namespace

Report run_determinant(const RunConfig& cfg) {
    Report report;
    report.meta = base_meta(cfg);
    report.meta["gy_step"] = round_sig12(
        2.0 * default_half_box(cfg, cfg.omega(), 8.0) /
        default_gy_steps(cfg.omega(), default_half_box(cfg, cfg.omega(), 8.0)));
    report.rows.push_back(determinant_row(cfg, cfg.omega()));
    return report;
}

Report run_gas(const RunConfig& cfg) {
    Report report;
    report.meta = base_meta(cfg);
    report.meta["half_box"] = round_sig12(default_half_box(cfg, cfg.omega(), 8.0));
    report.meta["profile_step"] = round_sig12(0.01 / cfg.omega());
    report.rows.push_back(gas_row(cfg, cfg.omega()));
    return report;
}

Report run_spectrum(const RunConfig& cfg) {
    Report report;
    report.meta = base_meta(cfg);
    report.meta["grid_n"] = cfg.grid_n;
    report.meta["box_shift_tol"] = 1e-6;
    report.rows = spectrum_rows(cfg, cfg.omega());
    return report;
}

Report run_compare(const RunConfig& cfg) {
    Report report;
    report.meta = base_meta(cfg);
    report.meta["grid_n"] = cfg.grid_n;
    report.rows.push_back(compare_row(cfg, cfg.omega()));
    return report;
}

Report run_sweep(const RunConfig& cfg) {
    Report report;
    report.meta = base_meta(cfg);
    report.meta["sweep_command"] = cfg.sweep_command;
    report.meta["jobs"] = cfg.jobs;

    // entries run concurrently; rows are assembled in input order
    std::vector<std::vector<json>> results(cfg.omegas.size());
    std::vector<std::string> failures(cfg.omegas.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < cfg.omegas.size();
             i = next.fetch_add(1)) {
            try {
                const RunConfig sub = with_single_omega(cfg, cfg.omegas[i], cfg.sweep_command);
                if (cfg.sweep_command == "determinant")
                    results[i] = {determinant_row(sub, sub.omega())};
                else if (cfg.sweep_command == "gas")
                    results[i] = {gas_row(sub, sub.omega())};
                else if (cfg.sweep_command == "compare")
                    results[i] = {compare_row(sub, sub.omega())};
                else
                    results[i] = spectrum_rows(sub, sub.omega());
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    const std::size_t n_threads =
        std::min<std::size_t>(cfg.jobs, cfg.omegas.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < cfg.omegas.size(); ++i) {
        if (!failures[i].empty())
            throw ContractError("sweep entry omega=" + fmt12(cfg.omegas[i]) + ": " + failures[i]);
        for (auto& row : results[i]) report.rows.push_back(std::move(row));
    }
    return report;
}

Report run(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command == "instanton") return run_instanton(cfg);
    if (cfg.command == "determinant") return run_determinant(cfg);
    if (cfg.command == "gas") return run_gas(cfg);
    if (cfg.command == "spectrum") return run_spectrum(cfg);
    if (cfg.command == "compare") return run_compare(cfg);
    return run_sweep(cfg);
}

}  // namespace triplewell

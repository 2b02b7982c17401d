// Command-line driver: kink construction, determinant ratios, dilute-gas
// spectra, exact-diagonalization cross-checks, and parameter sweeps.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical-regime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "triplewell/errors.hpp"
#include "triplewell/report.hpp"

namespace {

using triplewell::CoefficientConvention;
using triplewell::OutputFormat;
using triplewell::RunConfig;

struct ConfigFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

// flat TOML-style file: `key = value` lines, '#' comments, [a, b] arrays
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigFileError(path + ": cannot open config file");
    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigFileError(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigFileError(path + ":" + std::to_string(lineno) +
                                  ": empty key or value");
        if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
            value = trim(value.substr(1, value.size() - 2));
        values[key] = strip_quotes(value);
        static const std::vector<std::string> known{
            "omega", "half_box", "grid_n", "levels", "convention",
            "format", "output", "jobs", "command"};
        bool ok = false;
        for (const auto& k : known) ok = ok || k == key;
        if (!ok)
            throw ConfigFileError(path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
    return values;
}

std::vector<double> parse_omega_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad omega value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty omega list");
    return out;
}

struct CliOptions {
    std::string omega_text;
    std::optional<double> half_box;
    std::optional<int> grid_n;
    std::optional<int> levels;
    std::optional<std::string> convention;
    std::optional<std::string> format;
    std::optional<std::string> output;
    std::optional<int> jobs;
    std::optional<std::string> sweep_command;
    std::string config_path;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--omega", opt.omega_text, "frequency parameter (comma list for sweep)");
    cmd->add_option("--half-box", opt.half_box, "half size T/2 of the euclidean box");
    cmd->add_option("--grid-n", opt.grid_n, "grid points for the diagonalization oracle");
    cmd->add_option("--levels", opt.levels, "eigenvalue count for spectrum");
    cmd->add_option("--convention", opt.convention, "canonical|literal")
        ->check(CLI::IsMember({"canonical", "literal"}));
    cmd->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", opt.output, "output path (default stdout)");
    cmd->add_option("--jobs", opt.jobs, "sweep concurrency limit");
    cmd->add_option("--config", opt.config_path, "flat TOML-style config file");
}

RunConfig assemble(const std::string& command, const CliOptions& opt) {
    RunConfig cfg;
    cfg.command = command;

    std::map<std::string, std::string> file;
    if (!opt.config_path.empty()) file = parse_config_file(opt.config_path);
    auto file_value = [&](const char* key) -> std::optional<std::string> {
        auto it = file.find(key);
        if (it == file.end()) return std::nullopt;
        return it->second;
    };

    // flags take precedence over the config file
    std::string omega_text = opt.omega_text;
    if (omega_text.empty())
        if (auto v = file_value("omega")) omega_text = *v;
    if (!omega_text.empty()) cfg.omegas = parse_omega_list(omega_text);

    if (opt.half_box)
        cfg.half_box = *opt.half_box;
    else if (auto v = file_value("half_box"))
        cfg.half_box = std::stod(*v);

    if (opt.grid_n)
        cfg.grid_n = *opt.grid_n;
    else if (auto v = file_value("grid_n"))
        cfg.grid_n = std::stoi(*v);

    if (opt.levels)
        cfg.levels = *opt.levels;
    else if (auto v = file_value("levels"))
        cfg.levels = std::stoi(*v);

    std::string convention = opt.convention.value_or("");
    if (convention.empty())
        if (auto v = file_value("convention")) convention = *v;
    if (!convention.empty()) {
        if (convention != "canonical" && convention != "literal")
            throw std::invalid_argument("convention must be canonical or literal");
        cfg.convention = convention == "canonical" ? CoefficientConvention::canonical
                                                   : CoefficientConvention::literal;
    }

    std::string format = opt.format.value_or("");
    if (format.empty())
        if (auto v = file_value("format")) format = *v;
    if (!format.empty()) {
        if (format != "csv" && format != "json")
            throw std::invalid_argument("format must be csv or json");
        cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    }

    if (opt.output)
        cfg.output = *opt.output;
    else if (auto v = file_value("output"))
        cfg.output = *v;

    if (opt.jobs)
        cfg.jobs = *opt.jobs;
    else if (auto v = file_value("jobs"))
        cfg.jobs = std::stoi(*v);

    if (command == "sweep") {
        std::string inner = opt.sweep_command.value_or("");
        if (inner.empty())
            if (auto v = file_value("command")) inner = *v;
        if (inner.empty())
            throw std::invalid_argument("sweep requires --command");
        cfg.sweep_command = inner;
    }
    return cfg;
}

int emit(const triplewell::Report& report, const RunConfig& cfg) {
    const std::string text = report.render(cfg.format);
    if (cfg.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write to '" << cfg.output << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical tunneling analysis of the symmetric triple well"};
    app.require_subcommand(1);

    std::map<std::string, CliOptions> options;
    for (const char* name : {"instanton", "determinant", "gas", "spectrum", "compare", "sweep"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common_flags(cmd, options[name]);
        if (std::string(name) == "sweep")
            cmd->add_option("--command", options[name].sweep_command,
                            "inner command: determinant|gas|spectrum|compare");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const RunConfig cfg = assemble(command, options[command]);
        cfg.validate();
        return emit(triplewell::run(cfg), cfg);
    } catch (const ConfigFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const triplewell::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// aircoord: equilibria of airport-airline channel structures.
//
// Subcommands: solve, sweep, tax, duopoly, verify. Every run is driven by a
// config file; results land in --out as CSV or JSON with a fixed column
// order and 6-significant-digit formatting.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aircoord/config.hpp"
#include "aircoord/io.hpp"
#include "aircoord/verify.hpp"

namespace {

using namespace aircoord;
namespace fs = std::filesystem;

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::string contract_filter;
};

std::vector<Structure> selected_contracts(const RunConfig& rc, const CliOptions& opt) {
    if (opt.contract_filter.empty()) return rc.contracts;
    std::vector<Structure> out;
    std::istringstream list(opt.contract_filter);
    std::string item;
    while (std::getline(list, item, ',')) {
        const auto st = structure_from_string(item);
        if (!st) throw ConfigError("--contract: unknown structure '" + item + "'");
        out.push_back(*st);
    }
    return out;
}

fs::path out_path(const CliOptions& opt, const std::string& name) {
    return fs::path(opt.out_dir) / name;
}

int cmd_solve(const RunConfig& rc, const CliOptions& opt) {
    io::Table table;
    table.header = io::equilibrium_columns();
    io::json rows = io::json::array();
    for (Structure st : selected_contracts(rc, opt)) {
        const Equilibrium eq = solver::solve_contract(rc.params, rc.contract(st));
        table.rows.push_back(io::equilibrium_row(rc.params, eq));
        rows.push_back(io::equilibrium_json(rc.params, eq));
    }
    if (opt.format == "json") {
        io::atomic_write(out_path(opt, "solve.json"), rows.dump(2) + "\n");
        std::cout << rows.dump(2) << "\n";
    } else {
        const std::string csv = table.to_csv();
        io::atomic_write(out_path(opt, "solve.csv"), csv);
        std::cout << csv;
    }
    return 0;
}

int cmd_sweep(const RunConfig& rc, const CliOptions& opt) {
    if (!rc.sweep) throw ConfigError(opt.config_path + ": sweep mode needs a [sweep] section");
    const auto grid = rc.sweep->grid();
    struct Column {
        const char* name;
        std::optional<double> (*get)(const Equilibrium&);
    };
    static const Column columns[] = {
        {"fee", [](const Equilibrium& e) { return e.fee; }},
        {"fare", [](const Equilibrium& e) { return std::optional<double>(e.fare); }},
        {"theta", [](const Equilibrium& e) { return std::optional<double>(e.theta); }},
        {"demand", [](const Equilibrium& e) { return std::optional<double>(e.demand); }},
        {"airline_profit", [](const Equilibrium& e) { return e.airline_profit; }},
        {"airport_profit", [](const Equilibrium& e) { return e.airport_profit; }},
        {"airport_utility", [](const Equilibrium& e) { return e.airport_utility; }},
        {"total_profit", [](const Equilibrium& e) { return std::optional<double>(e.total_profit); }},
        {"welfare", [](const Equilibrium& e) { return std::optional<double>(e.welfare); }},
    };

    io::json all;
    all["parameter"] = rc.sweep->parameter;
    all["grid"] = grid;
    io::json series = io::json::object();
    for (Structure st : selected_contracts(rc, opt)) {
        const auto result =
            analysis::sweep(rc.params, rc.contract(st), rc.sweep->parameter, grid);
        io::json per = io::json::object();
        for (const Column& col : columns) {
            bool defined = false;
            for (const auto& row : result.rows)
                if (row && col.get(*row)) defined = true;
            if (!defined) continue;
            io::Table t;
            t.header = {rc.sweep->parameter, col.name};
            io::json vals = io::json::array();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                std::string cell;  // infeasible grid points stay as gaps
                io::json jcell = nullptr;
                if (result.rows[i]) {
                    if (const auto v = col.get(*result.rows[i])) {
                        cell = io::fmt6(*v);
                        jcell = *v;
                    }
                }
                t.rows.push_back({io::fmt6(grid[i]), cell});
                vals.push_back(jcell);
            }
            per[col.name] = vals;
            if (opt.format == "csv") {
                const std::string name = "sweep_" + rc.sweep->parameter + "_" +
                                         std::string(to_string(st)) + "_" + col.name + ".csv";
                io::atomic_write(out_path(opt, name), t.to_csv());
            }
        }
        series[to_string(st)] = per;
    }
    if (opt.format == "json") {
        all["series"] = series;
        io::atomic_write(out_path(opt, "sweep.json"), all.dump(2) + "\n");
    }
    std::cout << "sweep of " << rc.sweep->parameter << " over [" << io::fmt6(grid.front())
              << ", " << io::fmt6(grid.back()) << "] x " << grid.size() << " written to "
              << opt.out_dir << "\n";
    return 0;
}

int cmd_tax(const RunConfig& rc, const CliOptions& opt) {
    if (!rc.tax) throw ConfigError(opt.config_path + ": tax mode needs a [tax] section");
    const auto grid = rc.tax->grid();
    io::Table summary;
    summary.header = {"structure", "t_star", "gtr_star", "unimodal"};
    io::json jall = io::json::object();
    for (Structure st : selected_contracts(rc, opt)) {
        if (st == Structure::cent) continue;  // the tax game is played over the contracts
        const auto curve = solver::optimal_tax(rc.params, rc.contract(st), rc.tax->theta0, grid);
        io::Table t;
        t.header = {"t", "fee", "fare", "theta", "demand", "airline_profit",
                    "airport_utility", "gtr"};
        io::json jrows = io::json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Equilibrium& eq = curve.rows[i];
            t.rows.push_back({io::fmt6(grid[i]), io::fmt6(eq.fee), io::fmt6(eq.fare),
                              io::fmt6(eq.theta), io::fmt6(eq.demand),
                              io::fmt6(eq.airline_profit), io::fmt6(eq.airport_utility),
                              io::fmt6(eq.tax_revenue)});
            io::json j = io::equilibrium_json(rc.params, eq);
            j["t"] = grid[i];
            jrows.push_back(j);
        }
        if (opt.format == "csv")
            io::atomic_write(out_path(opt, std::string("tax_") + to_string(st) + ".csv"),
                             t.to_csv());
        io::json jc;
        jc["rows"] = jrows;
        jc["t_star"] = curve.t_star;
        jc["gtr_star"] = curve.gtr_star;
        jc["unimodal"] = curve.unimodal;
        jall[to_string(st)] = jc;
        summary.rows.push_back({to_string(st), io::fmt6(curve.t_star),
                                io::fmt6(curve.gtr_star), curve.unimodal ? "yes" : "no"});
    }
    if (opt.format == "json")
        io::atomic_write(out_path(opt, "tax.json"), jall.dump(2) + "\n");
    else
        io::atomic_write(out_path(opt, "tax_summary.csv"), summary.to_csv());
    std::cout << summary.to_csv();
    return 0;
}

int cmd_duopoly(const RunConfig& rc, const CliOptions& opt) {
    if (!rc.duopoly)
        throw ConfigError(opt.config_path + ": duopoly mode needs a [duopoly] section");
    const DuopolyParams d = rc.duopoly->build(rc.params);
    const Structure st = *structure_from_string(rc.duopoly->structure);
    const DuopolyEquilibrium eq = solver::duopoly_solve(d, st);
    io::Table t;
    t.header = {"structure", "mode", "fee", "fare1", "fare2", "theta1", "theta2",
                "demand1", "demand2", "airline_profit1", "airline_profit2",
                "airport_profit", "airport_utility"};
    t.rows.push_back({to_string(st), rc.duopoly->mode, io::fmt6(eq.fee),
                      io::fmt6(eq.decisions.fare1), io::fmt6(eq.decisions.fare2),
                      io::fmt6(eq.decisions.theta1), io::fmt6(eq.decisions.theta2),
                      io::fmt6(eq.demand1), io::fmt6(eq.demand2),
                      io::fmt6(eq.airline_profit1), io::fmt6(eq.airline_profit2),
                      io::fmt6(eq.airport_profit), io::fmt6(eq.airport_utility)});
    if (opt.format == "json") {
        io::json j;
        j["structure"] = to_string(st);
        j["mode"] = rc.duopoly->mode;
        j["fee"] = eq.fee;
        j["fare1"] = eq.decisions.fare1;
        j["fare2"] = eq.decisions.fare2;
        j["theta1"] = eq.decisions.theta1;
        j["theta2"] = eq.decisions.theta2;
        j["demand1"] = eq.demand1;
        j["demand2"] = eq.demand2;
        j["airline_profit1"] = eq.airline_profit1;
        j["airline_profit2"] = eq.airline_profit2;
        j["airport_profit"] = eq.airport_profit;
        j["airport_utility"] = eq.airport_utility;
        io::atomic_write(out_path(opt, "duopoly.json"), j.dump(2) + "\n");
        std::cout << j.dump(2) << "\n";
    } else {
        io::atomic_write(out_path(opt, "duopoly.csv"), t.to_csv());
        std::cout << t.to_csv();
    }
    return 0;
}

int cmd_verify(RunConfig rc, const CliOptions& opt) {
    if (opt.seed) rc.seed = *opt.seed;
    const auto report = verify::run_verification(rc);
    io::atomic_write(out_path(opt, "verify_report.txt"), report.text());
    io::atomic_write(out_path(opt, "verify_report.json"), report.to_json().dump(2) + "\n");
    std::cout << report.text();
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibria of airport-airline channel structures"};
    app.require_subcommand(1);

    CliOptions opt;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "run configuration file")->required();
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", opt.seed, "seed for the randomized checks");
        cmd->add_option("--contract", opt.contract_filter,
                        "comma-separated subset of CENT,D-CENT,CSC,RSC,LTT");
        return cmd;
    };
    auto* solve = add_common(app.add_subcommand("solve", "solve the configured structures"));
    auto* sweep = add_common(app.add_subcommand("sweep", "sweep one parameter"));
    auto* tax = add_common(app.add_subcommand("tax", "tax-level grid and revenue curve"));
    auto* duopoly = add_common(app.add_subcommand("duopoly", "two-airline competition"));
    auto* verify_cmd =
        add_common(app.add_subcommand("verify", "run the full verification battery"));

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig rc = aircoord::load_config(opt.config_path);
        if (solve->parsed()) return cmd_solve(rc, opt);
        if (sweep->parsed()) return cmd_sweep(rc, opt);
        if (tax->parsed()) return cmd_tax(rc, opt);
        if (duopoly->parsed()) return cmd_duopoly(rc, opt);
        if (verify_cmd->parsed()) return cmd_verify(rc, opt);
    } catch (const aircoord::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const aircoord::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const aircoord::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const aircoord::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

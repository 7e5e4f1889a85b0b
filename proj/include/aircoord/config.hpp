#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aircoord/types.hpp"

namespace aircoord {

struct SweepSpec {
    std::string parameter = "xi";
    double min = 0.0;
    double max = 3.0;
    int steps = 61;

    std::vector<double> grid() const {
        if (steps < 1) throw ConfigError("sweep steps must be >= 1");
        if (steps == 1) return {min};
        std::vector<double> g(steps);
        for (int i = 0; i < steps; ++i) g[i] = min + (max - min) * i / (steps - 1);
        return g;
    }
};

struct TaxSpec {
    double theta0 = 6.5;
    double t_min = 0.0;
    double t_max = 12.0;
    int t_steps = 13;

    std::vector<double> grid() const {
        if (t_steps < 1) throw ConfigError("tax steps must be >= 1");
        if (t_steps == 1) return {t_min};
        std::vector<double> g(t_steps);
        for (int i = 0; i < t_steps; ++i)
            g[i] = t_min + (t_max - t_min) * i / (t_steps - 1);
        return g;
    }
};

struct DuopolySpec {
    std::string mode = "price";
    double beta1 = 0.2;
    double beta2 = 0.2;
    double xi1 = 0.2;
    double xi2 = 0.6;
    double r1 = 1.0;
    double r2 = 1.0;
    std::string structure = "D-CENT";  ///< D-CENT or RSC

    DuopolyParams build(const ChannelParams& pr) const {
        DuopolyParams d;
        d.alpha = pr.alpha;
        d.beta = pr.beta;
        d.xi = pr.xi;
        d.invest_cost = pr.invest_cost;
        d.cost_airport = pr.cost_airport;
        d.mu = pr.mu;
        d.w_prime = pr.w_prime;
        if (mode == "price") d.mode = DuopolyParams::Mode::price;
        else if (mode == "greening") d.mode = DuopolyParams::Mode::greening;
        else throw ConfigError("duopoly mode must be 'price' or 'greening'");
        d.beta1 = beta1;
        d.beta2 = beta2;
        d.xi1 = xi1;
        d.xi2 = xi2;
        d.r1 = r1;
        d.r2 = r2;
        return d;
    }
};

/// One full run description: calibration, contract terms, and the optional
/// sweep / tax / duopoly blocks the execution modes draw from.
struct RunConfig {
    ChannelParams params;
    std::vector<Structure> contracts{Structure::cent, Structure::dcent, Structure::csc,
                                     Structure::rsc, Structure::ltt};
    double psi = 0.68;
    std::optional<double> phi;  ///< fixed CSC share; disengaged = optimized
    double reservation = 2500.0;
    std::optional<SweepSpec> sweep;
    std::optional<TaxSpec> tax;
    std::optional<DuopolySpec> duopoly;
    std::uint64_t seed = 424242;

    ContractSpec contract(Structure s) const {
        switch (s) {
            case Structure::cent: return ContractSpec::centralised();
            case Structure::dcent: return ContractSpec::decentralised();
            case Structure::csc: return ContractSpec::cost_sharing(phi);
            case Structure::rsc: return ContractSpec::revenue_sharing(psi);
            case Structure::ltt: return ContractSpec::two_part_tariff(reservation);
        }
        throw ModelError("unknown structure");
    }
};

inline std::optional<Structure> structure_from_string(const std::string& s) {
    if (s == "CENT") return Structure::cent;
    if (s == "D-CENT" || s == "DCENT") return Structure::dcent;
    if (s == "CSC") return Structure::csc;
    if (s == "RSC") return Structure::rsc;
    if (s == "LTT") return Structure::ltt;
    return std::nullopt;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string where(const std::string& file, int line) {
    return file + ":" + std::to_string(line) + ": ";
}

inline double parse_number(const std::string& file, int line, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(where(file, line) + "expected a number, got '" + v + "'");
    return x;
}

inline int parse_int(const std::string& file, int line, const std::string& value) {
    const double x = parse_number(file, line, value);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError(where(file, line) + "expected an integer, got '" + value + "'");
    return i;
}

} // namespace detail

/// Parses the key/value config format with [section] headers, '#' or ';'
/// comments. Unknown sections or keys are errors so typos cannot silently
/// change a run.
inline RunConfig parse_config_text(const std::string& text, const std::string& filename) {
    using detail::parse_int;
    using detail::parse_number;
    using detail::trim;
    using detail::where;

    RunConfig rc;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    bool saw_sweep = false, saw_tax = false, saw_duopoly = false;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(where(filename, line) + "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "model" && section != "contract" && section != "sweep" &&
                section != "tax" && section != "duopoly" && section != "run")
                throw ConfigError(where(filename, line) + "unknown section [" + section + "]");
            if (section == "sweep") { rc.sweep.emplace(); saw_sweep = true; }
            if (section == "tax") { rc.tax.emplace(); saw_tax = true; }
            if (section == "duopoly") { rc.duopoly.emplace(); saw_duopoly = true; }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where(filename, line) + "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError(where(filename, line) + "key '" + key + "' outside any section");

        if (section == "model") {
            ChannelParams& p = rc.params;
            if (key == "alpha") p.alpha = parse_number(filename, line, value);
            else if (key == "beta") p.beta = parse_number(filename, line, value);
            else if (key == "gamma") p.gamma = parse_number(filename, line, value);
            else if (key == "f") p.freq = parse_number(filename, line, value);
            else if (key == "xi") p.xi = parse_number(filename, line, value);
            else if (key == "I") p.invest_cost = parse_number(filename, line, value);
            else if (key == "c") p.landing_fee = parse_number(filename, line, value);
            else if (key == "c_AL") p.cost_airline = parse_number(filename, line, value);
            else if (key == "c_AP") p.cost_airport = parse_number(filename, line, value);
            else if (key == "mu") p.mu = parse_number(filename, line, value);
            else if (key == "w_prime") p.w_prime = parse_number(filename, line, value);
            else throw ConfigError(where(filename, line) + "unknown model key '" + key + "'");
        } else if (section == "contract") {
            if (key == "psi") rc.psi = parse_number(filename, line, value);
            else if (key == "phi") {
                if (value == "optimize") rc.phi.reset();
                else rc.phi = parse_number(filename, line, value);
            } else if (key == "pi_bar") rc.reservation = parse_number(filename, line, value);
            else if (key == "contracts") {
                rc.contracts.clear();
                std::istringstream list(value);
                std::string item;
                while (std::getline(list, item, ',')) {
                    const auto st = structure_from_string(trim(item));
                    if (!st)
                        throw ConfigError(where(filename, line) + "unknown structure '" +
                                          trim(item) + "'");
                    rc.contracts.push_back(*st);
                }
                if (rc.contracts.empty())
                    throw ConfigError(where(filename, line) + "empty contract list");
            } else
                throw ConfigError(where(filename, line) + "unknown contract key '" + key + "'");
        } else if (section == "sweep") {
            SweepSpec& sw = *rc.sweep;
            if (key == "parameter") sw.parameter = value;
            else if (key == "min") sw.min = parse_number(filename, line, value);
            else if (key == "max") sw.max = parse_number(filename, line, value);
            else if (key == "steps") sw.steps = parse_int(filename, line, value);
            else throw ConfigError(where(filename, line) + "unknown sweep key '" + key + "'");
        } else if (section == "tax") {
            TaxSpec& tx = *rc.tax;
            if (key == "theta0") tx.theta0 = parse_number(filename, line, value);
            else if (key == "t_min") tx.t_min = parse_number(filename, line, value);
            else if (key == "t_max") tx.t_max = parse_number(filename, line, value);
            else if (key == "t_steps") tx.t_steps = parse_int(filename, line, value);
            else throw ConfigError(where(filename, line) + "unknown tax key '" + key + "'");
        } else if (section == "duopoly") {
            DuopolySpec& duo = *rc.duopoly;
            if (key == "mode") duo.mode = value;
            else if (key == "beta1") duo.beta1 = parse_number(filename, line, value);
            else if (key == "beta2") duo.beta2 = parse_number(filename, line, value);
            else if (key == "xi1") duo.xi1 = parse_number(filename, line, value);
            else if (key == "xi2") duo.xi2 = parse_number(filename, line, value);
            else if (key == "r1") duo.r1 = parse_number(filename, line, value);
            else if (key == "r2") duo.r2 = parse_number(filename, line, value);
            else if (key == "structure") {
                if (!structure_from_string(value))
                    throw ConfigError(where(filename, line) + "unknown structure '" + value + "'");
                duo.structure = value;
            } else
                throw ConfigError(where(filename, line) + "unknown duopoly key '" + key + "'");
        } else if (section == "run") {
            if (key == "seed") {
                const double x = parse_number(filename, line, value);
                if (x < 0.0) throw ConfigError(where(filename, line) + "seed must be nonnegative");
                rc.seed = static_cast<std::uint64_t>(x);
            } else
                throw ConfigError(where(filename, line) + "unknown run key '" + key + "'");
        }
    }
    (void)saw_sweep;
    (void)saw_tax;
    (void)saw_duopoly;
    return rc;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

/// Canonical serialization; parsing it back reproduces the identical run
/// (doubles are written with full precision).
inline std::string serialize(const RunConfig& rc) {
    std::ostringstream out;
    const auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "[model]\n";
    out << "alpha = " << num(rc.params.alpha) << "\n";
    out << "beta = " << num(rc.params.beta) << "\n";
    out << "gamma = " << num(rc.params.gamma) << "\n";
    out << "f = " << num(rc.params.freq) << "\n";
    out << "xi = " << num(rc.params.xi) << "\n";
    out << "I = " << num(rc.params.invest_cost) << "\n";
    out << "c = " << num(rc.params.landing_fee) << "\n";
    out << "c_AL = " << num(rc.params.cost_airline) << "\n";
    out << "c_AP = " << num(rc.params.cost_airport) << "\n";
    out << "mu = " << num(rc.params.mu) << "\n";
    out << "w_prime = " << num(rc.params.w_prime) << "\n";
    out << "\n[contract]\ncontracts = ";
    for (std::size_t i = 0; i < rc.contracts.size(); ++i)
        out << (i ? "," : "") << to_string(rc.contracts[i]);
    out << "\npsi = " << num(rc.psi) << "\n";
    out << "phi = " << (rc.phi ? num(*rc.phi) : "optimize") << "\n";
    out << "pi_bar = " << num(rc.reservation) << "\n";
    if (rc.sweep) {
        out << "\n[sweep]\nparameter = " << rc.sweep->parameter << "\n";
        out << "min = " << num(rc.sweep->min) << "\nmax = " << num(rc.sweep->max) << "\n";
        out << "steps = " << rc.sweep->steps << "\n";
    }
    if (rc.tax) {
        out << "\n[tax]\ntheta0 = " << num(rc.tax->theta0) << "\n";
        out << "t_min = " << num(rc.tax->t_min) << "\nt_max = " << num(rc.tax->t_max) << "\n";
        out << "t_steps = " << rc.tax->t_steps << "\n";
    }
    if (rc.duopoly) {
        out << "\n[duopoly]\nmode = " << rc.duopoly->mode << "\n";
        out << "structure = " << rc.duopoly->structure << "\n";
        out << "beta1 = " << num(rc.duopoly->beta1) << "\nbeta2 = " << num(rc.duopoly->beta2)
            << "\n";
        out << "xi1 = " << num(rc.duopoly->xi1) << "\nxi2 = " << num(rc.duopoly->xi2) << "\n";
        out << "r1 = " << num(rc.duopoly->r1) << "\nr2 = " << num(rc.duopoly->r2) << "\n";
    }
    out << "\n[run]\nseed = " << rc.seed << "\n";
    return out.str();
}

} // namespace aircoord

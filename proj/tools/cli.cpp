// cli.cpp: subcommands map, dynamics, groundstate, phase-scan, critical, oracle

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "tisbm/dynamics.hpp"
#include "tisbm/errors.hpp"
#include "tisbm/groundstate.hpp"
#include "tisbm/io.hpp"
#include "tisbm/model.hpp"
#include "tisbm/oracle.hpp"

namespace tisbm::cli {

namespace {

using nlohmann::json;

class Refused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string params_path;
    std::string out_path;

    // inline parameters, used when no --params file is given
    double omega1{0.0}, omega2{0.0}, gamma_x{0.0}, gamma_y{0.0}, gamma_z{0.0};
    double alpha_a{0.0}, alpha_b{0.0}, omega_c{1.0};

    double tol{1e-12};
    int max_iter{10000};
    std::optional<double> kondo_cutoff;
    bool include_gamma_z{false};

    double t0{0.0}, t1{10.0};
    std::size_t nt{101};
    double temperature{0.0};
    std::string initial{"pp"};

    double alpha_lo{0.0}, alpha_hi{0.05};
    int na{200};
    std::vector<double> ks;

    int n_max{4};
    std::string check{"decomposition"};
    std::string trace_out;
    std::string matrix_out;
    double oracle_tol{1e-10};
};

TisbmParams resolve_params(const RunConfig& cfg) {
    if (!cfg.params_path.empty()) {
        return io::load_params(cfg.params_path);
    }
    TisbmParams p;
    p.omega1 = cfg.omega1;
    p.omega2 = cfg.omega2;
    p.gamma_x = cfg.gamma_x;
    p.gamma_y = cfg.gamma_y;
    p.gamma_z = cfg.gamma_z;
    p.bath = ContinuumBath{cfg.alpha_a, cfg.alpha_b, 1.0, cfg.omega_c};
    validate(p);
    return p;
}

SolverConfig solver_config(const RunConfig& cfg) {
    SolverConfig s;
    s.tol = cfg.tol;
    s.max_iter = cfg.max_iter;
    s.kondo_cutoff = cfg.kondo_cutoff;
    s.include_gamma_z_shift = cfg.include_gamma_z;
    s.validate();
    return s;
}

const ContinuumBath& require_continuum(const TisbmParams& p, const char* cmd) {
    const auto* c = std::get_if<ContinuumBath>(&p.bath);
    if (c == nullptr) {
        throw UnsupportedQuery(std::string(cmd) + ": requires a continuum bath description");
    }
    return *c;
}

bool sector_is_dfs(const TisbmParams& p, Sector s) {
    if (const auto* c = std::get_if<ContinuumBath>(&p.bath)) {
        return is_decoherence_free_continuum(*c, s);
    }
    return is_decoherence_free(p, s);
}

void emit_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// --- subcommands ----------------------------------------------------------

void cmd_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto p = resolve_params(cfg);
    const auto sectors = map_to_sectors(p);
    json j;
    j["a"] = io::sector_to_json(sectors.a);
    j["b"] = io::sector_to_json(sectors.b);
    j["dfs_a"] = sector_is_dfs(p, Sector::A);
    j["dfs_b"] = sector_is_dfs(p, Sector::B);
    auto warnings = validity_check(sectors.a, cfg.temperature);
    const auto wb = validity_check(sectors.b, cfg.temperature);
    warnings.insert(warnings.end(), wb.begin(), wb.end());
    j["warnings"] = warnings;
    emit_warnings(warnings, err);
    out << io::dump_json(j) << '\n';
}

void cmd_dynamics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto p = resolve_params(cfg);
    const auto& bath = require_continuum(p, "dynamics");
    if (bath.s != 1.0) {
        throw DomainError("dynamics: closed forms exist only for the Ohmic case s = 1");
    }
    const auto sectors = map_to_sectors(p);
    emit_warnings(validity_check(sectors.a, cfg.temperature), err);
    const auto times = time_grid(cfg.t0, cfg.t1, cfg.nt);
    const double wc = bath.omega_c;
    const double gamma_a = std::abs(sectors.a.gamma_eff);

    MagnetizationTrace tr;
    if (cfg.initial == "mixed") {
        if (std::abs(bath.alpha_a - 0.5) > 1e-12 || bath.alpha_b != 0.0) {
            throw DomainError("dynamics --initial mixed: requires alpha_a = 1/2 and alpha_b = 0");
        }
        emit_warnings(validity_check(sectors.b, cfg.temperature), err);
        tr = mixed_subspace_trace(gamma_a, sectors.b.gamma_eff, wc, times);
    } else if (cfg.initial == "pp") {
        const auto regime = classify_regime(bath.alpha_a, cfg.temperature, gamma_a, wc, sectors.a.omega_eff,
                                            is_decoherence_free_continuum(bath, Sector::A));
        switch (regime) {
            case DynamicalRegime::DecoherenceFree:
                tr = coherent_sector_trace(sectors.a.omega_eff, sectors.a.gamma_eff, times);
                break;
            case DynamicalRegime::ExactDecayAlphaHalf:
                tr = alpha_half_trace(gamma_a, wc, times);
                break;
            case DynamicalRegime::ThermalExponentialRelaxation:
                tr = relaxation_trace(bath.alpha_a, gamma_a, wc, cfg.temperature, times);
                break;
            case DynamicalRegime::LocalizedT0:
                tr = frozen_trace(times);
                break;
            default:
                throw Refused(std::string("dynamics: regime '") + to_string(regime) +
                              "' has only a qualitative description; no waveform is emitted (T_c scale = " +
                              io::format_double(bath.alpha_a < 1.0 && gamma_a > 0.0
                                                    ? critical_temperature(gamma_a, bath.alpha_a, wc)
                                                    : 0.0) +
                              ")");
        }
    } else {
        throw CLI::ValidationError("--initial", "must be 'pp' or 'mixed'");
    }
    io::write_trace_csv(out, tr);
}

void cmd_groundstate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto p = resolve_params(cfg);
    const auto& bath = require_continuum(p, "groundstate");
    const auto scfg = solver_config(cfg);
    const auto sectors = map_to_sectors(p);

    auto solve = [&](const SectorParams& s, double alpha) {
        const auto sol = solve_ground_state(s, alpha, scfg);
        const double g = std::abs(s.gamma_eff);
        json j = {{"sector", to_string(sol.sector)},
                  {"alpha", alpha},
                  {"gamma_prime", sol.gamma_prime},
                  {"chi", sol.chi},
                  {"r", sol.r},
                  {"eta", sol.eta},
                  {"amp_a", sol.amp_a},
                  {"amp_b", sol.amp_b},
                  {"energy", sol.energy},
                  {"iterations", sol.iterations},
                  {"residual", sol.residual},
                  {"kondo_energy", kondo_energy(g, alpha, scfg.cutoff_for(s))}};
        return j;
    };
    json j;
    j["a"] = solve(sectors.a, bath.alpha_a);
    j["b"] = solve(sectors.b, bath.alpha_b);
    const auto pt = gap_lambda(p, bath.alpha_a, bath.alpha_b, scfg);
    j["lambda_gap"] = pt.lambda_gap;
    j["gs_sector"] = to_string(pt.gs_sector);
    j["order_parameter"] = pt.order_parameter;
    out << io::dump_json(j) << '\n';
}

std::vector<double> resolve_ks(const RunConfig& cfg, const TisbmParams& p) {
    if (!cfg.ks.empty()) return cfg.ks;
    const auto& bath = require_continuum(p, "k");
    if (bath.alpha_a > 0.0) return {bath.alpha_b / bath.alpha_a};
    return {1.0};
}

void check_alpha_grid(const RunConfig& cfg) {
    if (!(cfg.alpha_lo >= 0.0) || !(cfg.alpha_hi >= cfg.alpha_lo) || cfg.alpha_hi >= 1.0 || cfg.na < 1) {
        throw DomainError("alpha grid must satisfy 0 <= alpha-lo <= alpha-hi < 1 and na >= 1");
    }
}

bool cmd_phase_scan(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto p = resolve_params(cfg);
    const auto scfg = solver_config(cfg);
    check_alpha_grid(cfg);
    const auto ks = resolve_ks(cfg, p);

    bool all_ok = true;
    out << io::kPhaseScanHeader << '\n';
    for (double k : ks) {
        if (!(k > 0.0)) throw DomainError("phase-scan: k must be > 0");
        for (int i = 0; i < cfg.na; ++i) {
            const double alpha =
                cfg.na == 1 ? cfg.alpha_lo : cfg.alpha_lo + (cfg.alpha_hi - cfg.alpha_lo) * i / (cfg.na - 1);
            try {
                auto pt = gap_lambda(p, alpha, k * alpha, scfg);
                pt.k = k;
                io::write_phase_row(out, pt);
            } catch (const std::exception& e) {
                all_ok = false;
                io::write_phase_error_row(out, alpha, k * alpha, k, e.what());
            }
        }
    }
    return all_ok;
}

void cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto p = resolve_params(cfg);
    const auto scfg = solver_config(cfg);
    const auto ks = resolve_ks(cfg, p);
    if (ks.size() != 1) {
        throw CLI::ValidationError("--k", "critical takes exactly one k");
    }
    if (!(cfg.alpha_hi > 0.0) || cfg.na < 2) {
        throw DomainError("critical: needs alpha-hi > 0 and na >= 2");
    }
    const auto rep = classify_transition(p, ks.front(), cfg.alpha_hi, scfg, cfg.na);
    auto j = io::transition_to_json(rep);
    j["k"] = ks.front();
    out << io::dump_json(j) << '\n';
}

oracle::SpinState initial_spin_state(const std::string& name) {
    const double h = 1.0 / std::sqrt(2.0);
    if (name == "pp") return {1.0, 0.0, 0.0, 0.0};
    if (name == "pm") return {0.0, 1.0, 0.0, 0.0};
    if (name == "mp") return {0.0, 0.0, 1.0, 0.0};
    if (name == "mm") return {0.0, 0.0, 0.0, 1.0};
    if (name == "mixed") return {h, h, 0.0, 0.0};
    throw CLI::ValidationError("--initial", "oracle accepts pp, pm, mp, mm or mixed");
}

void cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto p = resolve_params(cfg);
    const auto* bath = std::get_if<DiscreteBath>(&p.bath);
    if (bath == nullptr) {
        throw UnsupportedQuery("oracle: requires a discrete bath");
    }
    oracle::TruncationSpec trunc{cfg.n_max, static_cast<int>(bath->modes.size()), oracle::dimension_cap_from_env()};

    const auto rep = oracle::verify_decomposition(p, trunc, cfg.oracle_tol);
    json j;
    j["check"] = cfg.check;
    j["dimension"] = rep.dimension;
    j["max_eigenvalue_deviation"] = rep.max_eigenvalue_deviation;
    j["worst_index"] = rep.worst_index;
    j["parity_conserved"] = rep.parity_conserved;
    j["purity_min"] = nullptr;

    if (!cfg.matrix_out.empty()) {
        std::ofstream m(cfg.matrix_out);
        io::write_matrix_csv(m, oracle::build_full(p, trunc));
    }

    if (cfg.check == "ground") {
        const auto g = oracle::oracle_ground(p, trunc);
        j["ground_energy"] = g.energy;
        j["ground_block"] = oracle::to_string(g.block);
        j["ground_gap"] = g.gap;
    } else if (cfg.check == "evolve") {
        const auto times = time_grid(cfg.t0, cfg.t1, cfg.nt);
        oracle::EvolveOptions opts;
        if (cfg.temperature > 0.0) {
            opts.bath = oracle::BathState::Thermal;
            opts.temperature = cfg.temperature;
        }
        const auto ev = oracle::oracle_evolve(p, trunc, initial_spin_state(cfg.initial), opts, times);
        const auto [pmin, pmax] = std::minmax_element(ev.parity.begin(), ev.parity.end());
        const auto [nmin, nmax] = std::minmax_element(ev.norm.begin(), ev.norm.end());
        j["purity_min"] = *std::min_element(ev.purity.begin(), ev.purity.end());
        j["parity_drift"] = *pmax - *pmin;
        j["norm_drift"] = *nmax - *nmin;
        j["truncation_weight_loss"] = ev.truncation_weight_loss;
        j["parity_conserved"] = rep.parity_conserved && (*pmax - *pmin) <= 1e-12;
        if (!cfg.trace_out.empty()) {
            std::ofstream t(cfg.trace_out);
            io::write_trace_csv(t, ev.trace);
        }
    } else if (cfg.check != "decomposition") {
        throw CLI::ValidationError("--check", "must be decomposition, ground or evolve");
    }
    out << io::dump_json(j) << '\n';
    if (!rep.match) {
        throw Mismatch("oracle: sector spectra deviate from the full spectrum by " +
                       io::format_double(rep.max_eigenvalue_deviation) + " at index " +
                       std::to_string(rep.worst_index));
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-impurity spin-boson model toolkit", "tisbm"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--params", cfg.params_path, "JSON parameter document")->check(CLI::ExistingFile);
        sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
        sub->add_option("--omega1", cfg.omega1, "inline: spin-1 frequency");
        sub->add_option("--omega2", cfg.omega2, "inline: spin-2 frequency");
        sub->add_option("--gamma-x", cfg.gamma_x, "inline: xx coupling");
        sub->add_option("--gamma-y", cfg.gamma_y, "inline: yy coupling");
        sub->add_option("--gamma-z", cfg.gamma_z, "inline: zz coupling");
        sub->add_option("--alpha-a", cfg.alpha_a, "inline: sector-a dissipation strength");
        sub->add_option("--alpha-b", cfg.alpha_b, "inline: sector-b dissipation strength");
        sub->add_option("--omega-c", cfg.omega_c, "inline: bath cutoff");
        sub->add_option("--temperature", cfg.temperature, "k_B T in units of omega_c");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "fixed-point tolerance");
        sub->add_option("--max-iter", cfg.max_iter, "fixed-point iteration cap");
        sub->add_option("--kondo-cutoff", cfg.kondo_cutoff, "Kondo cutoff D (default omega_c)");
        sub->add_flag("--include-gamma-z", cfg.include_gamma_z, "add the -+gamma_z sector shifts to energies");
    };
    auto add_time_grid = [&](CLI::App* sub) {
        sub->add_option("--t0", cfg.t0, "first time sample");
        sub->add_option("--t1", cfg.t1, "last time sample");
        sub->add_option("--nt", cfg.nt, "number of time samples");
    };
    auto add_alpha_grid = [&](CLI::App* sub) {
        sub->add_option("--alpha-lo", cfg.alpha_lo, "alpha grid start");
        sub->add_option("--alpha-hi", cfg.alpha_hi, "alpha grid end");
        sub->add_option("--na", cfg.na, "alpha grid points");
        sub->add_option("--k", cfg.ks, "comma list of k = alpha_b / alpha_a")->delimiter(',');
    };

    auto* map = app.add_subcommand("map", "sector parameters and decoherence-free flags");
    add_common(map);
    auto* dyn = app.add_subcommand("dynamics", "closed-form magnetization trace (CSV)");
    add_common(dyn);
    add_time_grid(dyn);
    dyn->add_option("--initial", cfg.initial, "pp: |++>, mixed: (|++>+|+->)/sqrt2");
    auto* gs = app.add_subcommand("groundstate", "variational ground state of both sectors");
    add_common(gs);
    add_solver(gs);
    auto* scan = app.add_subcommand("phase-scan", "sector gap over an (alpha, k) grid (CSV)");
    add_common(scan);
    add_solver(scan);
    add_alpha_grid(scan);
    auto* crit = app.add_subcommand("critical", "locate and classify the transition (JSON)");
    add_common(crit);
    add_solver(crit);
    add_alpha_grid(crit);
    auto* orc = app.add_subcommand("oracle", "exact-diagonalization checks (JSON)");
    add_common(orc);
    add_time_grid(orc);
    orc->add_option("--n-max", cfg.n_max, "per-mode Fock cutoff");
    orc->add_option("--check", cfg.check, "decomposition | ground | evolve");
    orc->add_option("--initial", cfg.initial, "pp, pm, mp, mm or mixed");
    orc->add_option("--trace-out", cfg.trace_out, "write the evolve trace as CSV");
    orc->add_option("--export-matrix", cfg.matrix_out, "write the full Hamiltonian as dense CSV");
    orc->add_option("--oracle-tol", cfg.oracle_tol, "spectrum agreement tolerance");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) {
            err << "error: cannot open output file '" << cfg.out_path << "'\n";
            return kUsage;
        }
        sink = &file;
    }

    try {
        if (map->parsed()) cmd_map(cfg, *sink, err);
        else if (dyn->parsed()) cmd_dynamics(cfg, *sink, err);
        else if (gs->parsed()) cmd_groundstate(cfg, *sink, err);
        else if (scan->parsed()) {
            if (!cmd_phase_scan(cfg, *sink, err)) {
                err << "error: one or more scan points failed; see the error column\n";
                return kConvergence;
            }
        } else if (crit->parsed()) cmd_critical(cfg, *sink, err);
        else if (orc->parsed()) cmd_oracle(cfg, *sink, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const UnsupportedQuery& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kConvergence;
    } catch (const Refused& e) {
        err << "error: " << e.what() << '\n';
        return kRefused;
    } catch (const Mismatch& e) {
        err << "error: " << e.what() << '\n';
        return kMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}

}  // namespace tisbm::cli

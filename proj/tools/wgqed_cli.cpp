// Command-line front end: sweeps, figure-style decay grids, bound-state and
// chirality reports, cross-validation of the three solvers.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wgqed/bic.hpp"
#include "wgqed/collision.hpp"
#include "wgqed/config.hpp"
#include "wgqed/dde.hpp"
#include "wgqed/field.hpp"
#include "wgqed/lattice.hpp"
#include "wgqed/markov.hpp"
#include "wgqed/trajectory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wgqed;

namespace {

constexpr const char* kToolVersion = "wgqed 1.0.0";

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::string solvers = "lattice,dde";
    std::string d_list = "1,2,3,4,5,6";
    std::string phi_c_list = "0,pi/2,pi";
    double t_max = 20.0;
    double dt = 0.01;
    std::string format = "csv";
    bool plot_script = false;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split_csv(s)) out.push_back(std::stoi(tok));
    if (out.empty()) throw ConfigError("empty integer list");
    return out;
}

std::vector<double> parse_phase_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split_csv(s)) out.push_back(parse_phase(tok));
    if (out.empty()) throw ConfigError("empty phase list");
    return out;
}

std::string phase_tag(double phi) {
    std::string t = format_phase(phi);
    std::string out;
    for (char c : t) {
        if (c == '/')
            out += '_';
        else if (c == '-')
            out += 'm';
        else if (c == '*')
            out += 'x';
        else if (c == '.')
            out += 'p';
        else
            out += c;
    }
    return out;
}

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

// All writes go through a temp file plus rename so concurrent sweep cells
// never expose half-written artifacts.
void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw NumericsError("cannot open output file: " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit_trajectory(const Trajectory& traj, const fs::path& path,
                     std::optional<double> ref_rate, const std::string& format,
                     const std::string& manifest_hash, bool include_bins = false) {
    const fs::path tmp = path.string() + ".stage";
    if (format == "csv") {
        traj.write_csv(tmp.string(), ref_rate);
        atomic_write(path, "# manifest " + manifest_hash + "\n" + slurp(tmp));
    } else {
        traj.write_json(tmp.string(), include_bins);
        json j = json::parse(slurp(tmp));
        j["manifest"] = manifest_hash;
        atomic_write(path, j.dump(2) + "\n");
    }
    fs::remove(tmp);
}

struct Manifest {
    json body;
    std::string hash;
};

Manifest write_manifest(const fs::path& out_dir, const std::string& command,
                        const json& detail) {
    json j;
    j["tool"] = kToolVersion;
    j["command"] = command;
    j["detail"] = detail;
    j["determinism"] = "seedless; all solvers deterministic";
    Manifest m;
    m.body = j;
    m.hash = fnv1a(j.dump());
    j["manifest_hash"] = m.hash;
    m.body = j;
    fs::create_directories(out_dir);
    atomic_write(out_dir / "manifest.json", j.dump(2) + "\n");
    return m;
}

json config_snapshot(const SystemConfig& cfg) {
    json j;
    j["J"] = cfg.J;
    j["g"] = cfg.g;
    j["omega_a"] = cfg.omega_a;
    j["N"] = cfg.N;
    j["boundary"] = cfg.boundary == Boundary::Ring ? "ring" : "open-chain";
    json cps = json::array();
    for (const auto& cp : cfg.coupling_points) cps.push_back({{"x", cp.x}, {"phi", cp.phi}});
    j["coupling_points"] = cps;
    j["hash"] = cfg.hash();
    return j;
}

int worker_count(std::size_t cells) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WGQED_WORKERS")) n = std::atoi(env);
    if (n < 1) n = 1;
    return static_cast<int>(std::min<std::size_t>(n, cells));
}

Trajectory run_solver(const std::string& solver, const SystemConfig& cfg,
                      double t_max, double dt, bool snapshots = false) {
    if (solver == "lattice") {
        EvolveOptions opts;
        opts.dt = dt;
        opts.store_snapshots = snapshots;
        return evolve(cfg, t_max, opts);
    }
    if (solver == "dde") {
        const auto dc = DerivedConstants::from(cfg);
        int substeps = 100;
        if (dc.t_d > 0) substeps = std::max(50, static_cast<int>(std::lround(dc.t_d / dt)));
        return integrate(DdeSpec::from_config(cfg), t_max, substeps);
    }
    if (solver == "collision") {
        const auto dc = DerivedConstants::from(cfg);
        double dtc = dt;
        if (dc.t_d > 0) dtc = dc.t_d / std::max(1.0, std::round(dc.t_d / dt));
        return run_collisions(cfg, t_max, dtc);
    }
    throw ConfigError("unknown solver: " + solver + " (lattice|dde|collision)");
}

void write_decay_plot_script(const fs::path& out_dir, const std::vector<int>& ds,
                             const std::vector<double>& phis,
                             const std::vector<std::string>& solvers, double Gamma) {
    std::ostringstream os;
    os << "set terminal pngcairo size 1400,900\n"
       << "set output 'decay_grid.png'\n"
       << "set multiplot layout " << (ds.size() + 2) / 3 << ",3\n"
       << "set logscale y\nset xlabel 'Jt'\nset ylabel '|eps|^2'\n"
       << "set datafile separator ','\n";
    for (int d : ds) {
        os << "set title 'd = " << d << "'\n";
        os << "plot exp(-" << Gamma << "*x) w l lc 'black' dt 2 t 'exp(-Gt)'";
        for (double phi : phis)
            for (const auto& s : solvers)
                os << ", \\\n  'decay_d" << d << "_phic" << phase_tag(phi) << "_" << s
                   << ".csv' u 1:4 w l t '" << s << " phi_c=" << format_phase(phi) << "'";
        os << "\n";
    }
    os << "unset multiplot\n";
    atomic_write(out_dir / "decay.gp", os.str());
}

int cmd_decay(const CommonArgs& args) {
    const auto ds = parse_int_list(args.d_list);
    const auto phis = parse_phase_list(args.phi_c_list);
    const auto solvers = split_csv(args.solvers);
    if (solvers.empty()) throw ConfigError("no solvers selected");
    if (args.format != "csv" && args.format != "json")
        throw ConfigError("format must be csv or json");

    struct Cell {
        int d;
        double phi_c;
    };
    std::vector<Cell> cells;
    for (int d : ds)
        for (double phi : phis) cells.push_back({d, phi});

    json detail;
    detail["d"] = ds;
    detail["phi_c"] = phis;
    detail["solvers"] = solvers;
    detail["t_max"] = args.t_max;
    detail["dt"] = args.dt;
    if (!args.config_path.empty())
        detail["base_config"] = config_snapshot(load_config(args.config_path));
    const Manifest manifest = write_manifest(args.out_dir, "decay", detail);

    std::mutex mu;
    json summary = json::array();
    std::vector<std::string> errors;
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const auto& cell = cells[i];
            try {
                SystemConfig cfg = args.config_path.empty()
                                       ? make_two_leg_config(cell.d, cell.phi_c)
                                       : load_config(args.config_path);
                if (!args.config_path.empty()) {
                    // a supplied config fixes everything but the swept cell
                    cfg = make_two_leg_config(cell.d, cell.phi_c, cfg.N);
                }
                const auto dc = DerivedConstants::from(cfg);
                const double cap = std::min(args.t_max, validity_window(cfg));

                json row;
                row["d"] = cell.d;
                row["phi_c"] = cell.phi_c;
                std::vector<Trajectory> trajs;
                for (const auto& solver : solvers) {
                    Trajectory traj = run_solver(solver, cfg, args.t_max, args.dt);
                    const fs::path path =
                        fs::path(args.out_dir) /
                        ("decay_d" + std::to_string(cell.d) + "_phic" +
                         phase_tag(cell.phi_c) + "_" + solver + "." + args.format);
                    emit_trajectory(traj, path, dc.Gamma, args.format, manifest.hash);
                    double worst = 0;
                    for (std::size_t k = 0; k < traj.times.size(); ++k) {
                        if (traj.times[k] > cap) break;
                        worst = std::max(worst, std::abs(traj.population(k) -
                                                         std::exp(-dc.Gamma * traj.times[k])));
                    }
                    row["max_dev_vs_exp"][solver] = worst;
                    trajs.push_back(std::move(traj));
                }
                if (trajs.size() >= 2)
                    row["max_dev_cross_solver"] =
                        max_population_deviation(trajs[0], trajs[1], cap);
                std::lock_guard<std::mutex> lock(mu);
                summary.push_back(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                errors.push_back("cell d=" + std::to_string(cell.d) + ": " + e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < worker_count(cells.size()); ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    json report;
    report["manifest"] = manifest.hash;
    report["cells"] = summary;
    report["errors"] = errors;
    atomic_write(fs::path(args.out_dir) / "decay_summary.json", report.dump(2) + "\n");
    if (args.plot_script) {
        const double Gamma = DerivedConstants::from(make_two_leg_config(1, 0)).Gamma;
        write_decay_plot_script(args.out_dir, ds, phis, solvers, Gamma);
    }
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    return errors.empty() ? 0 : 1;
}

int cmd_markov_solve(int L, const CommonArgs& args) {
    if (L < 2 || L > 8) throw ConfigError("L must be in [2, 8]");
    const PhaseVector pv = solve_markov_phases(L);
    std::cout << "L = " << L << (pv.is_markovian ? "  (markovian)" : "") << "\n";
    for (int j = 0; j < L; ++j)
        std::cout << "  phi_" << (j + 1) << " = " << format_phase(pv.phases[j]) << "\n";
    for (std::size_t n = 0; n < pv.residuals.size(); ++n)
        std::cout << "  C_" << (n + 1) << " = " << pv.residuals[n] << "\n";
    if (args.format == "json") {
        json detail;
        detail["L"] = L;
        const Manifest manifest = write_manifest(args.out_dir, "markov-solve", detail);
        json j;
        j["manifest"] = manifest.hash;
        j["L"] = L;
        j["phases"] = pv.phases;
        j["residuals"] = pv.residuals;
        j["is_markovian"] = pv.is_markovian;
        atomic_write(fs::path(args.out_dir) / ("markov_L" + std::to_string(L) + ".json"),
                     j.dump(2) + "\n");
    }
    return 0;
}

int cmd_bic(const CommonArgs& args) {
    const int d = parse_int_list(args.d_list).front();
    const double phi_c = parse_phase_list(args.phi_c_list).front();
    const SystemConfig cfg = args.config_path.empty() ? make_two_leg_config(d, phi_c)
                                                      : load_config(args.config_path);
    json detail;
    detail["config"] = config_snapshot(cfg);
    const Manifest manifest = write_manifest(args.out_dir, "bic", detail);

    json report;
    report["manifest"] = manifest.hash;
    bool exists = false;
    try {
        const BicState bic = build_bic(cfg);
        exists = true;
        report["m"] = bic.m;
        report["eps_pop"] = bic.eps_pop;
        report["energy"] = bic.energy;
        std::ostringstream csv;
        csv << "# manifest " << manifest.hash << "\nx,re,im,abs2\n";
        csv.precision(17);
        for (int x = 0; x < cfg.N; ++x)
            csv << x << "," << bic.profile[x].real() << "," << bic.profile[x].imag()
                << "," << std::norm(bic.profile[x]) << "\n";
        atomic_write(fs::path(args.out_dir) / "bic_profile.csv", csv.str());
    } catch (const NumericsError&) {
        exists = false;
    }
    report["exists"] = exists;

    const BicReport num = verify_bic_numerically(cfg, 1e-6);
    report["numerical"] = {{"found", num.found},
                           {"eigenvalue_error", num.eigenvalue_error},
                           {"overlap_defect", num.overlap_defect},
                           {"exterior_weight", num.exterior_weight}};
    atomic_write(fs::path(args.out_dir) / "bic_report.json", report.dump(2) + "\n");
    std::cout << "BIC exists: " << (exists ? "yes" : "no");
    if (exists) std::cout << "  eps_pop = " << report["eps_pop"].get<double>();
    std::cout << "\n";
    return 0;
}

int cmd_collision(const CommonArgs& args) {
    const int d = parse_int_list(args.d_list).front();
    const double phi_c = parse_phase_list(args.phi_c_list).front();
    const SystemConfig cfg = args.config_path.empty() ? make_two_leg_config(d, phi_c)
                                                      : load_config(args.config_path);
    json detail;
    detail["config"] = config_snapshot(cfg);
    detail["t_max"] = args.t_max;
    detail["dt"] = args.dt;
    const Manifest manifest = write_manifest(args.out_dir, "collision", detail);

    const Trajectory traj = run_solver("collision", cfg, args.t_max, args.dt);
    emit_trajectory(traj, fs::path(args.out_dir) / ("collision." + args.format),
                    std::nullopt, args.format, manifest.hash, /*include_bins=*/true);
    return 0;
}

int cmd_chirality(const CommonArgs& args) {
    const int d = parse_int_list(args.d_list).front();
    const double phi_c = parse_phase_list(args.phi_c_list).front();

    SystemConfig base = make_two_leg_config(d, phi_c);
    const auto dc0 = DerivedConstants::from(base);
    const double gamma = lindblad_rate(dc0.Gamma, phi_c, dc0.k_a, d);
    if (gamma < 1e-6)
        throw ConfigError("decay is inhibited at these phases; no emitted pulse to classify");
    // run long enough that the atom is essentially empty, then size the ring
    // so the wavefront never wraps into the counting window
    const double t_run = std::log(1e3) / gamma * 1.25;
    const int N = d + static_cast<int>(std::ceil(t_run * dc0.v / 0.9)) + 16;
    const SystemConfig cfg = make_two_leg_config(d, phi_c, N);

    json detail;
    detail["config"] = config_snapshot(cfg);
    detail["t_run"] = t_run;
    const Manifest manifest = write_manifest(args.out_dir, "chirality", detail);

    EvolveOptions opts;
    opts.dt = args.dt;
    opts.store_snapshots = true;
    opts.snapshot_interval = t_run;
    const Trajectory traj = evolve(cfg, t_run, opts);
    const EmissionFractions frac = emission_fractions(traj, cfg);
    const auto [right, left] = chirality_coefficients(phi_c);

    json report;
    report["manifest"] = manifest.hash;
    report["forward"] = frac.forward;
    report["backward"] = frac.backward;
    report["interior"] = frac.interior;
    report["atom_pop"] = frac.atom_pop;
    report["coefficient_right"] = {right.real(), right.imag()};
    report["coefficient_left"] = {left.real(), left.imag()};
    atomic_write(fs::path(args.out_dir) / "chirality.json", report.dump(2) + "\n");
    std::cout << "forward " << frac.forward << "  backward " << frac.backward
              << "  interior " << frac.interior << "\n";
    return 0;
}

int cmd_crossvalidate(const CommonArgs& args) {
    const int d = parse_int_list(args.d_list).front();
    const double phi_c = parse_phase_list(args.phi_c_list).front();
    const SystemConfig cfg = args.config_path.empty() ? make_two_leg_config(d, phi_c)
                                                      : load_config(args.config_path);
    json detail;
    detail["config"] = config_snapshot(cfg);
    detail["t_max"] = args.t_max;
    detail["dt"] = args.dt;
    const Manifest manifest = write_manifest(args.out_dir, "crossvalidate", detail);

    const double cap = std::min(args.t_max, validity_window(cfg));
    Trajectory lat = run_solver("lattice", cfg, args.t_max, args.dt);
    Trajectory dde = run_solver("dde", cfg, args.t_max, args.dt);
    Trajectory col = run_solver("collision", cfg, args.t_max, args.dt);
    for (const auto* traj : {&lat, &dde, &col})
        emit_trajectory(*traj, fs::path(args.out_dir) / (traj->solver_tag + "." + args.format),
                        std::nullopt, args.format, manifest.hash);

    json report;
    report["manifest"] = manifest.hash;
    report["t_cap"] = cap;
    report["lattice_vs_dde"] = max_population_deviation(lat, dde, cap);
    report["collision_vs_dde"] = max_population_deviation(col, dde, cap);
    atomic_write(fs::path(args.out_dir) / "crossvalidate.json", report.dump(2) + "\n");
    std::cout << "lattice vs dde: " << report["lattice_vs_dde"].get<double>()
              << "\ncollision vs dde: " << report["collision_vs_dde"].get<double>() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-excitation waveguide dynamics of a two-point emitter"};
    app.require_subcommand(1);
    CommonArgs args;
    int L = 4;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON config file");
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--solver", args.solvers, "comma list: lattice,dde,collision");
        sub->add_option("--d", args.d_list, "comma list of spacings");
        sub->add_option("--phi-c", args.phi_c_list, "comma list of phases (pi/2 forms ok)");
        sub->add_option("--t-max", args.t_max, "evolution time in 1/J");
        sub->add_option("--dt", args.dt, "time step in 1/J");
        sub->add_option("--format", args.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--plot-script", args.plot_script, "emit a gnuplot script");
    };

    auto* decay = app.add_subcommand("decay", "decay-curve sweep over (d, phi_c)");
    add_common(decay);
    auto* markov = app.add_subcommand("markov-solve", "solve the L-leg phase conditions");
    markov->add_option("L", L, "number of coupling points")->required();
    add_common(markov);
    auto* bic = app.add_subcommand("bic", "bound-state existence, profile, verification");
    add_common(bic);
    auto* coll = app.add_subcommand("collision", "collision-model trajectory");
    add_common(coll);
    auto* chir = app.add_subcommand("chirality", "directional emission fractions");
    add_common(chir);
    auto* cross = app.add_subcommand("crossvalidate", "all three solvers on one config");
    add_common(cross);

    // defaults that differ per subcommand
    CLI11_PARSE(app, argc, argv);
    try {
        if (decay->parsed()) return cmd_decay(args);
        if (markov->parsed()) return cmd_markov_solve(L, args);
        if (bic->parsed()) {
            if (!bic->count("--d")) args.d_list = "2";
            if (!bic->count("--phi-c")) args.phi_c_list = "0";
            return cmd_bic(args);
        }
        if (coll->parsed()) {
            if (!coll->count("--d")) args.d_list = "2";
            if (!coll->count("--phi-c")) args.phi_c_list = "pi/2";
            return cmd_collision(args);
        }
        if (chir->parsed()) {
            if (!chir->count("--d")) args.d_list = "1";
            if (!chir->count("--phi-c")) args.phi_c_list = "pi/2";
            return cmd_chirality(args);
        }
        if (cross->parsed()) {
            if (!cross->count("--d")) args.d_list = "2";
            if (!cross->count("--phi-c")) args.phi_c_list = "pi/2";
            return cmd_crossvalidate(args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

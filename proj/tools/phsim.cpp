// Batch experiment runner: reads a config file, runs one of the shipped
// experiments and writes CSV tables, SVG plots, mesh and mode-shape exports.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "phfem/config.hpp"
#include "phfem/diagnostics.hpp"
#include "phfem/report.hpp"
#include "phfem/spectral.hpp"

namespace phfem {
namespace {

std::string join(const std::string& dir, const std::string& name) { return dir + "/" + name; }

Vec half_times(const Trajectory& tr) {
    Vec t = {0.0};
    for (int n = 0; n < tr.nsteps; ++n) t.push_back((n + 0.5) * tr.dt);
    return t;
}

void write_residuals_csv(const std::string& path, const std::string& hash, const Trajectory& tr) {
    std::vector<Vec> rows;
    for (int n = 1; n < tr.nsteps; ++n)
        rows.push_back({static_cast<double>(n), tr.power_residual1[n], tr.power_residual2[n - 1]});
    write_csv(path, hash, {"step", "residual_omega1", "residual_omega2"}, rows);
}

void write_modes_csv(const std::string& dir, const ExperimentConfig& cfg, const ModeSet& ms,
                     const Vec& ana, double unit_scale, const std::string& name) {
    std::vector<Vec> rows;
    const size_t n = std::min(ms.omega.size(), ana.size());
    for (size_t i = 0; i < n; ++i) {
        const double rel = std::fabs(ms.omega[i] - ana[i]) / ana[i] * 100.0;
        rows.push_back({static_cast<double>(i + 1), ms.omega[i] * unit_scale, ana[i] * unit_scale, rel});
    }
    write_csv(join(dir, name), cfg.config_hash, {"mode", "omega_num", "omega_ana", "rel_err_pct"}, rows);
}

void write_eigenvectors_csv(const std::string& dir, const ExperimentConfig& cfg, const ModeSet& ms) {
    if (ms.vectors.empty()) return;
    std::vector<std::string> header = {"dof"};
    for (size_t j = 0; j < ms.vectors.size(); ++j) {
        header.push_back("mode" + std::to_string(j + 1) + "_re");
        header.push_back("mode" + std::to_string(j + 1) + "_im");
    }
    std::vector<Vec> rows;
    for (size_t i = 0; i < ms.vectors[0].size(); ++i) {
        Vec row = {static_cast<double>(i)};
        for (const auto& v : ms.vectors) {
            row.push_back(v[i].real());
            row.push_back(v[i].imag());
        }
        rows.push_back(std::move(row));
    }
    write_csv(join(dir, "eigenvectors.csv"), cfg.config_hash, header, rows);
}

void run_beam_sim(const ExperimentConfig& cfg, const std::string& dir, bool plots) {
    const BeamProblem p = build_beam_problem(cfg.beam, cfg.sigma);
    // velocity of the free end x = 0 lives in the value DOF of the Omega_2
    // Hermite alpha block, which is DOF 0 of e2
    Vec times, vnum;
    if (cfg.monolithic) {
        const MonolithicTrajectory tr = simulate_monolithic_midpoint(
            p.sys, cfg.beam.t_end, cfg.beam.dt, p.u1, p.u2, p.sys.stack(p.e1_0, p.e2_0));
        for (int n = 0; n <= tr.nsteps; ++n) {
            times.push_back(n * tr.dt);
            vnum.push_back(tr.e[n][p.sys.n1]);
        }
        std::vector<Vec> h_rows;
        for (int n = 0; n <= tr.nsteps; ++n) h_rows.push_back({n * tr.dt, tr.h[n]});
        write_csv(join(dir, "beam_hamiltonian.csv"), cfg.config_hash, {"t", "H"}, h_rows);
    } else {
        const Trajectory tr = simulate_staggered(p.sys, cfg.beam.t_end, cfg.beam.dt, p.u1, p.u2,
                                                 p.e1_0, p.e2_0, cfg.bootstrap);
        times = half_times(tr);
        vnum.push_back(tr.e2_initial[0]);
        for (int n = 0; n < tr.nsteps; ++n) vnum.push_back(tr.e2_half[n][0]);
        std::vector<Vec> h_rows;
        for (int n = 0; n <= tr.nsteps; ++n) h_rows.push_back({n * tr.dt, tr.h1[n]});
        write_csv(join(dir, "beam_hamiltonian.csv"), cfg.config_hash, {"t", "H1"}, h_rows);
        write_residuals_csv(join(dir, "beam_power_residuals.csv"), cfg.config_hash, tr);
    }
    Vec vex;
    for (double t : times) vex.push_back(beam_exact(0.0, t, cfg.beam.omega, cfg.beam.EI).e_alpha);
    std::vector<Vec> vel_rows;
    for (size_t i = 0; i < times.size(); ++i) vel_rows.push_back({times[i], vnum[i], vex[i]});
    write_csv(join(dir, "beam_velocity.csv"), cfg.config_hash, {"t", "v_num", "v_exact"}, vel_rows);

    // displacement recovered from the velocity by the trapezoid rule
    Vec wnum = {0.0};
    for (size_t i = 1; i < times.size(); ++i)
        wnum.push_back(wnum.back() + 0.5 * (times[i] - times[i - 1]) * (vnum[i] + vnum[i - 1]));
    std::vector<Vec> disp_rows;
    for (size_t i = 0; i < times.size(); ++i)
        disp_rows.push_back({times[i], wnum[i], beam_exact(0.0, times[i], cfg.beam.omega, cfg.beam.EI).w});
    write_csv(join(dir, "beam_displacement.csv"), cfg.config_hash, {"t", "w_num", "w_exact"}, disp_rows);

    if (plots) {
        write_svg_plot(join(dir, "beam_velocity.svg"),
                       {{times, vnum, "numerical"}, {times, vex, "exact"}},
                       {false, false, "Free-end velocity", "t [s]", "v [m/s]", 0.0});
        Vec wex;
        for (double t : times) wex.push_back(beam_exact(0.0, t, cfg.beam.omega, cfg.beam.EI).w);
        write_svg_plot(join(dir, "beam_displacement.svg"),
                       {{times, wnum, "numerical"}, {times, wex, "exact"}},
                       {false, false, "Free-end displacement", "t [s]", "w [m]", 0.0});
    }
}

void run_beam_spectrum(const ExperimentConfig& cfg, const std::string& dir, bool plots) {
    const BeamProblem p = build_beam_problem(cfg.beam, cfg.sigma);
    const ModeSet ms = solve_modes(p.sys, cfg.n_modes, cfg.vectors);
    const Vec ana = beam_analytical_freqs(cfg.n_modes, cfg.beam.EI, cfg.beam.rhoA, cfg.beam.L);
    write_modes_csv(dir, cfg, ms, ana, 1.0, "beam_spectrum.csv");
    write_eigenvectors_csv(dir, cfg, ms);
    if (plots) {
        Vec idx, wn, wa;
        for (size_t i = 0; i < ms.omega.size() && i < ana.size(); ++i) {
            idx.push_back(static_cast<double>(i + 1));
            wn.push_back(ms.omega[i]);
            wa.push_back(ana[i]);
        }
        write_svg_plot(join(dir, "beam_spectrum.svg"), {{idx, wn, "numerical"}, {idx, wa, "analytical"}},
                       {false, false, "Cantilever beam frequencies", "mode", "omega [rad/s]", 0.0});
    }
}

void run_beam_convergence(const ExperimentConfig& cfg, const std::string& dir, bool plots) {
    const std::vector<int> ns = {4, 8, 16, 32};
    const ConvergenceRecord rec = beam_convergence_study(cfg.beam, ns);
    std::vector<Vec> rows;
    for (size_t i = 0; i < rec.h.size(); ++i)
        rows.push_back({rec.h[i], rec.err_alpha_1[i], rec.err_beta_1[i], rec.err_alpha_2[i], rec.err_beta_2[i]});
    write_csv(join(dir, "beam_convergence.csv"), cfg.config_hash,
              {"h", "err_alpha_1", "err_beta_1", "err_alpha_2", "err_beta_2"}, rows);
    write_csv(join(dir, "beam_rates.csv"), cfg.config_hash,
              {"rate_alpha_1", "rate_beta_1", "rate_alpha_2", "rate_beta_2"},
              {{rec.rate_alpha_1(), rec.rate_beta_1(), rec.rate_alpha_2(), rec.rate_beta_2()}});
    if (plots)
        write_svg_plot(join(dir, "beam_convergence.svg"),
                       {{rec.h, rec.err_alpha_1, "e_alpha Omega1"},
                        {rec.h, rec.err_beta_1, "e_beta Omega1"},
                        {rec.h, rec.err_alpha_2, "e_alpha Omega2"},
                        {rec.h, rec.err_beta_2, "e_beta Omega2"}},
                       {true, true, "Beam convergence", "h", "L2 error", 2.0});
}

void run_wave_sim(const ExperimentConfig& cfg, const std::string& dir, bool plots,
                  bool conservation_focus) {
    const WaveProblem p = build_wave_problem(cfg.wave, cfg.sigma);
    const Trajectory tr =
        simulate_staggered(p.sys, cfg.wave.t_end, cfg.wave.dt, p.u1, p.u2, p.e1_0, p.e2_0, cfg.bootstrap);
    write_mesh(*p.mesh, join(dir, "mesh.txt"));
    write_residuals_csv(join(dir, "wave_power_residuals.csv"), cfg.config_hash, tr);

    const CurlNorm curl(p.b2);
    const Vec t2 = half_times(tr);
    Vec curls;
    {
        Vec beta2(tr.e2_initial.begin() + p.a2.ndof, tr.e2_initial.end());
        curls.push_back(curl(beta2));
    }
    for (int n = 0; n < tr.nsteps; ++n) {
        Vec beta2(tr.e2_half[n].begin() + p.a2.ndof, tr.e2_half[n].end());
        curls.push_back(curl(beta2));
    }
    std::vector<Vec> curl_rows;
    for (size_t i = 0; i < t2.size(); ++i) curl_rows.push_back({t2[i], curls[i]});
    write_csv(join(dir, "wave_curl.csv"), cfg.config_hash, {"t", "curl_l2"}, curl_rows);

    std::vector<Vec> h_rows;
    for (int n = 0; n <= tr.nsteps; ++n) h_rows.push_back({n * tr.dt, tr.h1[n]});
    write_csv(join(dir, "wave_hamiltonian1.csv"), cfg.config_hash, {"t", "H1"}, h_rows);

    if (!conservation_focus) {
        const auto errs = wave_final_errors(p, tr);
        write_csv(join(dir, "wave_final_errors.csv"), cfg.config_hash,
                  {"err_alpha_1", "err_beta_1", "err_alpha_2", "err_beta_2"},
                  {{errs[0], errs[1], errs[2], errs[3]}});
    }
    if (plots) {
        Vec steps, r1, r2;
        for (int n = 1; n < tr.nsteps; ++n) {
            steps.push_back(static_cast<double>(n));
            r1.push_back(std::fabs(tr.power_residual1[n]) + 1e-18);
            r2.push_back(std::fabs(tr.power_residual2[n - 1]) + 1e-18);
        }
        if (!steps.empty())
            write_svg_plot(join(dir, "wave_power_residuals.svg"),
                           {{steps, r1, "Omega1"}, {steps, r2, "Omega2"}},
                           {false, true, "Discrete power balance residual", "step", "|residual| [W]", 0.0});
        Vec curl_pos;
        for (double cv : curls) curl_pos.push_back(cv + 1e-18);
        write_svg_plot(join(dir, "wave_curl.svg"), {{t2, curl_pos, "curl"}},
                       {false, true, "||curl e_beta|| on Omega2", "t [s]", "L2 norm", 0.0});
    }
}

void run_wave_spectrum(const ExperimentConfig& cfg, const std::string& dir, bool plots) {
    const WaveProblem p = build_wave_problem(cfg.wave, cfg.sigma);
    write_mesh(*p.mesh, join(dir, "mesh.txt"));
    const ModeSet ms = solve_modes(p.sys, cfg.n_modes, cfg.vectors);
    const Vec ana = wave_analytical_freqs(cfg.n_modes, 1.0);
    write_modes_csv(dir, cfg, ms, ana, 1.0, "wave_spectrum.csv");
    // same table in cycles per second; relative errors are scale-invariant
    write_modes_csv(dir, cfg, ms, ana, 1.0 / (2.0 * M_PI), "wave_spectrum_hz.csv");
    write_eigenvectors_csv(dir, cfg, ms);
    if (plots) {
        Vec idx, wn, wa;
        for (size_t i = 0; i < ms.omega.size() && i < ana.size(); ++i) {
            idx.push_back(static_cast<double>(i + 1));
            wn.push_back(ms.omega[i]);
            wa.push_back(ana[i]);
        }
        write_svg_plot(join(dir, "wave_spectrum.svg"), {{idx, wn, "numerical"}, {idx, wa, "analytical"}},
                       {false, false, "Wave equation frequencies", "mode", "omega [rad/s]", 0.0});
    }
}

void run_wave_convergence(const ExperimentConfig& cfg, const std::string& dir, bool plots) {
    const std::vector<int> ns = {4, 8, 16, 32};
    const ConvergenceRecord rec = wave_convergence_study(cfg.wave.k, ns, cfg.wave.t_end);
    std::vector<Vec> rows;
    for (size_t i = 0; i < rec.h.size(); ++i)
        rows.push_back({rec.h[i], rec.err_alpha_1[i], rec.err_beta_1[i], rec.err_alpha_2[i], rec.err_beta_2[i]});
    write_csv(join(dir, "wave_convergence.csv"), cfg.config_hash,
              {"h", "err_alpha_1", "err_beta_1", "err_alpha_2", "err_beta_2"}, rows);
    write_csv(join(dir, "wave_rates.csv"), cfg.config_hash,
              {"rate_alpha_1", "rate_beta_1", "rate_alpha_2", "rate_beta_2"},
              {{rec.rate_alpha_1(), rec.rate_beta_1(), rec.rate_alpha_2(), rec.rate_beta_2()}});
    if (plots)
        write_svg_plot(join(dir, "wave_convergence.svg"),
                       {{rec.h, rec.err_alpha_1, "e_alpha Omega1"},
                        {rec.h, rec.err_beta_1, "e_beta Omega1"},
                        {rec.h, rec.err_alpha_2, "e_alpha Omega2"},
                        {rec.h, rec.err_beta_2, "e_beta Omega2"}},
                       {true, true, "Wave convergence", "h", "L2 error", static_cast<double>(cfg.wave.k)});
}

int run_experiment(const ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir);
    const bool plots = cfg.plots;
    if (cfg.experiment == "beam-sim") run_beam_sim(cfg, cfg.out_dir, plots);
    else if (cfg.experiment == "beam-spectrum") run_beam_spectrum(cfg, cfg.out_dir, plots);
    else if (cfg.experiment == "beam-convergence") run_beam_convergence(cfg, cfg.out_dir, plots);
    else if (cfg.experiment == "wave-sim") run_wave_sim(cfg, cfg.out_dir, plots, false);
    else if (cfg.experiment == "wave-spectrum") run_wave_spectrum(cfg, cfg.out_dir, plots);
    else if (cfg.experiment == "wave-convergence") run_wave_convergence(cfg, cfg.out_dir, plots);
    else if (cfg.experiment == "conservation") run_wave_sim(cfg, cfg.out_dir, plots, true);
    else throw ConfigError("unknown experiment " + cfg.experiment);
    return 0;
}

} // namespace
} // namespace phfem

int main(int argc, char** argv) {
    CLI::App app{"structure-preserving port-Hamiltonian wave experiments"};
    app.require_subcommand(1);
    std::string config_path, out_override;
    bool no_plots = false;
    CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option("--out", out_override, "override the output directory");
    run->add_flag("--no-plots", no_plots, "skip SVG plot output");
    CLI11_PARSE(app, argc, argv);

    try {
        phfem::ExperimentConfig cfg = phfem::parse_config(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (no_plots) cfg.plots = false;
        return phfem::run_experiment(cfg);
    } catch (const phfem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const phfem::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const phfem::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// cli.hpp — Command-line front end: configuration, sweep orchestration, and
// figure-panel emission.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsd/emit.hpp"

namespace gsd {

struct RunConfig {
    enum class Command { None, Point, Sweep, HomodyneCompare, Figures };

    Command command = Command::None;
    // point arguments
    double x = 0.0, p = 0.0, r = 0.0;
    int dim = 50;
    // grid/sweep arguments
    SweepGrid grid{};
    int grid_steps = 0;  // overrides grid.nx = grid.np when > 0
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json", "svg"};
    int jobs = 0;  // 0 = hardware concurrency

    void apply_overrides() {
        if (grid_steps > 0) grid.nx = grid.np = grid_steps;
    }
};

// --------------------------- argument parsing -------------------------------

// Builds the CLI11 application bound to `cfg`. Flags beat GSD_-prefixed
// environment variables, which beat values from --config files.
inline std::unique_ptr<CLI::App> make_cli_app(RunConfig& cfg) {
    auto app = std::make_unique<CLI::App>(
        "Distinguishability of coherent and squeezed states: probability of "
        "error, trace distance, and Shannon information over phase-space grids");
    app->set_config("--config", "", "key=value configuration file");
    app->require_subcommand(0, 1);

    const auto formats_check = CLI::IsMember({"csv", "json", "svg"});

    auto add_output_opts = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_dir, "output directory")->envname("GSD_OUT");
        sub->add_option("--formats", cfg.formats, "subset of {csv,json,svg}")
            ->envname("GSD_FORMATS")
            ->delimiter(',')
            ->check(formats_check)
            ->expected(1, 3);
        sub->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)")
            ->envname("GSD_JOBS")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_grid_opts = [&](CLI::App* sub) {
        sub->add_option("--grid-steps", cfg.grid_steps, "grid points per axis (default 51)")
            ->envname("GSD_GRID_STEPS")
            ->check(CLI::PositiveNumber);
        sub->add_option("--dim", cfg.grid.dim, "Fock truncation (default 50)")
            ->envname("GSD_DIM")
            ->check(CLI::Range(1, kMaxDim));
    };

    CLI::App* point = app->add_subcommand("point", "evaluate a single configuration");
    point->add_option("--x", cfg.x, "amplitude-quadrature displacement")->envname("GSD_X");
    point->add_option("--p", cfg.p, "phase-quadrature displacement")->envname("GSD_P");
    point->add_option("--r", cfg.r, "squeezing magnitude (0 = coherent)")
        ->envname("GSD_R")
        ->check(CLI::NonNegativeNumber);
    point->add_option("--dim", cfg.dim, "Fock truncation (default 50)")
        ->envname("GSD_DIM")
        ->check(CLI::Range(1, kMaxDim));
    point->callback([&cfg] { cfg.command = RunConfig::Command::Point; });

    CLI::App* sweep = app->add_subcommand("sweep", "evaluate the full grid");
    add_grid_opts(sweep);
    add_output_opts(sweep);
    sweep->callback([&cfg] { cfg.command = RunConfig::Command::Sweep; });

    CLI::App* hc = app->add_subcommand("homodyne-compare",
                                       "projective x-quadrature vs optimal measurement");
    add_grid_opts(hc);
    add_output_opts(hc);
    hc->callback([&cfg] { cfg.command = RunConfig::Command::HomodyneCompare; });

    CLI::App* figures = app->add_subcommand("figures", "emit all figure panels");
    add_grid_opts(figures);
    add_output_opts(figures);
    figures->callback([&cfg] { cfg.command = RunConfig::Command::Figures; });

    return app;
}

// --------------------------- helpers ----------------------------------------

namespace detail {

inline bool wants(const RunConfig& cfg, const char* fmt) {
    return std::find(cfg.formats.begin(), cfg.formats.end(), fmt) != cfg.formats.end();
}

inline void write_file(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    writer(os);
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

inline std::string squeeze_label(double r) {
    if (std::abs(r - 0.35) < 1e-9) return "3db";
    if (std::abs(r - 0.70) < 1e-9) return "6db";
    std::ostringstream oss;
    oss << "r" << svg_num(r);
    return oss.str();
}

// Records of one squeezing level, in (p, x) order.
inline std::vector<const SweepRecord*> level_slice(const std::vector<SweepRecord>& records,
                                                   double r) {
    std::vector<const SweepRecord*> out;
    for (const auto& rec : records)
        if (rec.r == r) out.push_back(&rec);
    return out;
}

inline SurfacePanel make_panel(const SweepGrid& grid,
                               const std::vector<const SweepRecord*>& slice,
                               const std::string& quantity,
                               const std::function<double(const SweepRecord&)>& field) {
    SurfacePanel panel;
    panel.quantity = quantity;
    panel.xs.resize(static_cast<std::size_t>(grid.nx));
    panel.ps.resize(static_cast<std::size_t>(grid.np));
    for (int i = 0; i < grid.nx; ++i) panel.xs[static_cast<std::size_t>(i)] = grid.x_at(i);
    for (int j = 0; j < grid.np; ++j) panel.ps[static_cast<std::size_t>(j)] = grid.p_at(j);
    panel.values.resize(slice.size());
    for (std::size_t k = 0; k < slice.size(); ++k) panel.values[k] = field(*slice[k]);
    return panel;
}

inline double clamped_gain(const SweepRecord& rec) {
    return std::isfinite(rec.i_gain) && rec.i_gain < kGainEmitFloor ? 0.0 : rec.i_gain;
}

}  // namespace detail

// --------------------------- commands ---------------------------------------

// Print every quantity for one configuration, with the Gram-oracle
// cross-check and (for coherent) the closed-form Helstrom bound and homodyne
// error. The truncation guard at dim+20 always runs here.
inline int cmd_point(const RunConfig& cfg, std::ostream& out) {
    const PhasePoint pt{cfg.x, cfg.p};
    const SqueezeParameter sq{cfg.r};
    const StateFamily family = detail::family_for(sq);

    const auto pure = discriminate(pt, family, Mixedness::Pure, cfg.dim);
    const auto mixed = discriminate(pt, family, Mixedness::Mixed, cfg.dim);
    const auto rates = information_gain(pure, mixed);

    out << "point: x = " << format_sig(cfg.x) << ", p = " << format_sig(cfg.p)
        << ", r = " << format_sig(cfg.r) << ", dim = " << cfg.dim << '\n';
    out << "pe_pure              = " << format_sig(pure.p_error) << '\n';
    out << "pe_mixed             = " << format_sig(mixed.p_error) << '\n';
    out << "trace_distance_pure  = " << format_sig(pure.trace_distance) << '\n';
    out << "trace_distance_mixed = " << format_sig(mixed.trace_distance) << '\n';
    out << "i_pure               = " << format_sig(rates.i_pure) << '\n';
    out << "i_mixed              = " << format_sig(rates.i_mixed) << '\n';
    out << "i_gain               = " << format_sig(rates.i_gain) << '\n';

    const double oracle_pure = 0.5 * (1.0 - gram_trace_distance(pt, family, Mixedness::Pure));
    const double oracle_mixed = 0.5 * (1.0 - gram_trace_distance(pt, family, Mixedness::Mixed));
    out << "gram_oracle: |pe_pure - oracle| = " << format_sig(std::abs(pure.p_error - oracle_pure))
        << ", |pe_mixed - oracle| = " << format_sig(std::abs(mixed.p_error - oracle_mixed))
        << '\n';

    if (family.routes_to_coherent()) {
        out << "pe_helstrom_closed   = " << format_sig(helstrom_pure_coherent(cfg.x)) << '\n';
        out << "pe_homodyne          = " << format_sig(homodyne_error(std::abs(cfg.x))) << '\n';
        out << "i_levitin            = " << format_sig(*rates.levitin) << '\n';
    }

    const int dim_hi = std::min(cfg.dim + 20, kMaxDim);
    if (dim_hi > cfg.dim) {
        const auto pure_hi = discriminate(pt, family, Mixedness::Pure, dim_hi);
        const auto mixed_hi = discriminate(pt, family, Mixedness::Mixed, dim_hi);
        const double shift = std::max(std::abs(pure.p_error - pure_hi.p_error),
                                      std::abs(mixed.p_error - mixed_hi.p_error));
        out << "truncation_guard: |dpe|(dim -> dim+20) = " << format_sig(shift)
            << (shift > 1e-8 ? "  FLAGGED" : "  ok") << '\n';
    }
    return 0;
}

// Run the configured grid and emit sweep.csv / sweep.json (+ schema) into the
// output directory. The sidecar errors.log is written only when points were
// flagged.
inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto result = run_sweep(cfg.grid, cfg.jobs);
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);

    if (detail::wants(cfg, "csv"))
        detail::write_file(dir / "sweep.csv",
                           [&](std::ostream& os) { write_sweep_csv(os, result.records); });
    if (detail::wants(cfg, "json")) {
        detail::write_file(dir / "sweep.json", [&](std::ostream& os) {
            write_sweep_json(os, cfg.grid, result.records);
        });
        detail::write_file(dir / "sweep.schema.json",
                           [&](std::ostream& os) { os << sweep_schema_text(); });
    }
    if (!result.errors.empty())
        detail::write_file(dir / "errors.log", [&](std::ostream& os) {
            for (const auto& e : result.errors) os << e << '\n';
        });

    int flagged = 0;
    for (const auto& rec : result.records) flagged += rec.convergence_flag ? 1 : 0;
    out << "sweep: " << result.records.size() << " records (" << flagged << " flagged) -> "
        << dir.string() << '\n';
    return flagged == 0 ? 0 : 2;
}

// Slice comparison of the projective x-quadrature error against the optimal
// measurement, plus the mixed-configuration slice at p = 0.55.
inline int cmd_homodyne_compare(const RunConfig& cfg, std::ostream& out) {
    cfg.grid.validate();
    const double slice_p = 0.55;
    LineChart chart;
    chart.x_label = "x";
    chart.y_label = "pe";
    chart.series.resize(3);
    chart.series[0].name = "pe_homodyne";
    chart.series[1].name = "pe_helstrom";
    {
        std::ostringstream oss;
        oss << "pe_mixed_slice_p" << detail::svg_num(slice_p);
        chart.series[2].name = oss.str();
    }
    for (int i = 0; i < cfg.grid.nx; ++i) {
        const double x = cfg.grid.x_at(i);
        chart.xs.push_back(x);
        chart.series[0].ys.push_back(homodyne_error(x));
        chart.series[1].ys.push_back(helstrom_pure_coherent(x));
        chart.series[2].ys.push_back(
            discriminate({x, slice_p}, StateFamily::coherent(), Mixedness::Mixed, cfg.grid.dim)
                .p_error);
    }

    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    if (detail::wants(cfg, "csv"))
        detail::write_file(dir / "povm_vs_homodyne.csv",
                           [&](std::ostream& os) { write_line_csv(os, chart); });
    if (detail::wants(cfg, "svg"))
        detail::write_file(dir / "povm_vs_homodyne.svg", [&](std::ostream& os) {
            write_line_svg(os, chart, "projective vs optimal measurement");
        });

    double worst = 0.0;
    for (std::size_t i = 0; i < chart.xs.size(); ++i)
        worst = std::min(worst, chart.series[0].ys[i] - chart.series[1].ys[i]);
    out << "homodyne-compare: " << chart.xs.size()
        << " slice points, min(pe_homodyne - pe_helstrom) = " << format_sig(worst) << " -> "
        << dir.string() << '\n';
    return 0;
}

// Emit every figure panel from a single sweep of the configured grid.
// Partial failures leave completed files in place and are reported.
inline int cmd_figures(const RunConfig& cfg, std::ostream& out) {
    const auto result = run_sweep(cfg.grid, cfg.jobs);
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);

    std::vector<std::string> written, failed;
    auto emit_panel = [&](const std::string& stem, const SurfacePanel& panel,
                          const std::string& title) {
        if (detail::wants(cfg, "csv")) {
            const std::string name = stem + ".csv";
            try {
                detail::write_file(dir / name,
                                   [&](std::ostream& os) { write_surface_csv(os, panel); });
                written.push_back(name);
            } catch (const std::exception& e) {
                failed.push_back(name + ": " + e.what());
            }
        }
        if (detail::wants(cfg, "svg")) {
            const std::string name = stem + ".svg";
            try {
                detail::write_file(dir / name, [&](std::ostream& os) {
                    write_surface_svg(os, panel, title);
                });
                written.push_back(name);
            } catch (const std::exception& e) {
                failed.push_back(name + ": " + e.what());
            }
        }
    };
    auto emit_chart = [&](const std::string& stem, const LineChart& chart,
                          const std::string& title) {
        if (detail::wants(cfg, "csv")) {
            const std::string name = stem + ".csv";
            try {
                detail::write_file(dir / name,
                                   [&](std::ostream& os) { write_line_csv(os, chart); });
                written.push_back(name);
            } catch (const std::exception& e) {
                failed.push_back(name + ": " + e.what());
            }
        }
        if (detail::wants(cfg, "svg")) {
            const std::string name = stem + ".svg";
            try {
                detail::write_file(dir / name,
                                   [&](std::ostream& os) { write_line_svg(os, chart, title); });
                written.push_back(name);
            } catch (const std::exception& e) {
                failed.push_back(name + ": " + e.what());
            }
        }
    };

    std::vector<double> levels;
    for (const auto& rec : result.records)
        if (levels.empty() || rec.r != levels.back()) levels.push_back(rec.r);

    auto pe_pure = [](const SweepRecord& r) { return r.pe_pure; };
    auto pe_mixed = [](const SweepRecord& r) { return r.pe_mixed; };
    auto i_pure = [](const SweepRecord& r) { return r.i_pure; };
    auto i_mixed = [](const SweepRecord& r) { return r.i_mixed; };

    for (double r : levels) {
        const auto slice = detail::level_slice(result.records, r);
        if (r < kCoherentDispatch) {
            emit_panel("fig3a_pe_pure_coherent",
                       detail::make_panel(cfg.grid, slice, "pe_pure", pe_pure),
                       "probability of error, two pure coherent states");
            emit_panel("fig3b_pe_mixed_coherent",
                       detail::make_panel(cfg.grid, slice, "pe_mixed", pe_mixed),
                       "probability of error, two mixed coherent states");
            emit_panel("fig4a_info_pure_coherent",
                       detail::make_panel(cfg.grid, slice, "i_pure", i_pure),
                       "information rate, two pure coherent states");
            emit_panel("fig4b_info_mixed_coherent",
                       detail::make_panel(cfg.grid, slice, "i_mixed", i_mixed),
                       "information rate, two mixed coherent states");
            emit_panel("fig5_igain_coherent",
                       detail::make_panel(cfg.grid, slice, "i_gain", detail::clamped_gain),
                       "information gain, coherent states");
            emit_panel("fig7a_pe_homodyne",
                       detail::make_panel(cfg.grid, slice, "pe_homodyne",
                                          [](const SweepRecord& rec) {
                                              return rec.pe_homodyne ? *rec.pe_homodyne
                                                                     : std::nan("");
                                          }),
                       "probability of error, x-quadrature measurement");
        } else {
            const std::string label = detail::squeeze_label(r);
            const char* panel_letter_pe_pure = label == "3db" ? "fig6a" : "fig6c";
            const char* panel_letter_i_pure = label == "3db" ? "fig6b" : "fig6d";
            const char* panel_letter_pe_mixed = label == "3db" ? "fig6e" : "fig6g";
            const char* panel_letter_i_mixed = label == "3db" ? "fig6f" : "fig6h";
            emit_panel(std::string(panel_letter_pe_pure) + "_pe_pure_" + label,
                       detail::make_panel(cfg.grid, slice, "pe_pure", pe_pure),
                       "probability of error, two pure squeezed states (" + label + ")");
            emit_panel(std::string(panel_letter_i_pure) + "_info_pure_" + label,
                       detail::make_panel(cfg.grid, slice, "i_pure", i_pure),
                       "information rate, two pure squeezed states (" + label + ")");
            emit_panel(std::string(panel_letter_pe_mixed) + "_pe_mixed_" + label,
                       detail::make_panel(cfg.grid, slice, "pe_mixed", pe_mixed),
                       "probability of error, two mixed squeezed states (" + label + ")");
            emit_panel(std::string(panel_letter_i_mixed) + "_info_mixed_" + label,
                       detail::make_panel(cfg.grid, slice, "i_mixed", i_mixed),
                       "information rate, two mixed squeezed states (" + label + ")");
            emit_panel((label == "3db" ? std::string("fig8a_igain_") : std::string("fig8b_igain_")) +
                           label,
                       detail::make_panel(cfg.grid, slice, "i_gain", detail::clamped_gain),
                       "information gain, squeezed states (" + label + ")");
        }
    }

    // fig7b: slice comparison at the coherent level
    if (!levels.empty() && levels.front() < kCoherentDispatch) {
        const auto slice = detail::level_slice(result.records, levels.front());
        // nearest grid row to p = 0.55
        int jslice = 0;
        for (int j = 1; j < cfg.grid.np; ++j)
            if (std::abs(cfg.grid.p_at(j) - 0.55) < std::abs(cfg.grid.p_at(jslice) - 0.55))
                jslice = j;
        LineChart chart;
        chart.x_label = "x";
        chart.y_label = "pe";
        chart.series.resize(3);
        chart.series[0].name = "pe_homodyne";
        chart.series[1].name = "pe_helstrom";
        {
            std::ostringstream oss;
            oss << "pe_mixed_slice_p" << detail::svg_num(cfg.grid.p_at(jslice));
            chart.series[2].name = oss.str();
        }
        for (int i = 0; i < cfg.grid.nx; ++i) {
            const auto& rec = *slice[static_cast<std::size_t>(jslice * cfg.grid.nx + i)];
            const auto& rec0 = *slice[static_cast<std::size_t>(i)];
            chart.xs.push_back(cfg.grid.x_at(i));
            chart.series[0].ys.push_back(rec0.pe_homodyne ? *rec0.pe_homodyne : std::nan(""));
            chart.series[1].ys.push_back(
                rec0.pe_helstrom_closed ? *rec0.pe_helstrom_closed : std::nan(""));
            chart.series[2].ys.push_back(rec.pe_mixed);
        }
        emit_chart("fig7b_povm_vs_homodyne", chart, "projective vs optimal measurement");
    }

    // fig8c: side-on profiles of the gain surfaces (x silhouette and p silhouette)
    {
        LineChart profile_x, profile_p;
        profile_x.x_label = "x";
        profile_x.y_label = "max_p i_gain";
        profile_p.x_label = "p";
        profile_p.y_label = "max_x i_gain";
        for (int i = 0; i < cfg.grid.nx; ++i) profile_x.xs.push_back(cfg.grid.x_at(i));
        for (int j = 0; j < cfg.grid.np; ++j) profile_p.xs.push_back(cfg.grid.p_at(j));
        for (double r : levels) {
            const auto slice = detail::level_slice(result.records, r);
            LineSeries sx, sp;
            sx.name = "igain_" + detail::squeeze_label(r);
            sp.name = sx.name;
            for (int i = 0; i < cfg.grid.nx; ++i) {
                double best = 0.0;
                for (int j = 0; j < cfg.grid.np; ++j)
                    best = std::max(best,
                                    detail::clamped_gain(
                                        *slice[static_cast<std::size_t>(j * cfg.grid.nx + i)]));
                sx.ys.push_back(best);
            }
            for (int j = 0; j < cfg.grid.np; ++j) {
                double best = 0.0;
                for (int i = 0; i < cfg.grid.nx; ++i)
                    best = std::max(best,
                                    detail::clamped_gain(
                                        *slice[static_cast<std::size_t>(j * cfg.grid.nx + i)]));
                sp.ys.push_back(best);
            }
            profile_x.series.push_back(std::move(sx));
            profile_p.series.push_back(std::move(sp));
        }
        emit_chart("fig8c_profile_x", profile_x, "gain profile along x");
        emit_chart("fig8c_profile_p", profile_p, "gain profile along p");
    }

    if (detail::wants(cfg, "json")) {
        try {
            detail::write_file(dir / "sweep.json", [&](std::ostream& os) {
                write_sweep_json(os, cfg.grid, result.records);
            });
            detail::write_file(dir / "sweep.schema.json",
                               [&](std::ostream& os) { os << sweep_schema_text(); });
            written.push_back("sweep.json");
            written.push_back("sweep.schema.json");
        } catch (const std::exception& e) {
            failed.push_back(std::string("sweep.json: ") + e.what());
        }
    }

    out << "figures: wrote " << written.size() << " files to " << dir.string() << '\n';
    if (!failed.empty()) {
        out << "figures: " << failed.size() << " panels failed:\n";
        for (const auto& f : failed) out << "  " << f << '\n';
        return 2;
    }
    return 0;
}

// Dispatch after parsing. Exit codes: 0 success, 1 usage error (handled by
// the caller around parsing), 2 computational failure.
inline int run_command(RunConfig cfg, std::ostream& out, std::ostream& err) {
    cfg.apply_overrides();
    try {
        switch (cfg.command) {
            case RunConfig::Command::Point:
                return cmd_point(cfg, out);
            case RunConfig::Command::Sweep:
                return cmd_sweep(cfg, out);
            case RunConfig::Command::HomodyneCompare:
                return cmd_homodyne_compare(cfg, out);
            case RunConfig::Command::Figures:
                return cmd_figures(cfg, out);
            case RunConfig::Command::None:
                err << "no subcommand given; try --help\n";
                return 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace gsd

// sweep.hpp — Grid evaluation of discrimination and information quantities
// over (x, p) and squeezing levels, with a truncation-convergence audit.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gsd/homodyne.hpp"
#include "gsd/information.hpp"
#include "gsd/spectra.hpp"

namespace gsd {

// --------------------------- domain types -----------------------------------

struct SweepGrid {
    double x_min = 0.0, x_max = 2.5;
    double p_min = 0.0, p_max = 2.5;
    int nx = 51, np = 51;
    int dim = 50;
    std::vector<SqueezeParameter> squeezing_levels = {{0.0}, {0.35}, {0.70}};
    // Optional per-point guard: recompute at dim + guard_dim_delta and flag
    // records whose pe shifts by more than 1e-8. Off by default in full
    // sweeps; the convergence audit covers the grid instead.
    bool convergence_guard = false;
    int guard_dim_delta = 20;

    double x_at(int i) const {
        return nx == 1 ? x_min : x_min + (x_max - x_min) * double(i) / double(nx - 1);
    }
    double p_at(int j) const {
        return np == 1 ? p_min : p_min + (p_max - p_min) * double(j) / double(np - 1);
    }

    void validate() const {
        detail::require_finite(x_min, "grid x_min");
        detail::require_finite(x_max, "grid x_max");
        detail::require_finite(p_min, "grid p_min");
        detail::require_finite(p_max, "grid p_max");
        if (nx < 1 || np < 1) throw std::domain_error("grid: nx and np must be >= 1");
        if (x_max < x_min || p_max < p_min)
            throw std::domain_error("grid: max bounds must not be below min bounds");
        detail::require_dim(dim);
        if (squeezing_levels.empty())
            throw std::domain_error("grid: at least one squeezing level required");
        for (const auto& sq : squeezing_levels) detail::require_squeeze(sq);
    }
};

// One grid point's full result set. pe_homodyne, pe_helstrom_closed, and
// i_levitin apply to the coherent level only. convergence_flag is true when
// the point was flagged (per-point failure, or guard tripped).
struct SweepRecord {
    double x = 0.0, p = 0.0, r = 0.0;
    double pe_pure = 0.0, pe_mixed = 0.0;
    std::optional<double> pe_homodyne;
    std::optional<double> pe_helstrom_closed;
    double i_pure = 0.0, i_mixed = 0.0, i_gain = 0.0;
    std::optional<double> i_levitin;
    bool convergence_flag = false;
};

struct SweepOutcome {
    std::vector<SweepRecord> records;
    std::vector<std::string> errors;  // sidecar log, one entry per flagged point
};

// --------------------------- execution --------------------------------------

namespace detail {

inline int clamp_jobs(int jobs) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, jobs > 0 ? jobs : std::max(1, hw));
}

// Work units are independent; results land in preassigned slots, so the
// outcome is identical for any worker count.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
    jobs = std::min(clamp_jobs(jobs), count > 0 ? count : 1);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline StateFamily family_for(const SqueezeParameter& sq) {
    return sq.is_coherent() ? StateFamily::coherent() : StateFamily::squeezed(sq.r);
}

inline std::string point_label(double x, double p, double r) {
    return "(x=" + std::to_string(x) + ", p=" + std::to_string(p) +
           ", r=" + std::to_string(r) + ")";
}

}  // namespace detail

// Evaluate every (x, p, squeezing) triple of the grid. Records are ordered by
// (r, p, x) with squeezing levels sorted ascending; two runs of the same grid
// produce identical results for any job count. A failing point is flagged and
// logged rather than aborting the sweep.
inline SweepOutcome run_sweep(const SweepGrid& grid, int jobs = 0) {
    grid.validate();
    std::vector<SqueezeParameter> levels = grid.squeezing_levels;
    std::sort(levels.begin(), levels.end(),
              [](const SqueezeParameter& a, const SqueezeParameter& b) { return a.r < b.r; });

    const int per_level = grid.nx * grid.np;
    const int total = per_level * static_cast<int>(levels.size());
    SweepOutcome out;
    out.records.resize(static_cast<std::size_t>(total));
    std::vector<std::string> errors(static_cast<std::size_t>(total));

    detail::parallel_for(total, jobs, [&](int idx) {
        const int level_idx = idx / per_level;
        const int j = (idx % per_level) / grid.nx;
        const int i = idx % grid.nx;
        const SqueezeParameter sq = levels[static_cast<std::size_t>(level_idx)];
        const PhasePoint pt{grid.x_at(i), grid.p_at(j)};
        SweepRecord& rec = out.records[static_cast<std::size_t>(idx)];
        rec.x = pt.x;
        rec.p = pt.p;
        rec.r = sq.r;
        try {
            const StateFamily family = detail::family_for(sq);
            const auto pure = discriminate(pt, family, Mixedness::Pure, grid.dim);
            const auto mixed = discriminate(pt, family, Mixedness::Mixed, grid.dim);
            const auto rates = information_gain(pure, mixed);
            rec.pe_pure = pure.p_error;
            rec.pe_mixed = mixed.p_error;
            rec.i_pure = rates.i_pure;
            rec.i_mixed = rates.i_mixed;
            rec.i_gain = rates.i_gain;
            if (sq.is_coherent()) {
                rec.pe_homodyne = homodyne_error(pt.x);
                rec.pe_helstrom_closed = helstrom_pure_coherent(pt.x);
                rec.i_levitin = rates.levitin;
            }
            if (grid.convergence_guard) {
                const int dim_hi = std::min(grid.dim + grid.guard_dim_delta, kMaxDim);
                if (dim_hi > grid.dim) {
                    const auto pure_hi = discriminate(pt, family, Mixedness::Pure, dim_hi);
                    const auto mixed_hi = discriminate(pt, family, Mixedness::Mixed, dim_hi);
                    const double shift = std::max(std::abs(pure.p_error - pure_hi.p_error),
                                                  std::abs(mixed.p_error - mixed_hi.p_error));
                    if (shift > 1e-8) {
                        rec.convergence_flag = true;
                        errors[static_cast<std::size_t>(idx)] =
                            detail::point_label(pt.x, pt.p, sq.r) +
                            ": truncation guard tripped, |dpe| = " + std::to_string(shift);
                    }
                }
            }
        } catch (const std::exception& e) {
            rec.convergence_flag = true;
            rec.pe_pure = rec.pe_mixed = std::nan("");
            rec.i_pure = rec.i_mixed = rec.i_gain = std::nan("");
            errors[static_cast<std::size_t>(idx)] =
                detail::point_label(pt.x, pt.p, sq.r) + ": " + e.what();
        }
    });

    for (auto& msg : errors)
        if (!msg.empty()) out.errors.push_back(std::move(msg));
    return out;
}

// --------------------------- convergence audit ------------------------------

struct AuditEntry {
    double x = 0.0, p = 0.0, r = 0.0;
    double delta = 0.0;
};

struct ConvergenceAudit {
    int points_checked = 0;
    double max_abs_delta = 0.0;
    AuditEntry worst{};
    std::vector<AuditEntry> flagged;  // points with |dpe| > 1e-8
    std::vector<std::string> errors;  // points whose recomputation failed
};

// Recompute a deterministic 10% subsample (every 10th point in (r, p, x)
// order) at the higher truncation and report the pe shifts.
inline ConvergenceAudit run_convergence_audit(const SweepGrid& grid, int dim_hi,
                                              int jobs = 0) {
    grid.validate();
    if (dim_hi <= grid.dim)
        throw std::domain_error("run_convergence_audit: dim_hi must exceed grid.dim");
    detail::require_dim(dim_hi);

    std::vector<SqueezeParameter> levels = grid.squeezing_levels;
    std::sort(levels.begin(), levels.end(),
              [](const SqueezeParameter& a, const SqueezeParameter& b) { return a.r < b.r; });

    const int per_level = grid.nx * grid.np;
    const int total = per_level * static_cast<int>(levels.size());
    std::vector<int> sample;
    for (int idx = 0; idx < total; idx += 10) sample.push_back(idx);

    std::vector<AuditEntry> entries(sample.size());
    std::vector<std::string> errors(sample.size());
    detail::parallel_for(static_cast<int>(sample.size()), jobs, [&](int s) {
        const int idx = sample[static_cast<std::size_t>(s)];
        const int level_idx = idx / per_level;
        const int j = (idx % per_level) / grid.nx;
        const int i = idx % grid.nx;
        const SqueezeParameter sq = levels[static_cast<std::size_t>(level_idx)];
        const PhasePoint pt{grid.x_at(i), grid.p_at(j)};
        try {
            const StateFamily family = detail::family_for(sq);
            double delta = 0.0;
            for (Mixedness mix : {Mixedness::Pure, Mixedness::Mixed}) {
                const auto lo = discriminate(pt, family, mix, grid.dim);
                const auto hi = discriminate(pt, family, mix, dim_hi);
                delta = std::max(delta, std::abs(lo.p_error - hi.p_error));
            }
            entries[static_cast<std::size_t>(s)] = {pt.x, pt.p, sq.r, delta};
        } catch (const std::exception& e) {
            entries[static_cast<std::size_t>(s)] = {pt.x, pt.p, sq.r,
                                                    std::numeric_limits<double>::infinity()};
            errors[static_cast<std::size_t>(s)] =
                detail::point_label(pt.x, pt.p, sq.r) + ": " + e.what();
        }
    });

    ConvergenceAudit audit;
    audit.points_checked = static_cast<int>(entries.size());
    for (const auto& e : entries) {
        if (e.delta > audit.max_abs_delta) {
            audit.max_abs_delta = e.delta;
            audit.worst = e;
        }
        if (e.delta > 1e-8) audit.flagged.push_back(e);
    }
    for (auto& msg : errors)
        if (!msg.empty()) audit.errors.push_back(std::move(msg));
    return audit;
}

}  // namespace gsd

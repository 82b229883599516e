#include <catch_amalgamated.hpp>

#include <sstream>

#include "gsd/emit.hpp"
#include "gsd/sweep.hpp"

using namespace gsd;
using Catch::Matchers::WithinAbs;

namespace {

SweepGrid small_grid(int n, std::vector<double> levels, int dim = 30) {
    SweepGrid g;
    g.nx = g.np = n;
    g.dim = dim;
    g.squeezing_levels.clear();
    for (double r : levels) g.squeezing_levels.push_back({r});
    return g;
}

bool records_identical(const std::vector<SweepRecord>& a, const std::vector<SweepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.x != y.x || x.p != y.p || x.r != y.r) return false;
        if (x.pe_pure != y.pe_pure || x.pe_mixed != y.pe_mixed) return false;
        if (x.pe_homodyne != y.pe_homodyne) return false;
        if (x.pe_helstrom_closed != y.pe_helstrom_closed) return false;
        if (x.i_pure != y.i_pure || x.i_mixed != y.i_mixed || x.i_gain != y.i_gain)
            return false;
        if (x.i_levitin != y.i_levitin) return false;
        if (x.convergence_flag != y.convergence_flag) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("single-point sweep at the origin") {
    SweepGrid g = small_grid(1, {0.0});
    g.x_max = g.p_max = 0.0;
    const auto out = run_sweep(g);
    REQUIRE(out.records.size() == 1);
    REQUIRE(out.errors.empty());
    const auto& rec = out.records.front();
    REQUIRE(rec.pe_pure == 0.5);
    REQUIRE(rec.pe_mixed == 0.5);
    REQUIRE(rec.i_gain == 0.0);
    REQUIRE(rec.pe_homodyne.has_value());
    REQUIRE(*rec.pe_homodyne == 0.5);
    REQUIRE(*rec.pe_helstrom_closed == 0.5);
    REQUIRE(*rec.i_levitin == 0.0);
    REQUIRE_FALSE(rec.convergence_flag);
}

TEST_CASE("record count, ordering, and level sorting") {
    const auto out = run_sweep(small_grid(4, {0.35, 0.0}, 24));
    REQUIRE(out.records.size() == 4 * 4 * 2);
    // sorted by (r, p, x) with levels ascending even though given descending
    for (std::size_t i = 1; i < out.records.size(); ++i) {
        const auto& prev = out.records[i - 1];
        const auto& cur = out.records[i];
        const bool ordered =
            std::tie(prev.r, prev.p, prev.x) < std::tie(cur.r, cur.p, cur.x);
        REQUIRE(ordered);
    }
    REQUIRE(out.records.front().r == 0.0);
    REQUIRE(out.records.back().r == 0.35);
}

TEST_CASE("coherent-only fields are absent on squeezed levels") {
    const auto out = run_sweep(small_grid(3, {0.0, 0.7}, 24));
    for (const auto& rec : out.records) {
        if (rec.r == 0.0) {
            REQUIRE(rec.pe_homodyne.has_value());
            REQUIRE(rec.pe_helstrom_closed.has_value());
            REQUIRE(rec.i_levitin.has_value());
        } else {
            REQUIRE_FALSE(rec.pe_homodyne.has_value());
            REQUIRE_FALSE(rec.pe_helstrom_closed.has_value());
            REQUIRE_FALSE(rec.i_levitin.has_value());
        }
    }
}

TEST_CASE("mixture degenerates on the p = 0 slice") {
    SweepGrid g = small_grid(6, {0.0}, 40);
    g.np = 1;
    g.p_max = 0.0;
    const auto out = run_sweep(g);
    for (const auto& rec : out.records) REQUIRE(rec.pe_mixed == rec.pe_pure);
}

TEST_CASE("two runs produce byte-identical CSV") {
    const SweepGrid g = small_grid(6, {0.0, 0.35}, 24);
    std::ostringstream a, b;
    write_sweep_csv(a, run_sweep(g).records);
    write_sweep_csv(b, run_sweep(g).records);
    REQUIRE(a.str() == b.str());
    REQUIRE(a.str().rfind("x,p,r,pe_pure", 0) == 0);
}

TEST_CASE("parallel and serial evaluation agree exactly") {
    const SweepGrid g = small_grid(5, {0.0, 0.7}, 24);
    const auto serial = run_sweep(g, 1);
    const auto parallel = run_sweep(g, 4);
    REQUIRE(records_identical(serial.records, parallel.records));
}

TEST_CASE("record invariants hold over a mixed-level grid") {
    const auto out = run_sweep(small_grid(6, {0.0, 0.35, 0.7}, 50));
    for (const auto& rec : out.records) {
        REQUIRE(std::isfinite(rec.pe_pure));
        REQUIRE(std::isfinite(rec.pe_mixed));
        REQUIRE(rec.pe_pure >= 0.0);
        REQUIRE(rec.pe_pure <= 0.5);
        REQUIRE(rec.pe_mixed >= 0.0);
        REQUIRE(rec.pe_mixed <= 0.5);
        REQUIRE(rec.i_pure >= 0.0);
        REQUIRE(rec.i_pure <= 1.0);
        REQUIRE(rec.i_mixed >= 0.0);
        REQUIRE(rec.i_mixed <= 1.0);
        REQUIRE(rec.i_gain >= -1e-9);
    }
}

TEST_CASE("grid validation") {
    SweepGrid g;
    g.nx = 0;
    REQUIRE_THROWS_AS(run_sweep(g), std::domain_error);
    g = SweepGrid{};
    g.x_max = -1.0;
    REQUIRE_THROWS_AS(run_sweep(g), std::domain_error);
    g = SweepGrid{};
    g.squeezing_levels.clear();
    REQUIRE_THROWS_AS(run_sweep(g), std::domain_error);
    g = SweepGrid{};
    g.dim = kMaxDim + 1;
    REQUIRE_THROWS_AS(run_sweep(g), std::domain_error);
}

TEST_CASE("convergence audit: trivial grid has zero shift") {
    SweepGrid g = small_grid(1, {0.0});
    g.x_max = g.p_max = 0.0;
    const auto audit = run_convergence_audit(g, 50);
    REQUIRE(audit.points_checked == 1);
    REQUIRE(audit.max_abs_delta == 0.0);
    REQUIRE(audit.flagged.empty());
}

TEST_CASE("convergence audit: coherent grid at dim 50 vs 70 is stable") {
    const SweepGrid g = small_grid(11, {0.0}, 50);
    const auto audit = run_convergence_audit(g, 70);
    REQUIRE(audit.points_checked == 13);  // every 10th of 121
    REQUIRE(audit.max_abs_delta < 1e-8);
    REQUIRE(audit.flagged.empty());
}

TEST_CASE("convergence audit flags the deep-squeezing far corner") {
    SweepGrid g = small_grid(3, {0.7}, 50);
    g.x_min = g.p_min = 2.3;
    const auto audit = run_convergence_audit(g, 70);
    REQUIRE(audit.max_abs_delta > 1e-8);
    REQUIRE_FALSE(audit.flagged.empty());
    REQUIRE(audit.worst.r == 0.7);
}

TEST_CASE("convergence audit rejects a non-increasing dim") {
    const SweepGrid g = small_grid(2, {0.0});
    REQUIRE_THROWS_AS(run_convergence_audit(g, 30), std::domain_error);
    REQUIRE_THROWS_AS(run_convergence_audit(g, kMaxDim + 10), std::domain_error);
}

TEST_CASE("per-point guard flags shifting records and logs them") {
    SweepGrid bad = small_grid(2, {0.7}, 50);
    bad.x_min = bad.p_min = 2.4;
    bad.convergence_guard = true;
    const auto flagged = run_sweep(bad);
    REQUIRE_FALSE(flagged.errors.empty());
    bool any = false;
    for (const auto& rec : flagged.records) any = any || rec.convergence_flag;
    REQUIRE(any);

    SweepGrid good = small_grid(2, {0.0}, 50);
    good.convergence_guard = true;
    const auto clean = run_sweep(good);
    REQUIRE(clean.errors.empty());
    for (const auto& rec : clean.records) REQUIRE_FALSE(rec.convergence_flag);
}

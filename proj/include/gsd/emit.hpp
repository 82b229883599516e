// emit.hpp — CSV, JSON, and SVG emitters for sweep records and figure panels.
// CSV is the canonical artifact; SVG rendering is deliberately minimal.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsd/sweep.hpp"

namespace gsd {

// Fixed numeric formatting: 12 significant digits everywhere in CSV.
inline std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

// Gains below this are emitted as 0 in CSV/SVG surfaces; raw values are
// retained in JSON so flat-region detection does not depend on rounding dust.
constexpr double kGainEmitFloor = 1e-9;

inline std::string csv_field(double v) {
    return std::isfinite(v) ? format_sig(v) : std::string();
}

inline std::string csv_field(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? format_sig(*v) : std::string();
}

}  // namespace detail

// --------------------------- sweep CSV / JSON --------------------------------

inline constexpr const char* kSweepCsvHeader =
    "x,p,r,pe_pure,pe_mixed,pe_homodyne,pe_helstrom_closed,"
    "i_pure,i_mixed,i_gain,i_levitin,convergence_flag";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kSweepCsvHeader << '\n';
    for (const auto& rec : records) {
        const double gain =
            std::isfinite(rec.i_gain) && rec.i_gain < detail::kGainEmitFloor ? 0.0 : rec.i_gain;
        os << detail::csv_field(rec.x) << ',' << detail::csv_field(rec.p) << ','
           << detail::csv_field(rec.r) << ',' << detail::csv_field(rec.pe_pure) << ','
           << detail::csv_field(rec.pe_mixed) << ',' << detail::csv_field(rec.pe_homodyne)
           << ',' << detail::csv_field(rec.pe_helstrom_closed) << ','
           << detail::csv_field(rec.i_pure) << ',' << detail::csv_field(rec.i_mixed) << ','
           << detail::csv_field(gain) << ',' << detail::csv_field(rec.i_levitin) << ','
           << (rec.convergence_flag ? '1' : '0') << '\n';
    }
}

// Schema the JSON output conforms to; also shipped as schema/sweep.schema.json.
inline const char* sweep_schema_text() {
    return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "gsd sweep output",
  "type": "object",
  "required": ["schema", "grid", "records"],
  "properties": {
    "schema": {"type": "string"},
    "grid": {
      "type": "object",
      "required": ["x_min", "x_max", "p_min", "p_max", "nx", "np", "dim", "squeezing_levels"],
      "properties": {
        "x_min": {"type": "number"},
        "x_max": {"type": "number"},
        "p_min": {"type": "number"},
        "p_max": {"type": "number"},
        "nx": {"type": "integer"},
        "np": {"type": "integer"},
        "dim": {"type": "integer"},
        "squeezing_levels": {"type": "array", "items": {"type": "number"}}
      }
    },
    "records": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["x", "p", "r", "pe_pure", "pe_mixed", "pe_homodyne",
                     "pe_helstrom_closed", "i_pure", "i_mixed", "i_gain", "i_levitin",
                     "convergence_flag"],
        "properties": {
          "x": {"type": "number"},
          "p": {"type": "number"},
          "r": {"type": "number"},
          "pe_pure": {"type": ["number", "null"]},
          "pe_mixed": {"type": ["number", "null"]},
          "pe_homodyne": {"type": ["number", "null"]},
          "pe_helstrom_closed": {"type": ["number", "null"]},
          "i_pure": {"type": ["number", "null"]},
          "i_mixed": {"type": ["number", "null"]},
          "i_gain": {"type": ["number", "null"]},
          "i_levitin": {"type": ["number", "null"]},
          "convergence_flag": {"type": "boolean"}
        }
      }
    }
  }
}
)";
}

inline void write_sweep_json(std::ostream& os, const SweepGrid& grid,
                             const std::vector<SweepRecord>& records) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema"] = "sweep.schema.json";
    json g;
    g["x_min"] = grid.x_min;
    g["x_max"] = grid.x_max;
    g["p_min"] = grid.p_min;
    g["p_max"] = grid.p_max;
    g["nx"] = grid.nx;
    g["np"] = grid.np;
    g["dim"] = grid.dim;
    json levels = json::array();
    for (const auto& sq : grid.squeezing_levels) levels.push_back(sq.r);
    g["squeezing_levels"] = std::move(levels);
    doc["grid"] = std::move(g);

    auto opt = [](const std::optional<double>& v) {
        return v && std::isfinite(*v) ? json(*v) : json(nullptr);
    };
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json recs = json::array();
    for (const auto& r : records) {
        json jr;
        jr["x"] = r.x;
        jr["p"] = r.p;
        jr["r"] = r.r;
        jr["pe_pure"] = num(r.pe_pure);
        jr["pe_mixed"] = num(r.pe_mixed);
        jr["pe_homodyne"] = opt(r.pe_homodyne);
        jr["pe_helstrom_closed"] = opt(r.pe_helstrom_closed);
        jr["i_pure"] = num(r.i_pure);
        jr["i_mixed"] = num(r.i_mixed);
        jr["i_gain"] = num(r.i_gain);  // raw, unclamped
        jr["i_levitin"] = opt(r.i_levitin);
        jr["convergence_flag"] = r.convergence_flag;
        recs.push_back(std::move(jr));
    }
    doc["records"] = std::move(recs);
    os << doc.dump(1) << '\n';
}

// --------------------------- figure panels ----------------------------------

// A scalar quantity sampled on the (x, p) rectangle; values[j * xs.size() + i]
// belongs to (xs[i], ps[j]).
struct SurfacePanel {
    std::string quantity;
    std::vector<double> xs;
    std::vector<double> ps;
    std::vector<double> values;
};

inline void write_surface_csv(std::ostream& os, const SurfacePanel& panel) {
    os << "x,p," << panel.quantity << '\n';
    for (std::size_t j = 0; j < panel.ps.size(); ++j)
        for (std::size_t i = 0; i < panel.xs.size(); ++i)
            os << format_sig(panel.xs[i]) << ',' << format_sig(panel.ps[j]) << ','
               << detail::csv_field(panel.values[j * panel.xs.size() + i]) << '\n';
}

struct LineSeries {
    std::string name;
    std::vector<double> ys;
};

struct LineChart {
    std::string x_label = "x";
    std::string y_label;
    std::vector<double> xs;
    std::vector<LineSeries> series;
};

inline void write_line_csv(std::ostream& os, const LineChart& chart) {
    os << chart.x_label;
    for (const auto& s : chart.series) os << ',' << s.name;
    os << '\n';
    for (std::size_t i = 0; i < chart.xs.size(); ++i) {
        os << format_sig(chart.xs[i]);
        for (const auto& s : chart.series) os << ',' << detail::csv_field(s.ys[i]);
        os << '\n';
    }
}

// --------------------------- SVG --------------------------------------------

namespace detail {

// Fixed 8-stop viridis-like ramp.
inline constexpr int kRamp[8][3] = {{68, 1, 84},    {70, 50, 126},  {54, 92, 141},
                                    {39, 127, 142}, {31, 161, 135}, {74, 193, 109},
                                    {160, 218, 57}, {253, 231, 37}};

inline std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * 7.0;
    const int lo = std::min(6, static_cast<int>(pos));
    const double f = pos - lo;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(kRamp[lo][0] + f * (kRamp[lo + 1][0] - kRamp[lo][0]))),
                  static_cast<int>(std::lround(kRamp[lo][1] + f * (kRamp[lo + 1][1] - kRamp[lo][1]))),
                  static_cast<int>(std::lround(kRamp[lo][2] + f * (kRamp[lo + 1][2] - kRamp[lo][2]))));
    return buf;
}

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline constexpr const char* kSeriesColors[6] = {"#1b9e77", "#d95f02", "#7570b3",
                                                 "#e7298a", "#66a61e", "#e6ab02"};

inline void svg_text(std::ostream& os, double x, double y, const std::string& text,
                     const char* anchor = "middle", int size = 12) {
    os << "<text x=\"" << svg_num(x) << "\" y=\"" << svg_num(y) << "\" font-size=\"" << size
       << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << text
       << "</text>\n";
}

}  // namespace detail

// Heatmap of a surface panel: cell rectangles, axes with end labels, and a
// colorbar built from the fixed ramp.
inline void write_surface_svg(std::ostream& os, const SurfacePanel& panel,
                              const std::string& title) {
    const double plot_w = 440.0, plot_h = 440.0;
    const double left = 62.0, top = 42.0, bottom = top + plot_h;
    const double bar_x = left + plot_w + 26.0;
    const double width = bar_x + 80.0, height = bottom + 52.0;
    const std::size_t nx = panel.xs.size(), np = panel.ps.size();

    double vmin = 0.0, vmax = 0.0;
    bool first = true;
    for (double v : panel.values) {
        if (!std::isfinite(v)) continue;
        if (first || v < vmin) vmin = v;
        if (first || v > vmax) vmax = v;
        first = false;
    }
    const double span = vmax > vmin ? vmax - vmin : 1.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(width)
       << "\" height=\"" << detail::svg_num(height) << "\">\n";
    detail::svg_text(os, left + plot_w / 2, top - 16, title, "middle", 14);
    const double cw = plot_w / double(nx), ch = plot_h / double(np);
    for (std::size_t j = 0; j < np; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double v = panel.values[j * nx + i];
            if (!std::isfinite(v)) continue;
            // p axis increases upward
            const double cx = left + double(i) * cw;
            const double cy = bottom - double(j + 1) * ch;
            os << "<rect x=\"" << detail::svg_num(cx) << "\" y=\"" << detail::svg_num(cy)
               << "\" width=\"" << detail::svg_num(cw + 0.5) << "\" height=\""
               << detail::svg_num(ch + 0.5) << "\" fill=\""
               << detail::ramp_color((v - vmin) / span) << "\"/>\n";
        }
    }
    os << "<rect x=\"" << detail::svg_num(left) << "\" y=\"" << detail::svg_num(top)
       << "\" width=\"" << detail::svg_num(plot_w) << "\" height=\"" << detail::svg_num(plot_h)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    detail::svg_text(os, left, bottom + 18, detail::svg_num(panel.xs.front()));
    detail::svg_text(os, left + plot_w, bottom + 18, detail::svg_num(panel.xs.back()));
    detail::svg_text(os, left + plot_w / 2, bottom + 36, "x");
    detail::svg_text(os, left - 8, bottom, detail::svg_num(panel.ps.front()), "end");
    detail::svg_text(os, left - 8, top + 10, detail::svg_num(panel.ps.back()), "end");
    detail::svg_text(os, left - 36, top + plot_h / 2, "p", "middle");

    // colorbar: stacked ramp segments, bottom = vmin
    const int segs = 64;
    const double bar_h = plot_h / double(segs);
    for (int s = 0; s < segs; ++s) {
        os << "<rect x=\"" << detail::svg_num(bar_x) << "\" y=\""
           << detail::svg_num(bottom - double(s + 1) * bar_h) << "\" width=\"18\" height=\""
           << detail::svg_num(bar_h + 0.5) << "\" fill=\""
           << detail::ramp_color((s + 0.5) / segs) << "\"/>\n";
    }
    os << "<rect x=\"" << detail::svg_num(bar_x) << "\" y=\"" << detail::svg_num(top)
       << "\" width=\"18\" height=\"" << detail::svg_num(plot_h)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    detail::svg_text(os, bar_x + 24, bottom, detail::svg_num(vmin), "start", 11);
    detail::svg_text(os, bar_x + 24, top + 10, detail::svg_num(vmax), "start", 11);
    detail::svg_text(os, bar_x + 9, top - 8, panel.quantity, "middle", 11);
    os << "</svg>\n";
}

// Line chart for slice comparisons.
inline void write_line_svg(std::ostream& os, const LineChart& chart,
                           const std::string& title) {
    const double plot_w = 460.0, plot_h = 340.0;
    const double left = 66.0, top = 42.0, bottom = top + plot_h;
    const double width = left + plot_w + 170.0, height = bottom + 56.0;

    double ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& s : chart.series)
        for (double v : s.ys) {
            if (!std::isfinite(v)) continue;
            if (first || v < ymin) ymin = v;
            if (first || v > ymax) ymax = v;
            first = false;
        }
    const double yspan = ymax > ymin ? ymax - ymin : 1.0;
    const double xmin = chart.xs.front(), xmax = chart.xs.back();
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(width)
       << "\" height=\"" << detail::svg_num(height) << "\">\n";
    detail::svg_text(os, left + plot_w / 2, top - 16, title, "middle", 14);
    os << "<rect x=\"" << detail::svg_num(left) << "\" y=\"" << detail::svg_num(top)
       << "\" width=\"" << detail::svg_num(plot_w) << "\" height=\"" << detail::svg_num(plot_h)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        os << "<polyline fill=\"none\" stroke=\""
           << detail::kSeriesColors[k % 6] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < chart.xs.size(); ++i) {
            if (!std::isfinite(s.ys[i])) continue;
            const double px = left + (chart.xs[i] - xmin) / xspan * plot_w;
            const double py = bottom - (s.ys[i] - ymin) / yspan * plot_h;
            os << detail::svg_num(px) << ',' << detail::svg_num(py) << ' ';
        }
        os << "\"/>\n";
        const double ly = top + 16.0 + 18.0 * double(k);
        os << "<line x1=\"" << detail::svg_num(left + plot_w + 12) << "\" y1=\""
           << detail::svg_num(ly - 4) << "\" x2=\"" << detail::svg_num(left + plot_w + 34)
           << "\" y2=\"" << detail::svg_num(ly - 4) << "\" stroke=\""
           << detail::kSeriesColors[k % 6] << "\" stroke-width=\"1.5\"/>\n";
        detail::svg_text(os, left + plot_w + 40, ly, s.name, "start", 11);
    }
    detail::svg_text(os, left, bottom + 18, detail::svg_num(xmin));
    detail::svg_text(os, left + plot_w, bottom + 18, detail::svg_num(xmax));
    detail::svg_text(os, left + plot_w / 2, bottom + 38, chart.x_label);
    detail::svg_text(os, left - 8, bottom, detail::svg_num(ymin), "end", 11);
    detail::svg_text(os, left - 8, top + 10, detail::svg_num(ymax), "end", 11);
    detail::svg_text(os, left - 40, top + plot_h / 2, chart.y_label, "middle");
    os << "</svg>\n";
}

}  // namespace gsd

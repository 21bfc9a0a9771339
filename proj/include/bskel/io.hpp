#ifndef BSKEL_IO_HPP
#define BSKEL_IO_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "bskel/analysis.hpp"
#include "bskel/discrimination.hpp"
#include "bskel/error.hpp"
#include "bskel/point_set.hpp"
#include "bskel/stability.hpp"

namespace bskel::io {

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

// Splits "a,b" into two fields; false unless exactly one comma.
inline bool split_pair(std::string_view line, std::string_view& a, std::string_view& b) {
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) return false;
    a = line.substr(0, comma);
    b = line.substr(comma + 1);
    return true;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

inline void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Point CSV: "x,y" per line, optional header line.

inline PointSet parse_points(std::istream& in, std::string label = {}) {
    std::vector<Point> pts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::trim(line);
        if (view.empty()) continue;
        std::string_view a, b;
        Point p;
        const bool ok = detail::split_pair(view, a, b) && detail::parse_number(a, p.x) && detail::parse_number(b, p.y);
        if (!ok) {
            if (line_no == 1) continue;  // header
            throw ParseError(line_no, "expected 'x,y', got '" + std::string(view) + "'");
        }
        if (!is_finite(p)) throw ParseError(line_no, "non-finite coordinate");
        pts.push_back(p);
    }
    return PointSet(std::move(pts), std::move(label));
}

inline PointSet read_points(const std::string& path) {
    auto in = detail::open_in(path);
    return parse_points(in, path);
}

inline void write_points(std::ostream& out, const PointSet& ps) {
    out << "x,y\n";
    for (const Point& p : ps) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

inline void write_points(const std::string& path, const PointSet& ps) {
    auto out = detail::open_out(path);
    write_points(out, ps);
    detail::finish(out, path);
}

// ---------------------------------------------------------------------------
// Edge CSV: "i,j" per line.

inline void write_edges(std::ostream& out, const Skeleton& sk) {
    out << "i,j\n";
    for (const Edge& e : sk.edges) out << e.i << ',' << e.j << '\n';
}

inline void write_edges(const std::string& path, const Skeleton& sk) {
    auto out = detail::open_out(path);
    write_edges(out, sk);
    detail::finish(out, path);
}

inline std::vector<Edge> parse_edges(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::trim(line);
        if (view.empty()) continue;
        std::string_view a, b;
        std::size_t i = 0, j = 0;
        if (!(detail::split_pair(view, a, b) && detail::parse_number(a, i) && detail::parse_number(b, j))) {
            if (line_no == 1) continue;
            throw ParseError(line_no, "expected 'i,j'");
        }
        edges.push_back(make_edge(i, j));
    }
    return edges;
}

// ---------------------------------------------------------------------------
// Curve CSV: header "beta,edges", beta with one decimal.

inline void write_curve(std::ostream& out, const Curve& c) {
    out << "beta,edges\n";
    for (const Sample& s : c.samples()) out << format_fixed(s.beta, 1) << ',' << s.edges << '\n';
}

inline void write_curve(const std::string& path, const Curve& c) {
    auto out = detail::open_out(path);
    write_curve(out, c);
    detail::finish(out, path);
}

inline Curve parse_curve(std::istream& in, std::size_t n = 0, std::string label = {}) {
    std::vector<Sample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::trim(line);
        if (view.empty()) continue;
        std::string_view a, b;
        Sample s;
        if (!(detail::split_pair(view, a, b) && detail::parse_number(a, s.beta) && detail::parse_number(b, s.edges))) {
            if (line_no == 1) continue;
            throw ParseError(line_no, "expected 'beta,edges'");
        }
        samples.push_back(s);
    }
    try {
        return Curve(n, std::move(samples), std::move(label));
    } catch (const DomainError& e) {
        throw ParseError(line_no, e.what());
    }
}

inline Curve read_curve(const std::string& path, std::size_t n = 0) {
    auto in = detail::open_in(path);
    return parse_curve(in, n, path);
}

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::ordered_json fit_to_json(const PowerFit& f) {
    nlohmann::ordered_json j;
    j["c"] = f.c;
    j["alpha"] = f.alpha;
    j["r"] = f.r;
    j["iterations"] = f.iterations;
    j["converged"] = f.converged;
    j["singular"] = f.singular;
    j["used"] = f.used;
    j["excluded"] = f.excluded;
    if (f.excluded_range)
        j["excluded_range"] = {f.excluded_range->first, f.excluded_range->second};
    else
        j["excluded_range"] = nullptr;
    return j;
}

inline void write_fit_report(std::ostream& out, const PowerFit& f) { out << fit_to_json(f).dump(2) << '\n'; }

inline void write_fit_report(const std::string& path, const PowerFit& f) {
    auto out = detail::open_out(path);
    write_fit_report(out, f);
    detail::finish(out, path);
}

/// Machine-readable key=value lines.
inline void write_verdict_kv(std::ostream& out, const CurveFeatures& f, const Verdict& v) {
    out << "classification=" << to_string(v.classification) << '\n';
    out << "n=" << f.n << '\n';
    out << "alpha=" << format_double(f.alpha) << '\n';
    out << "c=" << format_double(f.c) << '\n';
    out << "r=" << format_double(f.r) << '\n';
    out << "ratio_at_10=" << format_double(f.ratio_at_10) << '\n';
    out << "crossover_beta=" << (f.crossover_beta ? format_double(*f.crossover_beta) : std::string("none")) << '\n';
    out << "baseline_alpha_mean=" << format_double(f.baseline_alpha_mean) << '\n';
    out << "baseline_alpha_sd=" << format_double(f.baseline_alpha_sd) << '\n';
    out << "baseline_size=" << f.baseline_size << '\n';
    for (std::size_t k = 0; k < v.evidence.size(); ++k) {
        const Evidence& e = v.evidence[k];
        out << "evidence." << k << ".criterion=" << e.criterion << '\n';
        out << "evidence." << k << ".value=" << format_double(e.value) << '\n';
        out << "evidence." << k << ".threshold=" << format_double(e.threshold) << '\n';
        out << "evidence." << k << ".passed=" << (e.passed ? "true" : "false") << '\n';
    }
}

inline void write_verdict_report(std::ostream& out, const CurveFeatures& f, const Verdict& v) {
    out << "verdict: " << to_string(v.classification) << " (n=" << f.n << ", " << f.baseline_size
        << " random baselines)\n";
    out << "  fit: e ~ " << format_fixed(f.c, 2) << " * beta^" << format_fixed(f.alpha, 4) << "  (R=" << format_fixed(f.r, 4)
        << ")\n";
    out << "  baseline alpha: " << format_fixed(f.baseline_alpha_mean, 4) << " +- " << format_fixed(f.baseline_alpha_sd, 4)
        << '\n';
    out << "  edge ratio at beta=10: " << format_fixed(f.ratio_at_10, 3) << '\n';
    out << "  crossover: " << (f.crossover_beta ? format_fixed(*f.crossover_beta, 1) : std::string("none")) << '\n';
    for (const Evidence& e : v.evidence)
        out << "  [" << (e.passed ? "x" : " ") << "] " << e.criterion << ": " << format_fixed(e.value, 4) << " vs "
            << format_fixed(e.threshold, 4) << '\n';
}

inline void write_defect_report(std::ostream& out, const DefectReport& r) {
    out << "# summary\nkey,value\n";
    out << "grid_step," << format_double(r.grid_step) << '\n';
    out << "beta_stabilized," << format_double(r.beta_stabilized) << '\n';
    out << "defect_row," << r.defect_row << '\n';
    out << "defect_col," << r.defect_col << '\n';
    out << "edges_at_start," << r.edges_at_start << '\n';
    out << "edges_at_end," << r.edges_at_end << '\n';
    out << "# removed_edges\nbeta,i,j\n";
    for (const Removal& rem : r.removed_edges_by_beta)
        for (const Edge& e : rem.edges) out << format_fixed(rem.beta, 1) << ',' << e.i << ',' << e.j << '\n';
    out << "# affected_rows\nrow\n";
    for (std::size_t row : r.affected_rows) out << row << '\n';
    out << "# affected_cols\ncol\n";
    for (std::size_t col : r.affected_cols) out << col << '\n';
}

inline void write_scan(std::ostream& out, std::span<const ScanRow> rows) {
    out << "n,c,alpha,r\n";
    for (const ScanRow& row : rows)
        out << row.n << ',' << format_double(row.c) << ',' << format_double(row.alpha) << ',' << format_double(row.r)
            << '\n';
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

struct Viewport {
    double min_x, min_y, width, height;

    // flips y so the drawing matches the usual mathematical orientation
    double sx(double x) const { return x - min_x; }
    double sy(double y) const { return height - (y - min_y); }
};

inline Viewport fit_viewport(std::span<const Point> pts) {
    double lo_x = 0, lo_y = 0, hi_x = 1, hi_y = 1;
    if (!pts.empty()) {
        lo_x = hi_x = pts[0].x;
        lo_y = hi_y = pts[0].y;
        for (const Point& p : pts) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    }
    double w = hi_x - lo_x, h = hi_y - lo_y;
    const double extent = std::max({w, h, 1e-9});
    if (w == 0.0) w = extent;
    if (h == 0.0) h = extent;
    const double mx = 0.05 * w, my = 0.05 * h;
    return {lo_x - mx, lo_y - my, w + 2 * mx, h + 2 * my};
}

} // namespace detail

/// Points as small circles, edges as line segments; viewport is the bounding
/// box with a 5% margin.
inline void write_skeleton_svg(std::ostream& out, const PointSet& ps, const Skeleton& sk) {
    const auto vp = detail::fit_viewport(ps.points());
    const double radius = 0.004 * std::max(vp.width, vp.height);
    const double stroke = 0.5 * radius;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << format_double(vp.width) << ' '
        << format_double(vp.height) << "\">\n";
    out << "<title>beta-skeleton beta=" << format_double(sk.beta) << " edges=" << sk.edges.size() << "</title>\n";
    out << "<g stroke=\"black\" stroke-width=\"" << format_double(stroke) << "\">\n";
    for (const Edge& e : sk.edges) {
        const Point& a = ps[e.i];
        const Point& b = ps[e.j];
        out << "<line x1=\"" << format_double(vp.sx(a.x)) << "\" y1=\"" << format_double(vp.sy(a.y)) << "\" x2=\""
            << format_double(vp.sx(b.x)) << "\" y2=\"" << format_double(vp.sy(b.y)) << "\"/>\n";
    }
    out << "</g>\n<g fill=\"black\">\n";
    for (const Point& p : ps)
        out << "<circle cx=\"" << format_double(vp.sx(p.x)) << "\" cy=\"" << format_double(vp.sy(p.y)) << "\" r=\""
            << format_double(radius) << "\"/>\n";
    out << "</g>\n</svg>\n";
}

inline void write_skeleton_svg(const PointSet& ps, const Skeleton& sk, const std::string& path) {
    auto out = detail::open_out(path);
    write_skeleton_svg(out, ps, sk);
    detail::finish(out, path);
}

/// e(beta) as a polyline.
inline void write_curve_svg(std::ostream& out, const Curve& c) {
    std::vector<Point> pts;
    for (const Sample& s : c.samples()) pts.push_back({s.beta, static_cast<double>(s.edges)});
    pts.push_back({pts.empty() ? 1.0 : pts.front().x, 0.0});
    const auto vp = detail::fit_viewport(pts);
    pts.pop_back();
    const double aspect = vp.width / vp.height;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << format_double(vp.width) << ' '
        << format_double(vp.height * aspect) << "\" preserveAspectRatio=\"none\">\n";
    out << "<polyline fill=\"none\" stroke=\"black\" vector-effect=\"non-scaling-stroke\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k)
        out << (k ? " " : "") << format_double(vp.sx(pts[k].x)) << ',' << format_double(vp.sy(pts[k].y) * aspect);
    out << "\"/>\n</svg>\n";
}

inline void write_curve_svg(const Curve& c, const std::string& path) {
    auto out = detail::open_out(path);
    write_curve_svg(out, c);
    detail::finish(out, path);
}

} // namespace bskel::io

#endif

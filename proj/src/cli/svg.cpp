#include "lagspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lagspec {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

struct Frame {
    double q0, q1, p0, p1;
    double width, height, margin = 32;

    double x(const Rational& q) const { return margin + (to_double(q) - q0) / (q1 - q0) * width; }
    double y(const Rational& p) const { return margin + (p1 - to_double(p)) / (p1 - p0) * height; }
};

Frame frame_for(const Rational& q0, const Rational& q1, const Rational& p0, const Rational& p1) {
    Frame f{to_double(q0), to_double(q1), to_double(p0), to_double(p1), 640, 640};
    f.height = std::clamp(640 * (f.p1 - f.p0) / (f.q1 - f.q0), 160.0, 960.0);
    return f;
}

std::string header(const Frame& f, const std::string& title) {
    std::ostringstream o;
    double W = f.width + 2 * f.margin, H = f.height + 2 * f.margin;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
      << "\" viewBox=\"0 0 " << num(W) << ' ' << num(H) << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<defs><clipPath id=\"window\"><rect x=\"" << num(f.margin) << "\" y=\"" << num(f.margin) << "\" width=\""
      << num(f.width) << "\" height=\"" << num(f.height) << "\"/></clipPath></defs>\n";
    if (!title.empty())
        o << "<text x=\"" << num(f.margin) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">" << escape(title)
          << "</text>\n";
    o << "<rect x=\"" << num(f.margin) << "\" y=\"" << num(f.margin) << "\" width=\"" << num(f.width)
      << "\" height=\"" << num(f.height) << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
    return o.str();
}

void draw_curve(std::ostringstream& o, const Frame& f, const PLCurve& l, const std::string& colour) {
    const Rational& Q = l.period();
    const long n = static_cast<long>(l.size());
    Rational lo = l.min_q(), hi = l.max_q();
    const double Qd = to_double(Q);
    long kmin = static_cast<long>(std::floor((f.q0 - to_double(hi)) / Qd)) - 1;
    long kmax = static_cast<long>(std::ceil((f.q1 - to_double(lo)) / Qd)) + 1;
    for (long k = kmin; k <= kmax; ++k) {
        o << "<polyline clip-path=\"url(#window)\" fill=\"none\" stroke=\"" << colour
          << "\" stroke-width=\"1.5\" points=\"";
        for (long i = 0; i <= n; ++i) {
            Point v = l.vertex(i);
            v.q += Q * k;
            o << num(f.x(v.q)) << ',' << num(f.y(v.p)) << (i < n ? " " : "");
        }
        o << "\"/>\n";
    }
}

}  // namespace

std::string svg_scene(const SvgScene& scene) {
    Frame f = frame_for(scene.q0, scene.q1, scene.p0, scene.p1);
    std::ostringstream o;
    o << header(f, scene.title);
    for (const auto& poly : scene.shaded) {
        o << "<polygon clip-path=\"url(#window)\" fill=\"#f2c14e\" fill-opacity=\"0.45\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i)
            o << num(f.x(poly[i].q)) << ',' << num(f.y(poly[i].p)) << (i + 1 < poly.size() ? " " : "");
        o << "\"/>\n";
    }
    for (const auto& b : scene.boxes) {
        double x0 = f.x(b.center.q - b.half), x1 = f.x(b.center.q + b.half);
        double y0 = f.y(b.center.p + b.half), y1 = f.y(b.center.p - b.half);
        o << "<rect clip-path=\"url(#window)\" x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
          << num(x1 - x0) << "\" height=\"" << num(y1 - y0)
          << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"3,2\"/>\n";
    }
    for (const auto& c : scene.curves) draw_curve(o, f, c.curve, c.colour);
    for (const auto& m : scene.marks)
        o << "<circle cx=\"" << num(f.x(m.q)) << "\" cy=\"" << num(f.y(m.p)) << "\" r=\"2.5\" fill=\"#c0392b\"/>\n";
    double ly = f.margin + f.height + 20;
    double lx = f.margin;
    for (const auto& c : scene.curves) {
        if (c.label.empty()) continue;
        o << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 9) << "\" width=\"12\" height=\"3\" fill=\"" << c.colour
          << "\"/>\n";
        o << "<text x=\"" << num(lx + 16) << "\" y=\"" << num(ly - 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(c.label) << "</text>\n";
        lx += 24 + 7.0 * static_cast<double>(c.label.size());
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_barcode(const Barcode& b, const std::string& title) {
    auto bars = b.canonical().bars;
    Rational lo = 0, hi = 1;
    bool any = false;
    for (const auto& bar : bars)
        for (const ExtRational* e : {&bar.birth, &bar.death})
            if (e->is_finite()) {
                if (!any || e->value() < lo) lo = e->value();
                if (!any || e->value() > hi) hi = e->value();
                any = true;
            }
    if (!(lo < hi)) hi = lo + 1;
    Rational pad = (hi - lo) / 8;
    lo -= pad;
    hi += pad;
    const double row = 18;
    Frame f{to_double(lo), to_double(hi), 0, 1, 640, std::max(row * static_cast<double>(bars.size()) + 12, 60.0)};
    std::ostringstream o;
    o << header(f, title);
    const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c"};
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const Bar& bar = bars[i];
        double y = f.margin + 12 + row * static_cast<double>(i);
        double x0 = bar.birth.is_finite() ? f.x(bar.birth.value()) : f.margin;
        double x1 = bar.death.is_finite() ? f.x(bar.death.value()) : f.margin + f.width;
        const char* c = colours[((bar.degree % 3) + 3) % 3];
        o << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y)
          << "\" stroke=\"" << c << "\" stroke-width=\"5\"/>\n";
        if (!bar.death.is_finite())
            o << "<polygon points=\"" << num(x1) << ',' << num(y) << ' ' << num(x1 - 8) << ',' << num(y - 5) << ' '
              << num(x1 - 8) << ',' << num(y + 5) << "\" fill=\"" << c << "\"/>\n";
        o << "<text x=\"" << num(x0 + 3) << "\" y=\"" << num(y - 4)
          << "\" font-family=\"sans-serif\" font-size=\"9\">deg " << bar.degree << " [" << to_string(bar.birth) << ", "
          << to_string(bar.death) << ")</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_heatmap(const Grid& grid, const std::vector<SupportPoint>& points, const Rational& eps,
                        const PLCurve& curve, const std::string& title) {
    Frame f = frame_for(grid.q0, grid.q1, grid.p0, grid.p1);
    std::ostringstream o;
    o << header(f, title);
    const Rational dq = (grid.q1 - grid.q0) / static_cast<unsigned long>(grid.nq);
    const Rational dp = (grid.p1 - grid.p0) / static_cast<unsigned long>(grid.np);
    const Rational scale = eps * eps;
    for (const auto& sp : points) {
        double t = std::clamp(to_double(sp.certificate.gamma_lower_bound / scale), 0.0, 1.0);
        int shade = static_cast<int>(230 - 180 * t);
        double x0 = f.x(sp.z.q - dq / 2), x1 = f.x(sp.z.q + dq / 2);
        double y0 = f.y(sp.z.p + dp / 2), y1 = f.y(sp.z.p - dp / 2);
        o << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0) << "\" height=\""
          << num(y1 - y0) << "\" fill=\"rgb(" << shade << ',' << shade << ",255)\"/>\n";
    }
    draw_curve(o, f, curve, "#222222");
    o << "</svg>\n";
    return o.str();
}

}  // namespace lagspec

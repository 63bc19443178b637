#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "critype/common.hpp"
#include "critype/geometry.hpp"

namespace critype {

namespace detail {

inline void svg_num(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += buf;
}

inline void svg_point(std::string& out, const Complex& p) {
    svg_num(out, p.real());
    out += ',';
    svg_num(out, -p.imag());  // svg y axis points down
}

inline void svg_fmt(std::string& out, const char* fmt, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, a);
    out += buf;
}

}  // namespace detail

// Deterministic standalone SVG picture of an analysis: the body, its
// circumcircle, the contact structure, and (in the triangle case) the polar
// triangle, with a 10 percent margin around everything drawn.
inline std::string render_svg(const AnalysisReport& rep) {
    double xmin = -rep.circle.radius, xmax = rep.circle.radius;
    double ymin = -rep.circle.radius, ymax = rep.circle.radius;
    auto grow = [&](const Complex& p) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    };
    for (const auto& v : rep.body.vertices()) grow(v);
    if (rep.classification &&
        rep.classification->kind == ContactCase::contact_triangle)
        for (const auto& n : rep.classification->polar) grow(n);
    if (xmax - xmin < 1e-9) { xmin -= 1.0; xmax += 1.0; }
    if (ymax - ymin < 1e-9) { ymin -= 1.0; ymax += 1.0; }
    const double pad = 0.1 * std::max(xmax - xmin, ymax - ymin);
    xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
    const double w = xmax - xmin, h = ymax - ymin;
    const double sw = 0.004 * std::max(w, h);   // stroke width
    const double fs = 0.035 * std::max(w, h);   // font size

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    detail::svg_num(s, xmin); s += ' ';
    detail::svg_num(s, -ymax); s += ' ';
    detail::svg_num(s, w); s += ' ';
    detail::svg_num(s, h);
    s += "\" font-family=\"sans-serif\">\n";

    s += "<circle cx=\"0\" cy=\"0\" r=\"";
    detail::svg_num(s, rep.circle.radius);
    s += "\" fill=\"none\" stroke=\"#607080\" stroke-width=\"";
    detail::svg_num(s, sw);
    s += "\"/>\n";

    const auto& verts = rep.body.vertices();
    if (verts.size() >= 3) {
        s += "<polygon points=\"";
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (i) s += ' ';
            detail::svg_point(s, verts[i]);
        }
        s += "\" fill=\"#3b78c3\" fill-opacity=\"0.18\" stroke=\"#3b78c3\" stroke-width=\"";
        detail::svg_num(s, sw);
        s += "\"/>\n";
    } else if (verts.size() == 2) {
        s += "<line x1=\"";
        detail::svg_num(s, verts[0].real()); s += "\" y1=\"";
        detail::svg_num(s, -verts[0].imag()); s += "\" x2=\"";
        detail::svg_num(s, verts[1].real()); s += "\" y2=\"";
        detail::svg_num(s, -verts[1].imag());
        s += "\" stroke=\"#3b78c3\" stroke-width=\"";
        detail::svg_num(s, 1.5 * sw);
        s += "\"/>\n";
    }

    if (rep.classification) {
        const auto& cls = *rep.classification;
        if (cls.kind == ContactCase::contact_triangle) {
            s += "<polygon points=\"";
            for (int i = 0; i < 3; ++i) {
                if (i) s += ' ';
                detail::svg_point(s, cls.polar[i]);
            }
            s += "\" fill=\"none\" stroke=\"#c34040\" stroke-width=\"";
            detail::svg_num(s, sw);
            s += "\" stroke-dasharray=\"";
            detail::svg_num(s, 3.0 * sw); s += ' ';
            detail::svg_num(s, 3.0 * sw);
            s += "\"/>\n";
            for (int i = 0; i < 3; ++i) {
                s += "<text x=\"";
                detail::svg_num(s, cls.polar[i].real() + 2.0 * sw);
                s += "\" y=\"";
                detail::svg_num(s, -cls.polar[i].imag());
                s += "\" font-size=\"";
                detail::svg_num(s, fs);
                s += "\" fill=\"#c34040\">N";
                s += static_cast<char>('1' + i);
                s += "</text>\n";
            }
        }
        for (std::size_t i = 0; i < cls.contact_points.size(); ++i) {
            s += "<circle cx=\"";
            detail::svg_num(s, cls.contact_points[i].real());
            s += "\" cy=\"";
            detail::svg_num(s, -cls.contact_points[i].imag());
            s += "\" r=\"";
            detail::svg_num(s, 2.0 * sw);
            s += "\" fill=\"#2a8a4a\"/>\n<text x=\"";
            detail::svg_num(s, cls.contact_points[i].real() + 2.0 * sw);
            s += "\" y=\"";
            detail::svg_num(s, -cls.contact_points[i].imag() - 2.0 * sw);
            s += "\" font-size=\"";
            detail::svg_num(s, fs);
            s += "\" fill=\"#2a8a4a\">M";
            s += static_cast<char>('1' + i);
            s += "</text>\n";
        }
    }

    s += "<circle cx=\"0\" cy=\"0\" r=\"";
    detail::svg_num(s, 1.2 * sw);
    s += "\" fill=\"#202020\"/>\n";

    s += "<text x=\"";
    detail::svg_num(s, xmin + 2.0 * sw);
    s += "\" y=\"";
    detail::svg_num(s, -ymax + fs + 2.0 * sw);
    s += "\" font-size=\"";
    detail::svg_num(s, fs);
    s += "\" fill=\"#202020\">";
    detail::svg_fmt(s, "sigma_u = %.6f", rep.sigma_u);
    if (rep.classification)
        s += rep.classification->kind == ContactCase::diametral_pair
                 ? "  (segment contact)"
                 : "  (triangle contact)";
    s += "</text>\n</svg>\n";
    return s;
}

}  // namespace critype

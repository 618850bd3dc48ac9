#include <cstdint>
#include <cstdio>
#include <sstream>

#include "giet/io.hpp"

namespace giet {

namespace {

constexpr double kWidth = 800;
constexpr double kMargin = 40;
constexpr double kTopY = 60;
constexpr double kBottomY = 180;
constexpr double kBar = 24;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string label_color(const Label& a) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : a) {
        h ^= c;
        h *= 16777619u;
    }
    const int r = 96 + static_cast<int>(h & 0x7f);
    const int g = 96 + static_cast<int>((h >> 8) & 0x7f);
    const int b = 96 + static_cast<int>((h >> 16) & 0x7f);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string render_svg(const GGiet& m, const DecompositionReport* report, const std::map<Label, std::string>& colors) {
    const double L = m.length().to_double();
    const double scale = L > 0 ? (kWidth - 2 * kMargin) / L : 0;
    auto X = [&](const Scalar& s) { return kMargin + s.to_double() * scale; };
    auto color = [&](const Label& a) {
        auto it = colors.find(a);
        return it != colors.end() ? it->second : label_color(a);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"260.000\" "
       << "viewBox=\"0 0 " << fmt(kWidth) << " 260.000\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (report) {
        auto tint = [&](const std::vector<Interval>& region, const std::string& fill, const std::string& cls) {
            for (const auto& iv : region) {
                os << "<rect class=\"" << cls << "\" x=\"" << fmt(X(iv.lo)) << "\" y=\"" << fmt(kTopY - 20)
                   << "\" width=\"" << fmt(iv.length().to_double() * scale) << "\" height=\""
                   << fmt(kBottomY + kBar + 20 - (kTopY - 20)) << "\" fill=\"" << fill
                   << "\" fill-opacity=\"0.15\"/>\n";
            }
        };
        tint(report->transition, "#888888", "transition");
        for (const auto& d : report->domains) {
            tint(d.region, d.kind == DomainReport::Kind::Periodic ? "#2060ff" : "#ff6020",
                 d.kind == DomainReport::Kind::Periodic ? "periodic" : "quasiminimal");
        }
        for (const auto& u : report->undecided) tint(u.region, "#c0c000", "undecided");
    }

    auto row = [&](const Layout& layout, double y, bool top) {
        const auto spans = layout.spans();
        for (std::size_t i = 0; i < spans.size(); ++i) {
            const Item& it = layout.items()[i];
            const double x0 = X(spans[i].lo);
            const double w = spans[i].length().to_double() * scale;
            if (it.gap) {
                os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w) << "\" height=\""
                   << fmt(kBar) << "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
                continue;
            }
            os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w) << "\" height=\""
               << fmt(kBar) << "\" fill=\"" << escape(color(it.label)) << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << fmt(x0 + w / 2) << "\" y=\"" << fmt(y + kBar / 2 + 4)
               << "\" text-anchor=\"middle\">" << escape(it.label) << "</text>\n";
            if (top) {
                const Scalar& s = m.slope(it.label);
                if (s != Scalar(1)) {
                    os << "<text x=\"" << fmt(x0 + w / 2) << "\" y=\"" << fmt(y - 6)
                       << "\" text-anchor=\"middle\" font-size=\"10\">x" << escape(s.to_string()) << "</text>\n";
                }
            }
        }
    };
    row(m.top(), kTopY, true);
    row(m.bottom(), kBottomY, false);

    for (const auto& a : m.labels()) {
        const Interval& t = m.top_interval(a);
        const Interval& b = m.bottom_interval(a);
        os << "<line x1=\"" << fmt((X(t.lo) + X(t.hi)) / 2) << "\" y1=\"" << fmt(kTopY + kBar) << "\" x2=\""
           << fmt((X(b.lo) + X(b.hi)) / 2) << "\" y2=\"" << fmt(kBottomY) << "\" stroke=\""
           << escape(color(a)) << "\" stroke-width=\"1.5\"/>\n";
    }
    os << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kBottomY + kBar + 40) << "\">L = "
       << escape(m.length().to_string()) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace giet

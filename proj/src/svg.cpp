#include <roundtable/svg.hpp>

#include <roundtable/angles.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace roundtable {

namespace {

constexpr double kPxPerMeter = 100.0;
constexpr double kPadPx = 40.0;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string layout_to_svg(const ConversationLayout& layout) {
    const double radius_px = layout.placement.radius_m * kPxPerMeter;
    const double width = 2.0 * radius_px + 2.0 * kPadPx;
    const double height = 2.0 * radius_px + 2.0 * kPadPx;
    // World: local user at origin, +x right, +z away from the user.
    // SVG: origin top-left, y grows downward.
    const auto sx = [&](double x_m) { return width / 2.0 + x_m * kPxPerMeter; };
    const auto sy = [&](double z_m) { return height - kPadPx - z_m * kPxPerMeter; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(width) << " "
        << num(height) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <circle cx=\"" << num(sx(0)) << "\" cy=\"" << num(sy(layout.placement.radius_m))
        << "\" r=\"" << num(radius_px)
        << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"6 4\"/>\n";
    // Local user: triangle at the origin pointing +z.
    out << "  <path d=\"M " << num(sx(0)) << " " << num(sy(0.12)) << " L " << num(sx(-0.08))
        << " " << num(sy(-0.08)) << " L " << num(sx(0.08)) << " " << num(sy(-0.08))
        << " Z\" fill=\"#1f4e8c\"/>\n";
    int index = 1;
    for (const AvatarPose& p : layout.poses) {
        const double yaw_rad = deg_to_rad(p.yaw_deg);
        const double tick = 0.25;  // meters
        const double tx = p.x_m + tick * std::sin(yaw_rad);
        const double tz = p.z_m + tick * std::cos(yaw_rad);
        out << "  <line x1=\"" << num(sx(p.x_m)) << "\" y1=\"" << num(sy(p.z_m)) << "\" x2=\""
            << num(sx(tx)) << "\" y2=\"" << num(sy(tz)) << "\" stroke=\"#c23b22\"/>\n";
        out << "  <circle cx=\"" << num(sx(p.x_m)) << "\" cy=\"" << num(sy(p.z_m))
            << "\" r=\"8\" fill=\"#e07b54\"/>\n";
        out << "  <text x=\"" << num(sx(p.x_m)) << "\" y=\"" << num(sy(p.z_m) + 4.0)
            << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"white\">" << index
            << "</text>\n";
        ++index;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace roundtable

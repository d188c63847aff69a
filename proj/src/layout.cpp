#include <roundtable/layout.hpp>

#include <roundtable/angles.hpp>
#include <roundtable/json_io.hpp>

#include <cmath>
#include <string>

namespace roundtable {

void validate(const Placement& placement) {
    if (!(placement.radius_m > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "radius must be positive");
    }
    if (!(placement.radian_deg >= 0.0) || !(placement.radian_deg < 180.0)) {
        throw Error(ErrorCode::InvalidInput, "radian must be in [0, 180) degrees");
    }
}

namespace {

AvatarPose pose_at_central_offset(double radius_m, double offset_deg) {
    const double offset_rad = deg_to_rad(offset_deg);
    const double x = radius_m * std::sin(offset_rad);
    const double z = radius_m + radius_m * std::cos(offset_rad);
    return AvatarPose{x, z, billboard_yaw(x, z)};
}

}  // namespace

ConversationLayout resolve_layout(const Placement& placement, int n_remote) {
    if (n_remote < 1) {
        throw Error(ErrorCode::InvalidCount, "need at least one remote user");
    }
    validate(placement);

    ConversationLayout layout;
    layout.n_remote = n_remote;
    layout.poses.reserve(static_cast<size_t>(n_remote));

    if (n_remote == 1) {
        // Radian is not applicable; normalize it away and pin the single
        // avatar diametrically opposite the local user.
        layout.placement = Placement{0.0, placement.radius_m};
        layout.poses.push_back(pose_at_central_offset(placement.radius_m, 0.0));
        return layout;
    }

    layout.placement = placement;
    layout.degenerate_radian = placement.radian_deg == 0.0;
    // The angle at the local user (an inscribed angle) spans half the central
    // arc, so avatars cover central offsets [-radian, +radian] from the top.
    for (int i = 0; i < n_remote; ++i) {
        const double frac = static_cast<double>(i) / (n_remote - 1) - 0.5;
        const double offset_deg = 2.0 * placement.radian_deg * frac;
        layout.poses.push_back(pose_at_central_offset(placement.radius_m, offset_deg));
    }
    return layout;
}

double distance_to_local(const Placement& placement, double central_offset_deg) {
    validate(placement);
    if (std::abs(central_offset_deg) > 180.0) {
        throw Error(ErrorCode::InvalidInput, "central offset must be within [-180, 180]");
    }
    return 2.0 * placement.radius_m * std::cos(deg_to_rad(std::abs(central_offset_deg)) / 2.0);
}

std::vector<double> adjacent_gaps(const ConversationLayout& layout) {
    if (layout.n_remote < 1 || layout.poses.empty()) {
        throw Error(ErrorCode::InvalidCount, "layout has no poses");
    }
    std::vector<double> gaps;
    gaps.reserve(layout.poses.size() + 1);
    const AvatarPose& first = layout.poses.front();
    const AvatarPose& last = layout.poses.back();
    gaps.push_back(std::hypot(first.x_m, first.z_m));
    for (size_t i = 1; i < layout.poses.size(); ++i) {
        gaps.push_back(std::hypot(layout.poses[i].x_m - layout.poses[i - 1].x_m,
                                  layout.poses[i].z_m - layout.poses[i - 1].z_m));
    }
    gaps.push_back(std::hypot(last.x_m, last.z_m));
    return gaps;
}

double billboard_yaw(double x_m, double z_m) {
    if (x_m == 0.0 && z_m == 0.0) {
        throw Error(ErrorCode::AtOrigin, "cannot orient a billboard at the viewer position");
    }
    return wrap_deg(rad_to_deg(std::atan2(-x_m, -z_m)));
}

nlohmann::json to_json(const ConversationLayout& layout) {
    nlohmann::json j;
    j["schema"] = "roundtable.layout/1";
    j["placement"]["radian_deg"] =
        layout.radian_applicable() ? nlohmann::json(layout.placement.radian_deg)
                                   : nlohmann::json(nullptr);
    j["placement"]["radius_m"] = layout.placement.radius_m;
    j["n_remote"] = layout.n_remote;
    j["degenerate_radian"] = layout.degenerate_radian;
    auto poses = nlohmann::json::array();
    for (const AvatarPose& p : layout.poses) {
        poses.push_back({{"x_m", p.x_m}, {"z_m", p.z_m}, {"yaw_deg", p.yaw_deg}});
    }
    j["poses"] = std::move(poses);
    return j;
}

ConversationLayout layout_from_json_obj(const nlohmann::json& j) {
    ConversationLayout layout;
    const auto& placement = j.at("placement");
    layout.placement.radian_deg =
        placement.at("radian_deg").is_null() ? 0.0 : placement.at("radian_deg").get<double>();
    layout.placement.radius_m = placement.at("radius_m").get<double>();
    layout.n_remote = j.at("n_remote").get<int>();
    layout.degenerate_radian = j.at("degenerate_radian").get<bool>();
    for (const auto& p : j.at("poses")) {
        layout.poses.push_back(AvatarPose{p.at("x_m").get<double>(), p.at("z_m").get<double>(),
                                          p.at("yaw_deg").get<double>()});
    }
    return layout;
}

std::string layout_to_json(const ConversationLayout& layout, int indent) {
    return to_json(layout).dump(indent) + "\n";
}

ConversationLayout layout_from_json(const std::string& text) {
    return layout_from_json_obj(nlohmann::json::parse(text));
}

}  // namespace roundtable

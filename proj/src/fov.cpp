#include <roundtable/fov.hpp>

#include <roundtable/angles.hpp>
#include <roundtable/json_io.hpp>

#include <cmath>
#include <string>

namespace roundtable {

void validate(const FieldOfView& fov) {
    if (!(fov.diagonal_deg > 0.0) || !(fov.diagonal_deg < 180.0)) {
        throw Error(ErrorCode::InvalidInput,
                    "diagonal FoV must be in (0, 180) degrees, got " +
                        std::to_string(fov.diagonal_deg));
    }
    if (!(fov.aspect_w > 0.0) || !(fov.aspect_h > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "aspect units must be positive");
    }
}

bool same_aspect(const FieldOfView& a, const FieldOfView& b) {
    // Cross-multiplied ratio comparison, tolerant to scaled representations.
    const double lhs = a.aspect_w * b.aspect_h;
    const double rhs = b.aspect_w * a.aspect_h;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, scale);
}

DecomposedFov decompose_fov(const FieldOfView& fov) {
    validate(fov);
    const double tan_half_diag = std::tan(deg_to_rad(fov.diagonal_deg) / 2.0);
    const double diag_units = std::hypot(fov.aspect_w, fov.aspect_h);
    const double tan_half_h = tan_half_diag * fov.aspect_w / diag_units;
    const double tan_half_v = tan_half_diag * fov.aspect_h / diag_units;
    return DecomposedFov{
        .horizontal_deg = 2.0 * rad_to_deg(std::atan(tan_half_h)),
        .vertical_deg = 2.0 * rad_to_deg(std::atan(tan_half_v)),
    };
}

double recompose_diagonal_deg(const DecomposedFov& d) {
    const double th = std::tan(deg_to_rad(d.horizontal_deg) / 2.0);
    const double tv = std::tan(deg_to_rad(d.vertical_deg) / 2.0);
    return 2.0 * rad_to_deg(std::atan(std::hypot(th, tv)));
}

OccluderRig occluder_layout(const FieldOfView& device, const FieldOfView& target,
                            double distance_m) {
    validate(device);
    validate(target);
    if (!(distance_m > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "occluder distance must be positive");
    }
    if (!same_aspect(device, target)) {
        throw Error(ErrorCode::AspectMismatch, "device and target aspect ratios differ");
    }
    if (target.diagonal_deg > device.diagonal_deg) {
        throw Error(ErrorCode::TargetExceedsDevice,
                    "target diagonal " + std::to_string(target.diagonal_deg) +
                        " exceeds device diagonal " + std::to_string(device.diagonal_deg));
    }

    const DecomposedFov dev = decompose_fov(device);
    const DecomposedFov tgt = decompose_fov(target);
    const double device_half_w = distance_m * std::tan(deg_to_rad(dev.horizontal_deg) / 2.0);
    const double device_half_h = distance_m * std::tan(deg_to_rad(dev.vertical_deg) / 2.0);
    const double clear_half_w = distance_m * std::tan(deg_to_rad(tgt.horizontal_deg) / 2.0);
    const double clear_half_h = distance_m * std::tan(deg_to_rad(tgt.vertical_deg) / 2.0);

    OccluderRig rig;
    rig.distance_m = distance_m;
    rig.clear_half_width_m = clear_half_w;
    rig.clear_half_height_m = clear_half_h;
    // Top/bottom bands run the full device width; left/right fill the side
    // bands at clear-window height.
    rig.top = PlaneRect{0.0, (clear_half_h + device_half_h) / 2.0, device_half_w,
                        (device_half_h - clear_half_h) / 2.0};
    rig.bottom = PlaneRect{0.0, -(clear_half_h + device_half_h) / 2.0, device_half_w,
                           (device_half_h - clear_half_h) / 2.0};
    rig.left = PlaneRect{-(clear_half_w + device_half_w) / 2.0, 0.0,
                         (device_half_w - clear_half_w) / 2.0, clear_half_h};
    rig.right = PlaneRect{(clear_half_w + device_half_w) / 2.0, 0.0,
                          (device_half_w - clear_half_w) / 2.0, clear_half_h};
    rig.degenerate = target.diagonal_deg == device.diagonal_deg;
    return rig;
}

namespace {

nlohmann::json rect_json(const PlaneRect& r) {
    return {{"center_x_m", r.center_x_m},
            {"center_y_m", r.center_y_m},
            {"half_width_m", r.half_width_m},
            {"half_height_m", r.half_height_m}};
}

nlohmann::json fov_json(const FieldOfView& fov) {
    return {{"diagonal_deg", fov.diagonal_deg},
            {"aspect_w", fov.aspect_w},
            {"aspect_h", fov.aspect_h}};
}

}  // namespace

nlohmann::json to_json(const OccluderRig& rig, const FieldOfView& device,
                       const FieldOfView& target) {
    nlohmann::json j;
    j["schema"] = "roundtable.occluders/1";
    j["device"] = fov_json(device);
    j["target"] = fov_json(target);
    j["distance_m"] = rig.distance_m;
    j["clear_half_width_m"] = rig.clear_half_width_m;
    j["clear_half_height_m"] = rig.clear_half_height_m;
    j["degenerate"] = rig.degenerate;
    j["occluders"] = {{"top", rect_json(rig.top)},
                      {"bottom", rect_json(rig.bottom)},
                      {"left", rect_json(rig.left)},
                      {"right", rect_json(rig.right)}};
    return j;
}

}  // namespace roundtable

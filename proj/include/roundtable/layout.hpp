#pragma once

#include <roundtable/errors.hpp>

#include <string>
#include <vector>

namespace roundtable {

/// Conversation-circle parameters: the angle subtended at the local user
/// between the leftmost and rightmost avatars, and the circle radius.
struct Placement {
    double radian_deg = 0.0;
    double radius_m = 0.0;

    bool operator==(const Placement&) const = default;
};

/// Throws Error{InvalidInput} unless radius > 0 and 0 <= radian < 180.
void validate(const Placement& placement);

/// Planar avatar pose in the local user's frame: the user stands at the
/// origin facing +z. yaw_deg is the heading of the avatar's facing vector,
/// atan2(x, z) in degrees, wrapped to (-180, 180].
struct AvatarPose {
    double x_m = 0.0;
    double z_m = 0.0;
    double yaw_deg = 0.0;

    bool operator==(const AvatarPose&) const = default;
};

struct ConversationLayout {
    Placement placement;
    int n_remote = 0;
    std::vector<AvatarPose> poses;  // leftmost first
    bool degenerate_radian = false; // radian == 0 with n >= 2: avatars coincide

    /// Radian has no meaning for a single remote user; it is stored as 0.
    bool radian_applicable() const { return n_remote >= 2; }

    bool operator==(const ConversationLayout&) const = default;
};

/// Places n_remote avatars on the circle of radius R centered at (0, R),
/// local user pinned at the bottom (the origin). Avatars spread evenly over
/// central offsets [-radian, +radian] measured from the circle's top point;
/// a single avatar sits at the top, (0, 2R). Throws Error{InvalidCount} for
/// n_remote < 1.
ConversationLayout resolve_layout(const Placement& placement, int n_remote);

/// Chord length from the local user (circle bottom) to the point at central
/// offset delta from the top: 2R*cos(|delta|/2). Requires |delta| <= 180.
double distance_to_local(const Placement& placement, double central_offset_deg);

/// The n_remote + 1 adjacent interpersonal distances walking the circle:
/// local->leftmost, each avatar-to-avatar gap, rightmost->local.
std::vector<double> adjacent_gaps(const ConversationLayout& layout);

/// Heading that points a billboard at the origin: the facing vector is
/// -position normalized. Throws Error{AtOrigin} for the zero position.
double billboard_yaw(double x_m, double z_m);

std::string layout_to_json(const ConversationLayout& layout, int indent = 2);
ConversationLayout layout_from_json(const std::string& text);

}  // namespace roundtable

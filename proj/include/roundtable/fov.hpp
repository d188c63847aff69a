#pragma once

#include <roundtable/errors.hpp>

namespace roundtable {

/// A display field of view given as the corner-to-corner angle plus aspect
/// ratio. Decomposition assumes a planar pinhole projection: the tangent of
/// the diagonal half-angle splits across width and height in proportion to
/// the aspect units.
struct FieldOfView {
    double diagonal_deg = 0.0;
    double aspect_w = 1.0;
    double aspect_h = 1.0;

    bool operator==(const FieldOfView&) const = default;
};

/// Throws Error{InvalidInput} unless 0 < diagonal < 180 and both aspect units
/// are positive.
void validate(const FieldOfView& fov);

/// True when the two aspect ratios are equal (3:2 matches 6:4).
bool same_aspect(const FieldOfView& a, const FieldOfView& b);

struct DecomposedFov {
    double horizontal_deg = 0.0;
    double vertical_deg = 0.0;
};

/// Splits a diagonal FoV into horizontal and vertical full angles:
///   tan(h/2) = tan(d/2) * w / sqrt(w^2 + h_a^2)
///   tan(v/2) = tan(d/2) * h_a / sqrt(w^2 + h_a^2)
DecomposedFov decompose_fov(const FieldOfView& fov);

/// Recombines half-angle tangents back into the diagonal:
/// tan^2(d/2) = tan^2(h/2) + tan^2(v/2).
double recompose_diagonal_deg(const DecomposedFov& decomposed);

/// Axis-aligned rectangle in a plane perpendicular to the view axis,
/// center plus half-extents, meters.
struct PlaneRect {
    double center_x_m = 0.0;
    double center_y_m = 0.0;
    double half_width_m = 0.0;
    double half_height_m = 0.0;

    double area_m2() const { return 4.0 * half_width_m * half_height_m; }
    bool operator==(const PlaneRect&) const = default;
};

/// Four opaque rectangles in the near plane at distance_m that mask a device
/// FoV down to a target FoV. Top and bottom span the full device width; left
/// and right fill the side bands beside the clear window, so together the
/// four tile the device window outside the clear window with no gaps and no
/// overlap.
struct OccluderRig {
    double distance_m = 0.0;
    double clear_half_width_m = 0.0;
    double clear_half_height_m = 0.0;
    PlaneRect top, bottom, left, right;
    bool degenerate = false;  // target == device: occluders have zero area
};

/// Computes the occluder rig masking `device` down to `target` at the given
/// plane distance. Throws Error{TargetExceedsDevice} when the target diagonal
/// is larger than the device's, Error{AspectMismatch} when the aspect ratios
/// differ.
OccluderRig occluder_layout(const FieldOfView& device, const FieldOfView& target,
                            double distance_m = 0.3);

}  // namespace roundtable

#include <roundtable/fov.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace roundtable;
using test_support::error_code_of;

TEST_CASE("decompose splits a 50-degree 3:2 diagonal") {
    const DecomposedFov d = decompose_fov(FieldOfView{50.0, 3.0, 2.0});
    // Closed form: 2*atan(tan(25 deg) * 3/sqrt(13)) and the 2/sqrt(13) twin.
    CHECK(d.horizontal_deg == doctest::Approx(42.4116521250).epsilon(1e-9));
    CHECK(d.vertical_deg == doctest::Approx(29.0046577035).epsilon(1e-9));
}

TEST_CASE("square aspect decomposes symmetrically") {
    const DecomposedFov d = decompose_fov(FieldOfView{90.0, 1.0, 1.0});
    CHECK(d.horizontal_deg == doctest::Approx(d.vertical_deg).epsilon(1e-12));
}

TEST_CASE("vanishing diagonal vanishes in both directions") {
    const DecomposedFov d = decompose_fov(FieldOfView{1e-6, 16.0, 9.0});
    CHECK(d.horizontal_deg < 1e-6);
    CHECK(d.vertical_deg < 1e-6);
    CHECK(d.horizontal_deg > 0.0);
}

TEST_CASE("horizontal dominates vertical exactly when width dominates height") {
    CHECK(decompose_fov({70, 16, 9}).horizontal_deg > decompose_fov({70, 16, 9}).vertical_deg);
    CHECK(decompose_fov({70, 9, 16}).horizontal_deg < decompose_fov({70, 9, 16}).vertical_deg);
}

TEST_CASE("recomposing the diagonal is the identity to 1e-9 degrees") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const double diag = 1.0 + (rng() % 17000) / 100.0;  // 1..171 degrees
        const double w = 1.0 + (rng() % 300) / 100.0;
        const double h = 1.0 + (rng() % 300) / 100.0;
        const FieldOfView fov{diag, w, h};
        CHECK(std::abs(recompose_diagonal_deg(decompose_fov(fov)) - diag) < 1e-9);
    }
}

TEST_CASE("corner ray lies at the diagonal half-angle (ray-casting oracle)") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        const double diag = 5.0 + (rng() % 16000) / 100.0;
        const FieldOfView fov{diag, 1.0 + (rng() % 40) / 10.0, 1.0 + (rng() % 40) / 10.0};
        const DecomposedFov d = decompose_fov(fov);
        CHECK(std::abs(test_support::corner_ray_diagonal_deg(d) - diag) < 1e-9);
    }
}

TEST_CASE("invalid fields are rejected") {
    CHECK(error_code_of([] { decompose_fov(FieldOfView{0.0, 3, 2}); }) ==
          ErrorCode::InvalidInput);
    CHECK(error_code_of([] { decompose_fov(FieldOfView{180.0, 3, 2}); }) ==
          ErrorCode::InvalidInput);
    CHECK(error_code_of([] { decompose_fov(FieldOfView{50.0, -3, 2}); }) ==
          ErrorCode::InvalidInput);
}

TEST_CASE("occluder rig for the study configuration") {
    const OccluderRig rig =
        occluder_layout(FieldOfView{110, 3, 2}, FieldOfView{50, 3, 2}, 0.3);
    CHECK(rig.clear_half_width_m == doctest::Approx(0.1164).epsilon(5e-4));
    CHECK(rig.clear_half_height_m == doctest::Approx(0.0776).epsilon(5e-4));
    CHECK_FALSE(rig.degenerate);
    // Occluders reach the device frustum boundary.
    const DecomposedFov dev = decompose_fov(FieldOfView{110, 3, 2});
    const double dev_half_w = test_support::ray_hit_offset_m(dev.horizontal_deg / 2.0, 0.3);
    CHECK(rig.top.half_width_m == doctest::Approx(dev_half_w).epsilon(1e-12));
    CHECK(rig.right.center_x_m + rig.right.half_width_m ==
          doctest::Approx(dev_half_w).epsilon(1e-12));
}

TEST_CASE("identical target and device is the degenerate rig") {
    const OccluderRig rig =
        occluder_layout(FieldOfView{50, 3, 2}, FieldOfView{50, 3, 2}, 0.3);
    CHECK(rig.degenerate);
    CHECK(rig.top.area_m2() == doctest::Approx(0.0));
    CHECK(rig.left.area_m2() == doctest::Approx(0.0));
}

TEST_CASE("rejects a target wider than the device or mismatched aspect") {
    CHECK(error_code_of([] {
              occluder_layout(FieldOfView{50, 3, 2}, FieldOfView{60, 3, 2}, 0.3);
          }) == ErrorCode::TargetExceedsDevice);
    CHECK(error_code_of([] {
              occluder_layout(FieldOfView{110, 16, 9}, FieldOfView{50, 3, 2}, 0.3);
          }) == ErrorCode::AspectMismatch);
    // The same ratio written differently is not a mismatch.
    CHECK_NOTHROW(occluder_layout(FieldOfView{110, 6, 4}, FieldOfView{50, 3, 2}, 0.3));
}

TEST_CASE("boundary rays meet the clear window edge; slightly wider rays hit occluders") {
    std::mt19937 rng(23);
    for (int i = 0; i < 20; ++i) {
        const double device_diag = 60.0 + (rng() % 11000) / 100.0;  // 60..170
        const double target_diag = 10.0 + (rng() % 4000) / 100.0;   // 10..50
        const double aspect_w = 1.0 + (rng() % 30) / 10.0;
        const double aspect_h = 1.0 + (rng() % 30) / 10.0;
        const double distance = 0.1 + (rng() % 90) / 100.0;
        const FieldOfView device{device_diag, aspect_w, aspect_h};
        const FieldOfView target{target_diag, aspect_w, aspect_h};
        const OccluderRig rig = occluder_layout(device, target, distance);
        const DecomposedFov tgt = decompose_fov(target);

        const double hx = test_support::ray_hit_offset_m(tgt.horizontal_deg / 2.0, distance);
        CHECK(std::abs(hx - rig.clear_half_width_m) < 1e-6);
        const double vy = test_support::ray_hit_offset_m(tgt.vertical_deg / 2.0, distance);
        CHECK(std::abs(vy - rig.clear_half_height_m) < 1e-6);

        const double hx_out =
            test_support::ray_hit_offset_m(tgt.horizontal_deg / 2.0 + 0.1, distance);
        CHECK(test_support::occluders_covering(rig, hx_out, 0.0) == 1);
        const double vy_out =
            test_support::ray_hit_offset_m(tgt.vertical_deg / 2.0 + 0.1, distance);
        CHECK(test_support::occluders_covering(rig, 0.0, vy_out) == 1);
    }
}

TEST_CASE("occluders tile the device window outside the clear window") {
    const OccluderRig rig =
        occluder_layout(FieldOfView{110, 3, 2}, FieldOfView{50, 3, 2}, 0.3);
    const double W = rig.top.half_width_m;
    const double H = rig.top.center_y_m + rig.top.half_height_m;
    // Interior sample grid with offsets chosen so no point lands exactly on
    // a rectangle boundary.
    for (int ix = 0; ix < 40; ++ix) {
        for (int iy = 0; iy < 40; ++iy) {
            const double x = -W + (2.0 * W) * (ix + 0.503) / 40.0;
            const double y = -H + (2.0 * H) * (iy + 0.497) / 40.0;
            const bool in_clear = std::abs(x) < rig.clear_half_width_m &&
                                  std::abs(y) < rig.clear_half_height_m;
            const int covered = test_support::occluders_covering(rig, x, y);
            if (in_clear) {
                CHECK(covered == 0);
            } else {
                CHECK(covered == 1);
            }
        }
    }
}

TEST_CASE("larger target FoV opens a strictly larger clear window") {
    const FieldOfView device{170, 3, 2};
    double prev_w = 0.0, prev_h = 0.0;
    for (double diag = 20.0; diag <= 160.0; diag += 10.0) {
        const OccluderRig rig = occluder_layout(device, FieldOfView{diag, 3, 2}, 0.3);
        CHECK(rig.clear_half_width_m > prev_w);
        CHECK(rig.clear_half_height_m > prev_h);
        prev_w = rig.clear_half_width_m;
        prev_h = rig.clear_half_height_m;
    }
}

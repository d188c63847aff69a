#include <roundtable/models.hpp>

#include <roundtable/layout.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace roundtable;
using test_support::error_code_of;

TEST_CASE("full-eye-FoV predictions match hand-evaluated polynomials") {
    const Prediction two = predict_placement(180.0, 2);
    CHECK(two.placement.radian_deg == doctest::Approx(62.32).epsilon(1e-9));
    CHECK(two.placement.radius_m == doctest::Approx(0.574).epsilon(1e-9));
    CHECK_FALSE(two.clamped);
    CHECK(two.radian_applicable);

    CHECK(predict_placement(180.0, 3).placement.radian_deg ==
          doctest::Approx(92.47).epsilon(1e-9));
    CHECK(predict_placement(180.0, 4).placement.radian_deg ==
          doctest::Approx(128.39).epsilon(1e-9));
    CHECK(predict_placement(180.0, 1).placement.radius_m ==
          doctest::Approx(0.53).epsilon(1e-9));
}

TEST_CASE("the 110-degree prediction sits near the observed study means") {
    const Prediction p = predict_placement(110.0, 2);
    CHECK(p.placement.radian_deg == doctest::Approx(55.18).epsilon(1e-9));
    CHECK(p.placement.radius_m == doctest::Approx(0.868).epsilon(1e-9));
}

TEST_CASE("out-of-range FoV clamps to the model range and is flagged") {
    const Prediction low = predict_placement(5.0, 3);
    CHECK(low.clamped);
    CHECK(low.placement.radian_deg == doctest::Approx(55.07).epsilon(1e-9));
    CHECK(low.placement.radius_m == doctest::Approx(1.425).epsilon(1e-9));

    const Prediction high = predict_placement(250.0, 2);
    CHECK(high.clamped);
    CHECK(high.placement.radian_deg == doctest::Approx(62.32).epsilon(1e-9));
}

TEST_CASE("single remote user has no radian model") {
    const Prediction p = predict_placement(90.0, 1);
    CHECK_FALSE(p.radian_applicable);
    CHECK(p.placement.radian_deg == 0.0);
    CHECK(p.placement.radius_m == doctest::Approx(1.34 - 0.0045 * 90.0));
}

TEST_CASE("scenarios outside 1..4 are unsupported") {
    CHECK(error_code_of([] { predict_placement(50.0, 0); }) == ErrorCode::UnsupportedScenario);
    CHECK(error_code_of([] { predict_placement(50.0, 5); }) == ErrorCode::UnsupportedScenario);
    CHECK(error_code_of([] { pilot_lookup(50.0, 5); }) == ErrorCode::UnsupportedScenario);
}

TEST_CASE("pilot table reproduces the tabulated study optima exactly") {
    struct Row { double fov; int n; double radian, radius; };
    const Row rows[] = {
        {30, 1, 0.0, 1.24}, {30, 2, 33.75, 1.26}, {30, 3, 59.64, 1.31}, {30, 4, 72.97, 1.61},
        {40, 1, 0.0, 1.17}, {40, 2, 39.06, 1.20}, {40, 3, 68.14, 1.21}, {40, 4, 75.20, 1.55},
        {50, 1, 0.0, 1.09}, {50, 2, 40.20, 1.09}, {50, 3, 66.63, 1.17}, {50, 4, 80.42, 1.50},
    };
    for (const Row& row : rows) {
        const Prediction p = pilot_lookup(row.fov, row.n);
        CHECK(p.placement.radian_deg == row.radian);  // exact
        CHECK(p.placement.radius_m == row.radius);    // exact
        CHECK(p.radian_applicable == (row.n >= 2));
    }
}

TEST_CASE("non-study FoVs are not tabulated") {
    CHECK(error_code_of([] { pilot_lookup(45.0, 2); }) == ErrorCode::NotTabulated);
    CHECK(error_code_of([] { pilot_lookup(110.0, 2); }) == ErrorCode::NotTabulated);
}

TEST_CASE("radian models never decrease and radius models never increase on the range") {
    // Derivative sign sampling at 0.1-degree steps across [10, 180].
    for (const PlacementModel& model : ModelTable::builtin().models()) {
        double prev = model.evaluate(model.fov_min_deg);
        for (double fov = model.fov_min_deg + 0.1; fov <= model.fov_max_deg + 1e-9;
             fov += 0.1) {
            const double value = model.evaluate(fov);
            if (model.target == ModelTarget::Radian) {
                CHECK(value >= prev);
            } else {
                CHECK(value <= prev);
            }
            prev = value;
        }
    }
}

TEST_CASE("predictions stay inside physical bounds across the whole range") {
    for (int n = 1; n <= 4; ++n) {
        for (double fov = 10.0; fov <= 180.0; fov += 0.5) {
            const Prediction p = predict_placement(fov, n);
            CHECK(p.placement.radius_m > 0.0);
            CHECK(p.placement.radius_m <= 2.0);
            CHECK(p.placement.radian_deg >= 0.0);
            CHECK(p.placement.radian_deg < 180.0);
        }
    }
}

TEST_CASE("the quadratic radian model is monotone because its vertex lies past 180") {
    const PlacementModel* m = ModelTable::builtin().find(ModelTarget::Radian, 2);
    REQUIRE(m != nullptr);
    REQUIRE(m->coefficients.size() == 3);
    const double vertex = -m->coefficients[1] / (2.0 * m->coefficients[2]);
    CHECK(vertex == doctest::Approx(187.5));
    CHECK(vertex > 180.0);
}

TEST_CASE("predictions are bit-identical across calls") {
    const Prediction a = predict_placement(73.7, 3);
    const Prediction b = predict_placement(73.7, 3);
    CHECK(a.placement.radian_deg == b.placement.radian_deg);
    CHECK(a.placement.radius_m == b.placement.radius_m);
}

TEST_CASE("layout_for composes prediction and circle resolution") {
    const LayoutResult single = layout_for(FieldOfView{110, 3, 2}, 1);
    REQUIRE(single.layout.poses.size() == 1);
    CHECK(single.layout.poses[0].z_m == doctest::Approx(1.69).epsilon(1e-9));
    CHECK(single.source == PlacementSource::Model);

    const LayoutResult pilot = layout_for(FieldOfView{50, 3, 2}, 2, PlacementSource::Pilot);
    CHECK(pilot.layout.placement == Placement{40.20, 1.09});
    CHECK(pilot.source == PlacementSource::Pilot);

    const LayoutResult clamped = layout_for(FieldOfView{200, 3, 2}, 2);
    CHECK(clamped.clamped);
}

TEST_CASE("at 180 degrees the two-avatar group closes to about a meter apart") {
    const LayoutResult result = layout_for(FieldOfView{180, 3, 2}, 2);
    for (double gap : adjacent_gaps(result.layout)) {
        CHECK(gap >= 0.98);
        CHECK(gap <= 1.02);
    }
}

TEST_CASE("aspect ratio does not alter predictions") {
    const LayoutResult a = layout_for(FieldOfView{90, 3, 2}, 3);
    const LayoutResult b = layout_for(FieldOfView{90, 16, 9}, 3);
    CHECK(a.layout == b.layout);
}

TEST_CASE("models round-trip through the JSON schema") {
    for (const PlacementModel& model : ModelTable::builtin().models()) {
        CHECK(model_from_json(model_to_json(model)) == model);
    }
    const PlacementModel custom{ModelTarget::Radius, 2, {1.5, -0.003, 0.00001}, 10.0, 170.0};
    CHECK(model_from_json(model_to_json(custom)) == custom);
}

TEST_CASE("a re-fitted model table replaces the built-ins behind the same calls") {
    // Same schema, different coefficients: predictions must follow the table.
    ModelTable table({
        {ModelTarget::Radian, 2, {10.0, 0.5}, 10.0, 180.0},
        {ModelTarget::Radius, 2, {2.0, -0.005}, 10.0, 180.0},
    });
    const Prediction p = predict_placement(table, 100.0, 2);
    CHECK(p.placement.radian_deg == doctest::Approx(60.0));
    CHECK(p.placement.radius_m == doctest::Approx(1.5));
}

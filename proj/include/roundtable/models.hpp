#pragma once

#include <roundtable/errors.hpp>
#include <roundtable/fov.hpp>
#include <roundtable/layout.hpp>

#include <optional>
#include <string>
#include <vector>

namespace roundtable {

enum class ModelTarget { Radian, Radius };

std::string_view to_string(ModelTarget target);
ModelTarget model_target_from_string(std::string_view name);

/// Polynomial mapping a diagonal FoV (degrees) to a Radian (degrees) or
/// Radius (meters) for a fixed remote-user count. Coefficients are stored in
/// ascending powers: value = c0 + c1*fov + c2*fov^2.
struct PlacementModel {
    ModelTarget target = ModelTarget::Radian;
    int scenario = 0;  // remote-user count, 1..4
    std::vector<double> coefficients;
    double fov_min_deg = 10.0;
    double fov_max_deg = 180.0;

    double evaluate(double fov_deg) const;
    int order() const { return static_cast<int>(coefficients.size()) - 1; }

    bool operator==(const PlacementModel&) const = default;
};

/// The regressed models shipped with the toolkit. Radian has no 1-RU model
/// (a single avatar sits straight ahead).
class ModelTable {
public:
    static const ModelTable& builtin();

    ModelTable() = default;
    explicit ModelTable(std::vector<PlacementModel> models);

    /// nullptr when no model exists for the pair (Radian, 1).
    const PlacementModel* find(ModelTarget target, int scenario) const;
    const std::vector<PlacementModel>& models() const { return models_; }

private:
    std::vector<PlacementModel> models_;
};

struct Prediction {
    Placement placement;
    bool clamped = false;           // fov fell outside [10, 180] and was clamped
    bool radian_applicable = true;  // false for the 1-RU scenario
};

/// Evaluates the Radian and Radius models for a scenario. FoV outside
/// [10, 180] is clamped to the nearer bound and flagged. Throws
/// Error{UnsupportedScenario} for n_remote outside 1..4.
Prediction predict_placement(double fov_deg, int n_remote);
Prediction predict_placement(const ModelTable& table, double fov_deg, int n_remote);

/// Exact study-condition placements for FoV 30, 40, or 50 degrees. Throws
/// Error{NotTabulated} for any other FoV and Error{UnsupportedScenario} for
/// n_remote outside 1..4.
Prediction pilot_lookup(double fov_deg, int n_remote);

enum class PlacementSource { Model, Pilot };

std::string_view to_string(PlacementSource source);

struct LayoutResult {
    ConversationLayout layout;
    PlacementSource source = PlacementSource::Model;
    bool clamped = false;
};

/// End-to-end placement: predicts (or looks up) a Placement for the FoV and
/// resolves the circle layout. The aspect ratio is carried for validation but
/// does not change predictions.
LayoutResult layout_for(const FieldOfView& fov, int n_remote,
                        PlacementSource source = PlacementSource::Model);
LayoutResult layout_for(const ModelTable& table, const FieldOfView& fov, int n_remote,
                        PlacementSource source = PlacementSource::Model);

/// Model JSON schema (roundtable.model/1): target, scenario, ascending
/// coefficients, valid FoV range. Re-fitted models round-trip through this.
std::string model_to_json(const PlacementModel& model, int indent = 2);
PlacementModel model_from_json(const std::string& text);

}  // namespace roundtable

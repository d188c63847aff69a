#include <roundtable/models.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace roundtable {

std::string_view to_string(ModelTarget target) {
    return target == ModelTarget::Radian ? "radian" : "radius";
}

ModelTarget model_target_from_string(std::string_view name) {
    if (name == "radian") return ModelTarget::Radian;
    if (name == "radius") return ModelTarget::Radius;
    throw Error(ErrorCode::InvalidInput, "unknown model target: " + std::string(name));
}

std::string_view to_string(PlacementSource source) {
    return source == PlacementSource::Model ? "model" : "pilot";
}

double PlacementModel::evaluate(double fov_deg) const {
    // Horner, ascending coefficients.
    double value = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        value = value * fov_deg + *it;
    }
    return value;
}

ModelTable::ModelTable(std::vector<PlacementModel> models) : models_(std::move(models)) {}

const ModelTable& ModelTable::builtin() {
    static const ModelTable table{{
        {ModelTarget::Radian, 2, {20.20, 0.45, -0.0012}, 10.0, 180.0},
        {ModelTarget::Radian, 3, {52.87, 0.22}, 10.0, 180.0},
        {ModelTarget::Radian, 4, {61.79, 0.37}, 10.0, 180.0},
        {ModelTarget::Radius, 1, {1.34, -0.0045}, 10.0, 180.0},
        {ModelTarget::Radius, 2, {1.33, -0.0042}, 10.0, 180.0},
        {ModelTarget::Radius, 3, {1.47, -0.0045}, 10.0, 180.0},
        {ModelTarget::Radius, 4, {1.63, -0.0043}, 10.0, 180.0},
    }};
    return table;
}

const PlacementModel* ModelTable::find(ModelTarget target, int scenario) const {
    for (const PlacementModel& m : models_) {
        if (m.target == target && m.scenario == scenario) return &m;
    }
    return nullptr;
}

namespace {

void check_scenario(int n_remote) {
    if (n_remote < 1 || n_remote > 4) {
        throw Error(ErrorCode::UnsupportedScenario,
                    "placement models cover 1..4 remote users, got " +
                        std::to_string(n_remote));
    }
}

}  // namespace

Prediction predict_placement(const ModelTable& table, double fov_deg, int n_remote) {
    check_scenario(n_remote);
    const PlacementModel* radius = table.find(ModelTarget::Radius, n_remote);
    if (radius == nullptr) {
        throw Error(ErrorCode::UnsupportedScenario,
                    "no radius model for scenario " + std::to_string(n_remote));
    }

    Prediction out;
    double fov = fov_deg;
    if (fov < radius->fov_min_deg) {
        fov = radius->fov_min_deg;
        out.clamped = true;
    } else if (fov > radius->fov_max_deg) {
        fov = radius->fov_max_deg;
        out.clamped = true;
    }

    out.placement.radius_m = radius->evaluate(fov);
    if (const PlacementModel* radian = table.find(ModelTarget::Radian, n_remote)) {
        out.placement.radian_deg = radian->evaluate(fov);
        out.radian_applicable = true;
    } else {
        out.placement.radian_deg = 0.0;
        out.radian_applicable = false;
    }
    return out;
}

Prediction predict_placement(double fov_deg, int n_remote) {
    return predict_placement(ModelTable::builtin(), fov_deg, n_remote);
}

Prediction pilot_lookup(double fov_deg, int n_remote) {
    check_scenario(n_remote);
    // Study-condition optima, indexed [fov][scenario-1]; radian 0 = not
    // applicable (1-RU).
    struct Entry { double radian_deg, radius_m; };
    static constexpr Entry k30[] = {{0.0, 1.24}, {33.75, 1.26}, {59.64, 1.31}, {72.97, 1.61}};
    static constexpr Entry k40[] = {{0.0, 1.17}, {39.06, 1.20}, {68.14, 1.21}, {75.20, 1.55}};
    static constexpr Entry k50[] = {{0.0, 1.09}, {40.20, 1.09}, {66.63, 1.17}, {80.42, 1.50}};

    const Entry* row = nullptr;
    if (fov_deg == 30.0) row = k30;
    else if (fov_deg == 40.0) row = k40;
    else if (fov_deg == 50.0) row = k50;
    if (row == nullptr) {
        throw Error(ErrorCode::NotTabulated,
                    "pilot placements exist only for FoV 30, 40, 50; use the models for " +
                        std::to_string(fov_deg));
    }

    Prediction out;
    out.placement = Placement{row[n_remote - 1].radian_deg, row[n_remote - 1].radius_m};
    out.radian_applicable = n_remote >= 2;
    return out;
}

LayoutResult layout_for(const ModelTable& table, const FieldOfView& fov, int n_remote,
                        PlacementSource source) {
    // Out-of-range diagonals are clamped by the model evaluation, so only
    // the aspect invariant is enforced here.
    if (!(fov.aspect_w > 0.0) || !(fov.aspect_h > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "aspect units must be positive");
    }
    const Prediction prediction = source == PlacementSource::Pilot
                                      ? pilot_lookup(fov.diagonal_deg, n_remote)
                                      : predict_placement(table, fov.diagonal_deg, n_remote);
    LayoutResult result;
    result.layout = resolve_layout(prediction.placement, n_remote);
    result.source = source;
    result.clamped = prediction.clamped;
    return result;
}

LayoutResult layout_for(const FieldOfView& fov, int n_remote, PlacementSource source) {
    return layout_for(ModelTable::builtin(), fov, n_remote, source);
}

std::string model_to_json(const PlacementModel& model, int indent) {
    nlohmann::json j;
    j["schema"] = "roundtable.model/1";
    j["target"] = to_string(model.target);
    j["scenario"] = model.scenario;
    j["coefficients"] = model.coefficients;
    j["fov_range_deg"] = {model.fov_min_deg, model.fov_max_deg};
    return j.dump(indent) + "\n";
}

PlacementModel model_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PlacementModel model;
    model.target = model_target_from_string(j.at("target").get<std::string>());
    model.scenario = j.at("scenario").get<int>();
    model.coefficients = j.at("coefficients").get<std::vector<double>>();
    if (model.coefficients.empty()) {
        throw Error(ErrorCode::InvalidInput, "model needs at least one coefficient");
    }
    if (j.contains("fov_range_deg")) {
        model.fov_min_deg = j.at("fov_range_deg").at(0).get<double>();
        model.fov_max_deg = j.at("fov_range_deg").at(1).get<double>();
    }
    return model;
}

}  // namespace roundtable

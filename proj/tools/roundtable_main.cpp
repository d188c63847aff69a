// roundtable — spatial teleconferencing layout and session toolkit.
//
// Subcommands:
//   layout     avatar placement for a FoV and group size (JSON, optional SVG)
//   fit        re-fit placement models from observation CSVs
//   occluders  the four-rectangle rig masking a device FoV down to a target
//   simulate   full-mesh session simulation with bandwidth accounting
//
// Exit codes: 0 success, 2 usage/malformed input, 3 domain error.

#include <roundtable/fitting.hpp>
#include <roundtable/fov.hpp>
#include <roundtable/json_io.hpp>
#include <roundtable/models.hpp>
#include <roundtable/simulation.hpp>
#include <roundtable/svg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using roundtable::Error;
using roundtable::ErrorCode;

/// Relative output paths land in $ROUNDTABLE_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output_path(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("ROUNDTABLE_OUTPUT_DIR")) {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    const std::filesystem::path resolved = resolve_output_path(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::InvalidInput, "cannot open for writing: " + resolved.string());
    }
    out << content;
}

std::pair<double, double> parse_aspect(const std::string& text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw CLI::ValidationError("--aspect", "expected W:H, e.g. 3:2");
    }
    try {
        size_t pos = 0;
        const double w = std::stod(text.substr(0, colon), &pos);
        if (pos != colon) throw std::invalid_argument(text);
        const double h = std::stod(text.substr(colon + 1), &pos);
        if (pos != text.size() - colon - 1) throw std::invalid_argument(text);
        if (!(w > 0.0) || !(h > 0.0)) throw std::invalid_argument(text);
        return {w, h};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--aspect", "expected positive W:H, e.g. 3:2");
    }
}

struct LayoutArgs {
    double fov = 0.0;
    std::string aspect = "3:2";
    int remote_users = 0;
    std::string source = "model";
    std::string svg_path;
    std::string output;
};

int cmd_layout(const LayoutArgs& args) {
    const auto [aw, ah] = parse_aspect(args.aspect);
    const roundtable::FieldOfView fov{args.fov, aw, ah};
    const auto source = args.source == "pilot" ? roundtable::PlacementSource::Pilot
                                               : roundtable::PlacementSource::Model;
    const roundtable::LayoutResult result = roundtable::layout_for(fov, args.remote_users, source);

    if (result.clamped) {
        std::cerr << "warning: FoV " << args.fov
                  << " is outside the model range [10, 180]; clamped\n";
    }
    if (result.layout.degenerate_radian) {
        std::cerr << "warning: radian 0 with " << args.remote_users
                  << " avatars; all avatars coincide\n";
    }

    nlohmann::json j = roundtable::to_json(result.layout);
    j["source"] = std::string(roundtable::to_string(result.source));
    j["clamped"] = result.clamped;
    write_output(args.output, j.dump(2) + "\n");
    if (!args.svg_path.empty()) {
        write_output(args.svg_path, roundtable::layout_to_svg(result.layout));
    }
    return 0;
}

struct FitArgs {
    std::string input;
    std::string target;
    int scenario = 0;
    int max_order = 2;
    std::string output;
};

int cmd_fit(const FitArgs& args) {
    std::ifstream in(args.input);
    if (!in) {
        throw Error(ErrorCode::MalformedCsv, "cannot open: " + args.input);
    }
    const auto all = roundtable::read_samples_csv(in);
    const roundtable::ModelTarget target = roundtable::model_target_from_string(args.target);

    std::vector<double> xs, ys;
    for (const roundtable::Sample& s : all) {
        if (s.target == target && s.scenario == args.scenario) {
            xs.push_back(s.fov_deg);
            ys.push_back(s.value);
        }
    }
    if (xs.empty()) {
        throw Error(ErrorCode::InsufficientData,
                    "no rows match target=" + args.target +
                        " scenario=" + std::to_string(args.scenario));
    }

    const roundtable::FitResult fit = roundtable::fit_monotone_poly(xs, ys, args.max_order);

    nlohmann::json j =
        nlohmann::json::parse(roundtable::model_to_json(
            roundtable::fit_to_model(fit, target, args.scenario)));
    nlohmann::json fj;
    fj["selected_order"] = fit.selected_order;
    fj["rss"] = fit.rss;
    fj["n_samples"] = xs.size();
    auto candidates = nlohmann::json::array();
    for (const roundtable::OrderVerdict& v : fit.candidates) {
        candidates.push_back({{"order", v.order},
                              {"monotone", v.monotone},
                              {"negligible_leading", v.negligible_leading},
                              {"rss", v.rss}});
    }
    fj["candidates"] = std::move(candidates);
    const auto correlation = [&](double (*f)(std::span<const double>, std::span<const double>))
        -> nlohmann::json {
        try {
            return f(xs, ys);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ZeroVariance || e.code() == ErrorCode::InvalidInput) {
                return nullptr;
            }
            throw;
        }
    };
    fj["pearson"] = correlation(roundtable::pearson);
    fj["spearman"] = correlation(roundtable::spearman);
    j["fit"] = std::move(fj);

    std::cerr << "pearson="
              << (j["fit"]["pearson"].is_null() ? "n/a" : j["fit"]["pearson"].dump())
              << " spearman="
              << (j["fit"]["spearman"].is_null() ? "n/a" : j["fit"]["spearman"].dump())
              << "\n";
    write_output(args.output, j.dump(2) + "\n");
    return 0;
}

struct OccluderArgs {
    double device_fov = 0.0;
    double target_fov = 0.0;
    std::string aspect = "3:2";
    double distance = 0.3;
    std::string output;
};

int cmd_occluders(const OccluderArgs& args) {
    const auto [aw, ah] = parse_aspect(args.aspect);
    const roundtable::FieldOfView device{args.device_fov, aw, ah};
    const roundtable::FieldOfView target{args.target_fov, aw, ah};
    const roundtable::OccluderRig rig = roundtable::occluder_layout(device, target, args.distance);
    if (rig.degenerate) {
        std::cerr << "warning: target equals device FoV; occluders have zero area\n";
    }
    write_output(args.output, roundtable::to_json(rig, device, target).dump(2) + "\n");
    return 0;
}

struct SimulateArgs {
    int peers = 0;
    std::string mode;
    double duration_s = 10.0;
    uint64_t seed = 1;
    double fps = 0.0;
    size_t frame_bytes = 2500;
    uint32_t latency_ms = 20;
    uint32_t jitter_ms = 5;
    double fov = 50.0;
    std::string rates_path;
    std::string transcript_path;
    std::string output;
};

int cmd_simulate(const SimulateArgs& args) {
    roundtable::net::SimulationConfig config;
    config.peers = args.peers;
    config.mode = roundtable::net::mode_from_string(args.mode);
    config.duration_s = args.duration_s;
    config.seed = args.seed;
    config.fps = args.fps;
    config.frame_bytes = args.frame_bytes;
    config.latency_ms = args.latency_ms;
    config.jitter_ms = args.jitter_ms;
    config.fov_deg = args.fov;

    const roundtable::net::SimulationReport report = roundtable::net::run_simulation(config);
    write_output(args.output, roundtable::net::summary_json(report));
    if (!args.rates_path.empty()) {
        write_output(args.rates_path, roundtable::net::rates_csv(report));
    }
    if (!args.transcript_path.empty()) {
        std::ostringstream out;
        roundtable::net::write_transcript(out, report.transcript);
        write_output(args.transcript_path, out.str());
    }
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial teleconferencing layout and session toolkit"};
    app.require_subcommand(1);

    LayoutArgs layout_args;
    CLI::App* layout = app.add_subcommand("layout", "Compute avatar placements");
    layout->add_option("--fov", layout_args.fov, "Diagonal FoV in degrees")
        ->required()
        ->check(CLI::PositiveNumber);
    layout->add_option("--aspect", layout_args.aspect, "Aspect ratio W:H")
        ->capture_default_str();
    layout->add_option("--remote-users", layout_args.remote_users, "Remote user count")
        ->required();
    layout->add_option("--source", layout_args.source, "Placement source")
        ->check(CLI::IsMember({"model", "pilot"}))
        ->capture_default_str();
    layout->add_option("--svg", layout_args.svg_path, "Also write a top-down SVG plot");
    layout->add_option("--output,-o", layout_args.output, "Output path (default stdout)");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Fit a placement model from CSV observations");
    fit->add_option("--input", fit_args.input, "CSV with fov_deg,scenario,target,value")
        ->required();
    fit->add_option("--target", fit_args.target, "radian or radius")
        ->required()
        ->check(CLI::IsMember({"radian", "radius"}));
    fit->add_option("--scenario", fit_args.scenario, "Remote user count the rows describe")
        ->required();
    fit->add_option("--max-order", fit_args.max_order, "Highest polynomial order to try")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    fit->add_option("--output,-o", fit_args.output, "Output path (default stdout)");

    OccluderArgs occluder_args;
    CLI::App* occluders =
        app.add_subcommand("occluders", "Occluder rig masking a device FoV to a target");
    occluders->add_option("--device-fov", occluder_args.device_fov, "Device diagonal FoV")
        ->required()
        ->check(CLI::PositiveNumber);
    occluders->add_option("--target-fov", occluder_args.target_fov, "Target diagonal FoV")
        ->required()
        ->check(CLI::PositiveNumber);
    occluders->add_option("--aspect", occluder_args.aspect, "Aspect ratio W:H")
        ->capture_default_str();
    occluders->add_option("--distance", occluder_args.distance, "Occluder plane distance, m")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    occluders->add_option("--output,-o", occluder_args.output, "Output path (default stdout)");

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a full-mesh session simulation");
    simulate->add_option("--peers", simulate_args.peers, "Number of peers")->required();
    simulate->add_option("--mode", simulate_args.mode, "avatar, video-grid, or video-avatar")
        ->required()
        ->check(CLI::IsMember({"avatar", "video-grid", "video-avatar"}));
    simulate->add_option("--duration-s", simulate_args.duration_s, "Simulated seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", simulate_args.seed, "Deterministic RNG seed")
        ->capture_default_str();
    simulate->add_option("--fps", simulate_args.fps, "Frame rate (0 = mode default)")
        ->capture_default_str();
    simulate->add_option("--frame-bytes", simulate_args.frame_bytes, "Video payload bytes")
        ->capture_default_str();
    simulate->add_option("--latency-ms", simulate_args.latency_ms, "Link latency")
        ->capture_default_str();
    simulate->add_option("--jitter-ms", simulate_args.jitter_ms, "Link jitter bound")
        ->capture_default_str();
    simulate->add_option("--fov", simulate_args.fov, "FoV advertised in placement updates")
        ->capture_default_str();
    simulate->add_option("--rates", simulate_args.rates_path, "Write the per-window rate CSV");
    simulate->add_option("--transcript", simulate_args.transcript_path,
                         "Write the session transcript (JSON lines)");
    simulate->add_option("--output,-o", simulate_args.output, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (layout->parsed()) return cmd_layout(layout_args);
        if (fit->parsed()) return cmd_fit(fit_args);
        if (occluders->parsed()) return cmd_occluders(occluder_args);
        if (simulate->parsed()) return cmd_simulate(simulate_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::MalformedCsv ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <roundtable/media.hpp>

#include <roundtable/angles.hpp>
#include <roundtable/layout.hpp>
#include <roundtable/models.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace roundtable;
using test_support::error_code_of;

namespace {

Frame solid_rgb(uint16_t w, uint16_t h, Rgb color) {
    Frame frame{w, h, PixelFormat::Rgb8, {}};
    frame.pixels.reserve(size_t{3} * w * h);
    for (size_t i = 0; i < size_t{1} * w * h; ++i) {
        frame.pixels.push_back(color.r);
        frame.pixels.push_back(color.g);
        frame.pixels.push_back(color.b);
    }
    return frame;
}

constexpr Rgb kGreen{0, 255, 0};

}  // namespace

TEST_CASE("a fully keyed frame becomes fully transparent") {
    const Frame matted = chroma_key_matte(solid_rgb(8, 6, kGreen), kGreen, 10);
    CHECK(matted.format == PixelFormat::Rgba8);
    CHECK(matted.width == 8);
    CHECK(matted.height == 6);
    for (size_t i = 0; i < matted.pixels.size(); i += 4) {
        CHECK(matted.pixels[i + 3] == 0);
        CHECK(matted.pixels[i + 1] == 255);  // color passes through
    }
}

TEST_CASE("a frame far from the key keeps full alpha") {
    const Frame matted = chroma_key_matte(solid_rgb(4, 4, Rgb{200, 30, 40}), kGreen, 10);
    for (size_t i = 3; i < matted.pixels.size(); i += 4) {
        CHECK(matted.pixels[i] == 255);
    }
}

TEST_CASE("half-keyed frame at zero tolerance mattes exactly half the pixels") {
    Frame frame{8, 4, PixelFormat::Rgb8, {}};
    for (uint16_t y = 0; y < frame.height; ++y) {
        for (uint16_t x = 0; x < frame.width; ++x) {
            const Rgb c = x < frame.width / 2 ? kGreen : Rgb{10, 20, 30};
            frame.pixels.insert(frame.pixels.end(), {c.r, c.g, c.b});
        }
    }
    const Frame matted = chroma_key_matte(frame, kGreen, 0);
    size_t transparent = 0;
    for (size_t i = 3; i < matted.pixels.size(); i += 4) {
        if (matted.pixels[i] == 0) ++transparent;
    }
    CHECK(transparent == size_t{8} * 4 / 2);
}

TEST_CASE("matting is idempotent on its own output") {
    std::mt19937 rng(5);
    Frame frame{16, 9, PixelFormat::Rgb8, {}};
    frame.pixels.resize(size_t{3} * 16 * 9);
    for (uint8_t& b : frame.pixels) b = static_cast<uint8_t>(rng());
    const Frame once = chroma_key_matte(frame, Rgb{40, 200, 60}, 60);
    const Frame twice = chroma_key_matte(once, Rgb{40, 200, 60}, 60);
    CHECK(once == twice);
}

TEST_CASE("frames with inconsistent payloads are format mismatches") {
    Frame bad{4, 4, PixelFormat::Rgb8, std::vector<uint8_t>(10)};
    CHECK(error_code_of([&] { chroma_key_matte(bad, kGreen, 0); }) ==
          ErrorCode::FormatMismatch);
    CHECK(error_code_of([&] { chroma_key_matte(solid_rgb(2, 2, kGreen), kGreen, -1); }) ==
          ErrorCode::InvalidInput);
}

TEST_CASE("the matting backend seam exposes the chroma key") {
    const ChromaKeyBackend backend(kGreen, 4);
    CHECK(backend.concurrent_callable());
    CHECK(backend.name() == "chroma-key");
    const MattingBackend& as_interface = backend;
    const Frame matted = as_interface.matte(solid_rgb(3, 3, kGreen));
    CHECK(matted.pixels[3] == 0);
}

TEST_CASE("life-size scale for the studied camera geometry") {
    const CalibrationInput c{1080, 1080, 29.01, 2.0, 1.7};
    CHECK(apparent_height_m(c) == doctest::Approx(1.0347).epsilon(1e-3));
    CHECK(life_size_scale(c) == doctest::Approx(1.643).epsilon(1e-3));
}

TEST_CASE("a person whose apparent height equals their real height needs no scaling") {
    // Solve for the distance that makes the apparent height exactly 1.7 m.
    const double vfov = 29.01;
    const double person_fraction = 0.9;
    const double distance = 1.7 / (2.0 * std::tan(deg_to_rad(vfov) / 2.0) * person_fraction);
    const CalibrationInput c{person_fraction * 1000, 1000, vfov, distance, 1.7};
    CHECK(life_size_scale(c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scale is inverse-linear in measured pixel height and camera distance") {
    // The apparent height is proportional to both the distance and the pixel
    // fraction, so the returned scale divides by each.
    const CalibrationInput base{540, 1080, 29.01, 2.0, 1.7};
    CalibrationInput half = base;
    half.person_pixel_height = 270;
    CHECK(life_size_scale(half) == doctest::Approx(2.0 * life_size_scale(base)));
    CalibrationInput near = base;
    near.camera_distance_m = 1.0;
    CHECK(life_size_scale(near) == doctest::Approx(2.0 * life_size_scale(base)));
    CHECK(life_size_scale(base) == doctest::Approx(3.2861).epsilon(1e-3));
}

TEST_CASE("calibration inputs must be positive and inside the frame") {
    CHECK(error_code_of([] { life_size_scale(CalibrationInput{0, 1080, 29, 2, 1.7}); }) ==
          ErrorCode::InvalidInput);
    CHECK(error_code_of([] { life_size_scale(CalibrationInput{1100, 1080, 29, 2, 1.7}); }) ==
          ErrorCode::InvalidInput);
}

TEST_CASE("a calibrated billboard subtends the same angle a real person would") {
    // Calibrate from a synthetic capture, place the billboard with the
    // placement pipeline, and compare subtended vertical angles.
    const CalibrationInput c{810, 1080, 29.01, 2.2, 1.7};
    const double scale = life_size_scale(c);
    const double billboard_height = apparent_height_m(c) * scale;  // rendered height

    const LayoutResult placed = layout_for(FieldOfView{110, 3, 2}, 1);
    const double d = std::hypot(placed.layout.poses[0].x_m, placed.layout.poses[0].z_m);
    const double angle_billboard = 2.0 * std::atan(billboard_height / (2.0 * d));
    const double angle_person = 2.0 * std::atan(c.real_height_m / (2.0 * d));
    CHECK(angle_billboard == doctest::Approx(angle_person).epsilon(1e-12));
}

TEST_CASE("raw frame files round-trip") {
    std::mt19937 rng(17);
    Frame frame{20, 10, PixelFormat::Rgba8, {}};
    frame.pixels.resize(size_t{4} * 20 * 10);
    for (uint8_t& b : frame.pixels) b = static_cast<uint8_t>(rng());

    std::stringstream file;
    write_raw_frame(file, frame);
    // Header: width, height, tag, three reserved zeros.
    const std::string bytes = file.str();
    REQUIRE(bytes.size() == 8 + frame.pixels.size());
    CHECK(static_cast<uint8_t>(bytes[0]) == 20);
    CHECK(static_cast<uint8_t>(bytes[2]) == 10);
    CHECK(static_cast<uint8_t>(bytes[4]) == 1);
    CHECK(bytes[5] == 0);

    file.seekg(0);
    CHECK(read_raw_frame(file) == frame);
}

TEST_CASE("truncated raw frames are detected") {
    Frame frame{4, 4, PixelFormat::Rgb8, std::vector<uint8_t>(48, 7)};
    std::stringstream file;
    write_raw_frame(file, frame);
    const std::string whole = file.str();
    std::stringstream cut(whole.substr(0, whole.size() - 5));
    CHECK(error_code_of([&] { read_raw_frame(cut); }) == ErrorCode::Truncated);
    std::stringstream header_only(whole.substr(0, 6));
    CHECK(error_code_of([&] { read_raw_frame(header_only); }) == ErrorCode::Truncated);
}

TEST_CASE("run-length coding round-trips and compresses runs") {
    const std::vector<uint8_t> flat(1000, 42);
    const std::vector<uint8_t> packed = rle_compress(flat);
    CHECK(packed.size() == 8);  // 1000 = 3*255 + 235 -> four (count, value) pairs
    CHECK(rle_decompress(packed) == flat);

    std::mt19937 rng(3);
    std::vector<uint8_t> noisy(513);
    for (uint8_t& b : noisy) b = static_cast<uint8_t>(rng() % 4);
    CHECK(rle_decompress(rle_compress(noisy)) == noisy);

    CHECK(rle_compress({}).empty());
    CHECK(error_code_of([] { rle_decompress(std::vector<uint8_t>{1}); }) ==
          ErrorCode::LengthMismatch);
    CHECK(error_code_of([] { rle_decompress(std::vector<uint8_t>{0, 9}); }) ==
          ErrorCode::InvariantViolation);
}

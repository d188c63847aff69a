#pragma once

#include <roundtable/errors.hpp>

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace roundtable {

enum class PixelFormat : uint8_t { Rgb8 = 0, Rgba8 = 1 };

size_t bytes_per_pixel(PixelFormat format);

/// Row-major pixel buffer. pixels.size() must equal
/// width * height * bytes_per_pixel(format).
struct Frame {
    uint16_t width = 0;
    uint16_t height = 0;
    PixelFormat format = PixelFormat::Rgb8;
    std::vector<uint8_t> pixels;

    bool operator==(const Frame&) const = default;
};

/// Throws Error{FormatMismatch} when the payload size does not match the
/// declared dimensions and format.
void validate(const Frame& frame);

struct Rgb {
    uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

/// Produces an RGBA frame whose alpha is 0 wherever every channel deviates
/// from key by at most `tolerance`, 255 elsewhere; RGB passes through. RGBA
/// input is re-keyed from its color channels, so the operation is idempotent
/// on its own output.
Frame chroma_key_matte(const Frame& frame, Rgb key, int tolerance);

/// Seam for background-removal implementations. The built-in chroma key is
/// the only backend shipped; learned mattes plug in behind this interface.
class MattingBackend {
public:
    virtual ~MattingBackend() = default;
    virtual Frame matte(const Frame& input) const = 0;
    /// Whether matte() may be called from multiple threads at once.
    virtual bool concurrent_callable() const = 0;
    virtual std::string_view name() const = 0;
};

class ChromaKeyBackend final : public MattingBackend {
public:
    ChromaKeyBackend(Rgb key, int tolerance) : key_(key), tolerance_(tolerance) {}

    Frame matte(const Frame& input) const override {
        return chroma_key_matte(input, key_, tolerance_);
    }
    bool concurrent_callable() const override { return true; }  // stateless
    std::string_view name() const override { return "chroma-key"; }

private:
    Rgb key_;
    int tolerance_;
};

/// Measurements for sizing a billboard so the rendered person appears at
/// true height. All fields must be supplied; there are no sensible defaults.
struct CalibrationInput {
    double person_pixel_height = 0.0;
    double frame_pixel_height = 0.0;
    double camera_vertical_fov_deg = 0.0;
    double camera_distance_m = 0.0;
    double real_height_m = 0.0;
};

void validate(const CalibrationInput& input);

/// World-space height the person would appear at if the frame were projected
/// unscaled: 2 * distance * tan(vfov/2) * person_px / frame_px.
double apparent_height_m(const CalibrationInput& input);

/// Factor to scale the billboard by so the rendered person is
/// real_height_m tall: real_height / apparent_height.
double life_size_scale(const CalibrationInput& input);

/// Raw frame container: 8-byte little-endian header (u16 width, u16 height,
/// u8 format tag, 3 reserved zero bytes) followed by the pixel bytes.
void write_raw_frame(std::ostream& out, const Frame& frame);
Frame read_raw_frame(std::istream& in);

/// Byte-wise run-length coding for desk-scale frame payloads:
/// (u8 run_length >= 1, u8 value) pairs.
std::vector<uint8_t> rle_compress(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> rle_decompress(const std::vector<uint8_t>& bytes);

}  // namespace roundtable

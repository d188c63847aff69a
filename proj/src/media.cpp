#include <roundtable/media.hpp>

#include <roundtable/angles.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

namespace roundtable {

size_t bytes_per_pixel(PixelFormat format) {
    return format == PixelFormat::Rgb8 ? 3 : 4;
}

void validate(const Frame& frame) {
    const size_t expected =
        static_cast<size_t>(frame.width) * frame.height * bytes_per_pixel(frame.format);
    if (frame.pixels.size() != expected) {
        throw Error(ErrorCode::FormatMismatch,
                    "frame payload is " + std::to_string(frame.pixels.size()) +
                        " bytes, expected " + std::to_string(expected));
    }
}

Frame chroma_key_matte(const Frame& frame, Rgb key, int tolerance) {
    validate(frame);
    if (tolerance < 0) {
        throw Error(ErrorCode::InvalidInput, "tolerance must be non-negative");
    }
    const size_t in_bpp = bytes_per_pixel(frame.format);
    const size_t count = static_cast<size_t>(frame.width) * frame.height;

    Frame out;
    out.width = frame.width;
    out.height = frame.height;
    out.format = PixelFormat::Rgba8;
    out.pixels.resize(count * 4);

    for (size_t i = 0; i < count; ++i) {
        const uint8_t* src = frame.pixels.data() + i * in_bpp;
        const int dev = std::max({std::abs(int(src[0]) - int(key.r)),
                                  std::abs(int(src[1]) - int(key.g)),
                                  std::abs(int(src[2]) - int(key.b))});
        uint8_t* dst = out.pixels.data() + i * 4;
        dst[0] = src[0];
        dst[1] = src[1];
        dst[2] = src[2];
        dst[3] = dev <= tolerance ? 0 : 255;
    }
    return out;
}

void validate(const CalibrationInput& c) {
    if (!(c.person_pixel_height > 0.0) || !(c.frame_pixel_height > 0.0) ||
        !(c.camera_vertical_fov_deg > 0.0) || !(c.camera_distance_m > 0.0) ||
        !(c.real_height_m > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "calibration inputs must all be positive");
    }
    if (c.person_pixel_height > c.frame_pixel_height) {
        throw Error(ErrorCode::InvalidInput, "person cannot be taller than the frame");
    }
    if (!(c.camera_vertical_fov_deg < 180.0)) {
        throw Error(ErrorCode::InvalidInput, "vertical FoV must be below 180 degrees");
    }
}

double apparent_height_m(const CalibrationInput& c) {
    validate(c);
    return 2.0 * c.camera_distance_m * std::tan(deg_to_rad(c.camera_vertical_fov_deg) / 2.0) *
           (c.person_pixel_height / c.frame_pixel_height);
}

double life_size_scale(const CalibrationInput& c) {
    return c.real_height_m / apparent_height_m(c);
}

void write_raw_frame(std::ostream& out, const Frame& frame) {
    validate(frame);
    const std::array<uint8_t, 8> header{
        static_cast<uint8_t>(frame.width & 0xFF),
        static_cast<uint8_t>(frame.width >> 8),
        static_cast<uint8_t>(frame.height & 0xFF),
        static_cast<uint8_t>(frame.height >> 8),
        static_cast<uint8_t>(frame.format),
        0, 0, 0,
    };
    out.write(reinterpret_cast<const char*>(header.data()), header.size());
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
}

Frame read_raw_frame(std::istream& in) {
    std::array<uint8_t, 8> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() != static_cast<std::streamsize>(header.size())) {
        throw Error(ErrorCode::Truncated, "raw frame header incomplete");
    }
    Frame frame;
    frame.width = static_cast<uint16_t>(header[0] | (header[1] << 8));
    frame.height = static_cast<uint16_t>(header[2] | (header[3] << 8));
    if (header[4] > 1) {
        throw Error(ErrorCode::FormatMismatch,
                    "unknown pixel format tag " + std::to_string(header[4]));
    }
    frame.format = static_cast<PixelFormat>(header[4]);
    const size_t expected =
        static_cast<size_t>(frame.width) * frame.height * bytes_per_pixel(frame.format);
    frame.pixels.resize(expected);
    in.read(reinterpret_cast<char*>(frame.pixels.data()),
            static_cast<std::streamsize>(expected));
    if (in.gcount() != static_cast<std::streamsize>(expected)) {
        throw Error(ErrorCode::Truncated, "raw frame pixel data incomplete");
    }
    return frame;
}

std::vector<uint8_t> rle_compress(const std::vector<uint8_t>& bytes) {
    std::vector<uint8_t> out;
    size_t i = 0;
    while (i < bytes.size()) {
        size_t run = 1;
        while (run < 255 && i + run < bytes.size() && bytes[i + run] == bytes[i]) ++run;
        out.push_back(static_cast<uint8_t>(run));
        out.push_back(bytes[i]);
        i += run;
    }
    return out;
}

std::vector<uint8_t> rle_decompress(const std::vector<uint8_t>& bytes) {
    if (bytes.size() % 2 != 0) {
        throw Error(ErrorCode::LengthMismatch, "run-length data must be (count, value) pairs");
    }
    std::vector<uint8_t> out;
    for (size_t i = 0; i < bytes.size(); i += 2) {
        if (bytes[i] == 0) {
            throw Error(ErrorCode::InvariantViolation, "zero-length run");
        }
        out.insert(out.end(), bytes[i], bytes[i + 1]);
    }
    return out;
}

}  // namespace roundtable

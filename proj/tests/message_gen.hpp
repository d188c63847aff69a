#pragma once

// Seeded generator of random valid session messages, shared by the wire
// round-trip tests and the acceptance suite.

#include <roundtable/wire.hpp>

#include <random>
#include <string>
#include <vector>

namespace test_support {

inline roundtable::net::SessionMessage random_message(std::mt19937_64& rng) {
    using namespace roundtable::net;
    const auto byte = [&rng] { return static_cast<uint8_t>(rng() & 0xFF); };
    const auto f32 = [&rng] {
        return static_cast<float>(static_cast<int64_t>(rng() % 20001) - 10000) / 1000.0f;
    };
    switch (rng() % 6) {
    case 0: {
        Join m;
        m.peer_id = static_cast<uint32_t>(rng());
        const size_t len = rng() % 32;
        for (size_t i = 0; i < len; ++i) {
            m.display_name.push_back(static_cast<char>('a' + rng() % 26));
        }
        return m;
    }
    case 1:
        return ModeSet{static_cast<Mode>(rng() % 3)};
    case 2: {
        PoseFrame m;
        m.timestamp_ms = static_cast<uint32_t>(rng());
        const size_t joints = 1 + rng() % 8;
        for (size_t i = 0; i < joints; ++i) {
            m.joints.push_back(Joint{f32(), f32(), f32()});
        }
        return m;
    }
    case 3: {
        VideoFrame m;
        m.timestamp_ms = static_cast<uint32_t>(rng());
        m.width = static_cast<uint16_t>(1 + rng() % 640);
        m.height = static_cast<uint16_t>(1 + rng() % 480);
        m.pixel_format = static_cast<WirePixelFormat>(rng() % 2);
        m.payload.resize(rng() % 200);
        for (uint8_t& b : m.payload) b = byte();
        return m;
    }
    case 4: {
        PlacementUpdate m;
        m.placement.radian_deg = static_cast<double>(rng() % 17999) / 100.0;
        m.placement.radius_m = 0.01 + static_cast<double>(rng() % 300) / 100.0;
        m.n_remote = static_cast<uint8_t>(1 + rng() % 4);
        return m;
    }
    default:
        return Leave{static_cast<uint32_t>(rng())};
    }
}

}  // namespace test_support

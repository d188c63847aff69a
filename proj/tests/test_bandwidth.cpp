#include <roundtable/bandwidth.hpp>

#include "test_support.hpp"

#include <doctest.h>

using namespace roundtable;
using namespace roundtable::net;
using test_support::error_code_of;

TEST_CASE("pose traffic at 30 Hz meters below the avatar budget") {
    BandwidthMeter meter(1000);
    double rate = 0.0;
    // 34-byte frames, 30 per second on the millisecond grid.
    for (int k = 0; k <= 60; ++k) {
        rate = meter.record("pose", 34, static_cast<uint64_t>(k) * 1000 / 30);
    }
    CHECK(rate == doctest::Approx(8160.0));
    CHECK(rate < 10000.0);
}

TEST_CASE("video traffic at the spec'd numbers hits the budget exactly") {
    BandwidthMeter meter(1000);
    double rate = 0.0;
    for (int k = 0; k < 30; ++k) {
        rate = meter.record("video", 2500, static_cast<uint64_t>(k) * 1000 / 15);
    }
    CHECK(rate == doctest::Approx(300000.0));
}

TEST_CASE("an idle window reports zero") {
    BandwidthMeter meter(1000);
    meter.record("s", 1000, 0);
    CHECK(meter.rate_bits_per_s("s", 2500) == 0.0);
    CHECK(meter.rate_bits_per_s("never-seen", 100) == 0.0);
}

TEST_CASE("the window is half-open: events exactly one window old drop out") {
    BandwidthMeter meter(1000);
    meter.record("s", 100, 0);
    CHECK(meter.rate_bits_per_s("s", 999) == doctest::Approx(800.0));
    CHECK(meter.rate_bits_per_s("s", 1000) == 0.0);
}

TEST_CASE("total rate is the sum of the per-stream rates") {
    BandwidthMeter meter(1000);
    meter.record("a", 125, 10);
    meter.record("b", 250, 20);
    meter.record("a", 125, 30);
    const double total = meter.total_rate_bits_per_s(500);
    const double sum =
        meter.rate_bits_per_s("a", 500) + meter.rate_bits_per_s("b", 500);
    CHECK(std::abs(total - sum) < 1.0);
    CHECK(total == doctest::Approx(4000.0));
    CHECK(meter.total_bytes("a") == 250);
}

TEST_CASE("time cannot run backwards") {
    BandwidthMeter meter(1000);
    meter.record("s", 10, 100);
    CHECK(error_code_of([&] { meter.record("s", 10, 99); }) == ErrorCode::NonMonotoneTime);
}

TEST_CASE("under-budget traffic is never dropped") {
    // 2000-byte frames at 15 fps: 240 kbit/s against a 300 kbit/s budget.
    TokenBucketPacer pacer = TokenBucketPacer::for_frames(300000.0, 2000);
    for (int k = 0; k < 150; ++k) {
        const auto decision = pacer.admit(2000, static_cast<uint64_t>(k) * 1000 / 15);
        CHECK(decision.send);
    }
    CHECK(pacer.frames_dropped() == 0);
}

TEST_CASE("double-rate traffic is paced to the budget with half the frames dropped") {
    // 3750-byte frames at 20 fps offer 600 kbit/s against 300 kbit/s.
    TokenBucketPacer pacer = TokenBucketPacer::for_frames(300000.0, 3750);
    BandwidthMeter meter(1000);
    uint64_t sent_bits_in_window = 0;
    for (int k = 0; k < 200; ++k) {
        const uint64_t t = static_cast<uint64_t>(k) * 50;
        if (pacer.admit(3750, t).send) {
            const double rate = meter.record("v", 3750, t);
            CHECK(rate <= 300000.0 + 3750 * 8);
            sent_bits_in_window = static_cast<uint64_t>(rate);
        }
    }
    CHECK(sent_bits_in_window == 300000);
    CHECK(pacer.frames_sent() == 100);
    CHECK(pacer.frames_dropped() == 100);
    CHECK_FALSE(pacer.ever_starved());
}

TEST_CASE("a frame the bucket can never hold starves the stream") {
    // 40000 bits per frame against a 30 kbit/s budget: capacity tops out
    // below one frame.
    TokenBucketPacer pacer = TokenBucketPacer::for_frames(30000.0, 5000);
    for (int k = 0; k < 50; ++k) {
        const auto decision = pacer.admit(5000, static_cast<uint64_t>(k) * 100);
        CHECK_FALSE(decision.send);
        CHECK(decision.starved);
    }
    CHECK(pacer.frames_sent() == 0);
    CHECK(pacer.ever_starved());
}

TEST_CASE("pacing never exceeds budget plus one frame over any window") {
    TokenBucketPacer pacer = TokenBucketPacer::for_frames(100000.0, 2500);
    BandwidthMeter meter(1000);
    // Bursty offered load: 3x budget for a second, silence, then 2x.
    uint64_t t = 0;
    const auto offer = [&](int frames, uint64_t gap_ms) {
        for (int i = 0; i < frames; ++i) {
            if (pacer.admit(2500, t).send) {
                const double rate = meter.record("v", 2500, t);
                CHECK(rate <= 100000.0 + 2500 * 8);
            }
            t += gap_ms;
        }
    };
    offer(45, 22);   // ~3x budget
    t += 1500;       // idle gap refills the bucket
    offer(30, 40);   // ~1.7x budget
    CHECK(pacer.frames_dropped() > 0);
}

TEST_CASE("pacer rejects nonsense configuration") {
    CHECK(error_code_of([] { TokenBucketPacer(0.0, 100.0); }) == ErrorCode::InvalidInput);
    CHECK(error_code_of([] { TokenBucketPacer(1000.0, 0.0); }) == ErrorCode::InvalidInput);
    CHECK(error_code_of([] { BandwidthMeter(0); }) == ErrorCode::InvalidInput);
}

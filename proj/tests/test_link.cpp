#include <roundtable/link.hpp>

#include <doctest.h>

#include <random>
#include <vector>

using namespace roundtable::net;

namespace {

std::vector<uint8_t> bytes_of(std::initializer_list<uint8_t> list) { return list; }

}  // namespace

TEST_CASE("zero latency and jitter delivers immediately in send order") {
    SimulatedChannel channel(0, 0, 1);
    channel.send(bytes_of({1, 2}), 10);
    channel.send(bytes_of({3}), 10);
    CHECK(channel.receive_until(10) == bytes_of({1, 2, 3}));
    CHECK(channel.idle());
}

TEST_CASE("latency delays delivery and nothing arrives early") {
    SimulatedChannel channel(20, 0, 1);
    channel.send(bytes_of({1}), 0);
    CHECK(channel.receive_until(19).empty());
    CHECK(channel.receive_until(20) == bytes_of({1}));
}

TEST_CASE("the byte stream is reliable: everything sent arrives, in order") {
    std::mt19937_64 rng(42);
    SimulatedChannel channel(15, 25, 7);
    std::vector<uint8_t> sent, received;
    uint64_t t = 0;
    for (int burst = 0; burst < 200; ++burst) {
        std::vector<uint8_t> chunk(1 + rng() % 40);
        for (uint8_t& b : chunk) b = static_cast<uint8_t>(rng());
        channel.send(chunk, t);
        sent.insert(sent.end(), chunk.begin(), chunk.end());
        t += rng() % 10;
        const auto got = channel.receive_until(t);
        received.insert(received.end(), got.begin(), got.end());
    }
    const auto tail = channel.receive_until(t + 1000);
    received.insert(received.end(), tail.begin(), tail.end());
    CHECK(received == sent);
    CHECK(channel.idle());
}

TEST_CASE("a fixed seed reproduces the exact delivery schedule") {
    const auto run = [](uint64_t seed) {
        SimulatedChannel channel(10, 30, seed);
        std::vector<std::pair<uint64_t, size_t>> schedule;
        for (uint64_t t = 0; t < 300; t += 7) {
            channel.send(bytes_of({static_cast<uint8_t>(t)}), t);
        }
        for (uint64_t t = 0; t < 500; ++t) {
            const auto got = channel.receive_until(t);
            if (!got.empty()) schedule.emplace_back(t, got.size());
        }
        return schedule;
    };
    CHECK(run(5) == run(5));
    CHECK(run(5) != run(6));
}

TEST_CASE("duplex directions jitter independently but deterministically") {
    DuplexLink link(5, 10, 99);
    link.a_to_b().send(bytes_of({1}), 0);
    link.b_to_a().send(bytes_of({2}), 0);
    DuplexLink link2(5, 10, 99);
    link2.a_to_b().send(bytes_of({1}), 0);
    link2.b_to_a().send(bytes_of({2}), 0);
    for (uint64_t t = 0; t <= 20; ++t) {
        CHECK(link.a_to_b().receive_until(t) == link2.a_to_b().receive_until(t));
        CHECK(link.b_to_a().receive_until(t) == link2.b_to_a().receive_until(t));
    }
}

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fitroom::engine {

/// One stream per source of randomness, so two runs that differ only in
/// policy consume identical draws for everything else.
enum class StreamPurpose : std::uint32_t {
    Arrivals = 1,
    Job1,
    Job2,
    Job3,
    Fitting,
    HelpDecision,
    HelpTiming,
    Patience,
    RevertDelay,
    Polling,
};

std::string_view to_string(StreamPurpose purpose);

struct StreamId {
    StreamPurpose purpose;
    std::uint64_t replication;
};

/// Seeded generator for one (purpose, replication) pair. Uses mt19937_64 and
/// hand-rolled conversions so sequences are identical across standard
/// libraries.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, StreamId id);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();

    StreamId id() const noexcept { return id_; }

private:
    StreamId id_;
    std::mt19937_64 engine_;
};

/// splitmix64 finaliser; also used to derive secondary master seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace fitroom::engine

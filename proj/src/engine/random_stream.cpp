#include "fitroom/engine/random_stream.hpp"

namespace fitroom::engine {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

std::string_view to_string(StreamPurpose purpose) {
    switch (purpose) {
        case StreamPurpose::Arrivals: return "arrivals";
        case StreamPurpose::Job1: return "job1";
        case StreamPurpose::Job2: return "job2";
        case StreamPurpose::Job3: return "job3";
        case StreamPurpose::Fitting: return "fitting";
        case StreamPurpose::HelpDecision: return "help-decision";
        case StreamPurpose::HelpTiming: return "help-timing";
        case StreamPurpose::Patience: return "patience";
        case StreamPurpose::RevertDelay: return "revert-delay";
        case StreamPurpose::Polling: return "polling";
    }
    return "unknown";
}

RandomStream::RandomStream(std::uint64_t master_seed, StreamId id)
    : id_(id),
      engine_(mix_seed(mix_seed(master_seed, static_cast<std::uint64_t>(id.purpose)), id.replication)) {}

double RandomStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace fitroom::engine

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace cfmimo {

/// Deterministic random stream (xoshiro256++) with splitmix64 seeding.
///
/// A stream is fully determined by (seed, stream_id). Monte Carlo code gives
/// every trial its own stream id, which makes results independent of how
/// trials are partitioned across workers. The generator and all variate
/// transforms below are implemented here, so sequences are identical across
/// platforms and standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double next_double();

    /// Poisson variate; product method below mean 10, Hormann's PTRD above.
    long next_poisson(double mean);

private:
    std::array<std::uint64_t, 4> state_;
};

} // namespace cfmimo

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace solenoid {

struct PropertyResult {
    std::string name;
    bool ok = false;
    std::size_t cases = 0;
    std::string detail;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    bool fault_injection = false;
    std::vector<PropertyResult> properties;
    bool ok = false;
};

/// Seeded invariant suite: metric axioms, power-floor identities, backward
/// contraction, escape-ball legality, resonant uniqueness, lattice and
/// packing oracles, transcript replay.  `filter` keeps properties whose name
/// contains it.  Fault injection loosens the engine's live radius audit by
/// 1/10^6 while a cheating strategy oversteps by less; the strict replay
/// property must then fail, demonstrating the suite's sensitivity.
VerifyReport run_verify_suite(std::uint64_t seed, const std::string& filter,
                              bool fault_injection);

}  // namespace solenoid

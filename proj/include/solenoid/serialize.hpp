#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "solenoid/game.hpp"

namespace solenoid {

using Json = nlohmann::ordered_json;

Json json_of(const Rational& q);
Json json_of(const Point& x);
Json json_of(const Ball& b);
Json json_of(const Cylinder& c);
Json json_of(const GameConfig& c);
Json json_of(const Transcript& t);

Rational rational_from_json(const Json& j);
Point point_from_json(const Json& j);
Ball ball_from_json(const Json& j);
Cylinder cylinder_from_json(const Json& j);
GameConfig config_from_json(const Json& j);
Transcript transcript_from_json(const Json& j);

/// Canonical text form used for files and byte-identity comparisons.
std::string transcript_dump(const Transcript& t);

struct ReplayReport {
    bool ok = true;                        // every re-checked comparison passed
    bool byte_identical = true;            // canonical re-serialization matches input
    std::vector<std::string> violations;
};

/// Re-audits a serialized transcript from raw coordinates: every legality
/// comparison is recomputed exactly (no slack), normalized radii are
/// recomputed, nesting is re-verified and the canonical dump is compared
/// byte-for-byte with the input.
ReplayReport replay_transcript(const Json& j);

}  // namespace solenoid

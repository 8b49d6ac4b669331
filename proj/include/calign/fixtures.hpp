#pragma once
// Deterministic synthetic corpus generation for engine testing. Each profile
// plants a known behavioral pattern and records its parameters in a sidecar
// truth file so tests can verify the engine recovers them.
//
//   reject_heavy        every review carries a native reject verdict
//   dilution            decisive flags buried under many minor concerns, so
//                       FDR@3 exceeds full-review FDR on accepted papers
//   inverted_attention  resolved concerns matched more readily than decisive
//                       blockers (negative attention gap)
//   calibrated          blockers found and flagged, few false decisives
//                       (positive attention gap)

#include <cstdint>
#include <string>

namespace calign {

enum class FixtureProfile { reject_heavy, dilution, inverted_attention, calibrated };

std::string_view to_string(FixtureProfile p);
FixtureProfile fixture_profile_from_string(std::string_view tok);

// Writes manifest.json, papers/, reviews/, graphs/, gates/ and truth.json
// under out_dir. Byte-identical output for identical (profile, size, seed).
// size = paper count, split evenly accepted/rejected (extra paper accepted).
void generate_fixture_corpus(FixtureProfile profile, int size, std::uint64_t seed,
                             const std::string& out_dir);

}  // namespace calign

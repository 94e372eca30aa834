#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "coversys/arith.hpp"
#include "coversys/cover.hpp"
#include "coversys/space.hpp"

namespace coversys {

inline constexpr std::uint32_t kDefaultCensusCap = 6;

struct CensusOptions {
  std::uint32_t n = 1;
  std::uint32_t cap = kDefaultCensusCap;
  bool keep_systems = false;
  /// Only systems whose moduli are pairwise distinct.
  bool distinct_moduli = false;
  std::uint32_t shards = 1;
};

/// A system as its progressions in census order.
using CensusSystem = std::vector<Progression>;

struct CensusRecord {
  std::uint32_t n = 0;
  std::map<FactoredModulus, std::uint64_t> by_lcm;
  std::uint64_t total = 0;
  /// Sorted; empty unless systems were kept.
  std::vector<CensusSystem> systems;
  /// The one-progression system {0 mod 1} is among the counted systems.
  bool contains_Z = false;

  friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

/// Moduli > 1 dividing N, sorted, with sum 1/d >= 1 and lcm exactly N.
struct ModuliCandidate {
  FactoredModulus lcm;
  std::vector<std::uint64_t> moduli;
};

/// Moduli N with simpson_bound(N) <= n, sorted by integer value.
std::vector<FactoredModulus> candidate_lcms(std::uint32_t n);

/// The candidate stream in deterministic order.
std::vector<ModuliCandidate> moduli_candidates(std::uint32_t n, bool distinct_moduli = false);

/// Stable shard of a candidate (FNV-1a of its canonical text).
std::uint32_t shard_of(const ModuliCandidate& c, std::uint32_t shards);

/// Minimal covers counted for one candidate, appended into `out`.
void enumerate_candidate(const ModuliCandidate& c, bool keep_systems, CensusRecord& out);

/// One shard of the stream.
CensusRecord enumerate_shard(const CensusOptions& opt, std::uint32_t shard);

/// Sums counts, unions systems.
CensusRecord merge(std::span<const CensusRecord> parts);

/// Shards run in parallel and are merged.
CensusRecord shard_and_merge(const CensusOptions& opt);

/// Single-shard enumeration.
CensusRecord enumerate_minimal_covers_Z(std::uint32_t n, std::uint32_t cap = kDefaultCensusCap,
                                        bool keep_systems = false);

inline constexpr std::uint64_t kHyperplaneCensusMaxPoints = 12;
inline constexpr std::size_t kHyperplaneCensusMaxCoords = 3;

/// Every minimal cover of the space by its hyperplanes, optionally with
/// F(A) = [k] and |A| <= max_size. Sorted by plane sequence.
std::vector<CoverSystem> enumerate_minimal_hyperplane_covers(const ProductSpace& space,
                                                             bool require_full_support,
                                                             std::size_t max_size = SIZE_MAX);

// ---------------------------------------------------------------------------
// Persistence

std::string fnv1a_hex(std::string_view bytes);

/// Writes shard-XXX.jsonl per shard and census.json; returns the merged record.
CensusRecord write_census(const CensusOptions& opt, std::span<const CensusRecord> shards,
                          const std::filesystem::path& dir);

/// Reads and merges a census directory, validating every checksum.
CensusRecord read_census(const std::filesystem::path& dir);

}  // namespace coversys

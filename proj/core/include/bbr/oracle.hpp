#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bbr/op_table.hpp"
#include "bbr/permutation.hpp"
#include "bbr/structure.hpp"

namespace bbr {

/// Seeded generator with a fixed algorithm (64-bit Mersenne Twister) and a
/// portable bounded draw, so every platform produces the same instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound), bound >= 1, by rejection sampling.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Uniform permutation of 0..n-1 by Fisher–Yates.
Permutation random_permutation(std::size_t n, Rng& rng);

/// A canonical table hidden behind a secret relabeling σ:
/// truth(x, y) = σ(canonical(σ⁻¹ x, σ⁻¹ y)).
struct HiddenInstance {
  OpTable truth;
  OpTable canonical;
  Permutation secret_perm;
  /// Absent for instances wrapped around a bare table.
  std::optional<StructureSpec> spec;
  std::uint64_t seed = 0;
};

/// Both operations of a hidden ring share one secret relabeling.
struct HiddenRing {
  HiddenInstance add;
  HiddenInstance mul;
};

HiddenInstance make_hidden(const OpTable& canonical, const Permutation& sigma,
                           StructureSpec spec, std::uint64_t seed = 0);

/// Deterministic in (spec, seed). Ring specs are rejected; use new_hidden_ring.
HiddenInstance new_hidden(const StructureSpec& spec, std::uint64_t seed);
HiddenRing new_hidden_ring(const RingSpec& spec, std::uint64_t seed);
HiddenRing make_hidden_ring(const RingTables& canonical, const Permutation& sigma,
                            const RingSpec& spec, std::uint64_t seed = 0);

struct QueryRecord {
  Element x;
  Element y;
  Element z;
  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

using Transcript = std::vector<QueryRecord>;

/// One {"x":…,"y":…,"z":…} object per line.
void write_transcript(std::ostream& out, const Transcript& transcript);
Transcript read_transcript(std::istream& in);

/// True iff every recorded answer equals truth(x, y).
bool replay_matches(const Transcript& transcript, const OpTable& truth);

struct VerifyOutcome {
  bool exact;
  std::size_t queries;
};

/// Query interface over a hidden instance. Counts every call, including
/// repeats; callers that want to save queries cache answers themselves.
class Oracle {
 public:
  explicit Oracle(HiddenInstance instance);

  /// Wraps a bare table (no known canonical form or relabeling).
  static Oracle from_table(OpTable truth);

  std::size_t size() const noexcept { return instance_.truth.size(); }

  /// Throws ValidationError for out-of-range indices without counting.
  Element query(Element x, Element y);

  std::size_t count() const noexcept { return transcript_.size(); }
  const Transcript& transcript() const noexcept { return transcript_; }

  /// Entrywise comparison against the truth; consumes no queries.
  VerifyOutcome verify_recovery(const OpTable& claimed) const;

  const HiddenInstance& instance_for_testing() const noexcept { return instance_; }

 private:
  HiddenInstance instance_;
  Transcript transcript_;
};

}  // namespace bbr

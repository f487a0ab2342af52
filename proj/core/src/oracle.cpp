#include "bbr/oracle.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "bbr/algebra.hpp"
#include "bbr/errors.hpp"

namespace bbr {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("Rng::below needs bound >= 1");
  // 2^64 mod bound; draws under it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<Element> v(n);
  std::iota(v.begin(), v.end(), Element{0});
  for (std::size_t i = n; i-- > 1;) {
    std::swap(v[i], v[rng.below(i + 1)]);
  }
  return Permutation(std::move(v));
}

HiddenInstance make_hidden(const OpTable& canonical, const Permutation& sigma,
                           StructureSpec spec, std::uint64_t seed) {
  return HiddenInstance{canonical.relabeled(sigma), canonical, sigma, std::move(spec), seed};
}

HiddenInstance new_hidden(const StructureSpec& spec, std::uint64_t seed) {
  validate(spec);
  if (std::holds_alternative<RingSpec>(spec)) {
    throw ValidationError("ring specs hide two tables; use new_hidden_ring");
  }
  auto canonical = build_table(spec);
  Rng rng(seed);
  auto sigma = random_permutation(canonical.size(), rng);
  return make_hidden(canonical, sigma, spec, seed);
}

HiddenRing make_hidden_ring(const RingTables& canonical, const Permutation& sigma,
                            const RingSpec& spec, std::uint64_t seed) {
  return HiddenRing{make_hidden(canonical.add, sigma, spec, seed),
                    make_hidden(canonical.mul, sigma, spec, seed)};
}

HiddenRing new_hidden_ring(const RingSpec& spec, std::uint64_t seed) {
  auto canonical = build_ring(spec);
  Rng rng(seed);
  auto sigma = random_permutation(canonical.size(), rng);
  return make_hidden_ring(canonical, sigma, spec, seed);
}

void write_transcript(std::ostream& out, const Transcript& transcript) {
  for (const auto& q : transcript) {
    out << nlohmann::json{{"x", q.x}, {"y", q.y}, {"z", q.z}}.dump() << '\n';
  }
}

Transcript read_transcript(std::istream& in) {
  Transcript out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      out.push_back({j.at("x").get<Element>(), j.at("y").get<Element>(), j.at("z").get<Element>()});
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("transcript line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

bool replay_matches(const Transcript& transcript, const OpTable& truth) {
  const auto n = truth.size();
  for (const auto& q : transcript) {
    if (q.x >= n || q.y >= n || q.z >= n || truth(q.x, q.y) != q.z) return false;
  }
  return true;
}

Oracle::Oracle(HiddenInstance instance) : instance_(std::move(instance)) {}

Oracle Oracle::from_table(OpTable truth) {
  const auto n = truth.size();
  OpTable canonical = truth;
  return Oracle(HiddenInstance{std::move(truth), std::move(canonical), Permutation::identity(n),
                               std::nullopt, 0});
}

Element Oracle::query(Element x, Element y) {
  const auto n = size();
  if (x >= n || y >= n) {
    throw ValidationError("query (" + std::to_string(x) + "," + std::to_string(y) +
                          ") out of range for n = " + std::to_string(n));
  }
  const Element z = instance_.truth(x, y);
  transcript_.push_back({x, y, z});
  return z;
}

VerifyOutcome Oracle::verify_recovery(const OpTable& claimed) const {
  if (claimed.size() != size()) {
    throw ValidationError("claimed table has n = " + std::to_string(claimed.size()) +
                          ", instance has n = " + std::to_string(size()));
  }
  return VerifyOutcome{claimed == instance_.truth, count()};
}

}  // namespace bbr

#include "bbr/recovery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include "bbr/algebra.hpp"
#include "bbr/errors.hpp"
#include "bbr/structure.hpp"

namespace bbr {

namespace {

constexpr Element unknown = std::numeric_limits<Element>::max();
constexpr std::size_t deduced = std::numeric_limits<std::size_t>::max();

// Partial operation table fed by oracle answers and deductions. Every new
// fact is checked against what is already known, so contradictory answers
// surface as NotInClassError naming the offending query.
class Session {
 public:
  Session(Oracle& oracle, std::string klass)
      : oracle_(oracle), klass_(std::move(klass)), start_(oracle.count()), n_(oracle.size()),
        entries_(n_ * n_, unknown), source_(n_ * n_, deduced) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t used() const noexcept { return oracle_.count() - start_; }

  bool known(Element x, Element y) const { return entries_[x * n_ + y] != unknown; }
  Element at(Element x, Element y) const { return entries_[x * n_ + y]; }

  // Queries x∗y unless already known; `mirror` also records y∗x.
  Element ask(Element x, Element y, bool mirror) {
    if (known(x, y)) return at(x, y);
    const Element z = oracle_.query(x, y);
    const std::size_t q = used() - 1;
    record(x, y, z, q);
    if (mirror) record(y, x, z, q);
    return z;
  }

  void deduce(Element x, Element y, Element z) { record(x, y, z, deduced); }

  [[noreturn]] void fail(const std::string& why) const {
    std::optional<std::size_t> q;
    if (used() > 0) q = used() - 1;
    fail_at(why, q);
  }

  [[noreturn]] void fail_at(const std::string& why, std::optional<std::size_t> q) const {
    std::string msg = "answers are not consistent with " + klass_ + ": " + why;
    if (q) {
      const auto& rec = oracle_.transcript()[start_ + *q];
      msg += " (first contradiction at query #" + std::to_string(*q + 1) + ": " +
             std::to_string(rec.x) + "*" + std::to_string(rec.y) + " = " +
             std::to_string(rec.z) + ")";
    }
    throw NotInClassError(msg, q);
  }

  RecoveryResult finish(std::string method) const {
    if (std::find(entries_.begin(), entries_.end(), unknown) != entries_.end()) {
      throw std::logic_error(method + ": recovery ended with unknown entries");
    }
    Transcript trace(oracle_.transcript().begin() + static_cast<std::ptrdiff_t>(start_),
                     oracle_.transcript().end());
    return RecoveryResult{OpTable(n_, entries_), used(), std::move(method), std::move(trace), {}};
  }

 private:
  void record(Element x, Element y, Element z, std::size_t source) {
    const std::size_t i = x * n_ + y;
    if (entries_[i] == unknown) {
      entries_[i] = z;
      source_[i] = source;
      return;
    }
    if (entries_[i] == z) return;
    std::optional<std::size_t> q;
    if (source_[i] != deduced) {
      q = source_[i];
    } else if (source != deduced) {
      q = source;
    } else if (used() > 0) {
      q = used() - 1;
    }
    fail_at("entry " + std::to_string(x) + "*" + std::to_string(y) + " would be both " +
                std::to_string(entries_[i]) + " and " + std::to_string(z),
            q);
  }

  Oracle& oracle_;
  std::string klass_;
  std::size_t start_;
  std::size_t n_;
  std::vector<Element> entries_;
  std::vector<std::size_t> source_;
};

// Fills the table of the cyclic group whose k-th power of the generator is
// powers[k] (powers[0] is the identity).
void deduce_cyclic(Session& s, const std::vector<Element>& powers) {
  const std::size_t k = powers.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) s.deduce(powers[i], powers[j], powers[(i + j) % k]);
  }
}

}  // namespace

RecoveryResult recover_abelian(Oracle& oracle) {
  Session s(oracle, "an abelian group");
  const std::size_t n = s.n();
  std::vector<ExtensionStep> steps;

  // Power chain a_{k+1} = a_k ∗ a until it returns to a.
  const Element a = 0;
  std::vector<Element> chain{a};  // chain[i] = a_{i+1}
  std::vector<bool> on_chain(n, false);
  on_chain[a] = true;
  while (true) {
    const Element z = s.ask(chain.back(), a, true);
    if (z == a) break;
    if (on_chain[z]) s.fail("power chain of " + std::to_string(a) + " cycles without returning to it");
    on_chain[z] = true;
    chain.push_back(z);
  }
  // powers[i] = a_i with a_0 = a_k the identity.
  std::vector<Element> powers;
  powers.push_back(chain.back());
  powers.insert(powers.end(), chain.begin(), chain.end() - 1);
  deduce_cyclic(s, powers);
  steps.push_back({a, powers.size(), s.used()});

  const Element identity = powers.front();
  std::vector<Element> members = powers;
  std::vector<std::ptrdiff_t> member_index(n, -1);
  for (std::size_t i = 0; i < members.size(); ++i) member_index[members[i]] = static_cast<std::ptrdiff_t>(i);

  while (members.size() < n) {
    const std::size_t queries_before = s.used();
    const std::size_t m = members.size();
    Element b = 0;
    while (member_index[b] >= 0) ++b;

    // b_k = b_{k-1} ∗ b until b_k lands in the known subgroup.
    std::vector<Element> bpow{identity, b};  // bpow[i] = b_i, b_0 = identity
    std::vector<bool> in_coset_chain(n, false);
    in_coset_chain[b] = true;
    Element bk;
    while (true) {
      const Element z = s.ask(bpow.back(), b, true);
      if (member_index[z] >= 0) {
        bk = z;
        break;
      }
      if (in_coset_chain[z]) s.fail("chain of " + std::to_string(b) + " never re-enters the subgroup");
      in_coset_chain[z] = true;
      bpow.push_back(z);
    }
    const std::size_t k = bpow.size();

    // coset[si * k + i] = members[si] ∗ b_i
    std::vector<Element> coset(m * k);
    std::vector<bool> taken(n, false);
    for (auto v : members) taken[v] = true;
    for (std::size_t i = 1; i < k; ++i) taken[bpow[i]] = true;
    for (std::size_t si = 0; si < m; ++si) {
      coset[si * k] = members[si];
      for (std::size_t i = 1; i < k; ++i) {
        if (members[si] == identity) {
          coset[si * k + i] = bpow[i];
          continue;
        }
        const Element z = s.ask(members[si], bpow[i], true);
        if (taken[z]) s.fail("product " + std::to_string(members[si]) + "*b^" + std::to_string(i) + " is not a new coset element");
        taken[z] = true;
        coset[si * k + i] = z;
      }
    }

    // (s ∗ b_i)(t ∗ b_j) = (s∗t) ∗ b_{i+j}, or (s∗t∗b_k) ∗ b_{i+j−k} on wrap.
    for (std::size_t si = 0; si < m; ++si) {
      for (std::size_t ti = 0; ti < m; ++ti) {
        const Element st = s.at(members[si], members[ti]);
        const Element st_wrapped = s.at(st, bk);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            const Element base = i + j < k ? st : st_wrapped;
            const std::size_t e = i + j < k ? i + j : i + j - k;
            s.deduce(coset[si * k + i], coset[ti * k + j],
                     coset[static_cast<std::size_t>(member_index[base]) * k + e]);
          }
        }
      }
    }

    members = std::move(coset);
    for (std::size_t i = 0; i < members.size(); ++i) member_index[members[i]] = static_cast<std::ptrdiff_t>(i);
    const std::size_t spent = s.used() - queries_before;
    if (spent != members.size() - m) throw std::logic_error("extension step broke the |S_new| - |S_old| count");
    steps.push_back({b, members.size(), spent});
  }

  auto result = s.finish("abelian");
  result.steps = std::move(steps);
  return result;
}

RecoveryResult recover_abelian_prime(Oracle& oracle, std::size_t p) {
  if (!is_prime(p)) throw ValidationError("recover_abelian_prime needs a prime order, got " + std::to_string(p));
  if (p != oracle.size()) {
    throw ValidationError("declared order " + std::to_string(p) + " but the oracle has n = " +
                          std::to_string(oracle.size()));
  }
  Session s(oracle, "a group of prime order " + std::to_string(p));
  std::vector<bool> known(p, false);
  std::size_t known_count = 0;
  auto learn = [&](Element z) {
    if (known[z]) s.fail("power chain repeats element " + std::to_string(z) + " early");
    known[z] = true;
    ++known_count;
  };

  const Element a = 0;
  const Element a_sq = s.ask(a, a, true);
  std::vector<Element> powers;  // powers[i] = g^(i+1)
  std::optional<Element> identity;
  Element g;
  if (a_sq == a) {
    identity = a;
    learn(a);
    g = 1;
    powers.push_back(g);
    learn(g);
  } else {
    g = a;
    powers = {a, a_sq};
    learn(a);
    learn(a_sq);
  }
  // Stop once at most one element is left unexplained.
  while (known_count + 1 < p) {
    const Element z = s.ask(powers.back(), g, true);
    learn(z);
    powers.push_back(z);
  }
  if (known_count + 1 == p) {
    Element rest = 0;
    while (known[rest]) ++rest;
    powers.push_back(rest);
  }
  if (!identity) {
    identity = powers.back();
    powers.pop_back();
  }
  std::vector<Element> cyclic{*identity};
  cyclic.insert(cyclic.end(), powers.begin(), powers.end());
  deduce_cyclic(s, cyclic);
  return s.finish("prime");
}

RecoveryResult recover_order11_eight(Oracle& oracle) {
  constexpr std::size_t order = 11;
  if (oracle.size() != order) {
    throw ValidationError("the eight-query algorithm needs n = 11, got " + std::to_string(oracle.size()));
  }
  Session s(oracle, "a group of order 11");
  std::array<int, order> log;
  log.fill(-1);
  auto assign = [&](Element z, int exponent) {
    if (log[z] >= 0) s.fail("element " + std::to_string(z) + " appears as two different powers");
    log[z] = exponent;
  };

  const Element a = 0;
  const Element a_sq = s.ask(a, a, true);
  Element a1;
  Element a2;
  if (a_sq != a) {
    a1 = a;
    a2 = a_sq;
  } else {
    assign(a, 0);
    a1 = 1;
    a2 = s.ask(a1, a1, true);
  }
  assign(a1, 1);
  assign(a2, 2);
  const Element a3 = s.ask(a2, a1, true);
  assign(a3, 3);
  const Element a4 = s.ask(a3, a1, true);
  assign(a4, 4);
  const Element a5 = s.ask(a4, a1, true);
  assign(a5, 5);
  const Element a7 = s.ask(a5, a2, true);
  assign(a7, 7);
  if (a_sq != a) assign(s.ask(a7, a4, true), 0);

  std::vector<Element> residual;
  for (Element x = 0; x < order; ++x) {
    if (log[x] < 0) residual.push_back(x);
  }
  if (residual.size() != 4) throw std::logic_error("order-11 chain left " + std::to_string(residual.size()) + " residual elements");
  const Element b = residual[0];
  const Element c = residual[1];
  const Element d = residual[2];
  const std::array<std::pair<Element, Element>, 2> probes{{{b, c}, {b, d}}};
  std::array<Element, 2> answers{s.ask(b, c, true), s.ask(b, d, true)};

  // Candidate discrete logs for the residual elements, filtered by the two
  // probe answers. A group of order 11 leaves exactly one survivor.
  std::array<int, 4> exps{6, 8, 9, 10};
  std::vector<std::array<int, 4>> survivors;
  do {
    auto trial = log;
    for (std::size_t i = 0; i < 4; ++i) trial[residual[i]] = exps[i];
    bool ok = true;
    for (std::size_t q = 0; q < 2 && ok; ++q) {
      ok = trial[answers[q]] == (trial[probes[q].first] + trial[probes[q].second]) % 11;
    }
    if (ok) survivors.push_back(exps);
  } while (std::next_permutation(exps.begin(), exps.end()));

  if (survivors.empty()) s.fail("no assignment of the residual elements fits the last two answers");
  if (survivors.size() > 1) throw std::logic_error("order-11 deduction left several candidates");
  for (std::size_t i = 0; i < 4; ++i) log[residual[i]] = survivors.front()[i];

  std::vector<Element> powers(order);
  for (Element x = 0; x < order; ++x) powers[static_cast<std::size_t>(log[x])] = x;
  deduce_cyclic(s, powers);
  return s.finish("eleven8");
}

std::size_t merge_sort_budget(std::size_t n) {
  if (n <= 1) return 0;
  std::size_t levels = 0;
  std::size_t pow2 = 1;
  while (pow2 < n) {
    pow2 *= 2;
    ++levels;
  }
  return n * levels - pow2 + 1;
}

RecoveryResult recover_max_chain(Oracle& oracle) {
  Session s(oracle, "a max-semigroup");
  const std::size_t n = s.n();
  // x precedes y iff x∗y answers y.
  auto less = [&](Element x, Element y) {
    const Element z = s.ask(x, y, true);
    if (z != x && z != y) {
      s.fail(std::to_string(x) + "*" + std::to_string(y) + " answered neither operand");
    }
    return z == y;
  };

  std::vector<Element> order(n);
  for (Element i = 0; i < n; ++i) order[i] = i;
  std::vector<Element> scratch(n);
  auto sort = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (hi - lo <= 1) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    self(self, lo, mid);
    self(self, mid, hi);
    std::size_t i = lo, j = mid, out = lo;
    while (i < mid && j < hi) scratch[out++] = less(order[j], order[i]) ? order[j++] : order[i++];
    while (i < mid) scratch[out++] = order[i++];
    while (j < hi) scratch[out++] = order[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              order.begin() + static_cast<std::ptrdiff_t>(lo));
  };
  sort(sort, 0, n);

  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) s.deduce(x, y, rank[x] > rank[y] ? x : y);
  }
  return s.finish("maxchain");
}

namespace {

// Elements of the subgroup generated by `gens`, by closure under adding
// generators starting from the identity.
std::vector<bool> closure(const OpTable& add, Element identity, const std::vector<Element>& gens) {
  std::vector<bool> in(add.size(), false);
  std::deque<Element> todo{identity};
  in[identity] = true;
  while (!todo.empty()) {
    const Element x = todo.front();
    todo.pop_front();
    for (Element g : gens) {
      const Element y = add(x, g);
      if (!in[y]) {
        in[y] = true;
        todo.push_back(y);
      }
    }
  }
  return in;
}

}  // namespace

std::vector<Element> greedy_generating_set(const OpTable& add) {
  if (!check_axioms(add, Axioms::abelian_group)) {
    throw ValidationError("generating sets need an abelian group table");
  }
  const Element identity = *find_identity(add);
  std::vector<Element> gens;
  auto in = closure(add, identity, gens);
  for (Element x = 0; x < add.size(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    in = closure(add, identity, gens);
  }
  return gens;
}

RecoveryResult recover_ring_multiplication(const OpTable& add, Oracle& mul_oracle) {
  if (add.size() != mul_oracle.size()) {
    throw ValidationError("addition table has n = " + std::to_string(add.size()) +
                          " but the oracle has n = " + std::to_string(mul_oracle.size()));
  }
  const auto gens = greedy_generating_set(add);
  const Element zero = *find_identity(add);
  const std::size_t n = add.size();
  const std::size_t g = gens.size();

  Session s(mul_oracle, "a multiplication distributing over the given addition");
  std::vector<Element> products(g * g);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) products[i * g + j] = s.ask(gens[i], gens[j], false);
  }

  // Every element as a sum of generators (indices into gens).
  std::vector<std::vector<std::size_t>> rep(n);
  std::vector<bool> seen(n, false);
  std::deque<Element> todo{zero};
  seen[zero] = true;
  while (!todo.empty()) {
    const Element x = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < g; ++i) {
      const Element y = add(x, gens[i]);
      if (seen[y]) continue;
      seen[y] = true;
      rep[y] = rep[x];
      rep[y].push_back(i);
      todo.push_back(y);
    }
  }

  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      Element acc = zero;
      for (auto i : rep[x]) {
        for (auto j : rep[y]) acc = add(acc, products[i * g + j]);
      }
      s.deduce(x, y, acc);
    }
  }
  auto result = s.finish("ringmul");
  // A distributive oracle yields a distributive table; anything else means
  // the answers cannot come from such an operation.
  if (!is_distributive(add, result.table)) {
    throw NotInClassError(
        "answers are not consistent with a multiplication distributing over the given addition: "
        "the bilinear expansion of the generator products is not distributive",
        std::nullopt);
  }
  return result;
}

std::pair<RecoveryResult, RecoveryResult> recover_ring_full(Oracle& add_oracle, Oracle& mul_oracle) {
  auto add = recover_abelian(add_oracle);
  auto mul = recover_ring_multiplication(add.table, mul_oracle);
  return {std::move(add), std::move(mul)};
}

double ring_budget(std::size_t n) {
  const double lg = std::log2(static_cast<double>(n));
  return static_cast<double>(n) + lg * lg;
}

}  // namespace bbr

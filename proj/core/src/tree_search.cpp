#include "bbr/tree_search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "bbr/algebra.hpp"
#include "bbr/errors.hpp"
#include "bbr/structure.hpp"

namespace bbr {

OperationSet::OperationSet(std::size_t n, std::vector<OpTable> ops, std::string tag)
    : n_(n), ops_(std::move(ops)), tag_(std::move(tag)) {
  for (const auto& t : ops_) {
    if (t.size() != n_) throw ValidationError("operation set members must all have n = " + std::to_string(n_));
  }
  std::vector<std::size_t> idx(ops_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return ops_[a] < ops_[b]; });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (ops_[idx[i - 1]] == ops_[idx[i]]) {
      throw ValidationError("operation set contains a duplicate table (ids " +
                            std::to_string(std::min(idx[i - 1], idx[i])) + " and " +
                            std::to_string(std::max(idx[i - 1], idx[i])) + ")");
    }
  }
}

std::optional<OperationId> OperationSet::find(const OpTable& t) const {
  auto it = std::find(ops_.begin(), ops_.end(), t);
  if (it == ops_.end()) return std::nullopt;
  return static_cast<OperationId>(it - ops_.begin());
}

QueryTree QueryTree::leaf(std::optional<OperationId> op) {
  QueryTree t;
  t.leaf_op = op;
  return t;
}

QueryTree QueryTree::node(Element x, Element y, std::vector<Branch> children) {
  QueryTree t;
  t.query = Query{x, y};
  t.children = std::move(children);
  return t;
}

std::size_t QueryTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t total = 0;
  for (const auto& b : children) total += b.subtree.leaf_count();
  return total;
}

std::size_t QueryTree::height() const {
  std::size_t h = 0;
  for (const auto& b : children) h = std::max(h, 1 + b.subtree.height());
  return h;
}

namespace {

constexpr std::size_t brute_force_enumeration_cap = 8;
constexpr std::size_t prime_fast_path_cap = 11;

bool use_prime_fast_path(const OpTable& canonical) {
  const auto n = canonical.size();
  return n <= prime_fast_path_cap && is_prime(n) && is_cyclic_group(canonical);
}

// Orbit of a cyclic group of prime order p: pick the identity label, give
// the smallest other label exponent 1 (this fixes the Aut = (Z/p)^× freedom),
// and spread the remaining labels over exponents 2..p-1.
std::size_t for_each_prime_cyclic(std::size_t p, const std::function<void(const OpTable&)>& visit) {
  std::size_t count = 0;
  std::vector<Element> label(p);  // label[k] = element carrying exponent k
  std::vector<std::size_t> exponent(p);
  std::vector<Element> entries(p * p);
  for (Element e = 0; e < p; ++e) {
    const Element g = e == 0 ? 1 : 0;
    std::vector<Element> rest;
    for (Element x = 0; x < p; ++x) {
      if (x != e && x != g) rest.push_back(x);
    }
    do {
      label[0] = e;
      label[1] = g;
      std::copy(rest.begin(), rest.end(), label.begin() + 2);
      for (std::size_t k = 0; k < p; ++k) exponent[label[k]] = k;
      for (Element x = 0; x < p; ++x) {
        for (Element y = 0; y < p; ++y) entries[x * p + y] = label[(exponent[x] + exponent[y]) % p];
      }
      visit(OpTable(p, entries));
      ++count;
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return count;
}

std::set<OpTable> brute_force_orbit(const OpTable& canonical) {
  const auto n = canonical.size();
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  std::set<OpTable> seen;
  do {
    seen.insert(canonical.relabeled(Permutation(images)));
  } while (std::next_permutation(images.begin(), images.end()));
  return seen;
}

}  // namespace

std::size_t for_each_x_g(const OpTable& canonical, const std::function<void(const OpTable&)>& visit) {
  if (use_prime_fast_path(canonical)) return for_each_prime_cyclic(canonical.size(), visit);
  if (canonical.size() > brute_force_enumeration_cap) {
    throw CapabilityError("enumerating X_G needs n <= " + std::to_string(brute_force_enumeration_cap) +
                          " (or a cyclic group of prime order <= " +
                          std::to_string(prime_fast_path_cap) + "), got n = " +
                          std::to_string(canonical.size()));
  }
  auto orbit = brute_force_orbit(canonical);
  for (const auto& t : orbit) visit(t);
  return orbit.size();
}

OperationSet enumerate_x_g(const OpTable& canonical, std::size_t max_ops) {
  std::vector<OpTable> ops;
  for_each_x_g(canonical, [&](const OpTable& t) {
    if (ops.size() == max_ops) {
      throw CapabilityError("X_G has more than " + std::to_string(max_ops) +
                            " operations; stream it with for_each_x_g instead");
    }
    ops.push_back(t);
  });
  std::sort(ops.begin(), ops.end());
  return OperationSet(canonical.size(), std::move(ops), "X_G");
}

OperationSet enumerate_x_r(const RingTables& r) {
  const auto n = r.size();
  if (n > brute_force_enumeration_cap) {
    throw CapabilityError("enumerating X_R needs n <= " + std::to_string(brute_force_enumeration_cap));
  }
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  std::set<OpTable> seen;
  do {
    Permutation sigma(images);
    if (r.add.relabeled(sigma) == r.add) seen.insert(r.mul.relabeled(sigma));
  } while (std::next_permutation(images.begin(), images.end()));
  return OperationSet(n, std::vector<OpTable>(seen.begin(), seen.end()), "X_R");
}

namespace {

void index_leaves(const QueryTree& t, std::unordered_map<const QueryTree*, std::size_t>& index,
                  std::string& structural_error, std::size_t n) {
  if (t.is_leaf()) {
    index.emplace(&t, index.size());
    return;
  }
  if (structural_error.empty() && (t.query->x >= n || t.query->y >= n)) {
    structural_error = "query " + std::to_string(t.query->x) + "*" + std::to_string(t.query->y) +
                       " is out of range";
  }
  std::set<Element> labels;
  for (const auto& b : t.children) {
    if (!labels.insert(b.answer).second && structural_error.empty()) {
      structural_error = "node " + std::to_string(t.query->x) + "*" + std::to_string(t.query->y) +
                         " has two branches labelled " + std::to_string(b.answer);
    }
    index_leaves(b.subtree, index, structural_error, n);
  }
}

}  // namespace

TreeVerification verify_query_tree(const QueryTree& tree, const OperationSet& ops) {
  TreeVerification v;
  v.leaf_index.assign(ops.size(), std::nullopt);
  v.depth.assign(ops.size(), 0);

  std::unordered_map<const QueryTree*, std::size_t> index;
  index_leaves(tree, index, v.failure, ops.n());
  if (!v.failure.empty()) return v;

  std::vector<std::optional<OperationId>> hit_by(index.size());
  for (OperationId id = 0; id < ops.size(); ++id) {
    const OpTable& op = ops[id];
    const QueryTree* node = &tree;
    std::size_t depth = 0;
    while (!node->is_leaf()) {
      const Element z = op(node->query->x, node->query->y);
      auto it = std::find_if(node->children.begin(), node->children.end(),
                             [z](const Branch& b) { return b.answer == z; });
      if (it == node->children.end()) {
        v.failure = "incomplete: operation " + std::to_string(id) + " answers " + std::to_string(z) +
                    " at " + std::to_string(node->query->x) + "*" + std::to_string(node->query->y) +
                    " but no branch carries that label";
        v.witness = id;
        return v;
      }
      node = &it->subtree;
      ++depth;
    }
    const std::size_t leaf = index.at(node);
    if (node->leaf_op && *node->leaf_op != id) {
      v.failure = "operation " + std::to_string(id) + " reaches leaf #" + std::to_string(leaf) +
                  " labelled with operation " + std::to_string(*node->leaf_op);
      v.witness = id;
      return v;
    }
    if (hit_by[leaf]) {
      v.failure = "not injective: operations " + std::to_string(*hit_by[leaf]) + " and " +
                  std::to_string(id) + " share leaf #" + std::to_string(leaf);
      v.witness = id;
      return v;
    }
    hit_by[leaf] = id;
    v.leaf_index[id] = leaf;
    v.depth[id] = depth;
  }
  for (std::size_t leaf = 0; leaf < hit_by.size(); ++leaf) {
    if (!hit_by[leaf]) {
      v.failure = "not surjective: leaf #" + std::to_string(leaf) + " is reached by no operation";
      return v;
    }
  }
  v.ok = true;
  return v;
}

TreeStats tree_stats(const QueryTree& tree, const OperationSet& ops) {
  auto v = verify_query_tree(tree, ops);
  if (!v.ok) throw ValidationError("query tree does not solve recovery: " + v.failure);
  TreeStats s{0, 0.0};
  if (ops.size() == 0) return s;
  std::size_t total = 0;
  for (auto d : v.depth) {
    s.worst_depth = std::max(s.worst_depth, d);
    total += d;
  }
  s.avg_depth = static_cast<double>(total) / static_cast<double>(ops.size());
  return s;
}

namespace {

using State = std::vector<OperationId>;

struct StateHash {
  std::size_t operator()(const State& s) const { return boost::hash_range(s.begin(), s.end()); }
};

// Iterative-deepening minimax over subsets of X. solvable(s, d) asks whether
// some tree of height <= d separates every operation of s; bounds learned
// for each state are memoized.
class MinimaxSearch {
 public:
  explicit MinimaxSearch(const OperationSet& ops) : ops_(ops), n_(ops.n()) {
    const std::size_t queries = n_ * n_;
    answers_.resize(ops.size() * queries);
    for (OperationId id = 0; id < ops.size(); ++id) {
      const auto entries = ops[id].entries();
      std::copy(entries.begin(), entries.end(), answers_.begin() + static_cast<std::ptrdiff_t>(id * queries));
    }
  }

  std::size_t value(const State& s) {
    if (s.size() <= 1) return 0;
    auto& b = bounds_[s];
    if (b.lo == 0) b.lo = information_floor(s);
    for (std::size_t d = b.lo;; ++d) {
      if (solvable(s, d)) return d;
    }
  }

  QueryTree build(const State& s) {
    if (s.size() == 1) return QueryTree::leaf(s.front());
    const std::size_t v = value(s);
    for (std::size_t q = 0; q < n_ * n_; ++q) {
      auto blocks = partition(s, q);
      if (blocks.size() < 2) continue;
      bool fits = true;
      for (const auto& [z, block] : blocks) {
        if (value(block) + 1 > v) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      std::vector<Branch> children;
      for (const auto& [z, block] : blocks) children.push_back(Branch{z, build(block)});
      return QueryTree::node(static_cast<Element>(q / n_), static_cast<Element>(q % n_), std::move(children));
    }
    throw std::logic_error("minimax value has no witnessing query");
  }

 private:
  struct Bounds {
    std::size_t lo = 0;  // no tree of height < lo exists
    std::size_t hi = std::numeric_limits<std::size_t>::max();  // a tree of height hi exists
  };

  Element answer(OperationId id, std::size_t q) const { return answers_[id * n_ * n_ + q]; }

  // Blocks keyed by answer, ascending; each block keeps the state's order.
  std::vector<std::pair<Element, State>> partition(const State& s, std::size_t q) const {
    std::vector<std::pair<Element, State>> blocks;
    for (auto id : s) {
      const Element z = answer(id, q);
      auto it = std::find_if(blocks.begin(), blocks.end(), [z](const auto& b) { return b.first == z; });
      if (it == blocks.end()) {
        blocks.push_back({z, {id}});
      } else {
        it->second.push_back(id);
      }
    }
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return blocks;
  }

  // ceil(log_b |s|) with b the largest branching any query achieves on s.
  std::size_t information_floor(const State& s) const {
    std::size_t branching = 1;
    for (std::size_t q = 0; q < n_ * n_; ++q) {
      std::vector<bool> seen(n_, false);
      std::size_t blocks = 0;
      for (auto id : s) {
        const Element z = answer(id, q);
        if (!seen[z]) {
          seen[z] = true;
          ++blocks;
        }
      }
      branching = std::max(branching, blocks);
    }
    if (branching < 2) throw std::logic_error("no query separates a state of distinct operations");
    std::size_t d = 0;
    for (std::size_t reach = 1; reach < s.size(); reach *= branching) ++d;
    return d;
  }

  bool solvable(const State& s, std::size_t d) {
    if (s.size() <= 1) return true;
    if (d == 0) return false;
    {
      auto& b = bounds_[s];
      if (b.lo == 0) b.lo = information_floor(s);
      if (d < b.lo) return false;
      if (d >= b.hi) return true;
    }
    std::set<std::vector<State>> tried;
    for (std::size_t q = 0; q < n_ * n_; ++q) {
      auto blocks = partition(s, q);
      if (blocks.size() < 2) continue;
      std::vector<State> shape;
      for (auto& [z, block] : blocks) shape.push_back(block);
      std::sort(shape.begin(), shape.end());
      if (!tried.insert(shape).second) continue;
      std::sort(shape.begin(), shape.end(), [](const State& a, const State& b) { return a.size() > b.size(); });
      bool ok = true;
      for (const auto& block : shape) {
        if (!solvable(block, d - 1)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        auto& b = bounds_[s];
        b.hi = std::min(b.hi, d);
        return true;
      }
    }
    auto& b = bounds_[s];
    b.lo = std::max(b.lo, d + 1);
    return false;
  }

  const OperationSet& ops_;
  std::size_t n_;
  std::vector<Element> answers_;
  std::unordered_map<State, Bounds, StateHash> bounds_;
};

void render(const QueryTree& t, std::ostringstream& out, std::size_t indent) {
  if (t.is_leaf()) {
    out << "leaf";
    if (t.leaf_op) out << " op " << *t.leaf_op;
    out << '\n';
    return;
  }
  out << t.query->x << '*' << t.query->y << '\n';
  for (const auto& b : t.children) {
    out << std::string(indent + 2, ' ') << "= " << b.answer << ": ";
    render(b.subtree, out, indent + 2);
  }
}

}  // namespace

SearchResult minimal_worst_case(const OperationSet& ops, std::size_t budget) {
  if (ops.size() == 0) throw ValidationError("minimal_worst_case needs a non-empty operation set");
  if (ops.size() > budget) {
    throw CapabilityError("|X| = " + std::to_string(ops.size()) + " exceeds the search budget of " +
                          std::to_string(budget) + " operations");
  }
  State all(ops.size());
  std::iota(all.begin(), all.end(), OperationId{0});
  MinimaxSearch search(ops);
  const std::size_t depth = search.value(all);
  return SearchResult{depth, search.build(all)};
}

std::string render_tree(const QueryTree& tree) {
  std::ostringstream out;
  render(tree, out, 0);
  return out.str();
}

}  // namespace bbr

#include "pixel/substructure.hpp"

#include <map>
#include <string>

#include "pixel/function.hpp"

namespace pixel {

namespace {

// Tuples of [n]^d grouped by their largest coordinate: once position p of
// the witness is chosen, exactly the tuples with max index p are determined.
struct TupleLayers {
  int d = 0;
  // layers[p - 1] holds (flat index in R, coordinates) for tuples with max p.
  std::vector<std::vector<std::pair<std::size_t, std::vector<int>>>> layers;

  TupleLayers(int dd, int n) : d(dd), layers(static_cast<std::size_t>(n)) {
    TupleCounter it(d, n);
    std::size_t flat = 0;
    do {
      auto idx = it.current();
      const int top = *std::max_element(idx.begin(), idx.end());
      layers[static_cast<std::size_t>(top - 1)].emplace_back(flat, std::vector<int>(idx.begin(), idx.end()));
      ++flat;
    } while (it.next());
  }
};

std::optional<AppearanceWitness> search(const DiscreteModel& r, const DiscreteModel& s, bool weak) {
  if (r.arity() != s.arity()) throw Error("appearance: arity mismatch");
  if (r.colors() != s.colors()) throw Error("appearance: color count mismatch");
  const int d = r.arity(), n = r.side(), m = s.side();
  if (!weak && n > m) return std::nullopt;
  const TupleLayers layers(d, n);
  std::vector<int> j(static_cast<std::size_t>(n), 0);
  std::vector<int> probe(static_cast<std::size_t>(d));

  auto fits = [&](int p) {
    for (const auto& [flat, idx] : layers.layers[static_cast<std::size_t>(p)]) {
      for (int h = 0; h < d; ++h) probe[static_cast<std::size_t>(h)] = j[static_cast<std::size_t>(idx[static_cast<std::size_t>(h)] - 1)];
      if (s.at(probe) != r[flat]) return false;
    }
    return true;
  };

  // Iterative depth-first search in lexicographic order.
  int p = 0;
  j[0] = 0;
  while (p >= 0) {
    auto& cur = j[static_cast<std::size_t>(p)];
    ++cur;
    // Room must remain for the later positions in strict mode.
    const int limit = weak ? m : m - (n - 1 - p);
    if (cur > limit) {
      --p;
      continue;
    }
    if (!fits(p)) continue;
    if (p == n - 1) return AppearanceWitness{j};
    ++p;
    j[static_cast<std::size_t>(p)] = weak ? j[static_cast<std::size_t>(p - 1)] - 1 : j[static_cast<std::size_t>(p - 1)];
  }
  return std::nullopt;
}

int bit_of(Color c, int bit) { return ((c - 1) >> bit) & 1; }

}  // namespace

std::optional<AppearanceWitness> appears_in_discrete(const DiscreteModel& r, const DiscreteModel& s) {
  return search(r, s, false);
}

std::optional<AppearanceWitness> appears_weak(const DiscreteModel& r, const DiscreteModel& s) {
  return search(r, s, true);
}

std::set<DiscreteModel> enumerate_substructures(const HomogeneousSpec& g, int n, const EnumerationCaps& caps) {
  return mu_exact(PiecewiseFunction::homogeneous(g), n, caps).support();
}

bool is_forbidden_structure(const DiscreteModel& r, int bit, int d_prime) {
  const int d = r.arity(), n = r.side();
  std::map<std::vector<int>, int> seen;
  TupleCounter it(d, n);
  std::size_t flat = 0;
  do {
    auto idx = it.current();
    std::vector<int> prefix(idx.begin(), idx.begin() + d_prime);
    const int b = bit_of(r[flat], bit);
    auto [pos, fresh] = seen.emplace(std::move(prefix), b);
    if (!fresh && pos->second != b) return true;
    ++flat;
  } while (it.next());
  return false;
}

ArityCheckResult check_arity_invariance(const HomogeneousSpec& g, int bit, int d_prime, const EnumerationCaps& caps) {
  const int d = g.arity(), k = g.colors();
  if (k < 1 || (k & (k - 1)) != 0) throw Error("arity invariance needs k to be a power of two, got " + std::to_string(k));
  int bits = 0;
  while ((1 << bits) < k) ++bits;
  if (bit < 0 || bit >= bits) throw Error("bit " + std::to_string(bit) + " outside [0," + std::to_string(bits) + ")");
  if (d_prime < 1 || d_prime > d) throw Error("effective arity must lie in [1,d]");
  ArityCheckResult result;
  if (d_prime == d) return result;

  // The bit at (cells, pattern) must be a function of the restriction of the
  // pair to the first d' coordinates.
  struct Seen {
    std::optional<SpecEntry> with[2];
  };
  std::map<std::pair<std::vector<int>, std::vector<int>>, Seen> groups;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> order;
  for (SpecEntry& e : g.entries()) {
    std::vector<int> cells(e.cells.begin(), e.cells.begin() + d_prime);
    std::vector<int> ranks(e.pattern.ranks.begin(), e.pattern.ranks.begin() + d_prime);
    auto key = std::make_pair(std::move(cells), order_pattern(ranks).ranks);
    auto [pos, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    auto& slot = pos->second.with[bit_of(e.color, bit)];
    if (!slot) slot = std::move(e);
  }
  for (const auto& key : order) {
    const Seen& s = groups.at(key);
    if (s.with[0] && s.with[1]) result.violations.push_back({*s.with[0], *s.with[1]});
  }
  if (result.violations.empty()) return result;
  result.pass = false;

  // A violation involves at most d' + 2(d - d') distinct points.
  for (int n = 2; n <= 2 * d - d_prime; ++n) {
    for (const DiscreteModel& r : enumerate_substructures(g, n, caps))
      if (is_forbidden_structure(r, bit, d_prime)) result.witnesses.push_back(r);
    if (!result.witnesses.empty()) {
      result.witness_size = n;
      break;
    }
  }
  return result;
}

}  // namespace pixel

#include "pixel/model.hpp"

#include <array>
#include <mutex>
#include <string>

namespace pixel {

TupleCounter::TupleCounter(int d, int m) : m_(m), idx_(static_cast<std::size_t>(d), 1) {}

bool TupleCounter::next() {
  for (std::size_t j = idx_.size(); j-- > 0;) {
    if (idx_[j] < m_) {
      ++idx_[j];
      return true;
    }
    idx_[j] = 1;
  }
  return false;
}

std::size_t checked_volume(int d, long m) {
  std::size_t volume = 1;
  for (int j = 0; j < d; ++j) {
    if (volume > Limits::max_entries / static_cast<std::size_t>(m))
      throw CapExceeded("dense table " + std::to_string(m) + "^" + std::to_string(d) +
                        " exceeds the storage cap");
    volume *= static_cast<std::size_t>(m);
  }
  return volume;
}

DiscreteModel::DiscreteModel(int d, int k, int m, std::vector<Color> values)
    : d_(d), k_(k), m_(m), values_(std::move(values)) {
  if (d < 1 || d > Limits::max_arity)
    throw Error("arity " + std::to_string(d) + " outside [1," + std::to_string(Limits::max_arity) + "]");
  if (k < 1 || k > Limits::max_colors)
    throw Error("color count " + std::to_string(k) + " outside [1," +
                std::to_string(Limits::max_colors) + "]");
  if (m < 1 || m > Limits::max_side)
    throw Error("side " + std::to_string(m) + " outside [1," + std::to_string(Limits::max_side) + "]");
  const std::size_t expected = checked_volume(d, m);
  if (values_.size() != expected)
    throw Error("model needs " + std::to_string(expected) + " values, got " +
                std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] < 1 || values_[i] > k)
      throw Error("value " + std::to_string(values_[i]) + " at position " + std::to_string(i) +
                  " outside [1," + std::to_string(k) + "]");
}

DiscreteModel DiscreteModel::constant(int d, int k, int m, Color c) {
  return DiscreteModel(d, k, m, std::vector<Color>(checked_volume(d, m), c));
}

std::size_t DiscreteModel::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != d_) throw Error("index arity mismatch");
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 1 || i > m_) throw Error("index " + std::to_string(i) + " outside [1," + std::to_string(m_) + "]");
    flat = flat * static_cast<std::size_t>(m_) + static_cast<std::size_t>(i - 1);
  }
  return flat;
}

DiscreteModel DiscreteModel::with(std::span<const int> idx, Color c) const {
  std::vector<Color> v = values_;
  v[flat_index(idx)] = c;
  return DiscreteModel(d_, k_, m_, std::move(v));
}

bool OrderPattern::strict() const {
  return pattern_width(*this) == arity();
}

int pattern_width(const OrderPattern& p) {
  int width = 0;
  for (int r : p.ranks) width = std::max(width, r);
  return width;
}

CellVector CellVector::of(std::span<const Rational> x, int l) {
  CellVector c;
  c.l = l;
  c.cells.reserve(x.size());
  for (const Rational& v : x) c.cells.push_back(cell_of(v, l));
  return c;
}

bool pattern_consistent(std::span<const int> cells, const OrderPattern& p) {
  if (cells.size() != p.ranks.size()) throw Error("arity mismatch between cells and pattern");
  for (std::size_t j = 0; j < cells.size(); ++j)
    for (std::size_t h = 0; h < cells.size(); ++h)
      if (cells[j] < cells[h] && !(p.ranks[j] < p.ranks[h])) return false;
  return true;
}

bool pattern_consistent(const CellVector& cells, const OrderPattern& p) {
  return pattern_consistent(std::span<const int>(cells.cells), p);
}

namespace {

// Ranks are packed base (max_arity + 1) into a small integer key.
constexpr int kRankBase = Limits::max_arity + 1;

int pack(std::span<const int> ranks) {
  int key = 0;
  for (int r : ranks) key = key * kRankBase + r;
  return key;
}

struct PatternCatalog {
  std::vector<OrderPattern> patterns;
  std::vector<int> index_by_key;
};

bool is_dense(const std::vector<int>& ranks) {
  int width = 0;
  for (int r : ranks) width = std::max(width, r);
  for (int v = 1; v <= width; ++v)
    if (std::find(ranks.begin(), ranks.end(), v) == ranks.end()) return false;
  return true;
}

PatternCatalog build_catalog(int d) {
  PatternCatalog cat;
  int key_space = 1;
  for (int j = 0; j < d; ++j) key_space *= kRankBase;
  cat.index_by_key.assign(static_cast<std::size_t>(key_space), -1);
  // Rank vectors in [d]^d enumerated lexicographically; keep dense ones.
  TupleCounter it(d, d);
  do {
    std::vector<int> ranks(it.current().begin(), it.current().end());
    if (!is_dense(ranks)) continue;
    cat.index_by_key[static_cast<std::size_t>(pack(ranks))] = static_cast<int>(cat.patterns.size());
    cat.patterns.push_back(OrderPattern{std::move(ranks)});
  } while (it.next());
  return cat;
}

const PatternCatalog& catalog(int d) {
  if (d < 1 || d > Limits::max_arity) throw Error("arity " + std::to_string(d) + " unsupported");
  static std::array<PatternCatalog, Limits::max_arity + 1> catalogs;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int a = 1; a <= Limits::max_arity; ++a) catalogs[static_cast<std::size_t>(a)] = build_catalog(a);
  });
  return catalogs[static_cast<std::size_t>(d)];
}

}  // namespace

const std::vector<OrderPattern>& all_patterns(int d) { return catalog(d).patterns; }

int pattern_index(std::span<const int> ranks) {
  const PatternCatalog& cat = catalog(static_cast<int>(ranks.size()));
  for (int r : ranks)
    if (r < 1 || r > static_cast<int>(ranks.size())) throw Error("rank out of range");
  int idx = cat.index_by_key[static_cast<std::size_t>(pack(ranks))];
  if (idx < 0) throw Error("rank vector is not a dense ranking");
  return idx;
}

}  // namespace pixel

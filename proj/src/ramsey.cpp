#include "pixel/ramsey.hpp"

#include <algorithm>
#include <string>

#include "pixel/error.hpp"

namespace pixel {

std::uint64_t subset_mask(std::span<const int> subset) {
  std::uint64_t mask = 0;
  for (int v : subset) {
    if (v < 0 || v >= SubsetColoring::kMaxVertex)
      throw Error("vertex label " + std::to_string(v) + " outside [0,64)");
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (mask & bit) throw Error("repeated vertex " + std::to_string(v) + " in subset");
    mask |= bit;
  }
  return mask;
}

SubsetColoring::SubsetColoring(int d) : d_(d) {
  if (d < 1) throw Error("subset coloring arity must be positive");
}

SubsetColoring SubsetColoring::from_function(std::span<const int> vertices, int d, int min_size,
                                             const std::function<int(std::span<const int>)>& color) {
  SubsetColoring f(d);
  std::vector<int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty() && static_cast<int>(pick.size()) >= min_size) f.set(pick, color(pick));
    if (static_cast<int>(pick.size()) == d) return;
    for (std::size_t i = from; i < vertices.size(); ++i) {
      pick.push_back(vertices[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return f;
}

void SubsetColoring::set(std::span<const int> subset, int color) {
  if (subset.empty() || static_cast<int>(subset.size()) > d_) throw Error("subset size outside [1,d]");
  colors_[subset_mask(subset)] = color;
}

std::optional<int> SubsetColoring::color(std::uint64_t mask) const {
  auto it = colors_.find(mask);
  if (it == colors_.end()) return std::nullopt;
  return it->second;
}

int SubsetColoring::at(std::uint64_t mask) const {
  auto c = color(mask);
  if (!c) {
    std::string s = "{";
    for (int v = 0; v < kMaxVertex; ++v)
      if (mask >> v & 1) s += (s.size() > 1 ? "," : "") + std::to_string(v);
    throw Error("coloring is partial: no color for subset " + s + "}");
  }
  return *c;
}

// ---------------------------------------------------------------------------
// One backtracking engine for all three finders. Vertices are placed sort by
// sort in increasing order; every new vertex fixes the colors of the subsets
// it completes, and those must agree with the color already recorded for the
// subset's intersection profile.

namespace {

class ProfileSearch {
 public:
  ProfileSearch(std::vector<std::vector<int>> sorts, const SubsetColoring& f, int min_size, int s)
      : sorts_(std::move(sorts)), f_(f), d_(f.arity()), min_size_(min_size), s_(s) {
    if (s < 0) throw Error("target size must be nonnegative");
    std::uint64_t seen = 0;
    for (auto& sort : sorts_) {
      std::sort(sort.begin(), sort.end());
      const std::uint64_t m = subset_mask(sort);
      if (seen & m) throw Error("sorts overlap");
      seen |= m;
      if (static_cast<int>(sort.size()) < s)
        throw Error("a sort has " + std::to_string(sort.size()) + " vertices, fewer than s = " + std::to_string(s));
    }
    check_total();
  }

  bool run() {
    chosen_.clear();
    return place(0);
  }

  std::vector<std::vector<int>> parts() const {
    std::vector<std::vector<int>> out(sorts_.size());
    for (std::size_t p = 0; p < chosen_.size(); ++p) out[p / static_cast<std::size_t>(s_)].push_back(chosen_[p]);
    return out;
  }
  const std::map<std::vector<int>, int>& profiles() const { return profile_; }

 private:
  void check_total() const {
    std::vector<int> all;
    for (const auto& sort : sorts_) all.insert(all.end(), sort.begin(), sort.end());
    std::vector<int> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!pick.empty() && static_cast<int>(pick.size()) >= min_size_) f_.at(subset_mask(pick));
      if (static_cast<int>(pick.size()) == d_) return;
      for (std::size_t i = from; i < all.size(); ++i) {
        pick.push_back(all[i]);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }

  // Checks every subset made of v plus others from chosen_[0, count). Newly
  // recorded profiles are pushed onto `added`.
  bool extend(std::size_t count, int v_sort, std::uint64_t v_mask, std::vector<std::vector<int>>& added) {
    std::vector<int> prof(sorts_.size(), 0);
    prof[static_cast<std::size_t>(v_sort)] = 1;
    int size = 1;
    std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t from, std::uint64_t mask) -> bool {
      if (size >= min_size_) {
        const int c = f_.at(mask);
        auto [it, fresh] = profile_.try_emplace(prof, c);
        if (fresh) {
          added.push_back(prof);
        } else if (it->second != c) {
          return false;
        }
      }
      if (size == d_) return true;
      for (std::size_t i = from; i < count; ++i) {
        const std::size_t sort = i / static_cast<std::size_t>(s_);
        ++prof[sort];
        ++size;
        const bool ok = rec(i + 1, mask | (std::uint64_t{1} << chosen_[i]));
        --prof[sort];
        --size;
        if (!ok) return false;
      }
      return true;
    };
    return rec(0, v_mask);
  }

  bool place(std::size_t pos) {
    const std::size_t total = sorts_.size() * static_cast<std::size_t>(s_);
    if (pos == total) return true;
    const std::size_t sort = pos / static_cast<std::size_t>(s_);
    const std::size_t rank = pos % static_cast<std::size_t>(s_);
    const auto& verts = sorts_[sort];
    std::size_t start = 0;
    if (rank > 0) start = static_cast<std::size_t>(std::upper_bound(verts.begin(), verts.end(), chosen_.back()) - verts.begin());
    const std::size_t need = static_cast<std::size_t>(s_) - rank;
    for (std::size_t i = start; i + need <= verts.size(); ++i) {
      const int v = verts[i];
      std::vector<std::vector<int>> added;
      const bool ok = extend(pos, static_cast<int>(sort), std::uint64_t{1} << v, added);
      if (ok) {
        chosen_.push_back(v);
        if (place(pos + 1)) return true;
        chosen_.pop_back();
      }
      for (const auto& p : added) profile_.erase(p);
    }
    return false;
  }

  std::vector<std::vector<int>> sorts_;
  const SubsetColoring& f_;
  int d_;
  int min_size_;
  int s_;
  std::vector<int> chosen_;
  std::map<std::vector<int>, int> profile_;
};

}  // namespace

std::optional<MonochromaticResult> find_monochromatic(std::span<const int> vertices, const SubsetColoring& f, int s) {
  ProfileSearch search({std::vector<int>(vertices.begin(), vertices.end())}, f, f.arity(), s);
  if (!search.run()) return std::nullopt;
  MonochromaticResult out;
  out.subset = search.parts()[0];
  // With s < d there are no d-subsets and the color is left at 0.
  auto it = search.profiles().find({f.arity()});
  if (it != search.profiles().end()) out.color = it->second;
  return out;
}

std::optional<SizeUniformResult> find_size_uniform(std::span<const int> vertices, const SubsetColoring& f, int s) {
  ProfileSearch search({std::vector<int>(vertices.begin(), vertices.end())}, f, 1, s);
  if (!search.run()) return std::nullopt;
  SizeUniformResult out;
  out.subset = search.parts()[0];
  for (int c = 1; c <= std::min(f.arity(), s); ++c) out.colors.push_back(search.profiles().at({c}));
  return out;
}

std::optional<MultisortResult> find_multisort(const SortedColoring& c, int s) {
  ProfileSearch search(c.sorts, c.coloring, 1, s);
  if (!search.run()) return std::nullopt;
  return MultisortResult{search.parts(), search.profiles()};
}

// ---------------------------------------------------------------------------
// Bounds.

namespace {

void check_bits(const BigInt& v, const BoundBudget& budget) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > budget.max_bits)
    throw BoundOverflow("bound exceeds " + std::to_string(budget.max_bits) + " bits");
}

unsigned long small(const BigInt& v, const char* what) {
  if (!v.fits_ulong_p()) throw BoundOverflow(std::string(what) + " too large to evaluate");
  return v.get_ui();
}

// base^exponent with the result's bit size checked before computing it.
BigInt checked_pow(const BigInt& base, const BigInt& exponent, const BoundBudget& budget) {
  if (base <= 1 || exponent == 0) return exponent == 0 ? BigInt(1) : base;
  const BigInt approx_bits = exponent * BigInt(static_cast<unsigned long>(mpz_sizeinbase(base.get_mpz_t(), 2) - 1));
  if (approx_bits > BigInt(static_cast<unsigned long>(budget.max_bits)))
    throw BoundOverflow("power exceeds " + std::to_string(budget.max_bits) + " bits");
  BigInt out = pow(base, small(exponent, "exponent"));
  check_bits(out, budget);
  return out;
}

void check_bound_args(int d, const BigInt& a, const BigInt& s) {
  if (d < 1) throw Error("bound needs d >= 1");
  if (a < 1) throw Error("bound needs a >= 1");
  if (s < d) throw Error("bound needs s >= d");
}

}  // namespace

BigInt bound_R1(int d, const BigInt& a, const BigInt& s, const BoundBudget& budget) {
  check_bound_args(d, a, s);
  if (d == 1) {
    BigInt v = a * (s - 1) + 1;
    check_bits(v, budget);
    return v;
  }
  // Sequence v_0, v_1, ... of length M, each later element splitting the rest
  // by the colors of the d-sets it closes with d-1 earlier ones.
  const BigInt M = bound_R1(d - 1, a, s - 1, budget) + 1;
  if (M > BigInt(static_cast<unsigned long>(budget.max_steps)))
    throw BoundOverflow("R1 sequence length exceeds " + std::to_string(budget.max_steps) + " steps");
  const unsigned long steps = M.get_ui();
  BigInt n = 1;
  for (unsigned long j = steps - 1; j-- > 0;) {
    const BigInt classes = checked_pow(a, binomial(j, static_cast<unsigned long>(d - 2)), budget);
    n = classes * (n - 1) + 2;
    check_bits(n, budget);
  }
  return n;
}

BigInt bound_R2(int d, const BigInt& a, const BigInt& s, const BoundBudget& budget) {
  check_bound_args(d, a, s);
  BigInt v = s;
  for (int j = d; j >= 1; --j) v = bound_R1(j, a, v, budget);
  return v;
}

BigInt bound_R(int l, int d, const BigInt& a, const BigInt& s, const BoundBudget& budget) {
  if (l < 1) throw Error("bound needs l >= 1");
  check_bound_args(d, a, s);
  if (l == 1) return bound_R2(d, a, s, budget);
  const BigInt inner_colors = checked_pow(a, pow(BigInt(d + 1), static_cast<unsigned long>(l)), budget);
  const BigInt kp = bound_R2(d, inner_colors, s, budget);
  const BigInt exponent = checked_pow(kp, BigInt(d), budget);
  return bound_R(l - 1, d, checked_pow(a, exponent, budget), s, budget);
}

BigInt inlay_alphabet_size(int d, int k) {
  if (d < 1 || k < 1) throw Error("alphabet size needs d, k >= 1");
  // Surjections [d] -> [c] by inclusion-exclusion.
  BigInt total = 0;
  for (int c = 1; c <= d; ++c) {
    BigInt surj = 0;
    for (int i = 0; i <= c; ++i) {
      BigInt term = binomial(static_cast<unsigned long>(c), static_cast<unsigned long>(i)) *
                    pow(BigInt(c - i), static_cast<unsigned long>(d));
      surj += (i % 2 == 0) ? term : BigInt(-term);
    }
    total += pow(BigInt(k), surj.get_ui());
  }
  return total;
}

InlayBound bound_r_inlay(int l, int s, int d, int k, const BoundBudget& budget) {
  if (s < d) throw Error("inlay bound needs s >= d");
  InlayBound out;
  out.alphabet_size = inlay_alphabet_size(d, k);
  out.value = bound_R(l, d, out.alphabet_size, BigInt(s), budget);
  return out;
}

Rational bound_delta(int l, int s, int d, int k, const BoundBudget& budget) {
  const BigInt t = bound_r_inlay(l, s, d, k, budget).value;
  BigInt c;
  mpz_bin_ui(c.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(s));
  const BigInt denom = checked_pow(c, BigInt(l), budget);
  return make_rational(BigInt(1), denom);
}

}  // namespace pixel

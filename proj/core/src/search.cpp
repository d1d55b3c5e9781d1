#include "uniformity_lab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "uniformity_lab/parallel.hpp"

namespace ulab {

std::string to_string(YMode mode) { return mode == YMode::Bounded ? "bounded" : "unbounded"; }

YMode parse_ymode(const std::string& text) {
  if (text == "bounded") return YMode::Bounded;
  if (text == "unbounded") return YMode::Unbounded;
  throw std::invalid_argument("unknown y mode '" + text + "' (expected bounded or unbounded)");
}

namespace {

std::vector<char> membership(const std::vector<std::int64_t>& A, std::int64_t N) {
  std::vector<char> in(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t a : A) {
    if (a < 1 || a > N) throw std::invalid_argument("set element " + std::to_string(a) + " outside [N]");
    in[static_cast<std::size_t>(a)] = 1;
  }
  return in;
}

// Largest admissible y; y_cap < 0 means no cap beyond x + q y^2 <= N.
struct Pattern {
  std::int64_t N;
  std::int64_t q;
  std::int64_t y_cap;
};

Pattern pattern_of(const CountingParams& p, YMode mode) {
  return Pattern{p.N(), p.q(), mode == YMode::Bounded ? p.M() : -1};
}

using Mask = std::uint64_t;

bool has(Mask m, std::int64_t i) { return ((m >> i) & 1U) != 0; }

// Whether adding n (larger than every element of mask) completes a pattern.
// Since q y^2 >= y, n can only play the role of x + q y^2.
bool completes(const Pattern& pat, Mask mask, std::int64_t n) {
  for (std::int64_t y = 1;; ++y) {
    if (pat.y_cap >= 0 && y > pat.y_cap) return false;
    const std::int64_t x = n - pat.q * y * y;
    if (x < 1) return false;
    if (has(mask, x) && (x + y == n || has(mask, x + y))) return true;
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const Pattern& pat, const std::vector<std::int64_t>& suffix_bound,
                 std::atomic<std::int64_t>* shared_best)
      : pat_(pat), bound_(suffix_bound), shared_(shared_best) {}

  // Best set whose smallest element is `first`.
  void run_from(std::int64_t first) {
    best_size_ = -1;
    dfs(first + 1, Mask{1} << first, 1);
  }

  std::int64_t best_size() const { return best_size_; }
  Mask best_mask() const { return best_mask_; }

 private:
  void dfs(std::int64_t n, Mask mask, std::int64_t size) {
    if (n > pat_.N) {
      if (size > best_size_) {
        best_size_ = size;
        best_mask_ = mask;
        if (shared_ != nullptr) {
          std::int64_t cur = shared_->load();
          while (size > cur && !shared_->compare_exchange_weak(cur, size)) {
          }
        }
      }
      return;
    }
    const std::int64_t optimistic = size + bound_[static_cast<std::size_t>(pat_.N - n + 1)];
    if (optimistic <= best_size_) return;
    if (shared_ != nullptr && optimistic < shared_->load()) return;
    if (!completes(pat_, mask, n)) dfs(n + 1, mask | (Mask{1} << n), size + 1);
    dfs(n + 1, mask, size);
  }

  Pattern pat_;
  const std::vector<std::int64_t>& bound_;
  std::atomic<std::int64_t>* shared_;
  std::int64_t best_size_ = -1;
  Mask best_mask_ = 0;
};

// bound[L] >= max free subset of any L consecutive integers. Patterns are
// translation invariant once y is capped independently of position, so the
// exact answer on [L] serves.
ExtremalResult solve(const Pattern& pat, const std::vector<std::int64_t>& bound, bool parallel) {
  std::atomic<std::int64_t> shared{0};
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(pat.N), -1);
  std::vector<Mask> masks(static_cast<std::size_t>(pat.N), 0);
  auto branch = [&](std::size_t i) {
    BranchAndBound bb(pat, bound, &shared);
    bb.run_from(static_cast<std::int64_t>(i) + 1);
    sizes[i] = bb.best_size();
    masks[i] = bb.best_mask();
  };
  if (parallel) {
    parallel_for(static_cast<std::size_t>(pat.N), branch);
  } else {
    for (std::size_t i = 0; i < sizes.size(); ++i) branch(i);
  }
  // Smaller least element means lexicographically smaller set, so the first
  // branch reaching the maximum wins.
  ExtremalResult r;
  std::size_t best = 0;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] > sizes[best]) best = i;
  }
  r.size = sizes[best];
  for (std::int64_t x = 1; x <= pat.N; ++x) {
    if (has(masks[best], x)) r.set.push_back(x);
  }
  return r;
}

}  // namespace

std::optional<ConfigWitness> find_config(const std::vector<std::int64_t>& A, const CountingParams& p,
                                         YMode mode) {
  const std::vector<char> in = membership(A, p.N());
  const Pattern pat = pattern_of(p, mode);
  auto member = [&](std::int64_t v) { return v >= 1 && v <= pat.N && in[static_cast<std::size_t>(v)] != 0; };
  for (std::int64_t x = 1; x <= pat.N; ++x) {
    if (!member(x)) continue;
    for (std::int64_t y = 1;; ++y) {
      if (pat.y_cap >= 0 && y > pat.y_cap) break;
      const std::int64_t top = x + pat.q * y * y;
      if (top > pat.N) break;
      if (member(x + y) && member(top)) return ConfigWitness{x, y};
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> greedy_free_set(const CountingParams& p, YMode mode) {
  const Pattern pat = pattern_of(p, mode);
  std::vector<char> in(static_cast<std::size_t>(pat.N + 1), 0);
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= pat.N; ++n) {
    bool bad = false;
    for (std::int64_t y = 1; !bad; ++y) {
      if (pat.y_cap >= 0 && y > pat.y_cap) break;
      const std::int64_t x = n - pat.q * y * y;
      if (x < 1) break;
      bad = in[static_cast<std::size_t>(x)] != 0 && (x + y == n || in[static_cast<std::size_t>(x + y)] != 0);
    }
    if (!bad) {
      in[static_cast<std::size_t>(n)] = 1;
      out.push_back(n);
    }
  }
  return out;
}

ExtremalResult max_free_set_exact(const CountingParams& p, YMode mode) {
  if (p.N() > kMaxExactN) {
    throw std::invalid_argument("max_free_set_exact: N = " + std::to_string(p.N()) + " exceeds 40");
  }
  const Pattern full = pattern_of(p, mode);
  std::vector<std::int64_t> bound(static_cast<std::size_t>(full.N + 1), 0);
  for (std::int64_t L = 1; L < full.N; ++L) {
    bound[static_cast<std::size_t>(L)] = L;  // trivial bound while L itself is solved
    Pattern sub = full;
    sub.N = L;
    bound[static_cast<std::size_t>(L)] = solve(sub, bound, false).size;
  }
  bound[static_cast<std::size_t>(full.N)] = full.N;
  return solve(full, bound, true);
}

std::vector<DensityRow> density_table(std::int64_t q, const std::vector<std::int64_t>& Ns, YMode mode) {
  std::vector<DensityRow> rows;
  rows.reserve(Ns.size());
  for (std::int64_t N : Ns) {
    const CountingParams p(q, N);
    DensityRow row;
    row.N = N;
    row.q = q;
    row.mode = mode;
    if (N <= kMaxExactN) {
      row.size = max_free_set_exact(p, mode).size;
      row.method = "exact";
    } else {
      row.size = static_cast<std::int64_t>(greedy_free_set(p, mode).size());
      row.method = "greedy";
    }
    row.density = static_cast<double>(row.size) / static_cast<double>(N);
    rows.push_back(row);
  }
  return rows;
}

std::string density_csv(const std::vector<DensityRow>& rows) {
  std::ostringstream os;
  os << "N,q,size,density,method,mode\n";
  for (const DensityRow& r : rows) {
    os << r.N << ',' << r.q << ',' << r.size << ',' << std::setprecision(17) << r.density << ','
       << r.method << ',' << to_string(r.mode) << '\n';
  }
  return os.str();
}

}  // namespace ulab

#include <functional>

#include "tame/graded.hpp"

namespace tame::graded {

int filtration_bar(int t) {
  if (t < 1) fail(ErrorCode::InvalidArgument, "filtration function is defined for t >= 1");
  return t == 1 ? 1 : 3 * (t - 1);
}

AdmissibilityResult check_admissible(const std::vector<int>& f, int tmax) {
  if (tmax < 1 || static_cast<int>(f.size()) < tmax)
    fail(ErrorCode::InvalidArgument, "candidate table must cover 1..tmax");
  AdmissibilityResult res;
  const int cap = tmax + 1;
  std::vector<int> parts;
  // Tuples are multisets: by number of parts, then lexicographically
  // (nondecreasing parts), then by t ascending.
  std::function<bool(int, int, int, int)> rec = [&](int n, int min_part, int sum, int fsum) {
    if (static_cast<int>(parts.size()) == n) {
      for (int t = std::max(1, sum - 1); t <= tmax; ++t) {
        ++res.checked;
        if (fsum > f[t - 1]) {
          res.ok = false;
          res.parts = parts;
          res.t = t;
          return false;
        }
      }
      return true;
    }
    const int remaining = n - static_cast<int>(parts.size());
    for (int a = min_part; sum + a * remaining <= cap; ++a) {
      parts.push_back(a);
      bool go = rec(n, a, sum + a, fsum + f[a - 1]);
      parts.pop_back();
      if (!go) return false;
    }
    return true;
  };
  for (int n = 2; n <= cap; ++n)
    if (!rec(n, n == 2 ? 2 : 1, 0, 0)) break;
  return res;
}

OptimalityResult verify_optimality(int tmax, int slack) {
  if (tmax < 1 || slack < 0) fail(ErrorCode::InvalidArgument, "bad optimality search bounds");
  OptimalityResult res;
  const int n = tmax + 3;
  std::vector<long> g(n, 0);
  // any2[s]: best sum of g over >= 2 parts (each >= 1) summing to s
  // any1[s]: max(g(s), any2[s]); three[s]: >= 3 parts; pair[s]: two parts >= 2
  // need[t]: lower bound on g(t) from all tuples with sum <= t+1
  const long kNone = -1;
  std::vector<long> any1(n, kNone), any2(n, kNone), three(n, kNone), pair(n, kNone), need(n, 0);

  auto compute_any2 = [&](int s) {
    long a2 = kNone;
    for (int a = 1; a < s; ++a)
      if (any1[s - a] != kNone) a2 = std::max(a2, g[a] + any1[s - a]);
    any2[s] = a2;
  };
  auto compute_bounds = [&](int s) {
    long a3 = kNone, p2 = kNone;
    for (int a = 1; a < s; ++a) {
      if (s - a >= 2 && any2[s - a] != kNone) a3 = std::max(a3, g[a] + any2[s - a]);
      if (a >= 2 && s - a >= 2) p2 = std::max(p2, g[a] + g[s - a]);
    }
    three[s] = a3;
    pair[s] = p2;
  };

  std::function<bool(int)> rec = [&](int t) {
    if (t > tmax) {
      ++res.tables;
      for (int u = 1; u <= tmax; ++u)
        if (g[u] < filtration_bar(u)) {
          res.ok = false;
          res.counterexample.assign(g.begin() + 1, g.begin() + tmax + 1);
          return false;
        }
      return true;
    }
    // bounds for sums t and t+1 only involve g(1..t-1)
    compute_any2(t);
    compute_bounds(t);
    compute_bounds(t + 1);
    long lower = need[t - 1];
    for (int s : {t, t + 1}) lower = std::max({lower, three[s], pair[s]});
    need[t] = lower;
    for (long v = std::max(1L, lower); v <= filtration_bar(t) + slack; ++v) {
      g[t] = v;
      any1[t] = std::max(v, any2[t]);
      if (!rec(t + 1)) return false;
    }
    return true;
  };
  rec(1);
  return res;
}

}  // namespace tame::graded

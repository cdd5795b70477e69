#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "tame/rankbound.hpp"

namespace tame::rankbound {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Slot {
  std::size_t gen;
  FpPoly base;              // d_M value
  std::vector<Mono> monos;  // twist monomials
  std::vector<bool> same;   // contains a generator of the same degree
};

struct Group {
  int degree;
  std::vector<std::size_t> slots;
  std::vector<std::pair<std::size_t, std::size_t>> ys, xs;  // (slot, monomial)
};

// The twisting space, fixed group by group in increasing degree. Given the
// lower groups and the y-coefficients (monomials containing a generator of
// the same degree), d^2 = 0 on a group is affine in the remaining
// coefficients.
class Space {
 public:
  Space(const SearchConfig& cfg) : cfg_(cfg), alg_(model_layout(cfg.spheres, cfg.r, cfg.p, &info_)) {
    for (std::size_t g = 2 * static_cast<std::size_t>(cfg.r); g < info_.size(); ++g) {
      Slot s{g, m_differential(alg_, info_, g), {}, {}};
      const int deg = alg_.gens()[g].degree;
      if (!(cfg.tau_closed && info_[g].kind == GenKind::Tau))
        for (const auto& m : alg_.basis(deg + 1)) {
          bool base = false, same = false;
          for (int i = 0; i < 2 * cfg.r; ++i) base = base || m[i];
          for (std::size_t h = 2 * static_cast<std::size_t>(cfg.r); h < info_.size(); ++h)
            same = same || (m[h] && alg_.gens()[h].degree == deg);
          if (!base) continue;
          s.monos.push_back(m);
          s.same.push_back(same);
        }
      slots_.push_back(std::move(s));
    }
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      const int deg = alg_.gens()[slots_[k].gen].degree;
      auto it = std::find_if(groups_.begin(), groups_.end(), [&](const Group& g) { return g.degree == deg; });
      if (it == groups_.end()) {
        groups_.push_back({deg, {}, {}, {}});
        it = groups_.end() - 1;
      }
      it->slots.push_back(k);
      for (std::size_t i = 0; i < slots_[k].monos.size(); ++i) (slots_[k].same[i] ? it->ys : it->xs).emplace_back(k, i);
    }
    std::sort(groups_.begin(), groups_.end(), [](const Group& a, const Group& b) { return a.degree < b.degree; });
    coef_.resize(slots_.size());
    for (std::size_t k = 0; k < slots_.size(); ++k) coef_[k].assign(slots_[k].monos.size(), 0);
  }

  std::size_t unknowns() const {
    std::size_t n = 0;
    for (const auto& s : slots_) n += s.monos.size();
    return n;
  }
  std::size_t groups() const { return groups_.size(); }
  const Group& group(std::size_t i) const { return groups_[i]; }
  const FpAlgebra& algebra() const { return alg_; }
  fp::u32 p() const { return cfg_.p; }

  void set_y(std::size_t gi, const std::vector<fp::u32>& y) {
    const auto& g = groups_[gi];
    for (std::size_t i = 0; i < g.ys.size(); ++i) coef_[g.ys[i].first][g.ys[i].second] = y[i];
  }
  void set_x(std::size_t gi, const std::vector<fp::u32>& x) {
    const auto& g = groups_[gi];
    for (std::size_t i = 0; i < g.xs.size(); ++i) coef_[g.xs[i].first][g.xs[i].second] = x[i];
    for (auto k : g.slots) apply(k);
  }

  // Affine space of x solving d^2 = 0 on group gi for the current y.
  std::optional<fp::AffineSpace> solve(std::size_t gi) {
    const auto& g = groups_[gi];
    const std::size_t n = g.xs.size();
    const fp::Field f{cfg_.p};
    std::vector<fp::u32> x(n, 0);
    set_x(gi, x);
    std::vector<fp::u32> b0 = residual(gi);
    const std::size_t rows = b0.size();
    std::vector<fp::u32> a(rows * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = 1;
      set_x(gi, x);
      auto bj = residual(gi);
      for (std::size_t i = 0; i < rows; ++i) a[i * n + j] = f.sub(bj[i], b0[i]);
      x[j] = 0;
    }
    for (auto& v : b0) v = f.neg(v);
    return fp::solve_affine(a, rows, n, b0, cfg_.p);
  }

  Twist twist() const {
    Twist out;
    for (const auto& s : slots_) out[alg_.gens()[s.gen].name] = alg_.differential(s.gen);
    return out;
  }

 private:
  void apply(std::size_t k) {
    const auto& s = slots_[k];
    std::vector<homology::FpTerm> terms(s.base.begin(), s.base.end());
    for (std::size_t i = 0; i < s.monos.size(); ++i)
      if (coef_[k][i]) terms.push_back({s.monos[i], coef_[k][i]});
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
    FpPoly d;
    for (const auto& t : terms) add_scaled(d, t.c, {{t.m, 1}}, alg_.field());
    alg_.set_differential(s.gen, std::move(d));
  }

  std::vector<fp::u32> residual(std::size_t gi) const {
    const auto& g = groups_[gi];
    std::vector<fp::u32> out;
    for (auto k : g.slots) {
      const int deg = alg_.gens()[slots_[k].gen].degree + 2;
      std::vector<fp::u32> block(alg_.basis(deg).size(), 0);
      for (const auto& [i, c] : alg_.coords(alg_.d(alg_.differential(slots_[k].gen)), deg)) block[i] = c;
      out.insert(out.end(), block.begin(), block.end());
    }
    return out;
  }

  const SearchConfig& cfg_;
  std::vector<GenInfo> info_;
  FpAlgebra alg_;
  std::vector<Slot> slots_;
  std::vector<Group> groups_;
  std::vector<std::vector<fp::u32>> coef_;
};

std::uint64_t ipow(std::uint64_t p, std::size_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > cap / p) return cap + 1;
    v *= p;
  }
  return v;
}

// Writes the index-th vector of F_p^n into v (little-endian digits).
void digits(std::uint64_t index, fp::u32 p, std::vector<fp::u32>& v) {
  for (auto& d : v) {
    d = static_cast<fp::u32>(index % p);
    index /= p;
  }
}

std::vector<fp::u32> point(const fp::AffineSpace& s, const std::vector<fp::u32>& lambda, fp::u32 p) {
  const fp::Field f{p};
  std::vector<fp::u32> x = s.particular;
  for (std::size_t k = 0; k < s.directions.size(); ++k)
    if (lambda[k])
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.add(x[i], f.mul(lambda[k], s.directions[k][i]));
  return x;
}

struct WorkerResult {
  std::uint64_t points = 0, passing = 0, skipped = 0;
  std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
  std::optional<Twist> twist;
};

// Counts leaves of the exhaustive tree; stops once the count exceeds cap.
std::uint64_t count_points(Space& sp, std::size_t gi, std::uint64_t cap, std::uint64_t& nodes) {
  if (gi == sp.groups()) return 1;
  const auto& g = sp.group(gi);
  const std::uint64_t ny = ipow(sp.p(), g.ys.size(), cap);
  if (ny > cap) return cap + 1;
  std::uint64_t total = 0;
  std::vector<fp::u32> y(g.ys.size());
  for (std::uint64_t iy = 0; iy < ny; ++iy) {
    if (++nodes > cap) return cap + 1;
    digits(iy, sp.p(), y);
    sp.set_y(gi, y);
    auto sol = sp.solve(gi);
    if (!sol) continue;
    const std::uint64_t nl = ipow(sp.p(), sol->directions.size(), cap);
    if (nl > cap) return cap + 1;
    if (gi + 1 == sp.groups()) {
      total += nl;
    } else {
      std::vector<fp::u32> lambda(sol->directions.size());
      for (std::uint64_t il = 0; il < nl; ++il) {
        digits(il, sp.p(), lambda);
        sp.set_x(gi, point(*sol, lambda, sp.p()));
        total += count_points(sp, gi + 1, cap, nodes);
        if (total > cap) return cap + 1;
      }
    }
    if (total > cap) return cap + 1;
  }
  return total;
}

void record(Space& sp, const SearchConfig& cfg, std::uint64_t index, WorkerResult& out) {
  ++out.points;
  if (!property4_passes(sp.algebra(), cfg.spheres, cfg.r)) return;
  ++out.passing;
  if (index < out.first) {
    out.first = index;
    out.twist = sp.twist();
  }
}

void exhaust(Space& sp, const SearchConfig& cfg, std::size_t gi, std::uint64_t& next, unsigned worker,
             unsigned workers, WorkerResult& out) {
  const auto& g = sp.group(gi);
  const std::uint64_t ny = ipow(sp.p(), g.ys.size(), std::numeric_limits<std::uint64_t>::max() / 2);
  std::vector<fp::u32> y(g.ys.size());
  for (std::uint64_t iy = 0; iy < ny; ++iy) {
    digits(iy, sp.p(), y);
    sp.set_y(gi, y);
    auto sol = sp.solve(gi);
    if (!sol) continue;
    const std::uint64_t nl = ipow(sp.p(), sol->directions.size(), std::numeric_limits<std::uint64_t>::max() / 2);
    std::vector<fp::u32> lambda(sol->directions.size());
    const bool last = gi + 1 == sp.groups();
    for (std::uint64_t il = 0; il < nl; ++il) {
      if (last && (next + il) % workers != worker) continue;
      digits(il, sp.p(), lambda);
      sp.set_x(gi, point(*sol, lambda, sp.p()));
      if (last)
        record(sp, cfg, next + il, out);
      else
        exhaust(sp, cfg, gi + 1, next, worker, workers, out);
    }
    if (last) next += nl;
  }
}

// Draws group by group; a lower choice can leave a higher group without
// solutions, in which case the draw restarts.
bool place(Space& sp, const SearchConfig& cfg, std::uint64_t index, bool zero_y) {
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(index)));
  std::uniform_int_distribution<fp::u32> coin(0, cfg.p - 1);
  for (int round = 0; round < 1024; ++round) {
    std::size_t gi = 0;
    for (; gi < sp.groups(); ++gi) {
      bool placed = false;
      for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
        std::vector<fp::u32> y(sp.group(gi).ys.size());
        for (auto& v : y) v = zero_y ? 0 : coin(rng);
        sp.set_y(gi, y);
        auto sol = sp.solve(gi);
        if (!sol) continue;
        std::vector<fp::u32> lambda(sol->directions.size());
        for (auto& v : lambda) v = coin(rng);
        sp.set_x(gi, point(*sol, lambda, cfg.p));
        placed = true;
      }
      if (!placed) break;
    }
    if (gi == sp.groups()) return true;
  }
  return false;
}

void sample(Space& sp, const SearchConfig& cfg, std::uint64_t index, WorkerResult& out) {
  if (place(sp, cfg, index, false))
    record(sp, cfg, index, out);
  else
    ++out.skipped;
}

}  // namespace

unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TAME_CGDA_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

std::optional<Twist> sample_twist(const SearchConfig& cfg, std::uint64_t index, bool zero_y) {
  Space sp(cfg);
  if (!place(sp, cfg, index, zero_y)) return std::nullopt;
  return sp.twist();
}

SearchSummary oracle_search(const SearchConfig& cfg) {
  if (cfg.strategy == Strategy::Random && cfg.samples > cfg.budget)
    fail(ErrorCode::SearchBudgetExceeded, std::to_string(cfg.samples) + " samples exceed the budget");
  SearchSummary out;
  Space probe(cfg);
  out.unknowns = probe.unknowns();
  out.exhaustive = cfg.strategy == Strategy::Exhaustive;
  if (out.exhaustive) {
    std::uint64_t nodes = 0;
    const std::uint64_t total = probe.groups() ? count_points(probe, 0, cfg.budget, nodes) : 1;
    if (total > cfg.budget)
      fail(ErrorCode::SearchBudgetExceeded, "the twisting space has more than " + std::to_string(cfg.budget) + " points");
  }
  const unsigned workers = worker_count(cfg.threads);
  out.threads = workers;
  std::vector<WorkerResult> results(workers);
  auto run = [&](unsigned w) {
    Space sp(cfg);
    if (out.exhaustive) {
      std::uint64_t next = 0;
      if (sp.groups() == 0) {
        if (w == 0) record(sp, cfg, 0, results[w]);
      } else {
        exhaust(sp, cfg, 0, next, w, workers, results[w]);
      }
    } else {
      for (std::uint64_t i = w; i < cfg.samples; i += workers) sample(sp, cfg, i, results[w]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
  for (auto& r : results) {
    out.points += r.points;
    out.passing += r.passing;
    out.skipped += r.skipped;
    if (r.twist && r.first < first) {
      first = r.first;
      out.first_passing = r.twist;
    }
  }

  const auto& x = cfg.spheres;
  out.generator_count = static_cast<std::size_t>(x.k());
  out.generators_needed = static_cast<std::size_t>(cfg.r + x.k_e());
  const int k_o = x.k_o();
  if (out.passing > 0) {
    out.contradiction = cfg.r > k_o;
    out.bound = out.contradiction ? "contradiction: passing twist with r > k_o, file a bug" : "k_o >= r";
  } else if (out.exhaustive || cfg.r > k_o) {
    out.bound = cfg.r - 1 == k_o ? "free rank " + std::to_string(k_o) : "free rank <= " + std::to_string(cfg.r - 1);
  } else {
    out.bound = "no passing twist sampled";
  }
  return out;
}

}  // namespace tame::rankbound

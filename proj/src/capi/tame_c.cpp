#include "tame/tame.h"

#include <new>
#include <string>

#include "tame/io.hpp"

struct tame_algebra {
  tame::graded::FreeCGDA a;
};

struct tame_space {
  tame::cenkl::SimplicialSetFin x;
  std::string name;
};

struct tame_report {
  std::string json;
  std::string summary;
  bool passed = false;
};

namespace {

using namespace tame;
using io::ordered_json;

thread_local std::string last_error;

static_assert(static_cast<int>(ErrorCode::Internal) + 1 == TAME_INTERNAL, "status codes mirror ErrorCode");

tame_status status_of(ErrorCode c) { return static_cast<tame_status>(static_cast<int>(c) + 1); }

template <class F>
tame_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return TAME_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TAME_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TAME_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void emit(tame_report** out, const ordered_json& j, bool passed, std::string summary) {
  auto* r = new tame_report{io::dump(j), std::move(summary), passed};
  *out = r;
}

fp::u32 field_for(const graded::FreeCGDA& a, std::uint32_t l) {
  if (l != 0) return l;
  if (a.tag().is_prime_field()) return static_cast<fp::u32>(a.tag().param);
  fail(ErrorCode::InvalidArgument, "a prime l is needed for rings other than F_l");
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

}  // namespace

extern "C" {

const char* tame_version(void) { return "0.1.0"; }

const char* tame_status_name(tame_status s) {
  if (s == TAME_OK) return "Ok";
  if (s == TAME_OUT_OF_MEMORY) return "OutOfMemory";
  if (s < TAME_OK || s > TAME_OUT_OF_MEMORY) return "Unknown";
  return tame::to_string(static_cast<ErrorCode>(static_cast<int>(s) - 1));
}

const char* tame_last_error(void) { return last_error.c_str(); }

tame_status tame_algebra_parse(const char* json, tame_algebra** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new tame_algebra{io::parse_algebra(json)};
  });
}

void tame_algebra_free(tame_algebra* a) { delete a; }

tame_status tame_algebra_json(const tame_algebra* a, tame_report** out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    emit(out, io::algebra_json(a->a), true, std::to_string(a->a.size()) + " generators");
  });
}

tame_status tame_space_load(const char* name_or_json, tame_space** out) {
  return guarded([&] {
    need(name_or_json, "space");
    need(out, "out");
    std::string s = name_or_json;
    auto x = io::load_space(s);
    *out = new tame_space{std::move(x), s.find('{') == std::string::npos ? s : std::string("custom")};
  });
}

void tame_space_free(tame_space* x) { delete x; }

tame_status tame_cohomology(const tame_algebra* a, int level, uint32_t l, int max_degree, int with_basis,
                            tame_report** out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    if (max_degree < 0) fail(ErrorCode::InvalidArgument, "max degree must be >= 0");
    std::optional<int> lv;
    if (level >= 0) lv = level;
    const auto r = homology::cohomology(a->a, lv, field_for(a->a, l), max_degree, with_basis != 0);
    emit(out, io::cohomology_report(r, a->a), true, "H^0..H^" + std::to_string(max_degree) + " = " + join(r.dims));
  });
}

tame_status tame_coboundary(const tame_algebra* a, const char* expr, int level, uint32_t l, int max_degree,
                            tame_report** out) {
  return guarded([&] {
    need(a, "algebra");
    need(expr, "expression");
    need(out, "out");
    const auto f = field_for(a->a, l);
    const auto x = io::to_element(a->a, io::parse_polynomial(expr));
    std::optional<int> lv;
    if (level >= 0) lv = level;
    const auto w = homology::is_coboundary(a->a, x, f, max_degree, lv);
    emit(out, io::coboundary_report(w, a->a, f), w.exact,
         w.exact ? "exact: d(" + io::element_string(a->a, w.witness) + ") = " + io::element_string(a->a, w.target)
                 : "not exact");
  });
}

int tame_filtration_bar(int t) { return t >= 1 ? graded::filtration_bar(t) : -1; }

tame_status tame_filtration(const int* table, size_t n, int optimality_tmax, int slack, tame_report** out) {
  return guarded([&] {
    need(out, "out");
    if (n && !table) fail(ErrorCode::InvalidArgument, "table is null");
    std::vector<int> f(table, table + n);
    const auto adm = graded::check_admissible(f, static_cast<int>(n));
    std::optional<graded::OptimalityResult> opt;
    if (optimality_tmax > 0) opt = graded::verify_optimality(optimality_tmax, slack);
    const bool ok = adm.ok && (!opt || opt->ok);
    std::string s = adm.ok ? "admissible" : "not admissible";
    if (opt) s += opt->ok ? ", bar is optimal over " + std::to_string(opt->tables) + " tables" : ", optimality fails";
    emit(out, io::filtration_report(adm, f, opt ? &*opt : nullptr, optimality_tmax, slack), ok, s);
  });
}

tame_status tame_cenkl(const tame_space* x, int q, uint64_t field, int max_degree, tame_report** out) {
  return guarded([&] {
    need(x, "space");
    need(out, "out");
    if (field != 0 && field <= static_cast<uint64_t>(q) && q >= 1 && max_degree >= 0) {
      if (!coeff::is_prime(field)) fail(ErrorCode::InvalidArgument, "field must be prime");
      std::vector<homology::ModuleCohomology> zero(static_cast<std::size_t>(max_degree) + 1);
      const std::string note = "l = " + std::to_string(field) + " <= q = " + std::to_string(q) +
                               " is a unit of Q_q, so every slice tensored with F_l is zero";
      emit(out, io::forms_report(zero, x->name, q, field, note), true, note);
      return;
    }
    std::optional<std::uint64_t> f;
    if (field) f = field;
    const auto r = cenkl::zigzag_compare(x->x, q, f, max_degree);
    std::vector<std::size_t> ranks;
    for (const auto& m : r.forms) ranks.push_back(m.rank);
    emit(out, io::zigzag_report(r, x->name), r.ok,
         std::string(r.ok ? "zigzag is a quasi-isomorphism" : "zigzag fails") + "; forms ranks " + join(ranks));
  });
}

tame_status tame_massey(unsigned l, int skeleton, tame_report** out) {
  return guarded([&] {
    need(out, "out");
    const auto r = cenkl::massey_filtration_demo(l, skeleton);
    const bool ok = r.nonzero && r.forms_vanish;
    emit(out, io::massey_report(r), ok,
         std::string(r.nonzero ? "l-fold Massey product is nonzero" : "l-fold Massey product vanishes") +
             (r.forms_vanish ? "; forms side vanishes" : "; forms side does not vanish"));
  });
}

tame_status tame_rank(const char* dims, int r, uint32_t p, const char* twist_json, tame_report** out) {
  return guarded([&] {
    need(dims, "dims");
    need(out, "out");
    const rankbound::SphereProduct x(io::parse_dims(dims));
    const auto tw = twist_json ? io::parse_twist(twist_json, x, r, p) : rankbound::diagonal_twist(x, r, p);
    const auto e = rankbound::build_model(x, r, p, tw);
    const auto v = rankbound::rank_pipeline(e);
    emit(out, io::rank_report(v, e), v.bound == "k_o >= r", "bound: " + v.bound);
  });
}

void tame_search_options_init(tame_search_options* o) {
  if (!o) return;
  *o = tame_search_options{};
  o->dims = "3";
  o->r = 1;
  o->p = 3;
}

tame_status tame_rank_search(const tame_search_options* o, tame_report** out) {
  return guarded([&] {
    need(o, "options");
    need(o->dims, "dims");
    need(out, "out");
    rankbound::SearchConfig cfg;
    cfg.spheres = rankbound::SphereProduct(io::parse_dims(o->dims));
    cfg.r = o->r;
    cfg.p = o->p;
    cfg.strategy = o->random ? rankbound::Strategy::Random : rankbound::Strategy::Exhaustive;
    cfg.seed = o->seed;
    cfg.samples = o->samples;
    if (o->budget) cfg.budget = o->budget;
    cfg.threads = o->threads;
    cfg.tau_closed = o->tau_closed != 0;
    const auto s = rankbound::oracle_search(cfg);
    emit(out, io::search_report(s, cfg), !s.contradiction,
         std::to_string(s.passing) + " of " + std::to_string(s.points) + " twists pass; " + s.bound);
  });
}

tame_status tame_tower(const char* dims, int r, uint32_t l, const char* schedule_json, const char* twist_json,
                       int max_degree, tame_report** out) {
  return guarded([&] {
    need(dims, "dims");
    need(out, "out");
    const rankbound::SphereProduct x(io::parse_dims(dims));
    std::optional<std::vector<rankbound::ScheduledGenerator>> sched;
    if (schedule_json) sched = io::parse_schedule(schedule_json);
    std::map<std::string, graded::Element> tw;
    if (twist_json) tw = io::parse_tower_twist(twist_json, r, l, sched ? *sched : rankbound::automatic_schedule(x));
    const auto t = rankbound::tower_build(x, r, l, sched, tw);
    emit(out, io::tower_report(t, max_degree), t.matches_model,
         "level " + std::to_string(t.level) + (t.matches_model ? ", reduces to the model" : ", " + t.mismatch));
  });
}

const char* tame_report_json(const tame_report* r) { return r ? r->json.c_str() : ""; }
int tame_report_passed(const tame_report* r) { return r && r->passed ? 1 : 0; }
const char* tame_report_summary(const tame_report* r) { return r ? r->summary.c_str() : ""; }
void tame_report_free(tame_report* r) { delete r; }

}  // extern "C"

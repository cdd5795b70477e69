#include <algorithm>

#include "tame/io.hpp"

namespace tame::io {

namespace {

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field_of(const ordered_json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string(what) + " needs \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::ParseError, std::string(what) + ": \"" + key + "\" has the wrong type");
  }
}

coeff::Rational parse_rational(const ordered_json& j) {
  std::string s;
  if (j.is_string())
    s = j.get<std::string>();
  else if (j.is_number_integer())
    s = std::to_string(j.get<long long>());
  else
    fail(ErrorCode::ParseError, "coefficients must be strings \"a/b\"");
  auto terms = parse_polynomial(s);
  if (terms.size() > 1 || (terms.size() == 1 && !terms[0].factors.empty()))
    fail(ErrorCode::ParseError, "bad coefficient '" + s + "'");
  return terms.empty() ? coeff::Rational(0) : terms[0].coeff;
}

std::string fp_string(const std::vector<std::string>& names, const homology::FpPoly& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& t : x) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!t.m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (t.m[i] > 1) mono += "^" + std::to_string(t.m[i]);
    }
    if (mono.empty())
      s += std::to_string(t.c);
    else if (t.c == 1)
      s += mono;
    else
      s += std::to_string(t.c) + "*" + mono;
  }
  return s;
}

std::vector<std::string> names_of(const graded::FreeCGDA& a) {
  std::vector<std::string> out;
  for (const auto& g : a.generators()) out.push_back(g.name);
  return out;
}

ordered_json module_json(const std::vector<homology::ModuleCohomology>& h) {
  ordered_json out = ordered_json::array();
  for (const auto& m : h) {
    ordered_json t = ordered_json::array();
    for (const auto& c : m.torsion) t.push_back(c.get_str());
    out.push_back({{"rank", m.rank}, {"torsion", t}});
  }
  return out;
}

ordered_json verdict_json(const homology::QuasiIsoVerdict& v) {
  return {{"iso", v.iso}, {"injective", v.injective}, {"t_equivalence", v.t_equivalence}, {"method", v.method}};
}

ordered_json qvec_json(const cenkl::QVec& v) {
  ordered_json out = ordered_json::array();
  for (const auto& [i, c] : v) out.push_back({i, c.get_str()});
  return out;
}

ordered_json header(const char* command) { return {{"schema", kSchema}, {"command", command}}; }

}  // namespace

coeff::RingTag parse_ring(const ordered_json& j) {
  const auto kind = field_of<std::string>(j, "kind", "ring");
  if (kind == "Q") return coeff::RingTag::rationals();
  if (kind == "Q_q") return coeff::RingTag::localized_up_to(field_of<std::uint64_t>(j, "q", "ring Q_q"));
  if (kind == "Z_(l)") return coeff::RingTag::local_at(field_of<std::uint64_t>(j, "l", "ring Z_(l)"));
  if (kind == "F_l") return coeff::RingTag::prime_field(field_of<std::uint64_t>(j, "l", "ring F_l"));
  fail(ErrorCode::ParseError, "unknown ring kind '" + kind + "'");
}

ordered_json ring_json(const coeff::RingTag& tag) {
  switch (tag.kind) {
    case coeff::RingKind::Rationals: return {{"kind", "Q"}};
    case coeff::RingKind::LocalizedUpTo: return {{"kind", "Q_q"}, {"q", tag.param}};
    case coeff::RingKind::LocalAt: return {{"kind", "Z_(l)"}, {"l", tag.param}};
    case coeff::RingKind::PrimeField: return {{"kind", "F_l"}, {"l", tag.param}};
  }
  return {};
}

graded::FreeCGDA parse_algebra(const std::string& text) {
  const ordered_json j = parse_json(text);
  const coeff::RingTag tag = parse_ring(field_of<ordered_json>(j, "ring", "algebra"));
  std::vector<graded::Generator> gens;
  for (const auto& g : field_of<ordered_json>(j, "generators", "algebra")) {
    graded::Generator gen{field_of<std::string>(g, "name", "generator"), field_of<int>(g, "degree", "generator"),
                          g.contains("fdeg") ? field_of<int>(g, "fdeg", "generator") : 0};
    gens.push_back(std::move(gen));
  }
  auto id_of = [&](const std::string& name) -> std::uint32_t {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == name) return static_cast<std::uint32_t>(i);
    fail(ErrorCode::ParseError, "unknown generator '" + name + "'");
  };
  std::vector<graded::Element> diff(gens.size(), graded::Element(tag));
  if (j.contains("differential")) {
    const auto& d = j.at("differential");
    if (!d.is_object()) fail(ErrorCode::ParseError, "\"differential\" must be an object");
    for (const auto& [name, terms] : d.items()) {
      const auto id = id_of(name);
      if (!terms.is_array()) fail(ErrorCode::ParseError, "d(" + name + ") must be a list of terms");
      for (const auto& term : terms) {
        if (!term.is_array() || term.size() != 2 || !term[1].is_array())
          fail(ErrorCode::ParseError, "terms are [coefficient, [[name, exponent], ...]]");
        graded::Monomial m;
        int sign = 1;
        for (const auto& f : term[1]) {
          if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_unsigned())
            fail(ErrorCode::ParseError, "factors are [name, exponent]");
          graded::Monomial g{{id_of(f[0].get<std::string>()), f[1].get<std::uint32_t>()}}, out;
          if (g[0].second == 0) continue;
          sign *= graded::monomial_product(gens, m, g, out);
          m = std::move(out);
        }
        if (sign == 0) continue;
        auto c = coeff::Scalar::from_rational(parse_rational(term[0]) * sign, tag);
        diff[id].add_term(m, c);
      }
    }
  }
  return graded::FreeCGDA(tag, std::move(gens), std::move(diff));
}

ordered_json algebra_json(const graded::FreeCGDA& a) {
  ordered_json gens = ordered_json::array(), diff = ordered_json::object();
  for (const auto& g : a.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}, {"fdeg", g.fdeg}});
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    const auto& d = a.differential(i);
    if (d.is_zero()) continue;
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : d.terms()) {
      ordered_json fs = ordered_json::array();
      for (const auto& [id, e] : m) fs.push_back({a.generators()[id].name, e});
      terms.push_back({c.to_string(), fs});
    }
    diff[a.generators()[i].name] = terms;
  }
  return {{"ring", ring_json(a.tag())}, {"generators", gens}, {"differential", diff}};
}

cenkl::SimplicialSetFin parse_simplicial_set(const std::string& text) {
  const ordered_json j = parse_json(text);
  const int dims = field_of<int>(j, "dims", "simplicial set");
  if (dims < 0 || dims > 30) fail(ErrorCode::ParseError, "\"dims\" out of range");
  const auto simplices = field_of<ordered_json>(j, "simplices", "simplicial set");
  const ordered_json faces = j.contains("faces") ? j.at("faces") : ordered_json::object();
  cenkl::SimplicialSetFin x;
  for (int n = 0; n <= dims; ++n) {
    const std::string key = std::to_string(n);
    if (!simplices.contains(key)) continue;
    for (const auto& nm : simplices.at(key)) {
      if (!nm.is_string()) fail(ErrorCode::ParseError, "simplex names must be strings");
      const std::string name = nm.get<std::string>();
      std::vector<std::pair<int, cenkl::FaceSpec>> spec;
      if (n > 0) {
        if (!faces.contains(name)) fail(ErrorCode::ParseError, "simplex '" + name + "' has no faces");
        for (const auto& f : faces.at(name)) {
          if (!f.is_array() || f.size() < 2 || !f[0].is_number_integer() || !f[1].is_string())
            fail(ErrorCode::ParseError, "faces are [i, \"target\", [degeneracy word]]");
          std::vector<int> word;
          if (f.size() > 2) {
            if (!f[2].is_array()) fail(ErrorCode::ParseError, "degeneracy words are integer lists");
            for (const auto& w : f[2]) word.push_back(w.get<int>());
          }
          spec.push_back({f[0].get<int>(), cenkl::FaceSpec{f[1].get<std::string>(), word}});
        }
      }
      std::sort(spec.begin(), spec.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<cenkl::FaceSpec> fs;
      for (std::size_t i = 0; i < spec.size(); ++i) {
        if (spec[i].first != static_cast<int>(i)) fail(ErrorCode::ParseError, "faces of '" + name + "' must be 0..n");
        fs.push_back(spec[i].second);
      }
      x.add(name, n, fs);
    }
  }
  x.validate();
  return x;
}

cenkl::SimplicialSetFin load_space(const std::string& name_or_json) {
  const auto pos = name_or_json.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && name_or_json[pos] == '{') return parse_simplicial_set(name_or_json);
  return cenkl::builtin_space(name_or_json);
}

rankbound::Twist parse_twist(const std::string& text, const rankbound::SphereProduct& x, int r, fp::u32 p) {
  const ordered_json j = parse_json(text);
  if (!j.is_object()) fail(ErrorCode::ParseError, "a twist file is an object {\"generator\": \"expression\"}");
  const auto layout = rankbound::model_layout(x, r, p);
  rankbound::Twist out;
  for (const auto& [name, v] : j.items()) {
    if (!v.is_string()) fail(ErrorCode::ParseError, "d(" + name + ") must be an expression string");
    out[name] = to_fp(layout, parse_polynomial(v.get<std::string>()));
  }
  return out;
}

std::vector<rankbound::ScheduledGenerator> parse_schedule(const std::string& text) {
  const ordered_json j = parse_json(text);
  if (!j.is_array()) fail(ErrorCode::ParseError, "a schedule is a list of {\"name\", \"degree\"}");
  std::vector<rankbound::ScheduledGenerator> out;
  for (const auto& g : j)
    out.push_back({field_of<std::string>(g, "name", "schedule entry"), field_of<int>(g, "degree", "schedule entry")});
  return out;
}

std::map<std::string, graded::Element> parse_tower_twist(const std::string& text, int r, fp::u32 l,
                                                         std::vector<rankbound::ScheduledGenerator> schedule) {
  const ordered_json j = parse_json(text);
  if (!j.is_object()) fail(ErrorCode::ParseError, "a twist file is an object {\"generator\": \"expression\"}");
  const auto tag = coeff::RingTag::local_at(l);
  std::vector<graded::Generator> gens;
  for (int i = 1; i <= r; ++i) gens.push_back({"t" + std::to_string(i), 2, 1});
  for (int i = 1; i <= r; ++i) gens.push_back({"s" + std::to_string(i), 1, 1});
  std::stable_sort(schedule.begin(), schedule.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  for (const auto& s : schedule) gens.push_back({s.name, s.degree, 0});
  std::vector<graded::Element> zero(gens.size(), graded::Element(tag));
  const graded::FreeCGDA layout(tag, std::move(gens), std::move(zero));
  std::map<std::string, graded::Element> out;
  for (const auto& [name, v] : j.items()) {
    if (!v.is_string()) fail(ErrorCode::ParseError, "d(" + name + ") must be an expression string");
    out[name] = to_element(layout, parse_polynomial(v.get<std::string>()));
  }
  return out;
}

// ---------------------------------------------------------------------------

ordered_json cohomology_report(const homology::CohomologyReport& r, const graded::FreeCGDA& a) {
  ordered_json out = header("cohomology");
  out["ring"] = ring_json(a.tag());
  out["field"] = r.field;
  out["level"] = r.level ? ordered_json(*r.level) : ordered_json(nullptr);
  out["max_degree"] = r.max_degree;
  out["dims"] = r.dims;
  ordered_json iv = ordered_json::array();
  for (const auto& [lo, hi] : r.intervals) iv.push_back({lo, hi});
  out["intervals"] = iv;
  out["slice_dims"] = r.slice_dims;
  if (!r.representatives.empty()) {
    const auto names = names_of(a);
    ordered_json reps = ordered_json::array();
    for (const auto& deg : r.representatives) {
      ordered_json d = ordered_json::array();
      for (const auto& x : deg) d.push_back(fp_string(names, x));
      reps.push_back(d);
    }
    out["representatives"] = reps;
  }
  out["note"] = r.note;
  return out;
}

ordered_json coboundary_report(const homology::CoboundaryWitness& w, const graded::FreeCGDA& a, fp::u32 field) {
  ordered_json out = header("coboundary");
  out["field"] = field;
  out["target"] = element_string(a, w.target);
  out["exact"] = w.exact;
  out["witness"] = w.exact ? ordered_json(element_string(a, w.witness)) : ordered_json(nullptr);
  return out;
}

ordered_json filtration_report(const graded::AdmissibilityResult& adm, const std::vector<int>& table,
                               const graded::OptimalityResult* opt, int opt_tmax, int slack) {
  ordered_json out = header("filtration");
  out["tmax"] = table.size();
  out["table"] = table;
  out["admissible"] = adm.ok;
  out["checked"] = adm.checked;
  out["counterexample"] = adm.ok ? ordered_json(nullptr) : ordered_json({{"parts", adm.parts}, {"t", adm.t}});
  if (opt)
    out["optimality"] = {{"tmax", opt_tmax},
                         {"slack", slack},
                         {"tables", opt->tables},
                         {"dominates", opt->ok},
                         {"counterexample", opt->ok ? ordered_json(nullptr) : ordered_json(opt->counterexample)}};
  else
    out["optimality"] = nullptr;
  return out;
}

ordered_json zigzag_report(const cenkl::ZigzagReport& r, const std::string& space) {
  ordered_json out = header("cenkl");
  out["space"] = space;
  out["level"] = r.q;
  out["field"] = r.field ? ordered_json(*r.field) : ordered_json(nullptr);
  out["max_degree"] = r.max_degree;
  out["forms"] = module_json(r.forms);
  out["cochains"] = module_json(r.cochains);
  out["tensor"] = module_json(r.tensor);
  out["chain_dims"] = {{"forms", r.forms_dims}, {"cochains", r.cochain_dims}, {"tensor", r.tensor_dims}};
  out["forms_leg"] = verdict_json(r.forms_leg);
  out["cochain_leg"] = verdict_json(r.cochain_leg);
  out["ok"] = r.ok;
  out["note"] = "";
  return out;
}

ordered_json forms_report(const std::vector<homology::ModuleCohomology>& h, const std::string& space, int q,
                          std::optional<std::uint64_t> field, const std::string& note) {
  ordered_json out = header("cenkl");
  out["space"] = space;
  out["level"] = q;
  out["field"] = field ? ordered_json(*field) : ordered_json(nullptr);
  out["forms"] = module_json(h);
  out["ok"] = true;
  out["note"] = note;
  return out;
}

ordered_json massey_report(const cenkl::MasseyReport& r) {
  ordered_json out = header("massey");
  out["l"] = r.l;
  out["skeleton"] = r.skeleton;
  out["h1"] = r.h1;
  out["h2"] = r.h2;
  out["square_exact"] = r.square_exact;
  ordered_json ds = ordered_json::array();
  for (const auto& a : r.defining_system) ds.push_back(qvec_json(a));
  out["defining_system"] = ds;
  out["product"] = qvec_json(r.product);
  out["nonzero"] = r.nonzero;
  out["forms_rank"] = r.forms_rank;
  out["forms_vanish"] = r.forms_vanish;
  out["note"] = r.note;
  return out;
}

ordered_json rank_report(const rankbound::RankVerdict& v, const rankbound::ModelE& e) {
  using rankbound::poly_string;
  ordered_json out = header("rank");
  out["spheres"] = v.spheres.dims();
  out["r"] = v.r;
  out["p"] = v.p;
  out["k_e"] = v.spheres.k_e();
  out["k_o"] = v.spheres.k_o();
  out["dim_x"] = v.spheres.dim();
  ordered_json tw = ordered_json::object();
  for (const auto& [name, d] : e.twist()) tw[name] = poly_string(e.alg, d);
  out["twist"] = tw;
  const auto& p4 = v.property4;
  out["property4"] = {{"passed", p4.passed},
                      {"degrees", p4.degrees},
                      {"checked", p4.checked},
                      {"failed", p4.failed ? ordered_json(poly_string(e.alg, *p4.failed)) : ordered_json(nullptr)}};
  out["lemma"] = v.lemma ? ordered_json({{"ok", v.lemma->ok},
                                         {"generators", v.lemma->generators},
                                         {"samples", v.lemma->samples},
                                         {"counterexample", v.lemma->counterexample}})
                         : ordered_json(nullptr);
  ordered_json nil = ordered_json::object();
  ordered_json certs = ordered_json::array();
  if (v.genial) {
    const rankbound::ModelF f = rankbound::quotient_F(e);
    for (const auto& c : v.genial->nilpotency)
      nil[c.name] = {{"order", c.order}, {"method", c.method}, {"witness", poly_string(f.delta, c.witness)}};
    for (const auto& c : v.genial->monomials)
      certs.push_back({{"target", poly_string(f.delta, c.target)}, {"c1", poly_string(f.delta, c.witness)}});
    if (v.ideal) {
      ordered_json gens = ordered_json::array(), exps = ordered_json::object();
      for (std::size_t i = 0; i < v.ideal->names.size(); ++i)
        gens.push_back({{"name", v.ideal->names[i]}, {"value", poly_string(f.delta, v.ideal->generators[i])}});
      for (const auto& [name, n] : v.ideal->exponents) exps[name] = n;
      out["ideal"] = {{"generators", gens},
                      {"exponents", exps},
                      {"k", v.ideal->k},
                      {"needed", v.ideal->needed},
                      {"finite", v.ideal->finite}};
    }
  }
  if (!out.contains("ideal")) out["ideal"] = nullptr;
  out["nilpotency"] = nil;
  out["certificates"] = certs;
  out["bound"] = v.bound;
  ordered_json wit = ordered_json::array();
  for (const auto& w : p4.witnesses)
    wit.push_back({{"target", poly_string(e.alg, w.target)}, {"witness", poly_string(e.alg, w.witness)}});
  out["witnesses"] = wit;
  return out;
}

ordered_json search_report(const rankbound::SearchSummary& s, const rankbound::SearchConfig& cfg) {
  ordered_json out = header("rank-search");
  out["spheres"] = cfg.spheres.dims();
  out["r"] = cfg.r;
  out["p"] = cfg.p;
  out["k_e"] = cfg.spheres.k_e();
  out["k_o"] = cfg.spheres.k_o();
  out["strategy"] = cfg.strategy == rankbound::Strategy::Exhaustive ? "exhaustive" : "random";
  out["seed"] = cfg.seed;
  out["samples"] = cfg.samples;
  out["tau_closed"] = cfg.tau_closed;
  out["unknowns"] = s.unknowns;
  out["points"] = s.points;
  out["passing"] = s.passing;
  out["skipped"] = s.skipped;
  out["generator_count"] = s.generator_count;
  out["generators_needed"] = s.generators_needed;
  out["count_argument"] =
      "I has k = " + std::to_string(s.generator_count) +
      (s.generator_count >= s.generators_needed ? " >= " : " < ") + "r + k_e = " + std::to_string(s.generators_needed) +
      " generators" +
      (s.generator_count < s.generators_needed ? ", so no twist can pass property4" : "");
  if (s.first_passing) {
    const auto layout = rankbound::model_layout(cfg.spheres, cfg.r, cfg.p);
    ordered_json tw = ordered_json::object();
    for (const auto& [name, d] : *s.first_passing) tw[name] = rankbound::poly_string(layout, d);
    out["first_passing"] = tw;
  } else {
    out["first_passing"] = nullptr;
  }
  out["contradiction"] = s.contradiction;
  out["bound"] = s.bound;
  return out;
}

ordered_json tower_report(const rankbound::TowerReport& t, int max_degree) {
  ordered_json out = header("tower");
  out["spheres"] = t.spheres.dims();
  out["r"] = t.r;
  out["l"] = t.l;
  ordered_json stages = ordered_json::array();
  for (const auto& s : t.stages) stages.push_back({{"degree", s.degree}, {"fdeg", s.fdeg}, {"generators", s.names}});
  out["stages"] = stages;
  out["level"] = t.level;
  out["filtered"] = algebra_json(t.filtered);
  ordered_json red = ordered_json::object();
  for (std::size_t g = 0; g < t.reduced.gens().size(); ++g)
    red[t.reduced.gens()[g].name] = rankbound::poly_string(t.reduced, t.reduced.differential(g));
  out["reduced"] = red;
  out["cohomology"] = homology::cohomology(t.reduced, max_degree).dims;
  out["matches_model"] = t.matches_model;
  out["mismatch"] = t.mismatch;
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace tame::io

#include <algorithm>
#include <map>

#include "tame/rankbound.hpp"

namespace tame::rankbound {

namespace {

// Rewrites x in the generators of `to`, matching by name; signs follow from
// multiplying the factors in the source order.
FpPoly remap(const FpAlgebra& from, const FpAlgebra& to, const FpPoly& x) {
  std::vector<std::size_t> ids;
  for (const auto& g : from.gens()) {
    auto it = std::find_if(to.gens().begin(), to.gens().end(), [&](const auto& h) { return h.name == g.name; });
    if (it == to.gens().end()) fail(ErrorCode::Internal, "generator '" + g.name + "' has no counterpart");
    ids.push_back(static_cast<std::size_t>(it - to.gens().begin()));
  }
  FpPoly out;
  for (const auto& t : x) {
    FpPoly term = to.monomial(Mono{}, t.c);
    for (std::size_t i = 0; i < from.gens().size(); ++i)
      if (t.m[i]) term = to.mul(term, to.monomial(to.generator(ids[i], t.m[i])));
    add_scaled(out, 1, term, to.field());
  }
  return out;
}

}  // namespace

std::vector<ScheduledGenerator> automatic_schedule(const SphereProduct& x) {
  std::vector<ScheduledGenerator> out;
  for (int j = 1; j <= x.k(); ++j) {
    const int n = x.dims()[j - 1];
    const std::string js = std::to_string(j);
    if (n % 2) {
      out.push_back({"sigma" + js, n});
    } else {
      out.push_back({"tau" + js, n});
      if (x.has_eta(j)) out.push_back({"eta" + js, 2 * n - 1});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  return out;
}

TowerReport tower_build(const SphereProduct& x, int r, fp::u32 l,
                        const std::optional<std::vector<ScheduledGenerator>>& schedule,
                        const std::map<std::string, graded::Element>& twist) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  if (l == 2 || !coeff::is_prime(l)) fail(ErrorCode::InvalidArgument, "l must be an odd prime");
  TowerReport rep;
  rep.spheres = x;
  rep.r = r;
  rep.l = l;
  const auto tag = coeff::RingTag::local_at(l);

  std::vector<graded::Generator> gens;
  std::vector<graded::Element> diff;
  for (int i = 1; i <= r; ++i) {
    gens.push_back({"t" + std::to_string(i), 2, 1});
    diff.emplace_back(tag);
  }
  for (int i = 1; i <= r; ++i) {
    gens.push_back({"s" + std::to_string(i), 1, 1});
    diff.push_back(graded::Element::term({{static_cast<std::uint32_t>(i - 1), 1}}, coeff::Scalar::from_int(l, tag)));
  }
  graded::FreeCGDA e(tag, gens, diff);
  rep.stages.push_back({0, 1, {}});
  for (const auto& g : gens) rep.stages.back().names.push_back(g.name);

  auto sched = schedule ? *schedule : automatic_schedule(x);
  std::stable_sort(sched.begin(), sched.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  for (const auto& [name, _] : twist)
    if (std::none_of(sched.begin(), sched.end(), [&](const auto& s) { return s.name == name; }))
      fail(ErrorCode::InvalidArgument, "twisting given for unscheduled generator '" + name + "'");
  int top = 1;
  for (std::size_t a = 0; a < sched.size();) {
    const int t = sched[a].degree;
    if (t < 1) fail(ErrorCode::InvalidArgument, "scheduled degrees must be >= 1");
    const int bar = graded::filtration_bar(t);
    if (bar >= static_cast<int>(l))
      fail(ErrorCode::ScheduleDegreeTooTame, "degree " + std::to_string(t) + " has filtration " + std::to_string(bar) +
                                                 " >= l = " + std::to_string(l));
    graded::DgModule v;
    std::vector<graded::Element> tau;
    TowerStage stage{t, bar, {}};
    for (; a < sched.size() && sched[a].degree == t; ++a) {
      const auto& s = sched[a];
      v.basis.push_back({s.name, t, bar});
      v.d.emplace_back();
      stage.names.push_back(s.name);
      auto it = twist.find(s.name);
      if (it != twist.end()) {
        tau.push_back(it->second);
      } else if (s.name.rfind("eta", 0) == 0 && e.find("tau" + s.name.substr(3))) {
        tau.push_back(graded::Element::term({{e.id("tau" + s.name.substr(3)), 2}}, coeff::Scalar::from_int(1, tag)));
      } else {
        tau.emplace_back(tag);
      }
    }
    e = graded::free_extension(e, v, tau);
    rep.stages.push_back(std::move(stage));
    top = t;
  }
  rep.level = graded::filtration_bar(top);
  rep.filtered = e;
  rep.reduced = FpAlgebra::from(e, l);

  try {
    std::vector<GenInfo> info;
    FpAlgebra layout = model_layout(x, r, l, &info);
    if (layout.gens().size() != rep.reduced.gens().size()) {
      rep.mismatch = "generator counts differ";
      return rep;
    }
    Twist tw;
    for (std::size_t g = 0; g < rep.reduced.gens().size(); ++g) {
      const auto& gen = rep.reduced.gens()[g];
      auto it = std::find_if(layout.gens().begin(), layout.gens().end(), [&](const auto& h) { return h.name == gen.name; });
      if (it == layout.gens().end() || it->degree != gen.degree) {
        rep.mismatch = "generator '" + gen.name + "' has no counterpart of the same degree";
        return rep;
      }
      const auto id = static_cast<std::size_t>(it - layout.gens().begin());
      FpPoly dg = remap(rep.reduced, layout, rep.reduced.differential(g));
      if (info[id].kind == GenKind::T || info[id].kind == GenKind::S) {
        if (!dg.empty()) {
          rep.mismatch = "d(" + gen.name + ") does not vanish mod l";
          return rep;
        }
        continue;
      }
      tw[gen.name] = dg;
    }
    ModelE m = build_model(x, r, l, tw);
    for (std::size_t g = 0; g < rep.reduced.gens().size(); ++g) {
      const auto& name = rep.reduced.gens()[g].name;
      std::size_t id = 0;
      while (m.alg.gens()[id].name != name) ++id;
      if (remap(rep.reduced, m.alg, rep.reduced.differential(g)) != m.alg.differential(id)) {
        rep.mismatch = "differential of '" + name + "' differs";
        return rep;
      }
    }
    rep.matches_model = true;
  } catch (const Error& err) {
    rep.mismatch = err.what();
  }
  return rep;
}

}  // namespace tame::rankbound

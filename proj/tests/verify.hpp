#pragma once

// Recomputes every equation a rank verdict claims. Returns an empty string
// when all of them hold.

#include <string>

#include "tame/rankbound.hpp"

namespace verify {

using namespace tame::rankbound;

inline std::string verdict(const ModelE& e, const RankVerdict& v) {
  for (const auto& w : v.property4.witnesses)
    if (e.alg.d(w.witness) != w.target) return "d(" + poly_string(e.alg, w.witness) + ") != target";
  if (!v.genial) return {};
  const ModelF f = quotient_F(e);
  const auto& a = f.delta;
  for (const auto& c : v.genial->monomials)
    if (a.d(c.witness) != c.target) return "delta(c1) != " + poly_string(a, c.target);
  for (const auto& n : v.genial->nilpotency) {
    const FpPoly x = a.pow(a.monomial(a.generator(n.generator)), n.order);
    if (a.d(n.witness) != x) return "delta(witness) != " + n.name + "^" + std::to_string(n.order);
  }
  if (v.ideal) {
    if (v.ideal->generators.size() != v.ideal->names.size()) return "ideal names and generators differ";
    if (v.bound == "k_o >= r" && e.spheres.k_o() < e.r) return "bound claims k_o >= r with k_o < r";
  }
  return {};
}

}  // namespace verify

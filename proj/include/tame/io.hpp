#pragma once

// Text formats: polynomial expressions, algebra and simplicial-set files,
// twist files, and the JSON reports (schema 1).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tame/cenkl.hpp"
#include "tame/graded.hpp"
#include "tame/homology.hpp"
#include "tame/rankbound.hpp"

namespace tame::io {

using nlohmann::ordered_json;

constexpr int kSchema = 1;

// "3*t1^2*s1 - 1/2*sigma1 + 4": a sum of products of a rational
// coefficient and named factors, multiplied in the written order.
struct ParsedTerm {
  coeff::Rational coeff;
  std::vector<std::pair<std::string, unsigned>> factors;
};

std::vector<ParsedTerm> parse_polynomial(const std::string& text);
graded::Element to_element(const graded::FreeCGDA& a, const std::vector<ParsedTerm>& terms);
homology::FpPoly to_fp(const homology::FpAlgebra& a, const std::vector<ParsedTerm>& terms);
std::string element_string(const graded::FreeCGDA& a, const graded::Element& x);

coeff::RingTag parse_ring(const ordered_json& j);
ordered_json ring_json(const coeff::RingTag& tag);

graded::FreeCGDA parse_algebra(const std::string& text);
ordered_json algebra_json(const graded::FreeCGDA& a);

cenkl::SimplicialSetFin parse_simplicial_set(const std::string& text);
// A built-in name, or else JSON text.
cenkl::SimplicialSetFin load_space(const std::string& name_or_json);

// {"sigma1": "t1^2", ...} read against the model layout.
rankbound::Twist parse_twist(const std::string& text, const rankbound::SphereProduct& x, int r, fp::u32 p);
std::vector<int> parse_dims(const std::string& csv);
// [{"name": "sigma1", "degree": 3}, ...]
std::vector<rankbound::ScheduledGenerator> parse_schedule(const std::string& text);
// {"sigma1": "t1^2"} over Z_(l), read against t, s and the sorted schedule.
std::map<std::string, graded::Element> parse_tower_twist(const std::string& text, int r, fp::u32 l,
                                                         std::vector<rankbound::ScheduledGenerator> schedule);

// Reports. Every report carries "schema" and "command"; numbers that are
// ring elements are strings.
ordered_json cohomology_report(const homology::CohomologyReport& r, const graded::FreeCGDA& a);
ordered_json coboundary_report(const homology::CoboundaryWitness& w, const graded::FreeCGDA& a, fp::u32 field);
ordered_json filtration_report(const graded::AdmissibilityResult& adm, const std::vector<int>& table,
                               const graded::OptimalityResult* opt, int opt_tmax, int slack);
ordered_json zigzag_report(const cenkl::ZigzagReport& r, const std::string& space);
ordered_json forms_report(const std::vector<homology::ModuleCohomology>& h, const std::string& space, int q,
                          std::optional<std::uint64_t> field, const std::string& note);
ordered_json massey_report(const cenkl::MasseyReport& r);
ordered_json rank_report(const rankbound::RankVerdict& v, const rankbound::ModelE& e);
ordered_json search_report(const rankbound::SearchSummary& s, const rankbound::SearchConfig& cfg);
ordered_json tower_report(const rankbound::TowerReport& t, int max_degree);

std::string dump(const ordered_json& j);

}  // namespace tame::io

// tame-cgda: command-line front end over the C API.
//
// Exit codes: 0 success, 1 refuted/failed verdict or engine error, 2 parse
// or usage error. A JSON report goes to stdout (or --output) on 0 and 1; the
// one-line summary goes to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tame/tame.h"

namespace {

struct Options {
  std::string output;
  bool quiet = false;

  std::string algebra, target, space, spheres = "3", twist, schedule, candidate, strategy = "exhaustive";
  int level = -1, max_degree = 4, cenkl_degree = 2, tower_degree = 6, tmax = 12, optimality = 0, slack = 2, r = 1, skeleton = 3;
  std::uint32_t field = 0, prime = 3, l = 3;
  std::uint64_t seed = 0, samples = 1000, budget = 0;
  unsigned threads = 0;
  bool check_admissible = false, compare = false, tau_closed = false, basis = false;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

int write_out(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(o.output);
  if (!f) {
    std::cerr << "cannot write '" << o.output << "'\n";
    return 2;
  }
  f << text;
  return 0;
}

int finish(const Options& o, const std::string& command, tame_status st, tame_report* rep);

// Runs f(&report) and then reports; keeps the call ahead of reading the handle.
template <class F>
int run(const Options& o, const std::string& command, F&& f) {
  tame_report* rep = nullptr;
  const tame_status st = f(&rep);
  return finish(o, command, st, rep);
}

int finish(const Options& o, const std::string& command, tame_status st, tame_report* rep) {
  if (st != TAME_OK) {
    const std::string msg = tame_last_error();
    std::cerr << "error: " << msg << "\n";
    if (st == TAME_PARSE_ERROR || st == TAME_INVALID_ARGUMENT) return 2;
    write_out(o, "{\n  \"schema\": 1,\n  \"command\": \"" + command + "\",\n  \"error\": {\n    \"status\": \"" +
                     tame_status_name(st) + "\",\n    \"message\": \"" + escape(msg) + "\"\n  }\n}\n");
    return 1;
  }
  const bool passed = tame_report_passed(rep);
  if (!o.quiet) std::cerr << command << ": " << tame_report_summary(rep) << "\n";
  int rc = write_out(o, tame_report_json(rep));
  tame_report_free(rep);
  return rc ? rc : (passed ? 0 : 1);
}

int with_algebra(const Options& o, const std::string& command,
                 const std::function<tame_status(const tame_algebra*, tame_report**)>& f) {
  tame_algebra* a = nullptr;
  tame_status st = tame_algebra_parse(slurp(o.algebra).c_str(), &a);
  if (st != TAME_OK) return finish(o, command, st, nullptr);
  tame_report* rep = nullptr;
  st = f(a, &rep);
  tame_algebra_free(a);
  return finish(o, command, st, rep);
}

std::vector<int> read_table(const std::string& text) {
  std::vector<int> out;
  std::string cleaned;
  for (char c : text) cleaned += (c == '[' || c == ']' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for filtered CGDAs, Cenkl-Porter forms and rank bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tame_version()));
  Options o;
  app.add_option("-o,--output", o.output, "Write the JSON report here instead of stdout");
  app.add_flag("-q,--quiet", o.quiet, "Skip the summary line");

  auto* coh = app.add_subcommand("cohomology", "Cohomology of a filtration slice over F_l");
  coh->add_option("--algebra", o.algebra, "Algebra JSON file ('-' for stdin)")->required();
  coh->add_option("--level", o.level, "Filtration level q (omit for the whole algebra)");
  coh->add_option("--field", o.field, "Prime l (defaults to the ring's prime for F_l)");
  coh->add_option("--max-degree", o.max_degree, "Top degree");
  coh->add_flag("--basis", o.basis, "Include representative cocycles");

  auto* cob = app.add_subcommand("coboundary", "Decide whether a cocycle is exact and find a witness");
  cob->add_option("--algebra", o.algebra, "Algebra JSON file")->required();
  cob->add_option("--target", o.target, "Expression such as \"2*x*y - z\"")->required();
  cob->add_option("--level", o.level, "Filtration level q");
  cob->add_option("--field", o.field, "Prime l");
  cob->add_option("--max-degree", o.max_degree, "Truncation bound");

  auto* fil = app.add_subcommand("filtration", "Admissibility and optimality of the filtration function");
  fil->add_flag("--check-admissible", o.check_admissible, "Check admissibility of the table");
  fil->add_option("--tmax", o.tmax, "Largest t");
  fil->add_option("--candidate", o.candidate, "File with a table f(1..tmax) (default: the standard function)");
  fil->add_option("--optimality", o.optimality, "Also verify optimality up to this t");
  fil->add_option("--slack", o.slack, "Candidate values range up to bar(t) + slack");

  auto* cen = app.add_subcommand("cenkl", "Cenkl-Porter forms against simplicial cochains");
  cen->add_option("--space", o.space, "Built-in name or simplicial-set JSON file")->required();
  cen->add_option("--level", o.level, "Filtration level q")->required();
  cen->add_option("--field", o.field, "Prime l (omit to work over Q_q)");
  cen->add_option("--max-degree", o.cenkl_degree, "Top degree");
  cen->add_flag("--compare", o.compare, "Run the zig-zag comparison (always on)");

  auto* mas = app.add_subcommand("massey", "l-fold Massey product on a skeleton of B(Z/l)");
  mas->add_option("--l", o.l, "Odd prime l");
  mas->add_option("--skeleton", o.skeleton, "Skeleton dimension");

  auto* rank = app.add_subcommand("rank", "Rank-bound pipeline for one model");
  rank->add_option("--spheres", o.spheres, "Sphere dimensions, e.g. 3,5")->required();
  rank->add_option("--prime", o.prime, "Prime p")->required();
  rank->add_option("--r", o.r, "Rank r");
  rank->add_option("--twist", o.twist, "Twist JSON file (default: the diagonal twist)");

  auto* rs = app.add_subcommand("rank-search", "Search the twisting space for models passing the property4 exactness check");
  rs->add_option("--spheres", o.spheres, "Sphere dimensions")->required();
  rs->add_option("--prime", o.prime, "Prime p")->required();
  rs->add_option("--r", o.r, "Rank r");
  rs->add_option("--strategy", o.strategy, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  rs->add_option("--seed", o.seed, "Seed for the random strategy");
  rs->add_option("--samples", o.samples, "Samples for the random strategy");
  rs->add_option("--budget", o.budget, "Point budget for exhaustion");
  rs->add_option("--threads", o.threads, "Worker threads (0: hardware, capped by TAME_CGDA_THREADS)");
  rs->add_flag("--tau-closed", o.tau_closed, "Force d(tau) = 0");

  auto* tow = app.add_subcommand("tower", "Filtered tower over Z_(l) and its reduction mod l");
  tow->add_option("--spheres", o.spheres, "Sphere dimensions (empty for a point)");
  tow->add_option("--l", o.l, "Odd prime l")->required();
  tow->add_option("--r", o.r, "Rank r");
  tow->add_option("--schedule", o.schedule, "Schedule JSON file");
  tow->add_option("--twist", o.twist, "Twist JSON file over Z_(l)");
  tow->add_option("--max-degree", o.tower_degree, "Top degree of the reported cohomology");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*coh)
      return with_algebra(o, "cohomology", [&](const tame_algebra* a, tame_report** r) {
        return tame_cohomology(a, o.level, o.field, o.max_degree, o.basis, r);
      });
    if (*cob)
      return with_algebra(o, "coboundary", [&](const tame_algebra* a, tame_report** r) {
        return tame_coboundary(a, o.target.c_str(), o.level, o.field, o.max_degree, r);
      });

    if (*fil) {
      std::vector<int> table;
      if (!o.candidate.empty()) {
        table = read_table(slurp(o.candidate));
      } else {
        for (int t = 1; t <= o.tmax; ++t) table.push_back(tame_filtration_bar(t));
      }
      if (!o.candidate.empty() && static_cast<int>(table.size()) > o.tmax && fil->count("--tmax"))
        table.resize(static_cast<std::size_t>(o.tmax));
      return run(o, "filtration", [&](tame_report** r) {
        return tame_filtration(table.data(), table.size(), o.optimality, o.slack, r);
      });
    }
    if (*cen) {
      std::string src = o.space;
      if (std::filesystem::is_regular_file(src)) src = slurp(src);
      tame_space* x = nullptr;
      tame_report* rep = nullptr;
      tame_status st = tame_space_load(src.c_str(), &x);
      if (st == TAME_OK) st = tame_cenkl(x, o.level, o.field, o.cenkl_degree, &rep);
      tame_space_free(x);
      return finish(o, "cenkl", st, rep);
    }
    if (*mas) return run(o, "massey", [&](tame_report** r) { return tame_massey(o.l, o.skeleton, r); });
    if (*rank) {
      const std::string tw = o.twist.empty() ? "" : slurp(o.twist);
      return run(o, "rank", [&](tame_report** r) {
        return tame_rank(o.spheres.c_str(), o.r, o.prime, o.twist.empty() ? nullptr : tw.c_str(), r);
      });
    }
    if (*rs) {
      tame_search_options so;
      tame_search_options_init(&so);
      so.dims = o.spheres.c_str();
      so.r = o.r;
      so.p = o.prime;
      so.random = o.strategy == "random";
      so.seed = o.seed;
      so.samples = o.samples;
      so.budget = o.budget;
      so.threads = o.threads;
      so.tau_closed = o.tau_closed;
      return run(o, "rank-search", [&](tame_report** r) { return tame_rank_search(&so, r); });
    }
    if (*tow) {
      const std::string sc = o.schedule.empty() ? "" : slurp(o.schedule);
      const std::string tw = o.twist.empty() ? "" : slurp(o.twist);
      return run(o, "tower", [&](tame_report** r) {
        return tame_tower(o.spheres.c_str(), o.r, o.l, o.schedule.empty() ? nullptr : sc.c_str(),
                          o.twist.empty() ? nullptr : tw.c_str(), o.tower_degree, r);
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#pragma once

// Command-line front end. run() never calls exit(); it returns
// 0 on success, 1 when a verification reports failures, 2 on usage errors.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flagsplit/big_cell.hpp"
#include "flagsplit/coxeter.hpp"
#include "flagsplit/errors.hpp"
#include "flagsplit/flags.hpp"
#include "flagsplit/report.hpp"
#include "flagsplit/richardson.hpp"
#include "flagsplit/systems.hpp"

namespace flagsplit::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailures = 1;
inline constexpr int kUsage = 2;

struct SeedOptions {
  bool all = false;
  std::string list;
};

/// "v:w;v:w;..." with each side a reduced word.
inline std::vector<Interval> parse_interval_list(const WeylGroup& g, const std::string& text) {
  std::vector<Interval> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw validation_error("interval '" + item + "' must look like v:w");
    out.push_back(make_interval(g, g.parse_element(item.substr(0, colon)), g.parse_element(item.substr(colon + 1))));
  }
  if (out.empty()) throw validation_error("empty interval list");
  return out;
}

inline SubvarietySystem seeded_system(const WeylGroup& g, const SeedOptions& seed) {
  if (seed.all) return closure(g, all_intervals(g));
  if (!seed.list.empty()) return closure(g, parse_interval_list(g, seed.list));
  return closure(g, boundary_divisor_seed(g));
}

/// Rows separated by ';', entries by spaces or commas.
inline FqMatrix parse_matrix(const std::string& text, std::uint32_t q) {
  std::vector<std::int64_t> entries;
  std::size_t rows = 0;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    for (char& c : row)
      if (c == ',') c = ' ';
    std::stringstream rs(row);
    std::string tok;
    std::size_t width = 0;
    while (rs >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw validation_error("bad matrix entry '" + tok + "'");
      entries.push_back(v);
      ++width;
    }
    if (width) ++rows;
  }
  const std::size_t n = rows;
  if (n == 0 || entries.size() != n * n) throw validation_error("matrix must be square");
  return FqMatrix(n, q, entries);
}

namespace detail {

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::uint64_t max_order = GenerateOptions{}.max_order;
};

inline WeylGroup group(const Context& ctx, const std::string& type) {
  return WeylGroup::generate(parse_cartan_type(type), GenerateOptions{ctx.max_order});
}

inline void print_list(const Context& ctx, const WeylGroup& g, const std::vector<Interval>& xs) {
  if (ctx.json) {
    ctx.out << report::json{{"components", report::intervals(g, xs)}}.dump(2) << "\n";
    return;
  }
  if (xs.empty()) ctx.out << "empty\n";
  for (const Interval& x : xs) ctx.out << format_interval(g, x) << "\n";
}

inline int generate(const Context& ctx, const std::string& type) {
  const WeylGroup g = group(ctx, type);
  if (ctx.json) {
    ctx.out << report::group(g).dump(2) << "\n";
    return kOk;
  }
  ctx.out << "type " << to_string(g.cartan()) << ", rank " << g.rank() << "\n"
          << "order " << g.size() << "\n"
          << "longest element " << g.name(g.longest()) << " (length " << g.length(g.longest()) << ")\n"
          << "reflections " << g.num_positive_roots() << "\n";
  return kOk;
}

inline int leq(const Context& ctx, const std::string& type, const std::string& v, const std::string& w) {
  const WeylGroup g = group(ctx, type);
  const bool r = g.bruhat_leq(g.parse_element(v), g.parse_element(w));
  if (ctx.json) ctx.out << report::json{{"v", v}, {"w", w}, {"leq", r}}.dump(2) << "\n";
  else ctx.out << (r ? "true" : "false") << "\n";
  return kOk;
}

inline int intersect_verb(const Context& ctx, const std::string& type, const std::vector<std::string>& words) {
  const WeylGroup g = group(ctx, type);
  const Interval a = make_interval(g, g.parse_element(words[0]), g.parse_element(words[1]));
  const Interval b = make_interval(g, g.parse_element(words[2]), g.parse_element(words[3]));
  print_list(ctx, g, intersect(g, a, b).components());
  return kOk;
}

inline int divisors_verb(const Context& ctx, const std::string& type, const std::string& v, const std::string& w) {
  const WeylGroup g = group(ctx, type);
  print_list(ctx, g, divisors(g, make_interval(g, g.parse_element(v), g.parse_element(w))));
  return kOk;
}

inline int closure_verb(const Context& ctx, const std::string& type, const SeedOptions& seed) {
  const WeylGroup g = group(ctx, type);
  const SubvarietySystem sys = seeded_system(g, seed);
  if (ctx.json) {
    ctx.out << report::system(g, sys).dump(2) << "\n";
    return kOk;
  }
  ctx.out << "system size " << sys.size() << " (comparable pairs " << all_intervals(g).size() << ")\n";
  for (const Interval& x : sys.members()) ctx.out << "  " << format_interval(g, x) << "  dim " << dim(g, x) << "\n";
  return kOk;
}

inline int verify_normal(const Context& ctx, const std::string& type, const SeedOptions& seed) {
  const WeylGroup g = group(ctx, type);
  const SubvarietySystem sys = seeded_system(g, seed);
  const Axiom2Report a2 = check_normal_axiom2(g, sys);
  const Axiom3Report a3 = axiom3_surrogate(g, sys);
  const std::size_t failures = a2.violations.size() + a3.violations.size();
  if (ctx.json) {
    ctx.out << report::normal(g, sys, a2, a3).dump(2) << "\n";
  } else {
    ctx.out << "system size " << sys.size() << "\n"
            << "axiom 2: checked " << a2.checked << " members, " << a2.violations.size() << " failures\n"
            << "axiom 3 surrogate: checked " << a3.checked << " pairs, " << a3.violations.size() << " failures\n";
    for (const auto& v : a2.violations)
      ctx.out << "  axiom 2 fails at " << format_interval(g, v.y) << " (" << v.only_in_bar.size() << " only in closure-below, "
              << v.only_in_xy.size() << " only in divisor closure)\n";
    for (const auto& v : a3.violations)
      ctx.out << "  axiom 3 fails: " << format_interval(g, v.z) << " inside " << format_interval(g, v.y) << " lies in no divisor member\n";
  }
  return failures ? kFailures : kOk;
}

inline int verify_star(const Context& ctx, const std::string& type, const SeedOptions& seed) {
  const WeylGroup g = group(ctx, type);
  const SubvarietySystem sys = seeded_system(g, seed);
  const StarReport r = check_star_all(g, sys.members());
  if (ctx.json) {
    ctx.out << report::star(g, r).dump(2) << "\n";
  } else {
    ctx.out << "checked " << r.checked << " pairs, " << r.failures.size() << " failures\n";
    for (const auto& f : r.failures)
      ctx.out << "  X=" << format_interval(g, f.x) << " D=" << format_interval(g, f.d) << " E=" << format_interval(g, f.e) << ": " << f.reason
              << "\n";
  }
  return r.failures.empty() ? kOk : kFailures;
}

inline int verify_splitting(const Context& ctx, std::size_t n, std::uint32_t p, const std::string& candidates) {
  const BigCellModel m = build_big_cell(n, p);
  std::vector<ChartIdeal> extra;
  if (!candidates.empty()) {
    std::ifstream in(candidates);
    if (!in) throw validation_error("cannot open candidates file " + candidates);
    report::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw validation_error(std::string("candidates file is not JSON: ") + e.what());
    }
    extra = report::parse_candidates(j, p, m.names);
  }
  const SplitSweep sweep = enumerate_split_primes(m, extra);
  const auto failures = audit_sweep(m, sweep);
  if (ctx.json) {
    ctx.out << report::splitting(m, sweep, failures).dump(2) << "\n";
    return failures.empty() ? kOk : kFailures;
  }
  ctx.out << "SL_" << n << " big cell over F_" << p << "\n"
          << "section " << m.format(m.section().poly()) << "\n"
          << "root    " << (m.root ? m.format(*m.root) : std::string("none")) << "\n";
  for (const DivisorEquation& d : m.divisors)
    ctx.out << "divisor " << format_interval(m.group, d.divisor) << "  " << m.format(d.equation)
            << (d.at_infinity() ? "  (at infinity)" : "") << "\n";
  ctx.out << "\n" << std::left << std::setw(7) << "split" << std::setw(11) << "primality" << "candidate\n";
  for (const CandidateVerdict& v : sweep.verdicts) {
    std::string label;
    for (const auto& l : v.candidate.labels) label += (label.empty() ? "" : " = ") + l;
    ctx.out << std::setw(7) << (v.split ? "yes" : "no") << std::setw(11) << to_string(v.primality) << label << "\n";
    if (v.witness)
      ctx.out << std::setw(18) << "" << "trace image " << m.format(v.witness->image) << " escapes the ideal\n";
  }
  ctx.out << "\nsplit primes " << sweep.split_primes().size() << ", intervals meeting the chart "
          << intervals_meeting_chart(m.group).size() << ", " << failures.size() << " failures\n";
  for (const auto& f : failures) ctx.out << "  " << f << "\n";
  return failures.empty() ? kOk : kFailures;
}

inline int decompose_verb(const Context& ctx, const std::string& text, std::uint32_t q) {
  const FqMatrix m = parse_matrix(text, q);
  if (m.size() < 2) throw validation_error("matrix size must be at least 2");
  const WeylGroup g = WeylGroup::generate(CartanType{Family::A, static_cast<int>(m.size() - 1)},
                                          GenerateOptions{ctx.max_order});
  const Element b = bruhat_decompose(g, m);
  const Element a = opposite_decompose(g, m);
  if (ctx.json) {
    ctx.out << report::json{{"n", m.size()}, {"q", q}, {"bruhat", g.name(b)}, {"opposite", g.name(a)}}.dump(2) << "\n";
  } else {
    ctx.out << "B w B:   " << g.name(b) << "\n"
            << "B- w B:  " << g.name(a) << "\n";
  }
  return kOk;
}

inline int export_verb(const Context& ctx, const std::string& type, const std::string& what, const std::string& format,
                       const SeedOptions& seed) {
  const WeylGroup g = group(ctx, type);
  const bool as_json = ctx.json || format == "json";
  if (what == "hasse") {
    if (as_json) ctx.out << report::hasse(g).dump(2) << "\n";
    else write_hasse_dot(g, ctx.out);
  } else {
    const SubvarietySystem sys = seeded_system(g, seed);
    if (as_json) ctx.out << report::system(g, sys).dump(2) << "\n";
    else report::write_system_dot(g, sys, ctx.out);
  }
  return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bruhat order, Richardson varieties and Frobenius splittings for small groups", "flagsplit"};
  app.require_subcommand(1);
  detail::Context ctx{out, err};
  SeedOptions seed;
  std::string type, v, w, what = "hasse", format = "dot", candidates, matrix;
  std::vector<std::string> words;
  std::size_t n = 3;
  std::uint32_t prime = 2, q = 2;

  auto common = [&](CLI::App* sub, bool typed) {
    sub->add_flag("--json", ctx.json, "machine-readable output");
    if (!typed) return;
    sub->add_option("type", type, "Cartan type, e.g. A3, B2, G2")->required();
    sub->add_option("--max-order", ctx.max_order, "group order cap")->check(CLI::PositiveNumber);
  };
  auto seeded = [&](CLI::App* sub) {
    auto* all = sub->add_flag("--seed-all", seed.all, "seed the closure with every interval");
    sub->add_option("--seed-list", seed.list, "seed intervals as v:w;v:w;...")->excludes(all);
  };

  auto* gen = app.add_subcommand("generate", "group order, longest element, reflections");
  common(gen, true);
  auto* leq = app.add_subcommand("leq", "Bruhat comparison v <= w");
  common(leq, true);
  leq->add_option("v", v)->required();
  leq->add_option("w", w)->required();
  auto* inter = app.add_subcommand("intersect", "components of [v1,w1] ∩ [v2,w2]");
  common(inter, true);
  inter->add_option("words", words, "v1 w1 v2 w2")->required()->expected(4);
  auto* divs = app.add_subcommand("divisors", "codimension-one Richardson subvarieties of [v,w]");
  common(divs, true);
  divs->add_option("v", v)->required();
  divs->add_option("w", w)->required();
  auto* clo = app.add_subcommand("closure", "intersection closure of a seed");
  common(clo, true);
  seeded(clo);
  auto* vn = app.add_subcommand("verify-normal", "normal-system axioms on the closed system");
  common(vn, true);
  seeded(vn);
  auto* vs = app.add_subcommand("verify-star", "(*) condition on every member of dimension >= 2");
  common(vs, true);
  seeded(vs);
  auto* vsp = app.add_subcommand("verify-splitting", "compatibly split candidates on the SL_n big cell");
  common(vsp, false);
  vsp->add_option("--n", n, "matrix size (2 or 3)")->check(CLI::Range(2, 3));
  vsp->add_option("--prime", prime, "characteristic (2, 3 or 5)")->check(CLI::IsMember({2, 3, 5}));
  vsp->add_option("--candidates", candidates, "JSON file with extra ideals: [[\"x21 - x31\", ...], ...]");
  auto* dec = app.add_subcommand("decompose", "Bruhat and opposite cells of a matrix over F_q");
  common(dec, false);
  dec->add_option("--matrix", matrix, "rows separated by ';', e.g. \"0 1 0; 1 0 0; 0 0 1\"")->required();
  dec->add_option("--q", q, "prime field size");
  auto* exp = app.add_subcommand("export", "Hasse diagram or system containment graph");
  common(exp, true);
  exp->add_option("--what", what)->check(CLI::IsMember({"hasse", "system"}));
  exp->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  seeded(exp);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) return detail::generate(ctx, type);
    if (leq->parsed()) return detail::leq(ctx, type, v, w);
    if (inter->parsed()) return detail::intersect_verb(ctx, type, words);
    if (divs->parsed()) return detail::divisors_verb(ctx, type, v, w);
    if (clo->parsed()) return detail::closure_verb(ctx, type, seed);
    if (vn->parsed()) return detail::verify_normal(ctx, type, seed);
    if (vs->parsed()) return detail::verify_star(ctx, type, seed);
    if (vsp->parsed()) return detail::verify_splitting(ctx, n, prime, candidates);
    if (dec->parsed()) return detail::decompose_verb(ctx, matrix, q);
    if (exp->parsed()) return detail::export_verb(ctx, type, what, format, seed);
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const resource_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const construction_error& e) {
    err << "construction failed: " << e.what() << "\n";
    return kFailures;
  } catch (const theorem_violation& e) {
    err << "verification failed: " << e.what() << "\n";
    return kFailures;
  }
  return kUsage;
}

}  // namespace flagsplit::cli

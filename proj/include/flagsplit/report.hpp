#pragma once

// JSON views of groups, systems and verification reports. Element ids never
// leave the process except as node ids inside one graph; everything else is
// keyed by reduced words.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flagsplit/big_cell.hpp"
#include "flagsplit/coxeter.hpp"
#include "flagsplit/richardson.hpp"
#include "flagsplit/systems.hpp"

namespace flagsplit::report {

using json = nlohmann::ordered_json;

inline json interval(const WeylGroup& g, const Interval& x) { return json{{"v", g.name(x.v)}, {"w", g.name(x.w)}}; }

inline json intervals(const WeylGroup& g, const std::vector<Interval>& xs) {
  json a = json::array();
  for (const Interval& x : xs) a.push_back(interval(g, x));
  return a;
}

inline json header(const WeylGroup& g, const std::string& verb) {
  return json{{"verb", verb}, {"type", to_string(g.cartan())}, {"rank", g.rank()}};
}

inline json group(const WeylGroup& g) {
  json j = header(g, "generate");
  j["order"] = g.size();
  j["longest"] = g.name(g.longest());
  j["longest_length"] = g.length(g.longest());
  j["reflections"] = g.num_positive_roots();
  return j;
}

inline json hasse(const WeylGroup& g) {
  json j{{"type", to_string(g.cartan())}, {"nodes", json::array()}, {"edges", json::array()}};
  for (Element w : g.elements()) j["nodes"].push_back({{"id", w.id}, {"length", g.length(w)}, {"word", g.name(w)}});
  for (auto [v, w] : g.cover_pairs()) j["edges"].push_back(json::array({v.id, w.id}));
  return j;
}

/// Covering pairs of the containment order on the members of `sys`, as
/// indices into sys.members().
inline std::vector<std::pair<std::size_t, std::size_t>> containment_covers(const WeylGroup& g,
                                                                          const SubvarietySystem& sys) {
  const auto ms = sys.members();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (i == j || !contains(g, ms[j], ms[i])) continue;
      bool cover = true;
      for (std::size_t k = 0; k < ms.size() && cover; ++k)
        if (k != i && k != j && contains(g, ms[j], ms[k]) && contains(g, ms[k], ms[i])) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

inline json system(const WeylGroup& g, const SubvarietySystem& sys) {
  json j{{"type", to_string(g.cartan())}, {"size", sys.size()}, {"members", json::array()}, {"edges", json::array()}};
  for (const Interval& x : sys.members()) {
    json m = interval(g, x);
    m["dim"] = dim(g, x);
    j["members"].push_back(std::move(m));
  }
  for (auto [i, k] : containment_covers(g, sys)) j["edges"].push_back(json::array({i, k}));
  return j;
}

inline void write_system_dot(const WeylGroup& g, const SubvarietySystem& sys, std::ostream& os) {
  os << "digraph system_" << to_string(g.cartan()) << " {\n  rankdir=BT;\n";
  const auto ms = sys.members();
  for (std::size_t i = 0; i < ms.size(); ++i)
    os << "  m" << i << " [label=\"" << format_interval(g, ms[i]) << "\"];\n";
  for (auto [i, k] : containment_covers(g, sys)) os << "  m" << i << " -> m" << k << ";\n";
  os << "}\n";
}

inline json normal(const WeylGroup& g, const SubvarietySystem& sys, const Axiom2Report& a2, const Axiom3Report& a3) {
  json j = header(g, "verify-normal");
  j["system_size"] = sys.size();
  j["checked"] = a2.checked + a3.checked;
  j["failures"] = json::array();
  for (const auto& v : a2.violations)
    j["failures"].push_back({{"kind", "axiom2"},
                             {"y", interval(g, v.y)},
                             {"only_in_bar", intervals(g, v.only_in_bar)},
                             {"only_in_xy", intervals(g, v.only_in_xy)}});
  for (const auto& v : a3.violations)
    j["failures"].push_back({{"kind", "axiom3"}, {"y", interval(g, v.y)}, {"z", interval(g, v.z)}});
  return j;
}

inline json star(const WeylGroup& g, const StarReport& r) {
  json j = header(g, "verify-star");
  j["checked"] = r.checked;
  j["cases"] = r.cases;
  j["bgg_checks"] = r.bgg_checks;
  j["failures"] = json::array();
  for (const auto& f : r.failures)
    j["failures"].push_back(
        {{"x", interval(g, f.x)}, {"d", interval(g, f.d)}, {"e", interval(g, f.e)}, {"reason", f.reason}});
  return j;
}

inline json splitting(const BigCellModel& m, const SplitSweep& sweep, const std::vector<std::string>& failures) {
  json j{{"verb", "verify-splitting"}, {"n", m.n}, {"prime", m.p}, {"variables", m.names}};
  j["section"] = m.format(m.section().poly());
  j["root"] = m.root ? json(m.format(*m.root)) : json(nullptr);
  j["is_splitting"] = is_splitting(m.section().poly());
  j["divisors"] = json::array();
  for (const DivisorEquation& d : m.divisors)
    j["divisors"].push_back({{"interval", interval(m.group, d.divisor)},
                             {"kind", d.schubert ? "schubert" : "opposite"},
                             {"equation", m.format(d.equation)},
                             {"at_infinity", d.at_infinity()}});
  j["candidates"] = json::array();
  for (const CandidateVerdict& v : sweep.verdicts) {
    json c{{"labels", v.candidate.labels}};
    c["basis"] = json::array();
    for (const PolyFp& b : v.candidate.ideal.basis()) c["basis"].push_back(m.format(b));
    c["richardson"] = v.candidate.richardson ? interval(m.group, *v.candidate.richardson) : json(nullptr);
    c["split"] = v.split;
    c["primality"] = to_string(v.primality);
    c["inside_section_zeros"] = v.inside_section_zeros;
    if (v.witness)
      c["witness"] = {{"generator", m.format(v.candidate.ideal.basis()[v.witness->generator])},
                      {"shift", v.witness->shift},
                      {"image", m.format(v.witness->image)}};
    else
      c["witness"] = nullptr;
    j["candidates"].push_back(std::move(c));
  }
  j["split_primes"] = sweep.split_primes().size();
  j["intervals_meeting_chart"] = intervals_meeting_chart(m.group).size();
  j["failures"] = failures;
  return j;
}

/// Extra candidate ideals: a JSON array of arrays of polynomial strings.
inline std::vector<ChartIdeal> parse_candidates(const json& j, std::uint32_t p, const VariableNames& names) {
  if (!j.is_array()) throw validation_error("candidates must be a JSON array of generator lists");
  std::vector<ChartIdeal> out;
  for (const auto& gens : j) {
    if (!gens.is_array()) throw validation_error("each candidate must be an array of polynomial strings");
    std::vector<PolyFp> polys;
    for (const auto& s : gens) {
      if (!s.is_string()) throw validation_error("candidate generators must be strings");
      polys.push_back(parse_poly(s.get<std::string>(), p, names));
    }
    out.emplace_back(p, names.size(), std::move(polys));
  }
  return out;
}

}  // namespace flagsplit::report

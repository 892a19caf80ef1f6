#include "amv/amcycles.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace amv::amcycles {

namespace {

const std::string kTilde = "ℓ̃";

int parse_index(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw InvalidArgument("bad index '" + s + "'");
  if (v < 1 || v > kNodes) throw InvalidArgument("node index out of range: " + s);
  return v;
}

// "3", "{3}", "{1,2}", "1_2" -> list of indices.
std::vector<int> parse_indices(std::string s) {
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw InvalidArgument("unbalanced braces in label");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = s.find_first_of(",_", start);
    out.push_back(parse_index(s.substr(start, sep - start)));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  return out;
}

std::string index_text(int i) {
  const std::string s = std::to_string(i);
  return s.size() == 1 ? s : "{" + s + "}";
}

}  // namespace

ClassVector named_class(const std::string& label) {
  const auto& curves = lattices::amx_curves();
  std::string head, rest;
  if (label.rfind(kTilde, 0) == 0) {
    head = "l";
    rest = label.substr(kTilde.size());
  } else if (!label.empty() && (label[0] == 'l' || label[0] == 'e')) {
    head = label.substr(0, 1);
    rest = label.substr(1);
  } else {
    throw InvalidArgument("unknown curve label '" + label + "'");
  }

  ClassVector c = curves.zero();
  if (rest.empty()) {
    if (head == "e") throw InvalidArgument("e needs an index");
    return curves.basis_vector(0);
  }
  if (rest[0] == '_') rest = rest.substr(1);
  const std::vector<int> idx = parse_indices(rest);

  if (head == "e") {
    if (idx.size() != 1) throw InvalidArgument("e takes exactly one index");
    return curves.basis_vector(static_cast<std::size_t>(idx[0]));
  }
  if (idx.size() > 2) throw InvalidArgument("too many indices in '" + label + "'");
  if (idx.size() == 2 && idx[0] == idx[1]) throw InvalidArgument("indices must be distinct in '" + label + "'");
  c = curves.basis_vector(0);
  for (int i : idx) c -= curves.basis_vector(static_cast<std::size_t>(i));
  return c;
}

std::int64_t anticanonical_degree(const ClassVector& c) {
  return pair_div_curve(lattices::amx_pairing(), lattices::amx_anticanonical(), c);
}

TorsionedCycle TorsionedCycle::operator+(const TorsionedCycle& other) const {
  return {numerical + other.numerical, static_cast<std::uint8_t>(torsion ^ other.torsion),
          label.empty() || other.label.empty() ? std::string() : label + " + " + other.label};
}

std::string e_unknown(int j, bool plus) {
  return "t(e_" + index_text(j) + (plus ? "^+)" : "^-)");
}

std::string line_through_unknown(int i, bool plus) {
  return "t(" + kTilde + "_" + index_text(i) + (plus ? "^+)" : "^-)");
}

std::string line_through_two_unknown(int i, int j, bool plus) {
  if (i > j) std::swap(i, j);
  return "t(" + kTilde + "_{" + std::to_string(i) + "," + std::to_string(j) + "}" + (plus ? "^+)" : "^-)");
}

std::string line_unknown(bool plus) { return "t(" + kTilde + (plus ? "^+)" : "^-)"); }

// ------------------------------------------------------- TorsionRelationSystem

std::size_t TorsionRelationSystem::add_unknown(const std::string& name) {
  if (auto i = index_of(name)) return *i;
  if (name.empty()) throw InvalidArgument("unknown name must be non-empty");
  unknowns_.push_back(name);
  return unknowns_.size() - 1;
}

std::optional<std::size_t> TorsionRelationSystem::index_of(const std::string& name) const {
  auto it = std::find(unknowns_.begin(), unknowns_.end(), name);
  if (it == unknowns_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - unknowns_.begin());
}

void TorsionRelationSystem::add_equation(std::vector<std::string> terms, std::uint8_t rhs, std::string provenance) {
  if (rhs > 1) throw InvalidArgument("rhs must be 0 or 1");
  for (const auto& t : terms) {
    if (!index_of(t)) throw InvalidArgument("equation references undeclared unknown '" + t + "'");
  }
  equations_.push_back({std::move(terms), rhs, std::move(provenance)});
}

TorsionRelationSystem TorsionRelationSystem::from_json(const nlohmann::json& doc) {
  TorsionRelationSystem sys;
  try {
    for (const auto& u : doc.at("unknowns")) {
      const auto name = u.get<std::string>();
      if (sys.index_of(name)) throw InvalidArgument("duplicate unknown '" + name + "'");
      sys.add_unknown(name);
    }
    for (const auto& e : doc.at("equations")) {
      const int rhs = e.at("rhs").get<int>();
      if (rhs != 0 && rhs != 1) throw InvalidArgument("rhs must be 0 or 1");
      sys.add_equation(e.at("terms").get<std::vector<std::string>>(), static_cast<std::uint8_t>(rhs),
                       e.value("provenance", std::string()));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed relation system: ") + ex.what());
  }
  return sys;
}

nlohmann::json TorsionRelationSystem::to_json() const {
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : equations_) eqs.push_back({{"terms", e.terms}, {"rhs", e.rhs}, {"provenance", e.provenance}});
  return {{"unknowns", unknowns_}, {"equations", std::move(eqs)}};
}

TorsionRelationSystem build_am_relation_system(const AmSystemOptions& options) {
  std::vector<int> nodes = options.nodes;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (int i : nodes) {
    if (i < 1 || i > kNodes) throw InvalidArgument("node index out of range: " + std::to_string(i));
  }

  TorsionRelationSystem sys;
  auto declare = [&](const std::string& n) { sys.add_unknown(n); };

  for (int i : nodes) {
    for (int j : nodes) {
      if (i == j) continue;
      const std::string li_p = line_through_unknown(i, true), li_m = line_through_unknown(i, false);
      const std::string lij_p = line_through_two_unknown(i, j, true), lij_m = line_through_two_unknown(i, j, false);
      const std::string ej_p = e_unknown(j, true), ej_m = e_unknown(j, false);
      for (const auto& n : {li_p, li_m, lij_p, ej_p, ej_m}) declare(n);

      const std::string where = " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
      sys.add_equation({li_p, lij_p, ej_p}, 0,
                       "specialization l_i^+ -> l_ij^+ + e_j^+ as delta_i^+ ∋ q^+ -> q_j" + where);
      sys.add_equation({li_m, lij_p, ej_m}, 0,
                       "specialization l_i^- -> l_ij^+ + e_j^- as delta_i^- ∋ q^- -> q_j" + where);
      if (options.conjugate_specializations) {
        declare(lij_m);
        sys.add_equation({li_p, lij_m, ej_m}, 0,
                         "involution image of l_i^+ -> l_ij^+ + e_j^+; l_i^+ and its conjugate are "
                         "algebraically equivalent" + where);
      }
    }
  }
  for (int i : nodes) {
    const std::string li_p = line_through_unknown(i, true), li_m = line_through_unknown(i, false);
    if (!sys.index_of(li_p)) continue;
    sys.add_equation({li_p, li_m}, 1,
                     "l_" + std::to_string(i) + "^+ and l_" + std::to_string(i) +
                         "^- are not algebraically equivalent (fibers over delta_i^+ vs delta_i^-)");
  }
  if (options.line_decompositions) {
    const std::string l_p = line_unknown(true), l_m = line_unknown(false);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < nodes.size(); ++b) {
        const int i = nodes[a], j = nodes[b];
        declare(l_p);
        declare(l_m);
        const std::string where = " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
        for (bool plus : {true, false}) {
          const std::string lij = line_through_two_unknown(i, j, plus);
          declare(lij);
          sys.add_equation({plus ? l_p : l_m, lij, e_unknown(i, plus), e_unknown(j, plus)}, 0,
                           std::string("decomposition l") + (plus ? "^+" : "^-") + " = l_ij" + (plus ? "^+" : "^-") +
                               " + e_i" + (plus ? "^+" : "^-") + " + e_j" + (plus ? "^+" : "^-") +
                               " from l = l_ij + e_i + e_j" + where);
        }
      }
    }
  }
  return sys;
}

// ---------------------------------------------------------------- GF(2) solve

namespace {

using Bits = std::vector<std::uint64_t>;

void flip_bit(Bits& b, std::size_t i) { b[i / 64] ^= std::uint64_t{1} << (i % 64); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
void xor_into(Bits& dst, const Bits& src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] ^= src[k];
}
bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

struct Row {
  Bits coeffs;
  std::uint8_t rhs = 0;
  Bits origin;  // which input equations were combined
};

Bits encode(const TorsionRelationSystem& sys, const std::vector<std::string>& terms) {
  Bits b((sys.unknowns().size() + 63) / 64 + 1, 0);
  for (const auto& t : terms) {
    auto i = sys.index_of(t);
    if (!i) throw InvalidArgument("unknown '" + t + "' is not declared");
    flip_bit(b, *i);
  }
  return b;
}

struct Elimination {
  std::vector<Row> pivots;            // RREF rows
  std::vector<std::size_t> pivot_col; // parallel to pivots
  std::optional<Bits> contradiction;  // origin of a 0 = 1 row
};

Elimination eliminate(const TorsionRelationSystem& sys, const std::vector<std::size_t>& use) {
  const std::size_t n = sys.unknowns().size();
  const std::size_t m = sys.equations().size();
  std::vector<Row> rows;
  for (std::size_t e : use) {
    Row r{encode(sys, sys.equations()[e].terms), sys.equations()[e].rhs, Bits((m + 63) / 64 + 1, 0)};
    flip_bit(r.origin, e);
    rows.push_back(std::move(r));
  }

  Elimination out;
  std::size_t next = 0;
  for (std::size_t col = 0; col < n && next < rows.size(); ++col) {
    std::size_t p = next;
    while (p < rows.size() && !test_bit(rows[p].coeffs, col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[next], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && test_bit(rows[r].coeffs, col)) {
        xor_into(rows[r].coeffs, rows[next].coeffs);
        rows[r].rhs ^= rows[next].rhs;
        xor_into(rows[r].origin, rows[next].origin);
      }
    }
    out.pivot_col.push_back(col);
    ++next;
  }
  for (std::size_t r = next; r < rows.size(); ++r) {
    if (rows[r].rhs && none(rows[r].coeffs)) {
      out.contradiction = rows[r].origin;
      break;
    }
  }
  rows.resize(next);
  out.pivots = std::move(rows);
  return out;
}

std::vector<std::string> decode(const TorsionRelationSystem& sys, const Bits& b) {
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < sys.unknowns().size(); ++i)
    if (test_bit(b, i)) terms.push_back(sys.unknowns()[i]);
  return terms;
}

// Reduces `v` against the RREF; returns the rhs parity if v is in the row space.
std::optional<std::uint8_t> reduce(const Elimination& el, Bits v) {
  std::uint8_t value = 0;
  for (std::size_t k = 0; k < el.pivots.size(); ++k) {
    if (test_bit(v, el.pivot_col[k])) {
      xor_into(v, el.pivots[k].coeffs);
      value ^= el.pivots[k].rhs;
    }
  }
  if (!none(v)) return std::nullopt;
  return value;
}

std::vector<std::size_t> all_equations(const TorsionRelationSystem& sys) {
  std::vector<std::size_t> v(sys.equations().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = k;
  return v;
}

}  // namespace

Gf2Solution solve_gf2(const TorsionRelationSystem& sys) {
  const std::size_t n = sys.unknowns().size();
  const Elimination el = eliminate(sys, all_equations(sys));

  Gf2Solution sol;
  sol.unknowns = n;
  sol.rank = el.pivots.size();

  if (el.contradiction) {
    sol.consistent = false;
    std::vector<std::size_t> core;
    for (std::size_t e = 0; e < sys.equations().size(); ++e)
      if (test_bit(*el.contradiction, e)) core.push_back(e);
    // Deletion-based minimization.
    for (std::size_t k = 0; k < core.size();) {
      std::vector<std::size_t> trial = core;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
      if (eliminate(sys, trial).contradiction) core = std::move(trial);
      else ++k;
    }
    sol.core = std::move(core);
    return sol;
  }

  sol.consistent = true;
  sol.free_variables = n - sol.rank;
  sol.particular.assign(n, 0);
  for (std::size_t k = 0; k < el.pivots.size(); ++k) {
    sol.particular[el.pivot_col[k]] = el.pivots[k].rhs;
    sol.reduced.push_back({decode(sys, el.pivots[k].coeffs), el.pivots[k].rhs, ""});
  }

  // Forced single values.
  for (std::size_t i = 0; i < n; ++i) {
    Bits v((n + 63) / 64 + 1, 0);
    flip_bit(v, i);
    if (auto val = reduce(el, v)) sol.forced.push_back({{sys.unknowns()[i]}, *val, "forced value"});
  }
  // Forced sums over +/- partners.
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name = sys.unknowns()[i];
    const auto pos = name.rfind("^+");
    if (pos == std::string::npos) continue;
    std::string partner = name;
    partner[pos + 1] = '-';
    auto j = sys.index_of(partner);
    if (!j) continue;
    Bits v((n + 63) / 64 + 1, 0);
    flip_bit(v, i);
    flip_bit(v, *j);
    if (auto val = reduce(el, v)) sol.forced.push_back({{name, partner}, *val, "forced +/- sum"});
  }
  return sol;
}

std::optional<std::uint8_t> forced_value(const TorsionRelationSystem& sys, const Gf2Solution& solution,
                                         const std::vector<std::string>& terms) {
  if (!solution.consistent) throw InvalidArgument("forced_value needs a consistent system");
  return reduce(eliminate(sys, all_equations(sys)), encode(sys, terms));
}

bool satisfies(const TorsionRelationSystem& sys, const std::vector<std::uint8_t>& assignment) {
  if (assignment.size() != sys.unknowns().size()) throw InvalidArgument("assignment has wrong length");
  for (const auto& e : sys.equations()) {
    std::uint8_t sum = 0;
    for (const auto& t : e.terms) sum ^= assignment[*sys.index_of(t)] & 1u;
    if (sum != e.rhs) return false;
  }
  return true;
}

nlohmann::json Gf2Solution::to_json() const {
  auto eqs = [](const std::vector<Gf2Equation>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : v) a.push_back({{"terms", e.terms}, {"rhs", e.rhs}});
    return a;
  };
  nlohmann::json j = {{"consistent", consistent}, {"unknowns", unknowns}, {"rank", rank}};
  if (consistent) {
    j["free_variables"] = free_variables;
    j["particular_solution"] = particular;
    j["reduced"] = eqs(reduced);
    j["forced"] = eqs(forced);
  } else {
    j["core"] = core;
  }
  return j;
}

}  // namespace amv::amcycles

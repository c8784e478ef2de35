#include "arithmoduli/report.hpp"

#include <sstream>

namespace arithmoduli {

Json to_json(const Integer& z) {
  if (auto v = to_long(z)) return Json(*v);
  return Json(z.get_str());
}

Json to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json to_json(const IntLattice& l) {
  Json rows = Json::array();
  for (const auto& row : l.basis()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json to_json(const CertLevel& c) {
  Json j;
  j["mode"] = to_string(c.mode);
  j["bits"] = c.bits;
  if (c.mode == CertMode::NormCertified) j["norm_bits"] = c.norm_bits;
  j["proven_height"] = to_json(c.proven_height);
  return j;
}

Json to_json(const RelationLattice& r) {
  Json j;
  j["basis"] = to_json(r.lattice);
  j["rank"] = r.lattice.rank();
  j["cert_level"] = to_json(r.cert);
  j["rounds"] = r.rounds;
  return j;
}

Json to_json(const RootBox& b) {
  SerializedBox s = serialize(b, 30);
  Json j;
  j["re"] = s.re;
  j["im"] = s.im;
  j["radius"] = s.radius;
  j["real"] = b.real;
  return j;
}

Json to_json(const TotallyRealResult& t) {
  Json j;
  j["verdict"] = to_string(t.verdict);
  j["rank"] = t.rank;
  j["k"] = t.k;
  j["field_discriminant"] = t.field_discriminant ? Json(*t.field_discriminant) : Json(nullptr);
  j["exponents"] = t.exponents;
  return j;
}

Json to_json(const DecideConfig& c) {
  Json j;
  j["precision_start"] = c.relations.precision_start;
  j["precision_cap"] = c.relations.precision_cap;
  j["height_bound"] = to_json(c.relations.height_bound);
  j["cert_mode"] = to_string(c.relations.mode);
  j["fast_paths"] = to_string(c.fast_paths);
  j["root_precision"] = c.root_precision;
  j["power_search_bound"] = c.power_search_bound;
  return j;
}

Json to_json(const ValidationOutcome& v) {
  Json j;
  j["unimodular"] = v.unimodular;
  j["hyperbolic"] = v.hyperbolic;
  j["semisimple"] = v.semisimple;
  j["det"] = to_json(v.det);
  j["charpoly"] = to_json(v.charpoly);
  Json f = Json::array();
  for (const auto& [g, msg] : v.failures) {
    Json e;
    e["gate"] = to_string(g);
    e["witness"] = msg;
    f.push_back(std::move(e));
  }
  j["failures"] = std::move(f);
  return j;
}

Json to_json(const FullIrreducibility& f) {
  Json j;
  j["fully_irreducible"] = f.fully_irreducible;
  j["charpoly_irreducible"] = f.charpoly_irreducible;
  if (f.witness_k) {
    j["witness"] = {{"k", *f.witness_k}, {"factor", to_json(*f.witness_factor)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const ArithmeticityReport& r) {
  Json j;
  j["verdict"] = r.complete ? Json(to_string(r.verdict)) : Json(nullptr);
  j["rank_SZ"] = r.complete ? Json(r.rank_SZ) : Json(nullptr);
  j["dim_S0"] = r.complete ? Json(r.dim_S0) : Json(nullptr);
  Json factors = Json::array();
  for (const auto& f : r.factors) {
    Json e;
    e["poly"] = to_json(f.poly);
    e["multiplicity"] = f.multiplicity;
    factors.push_back(std::move(e));
  }
  j["factors"] = std::move(factors);
  j["tau"] = r.tau;
  j["relations"] = r.relations ? to_json(*r.relations) : Json(nullptr);
  j["fast_path"] = to_string(r.fast_path);
  j["totally_real"] = r.totally_real ? to_json(*r.totally_real) : Json(nullptr);
  Json roots = Json::array();
  for (const auto& b : r.roots) roots.push_back(to_json(b));
  j["roots"] = std::move(roots);
  j["config"] = to_json(r.config);
  return j;
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

std::string describe(const ArithmeticityReport& r) {
  std::ostringstream os;
  os << "verdict: " << (r.complete ? to_string(r.verdict) : "incomplete") << "\n";
  os << "rank_SZ: " << r.rank_SZ << "\n";
  os << "dim_S0: " << r.dim_S0 << "\n";
  os << "factors:";
  for (const auto& f : r.factors) {
    os << " (" << f.poly.to_string() << ")";
    if (f.multiplicity > 1) os << "^" << f.multiplicity;
  }
  os << "\n";
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < r.tau.size(); ++i)
    if (r.tau[i] == i) ++fixed;
  os << "embeddings: " << r.tau.size() << " (" << fixed << " real)\n";
  if (r.relations) {
    os << "relation lattice rank: " << r.relations->lattice.rank() << " ("
       << to_string(r.relations->cert.mode) << ", " << r.relations->cert.bits << " bits)\n";
  }
  os << "fast path: " << to_string(r.fast_path) << "\n";
  if (r.totally_real && r.totally_real->verdict == Verdict::Arithmetic) {
    os << "totally real: k=" << r.totally_real->k << ", field discriminant "
       << *r.totally_real->field_discriminant << ", exponents";
    for (long e : r.totally_real->exponents) os << " " << e;
    os << "\n";
  }
  return os.str();
}

}  // namespace arithmoduli

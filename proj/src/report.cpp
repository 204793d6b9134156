#include "grasspan/report.hpp"

#include "grasspan/io.hpp"

namespace report {

using freealg::Mode;
using freealg::Poly;
using freealg::Word;

ordered_json poly_json(const Poly& f) {
  ordered_json terms = ordered_json::array();
  for (auto& [w, c] : f.terms()) {
    ordered_json t;
    t["coef"] = c;
    t["word"] = w.letters();
    terms.push_back(std::move(t));
  }
  ordered_json j;
  j["p"] = f.p();
  j["mode"] = f.mode() == Mode::unitary ? "unitary" : "nonunitary";
  j["terms"] = std::move(terms);
  return j;
}

Poly poly_from_json(const ordered_json& j) {
  Mode mode = j.at("mode").get<std::string>() == "unitary" ? Mode::unitary : Mode::nonunitary;
  Poly f(j.at("p").get<uint32_t>(), mode);
  for (auto& t : j.at("terms")) {
    std::vector<freealg::Var> letters = t.at("word").get<std::vector<freealg::Var>>();
    f.add_term(Word(letters), t.at("coef").get<uint32_t>());
  }
  return f;
}

ordered_json gelem_json(const grassmann::GElem& g) {
  ordered_json terms = ordered_json::array();
  for (auto& [bits, c] : g.coeffs()) {
    std::vector<int> gens;
    for (int i = 0; i < grassmann::kMaxRank; ++i)
      if (bits & (grassmann::Subset(1) << i)) gens.push_back(i + 1);
    ordered_json t;
    t["coef"] = c;
    t["gens"] = gens;
    terms.push_back(std::move(t));
  }
  ordered_json j;
  j["p"] = g.p();
  j["rank"] = g.rank();
  j["mode"] = g.mode() == Mode::unitary ? "unitary" : "nonunitary";
  j["terms"] = std::move(terms);
  return j;
}

ordered_json member_json(const spans::MemberResult& r) {
  ordered_json j;
  j["verdict"] = r.member ? "member" : "not-member";
  j["exact"] = r.exact;
  ordered_json cert = ordered_json::array();
  for (auto& comp : r.components)
    for (auto& [c, descr] : comp.combination) {
      ordered_json e;
      e["coef"] = c;
      e["instance"] = descr;
      cert.push_back(std::move(e));
    }
  j["certificate"] = std::move(cert);
  j["rank"] = r.rank;
  j["coords"] = spans::coords_name(r.coords);
  ordered_json comps = ordered_json::array();
  for (auto& comp : r.components) {
    ordered_json c;
    c["multidegree"] = comp.d.to_string();
    c["dim"] = comp.dim;
    c["rank"] = comp.rank;
    c["instances"] = comp.n_instances;
    c["member"] = comp.member;
    if (!comp.member) {
      ordered_json resid = ordered_json::array();
      for (auto& [idx, val] : comp.residual) resid.push_back({{"coord", idx}, {"value", val}});
      c["residual"] = std::move(resid);
    }
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  return j;
}

ordered_json lemma_json(const paperlab::LemmaReport& r) {
  ordered_json j;
  j["lemma"] = r.id;
  j["p"] = r.p;
  j["params"] = r.params;
  ordered_json checks = ordered_json::array();
  for (auto& c : r.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["pass"] = r.pass();
  return j;
}

ordered_json check_result_json(const grassmann::CheckResult& r) {
  ordered_json j;
  j["holds"] = r.holds;
  j["nonzero_attained"] = r.nonzero_attained;
  j["points"] = r.points_checked;
  j["seed"] = r.seed;
  if (r.witness) {
    ordered_json asg;
    for (auto& [v, g] : r.witness->assignment)
      asg["x" + std::to_string(v)] = io::print_gelem(g);
    j["witness"] = {{"assignment", asg}, {"value", io::print_gelem(r.witness->value)}};
  }
  return j;
}

namespace {

std::string need(const ordered_json& j, const char* key, const char* type) {
  if (!j.contains(key)) return std::string("missing key '") + key + "'";
  const auto& v = j.at(key);
  std::string t = type;
  bool ok = (t == "string" && v.is_string()) || (t == "bool" && v.is_boolean()) ||
            (t == "int" && v.is_number_integer()) || (t == "array" && v.is_array()) ||
            (t == "object" && v.is_object()) || (t == "uint" && v.is_number_unsigned());
  if (!ok) return std::string("key '") + key + "' is not of type " + type;
  return "";
}

}  // namespace

std::string validate_poly_json(const ordered_json& j) {
  for (auto& [k, t] : {std::pair<const char*, const char*>{"p", "uint"},
                       {"mode", "string"},
                       {"terms", "array"}}) {
    std::string e = need(j, k, t);
    if (!e.empty()) return e;
  }
  std::string mode = j.at("mode").get<std::string>();
  if (mode != "unitary" && mode != "nonunitary") return "bad mode value";
  for (auto& t : j.at("terms")) {
    std::string e = need(t, "coef", "uint");
    if (e.empty()) e = need(t, "word", "array");
    if (!e.empty()) return e;
  }
  return "";
}

std::string validate_member_json(const ordered_json& j) {
  for (auto& [k, t] : {std::pair<const char*, const char*>{"verdict", "string"},
                       {"exact", "bool"},
                       {"certificate", "array"},
                       {"rank", "uint"}}) {
    std::string e = need(j, k, t);
    if (!e.empty()) return e;
  }
  std::string v = j.at("verdict").get<std::string>();
  if (v != "member" && v != "not-member") return "bad verdict value";
  for (auto& c : j.at("certificate")) {
    std::string e = need(c, "coef", "uint");
    if (e.empty()) e = need(c, "instance", "string");
    if (!e.empty()) return e;
  }
  return "";
}

std::string validate_lemma_json(const ordered_json& j) {
  for (auto& [k, t] : {std::pair<const char*, const char*>{"lemma", "string"},
                       {"p", "uint"},
                       {"params", "object"},
                       {"checks", "array"},
                       {"pass", "bool"}}) {
    std::string e = need(j, k, t);
    if (!e.empty()) return e;
  }
  for (auto& c : j.at("checks")) {
    std::string e = need(c, "name", "string");
    if (e.empty()) e = need(c, "pass", "bool");
    if (!e.empty()) return e;
  }
  return "";
}

}  // namespace report

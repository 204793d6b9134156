// grasspan: exact free-algebra and Grassmann-algebra computations over odd
// prime fields, with canonical forms, membership oracles, and scripted
// verification suites.

#include <future>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grasspan/io.hpp"
#include "grasspan/paperlab.hpp"
#include "grasspan/report.hpp"

using freealg::Mode;
using freealg::Poly;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  uint32_t p = 3;
  std::string mode = "unitary";
  std::string format = "text";
  size_t budget_words = 500000;
  size_t budget_instances = 200000;
  uint32_t sum_terms = 3;
  unsigned threads = 1;

  Mode poly_mode() const { return mode == "unitary" ? Mode::unitary : Mode::nonunitary; }
  bool json() const { return format == "json"; }
  spans::Budget budget() const {
    spans::Budget b;
    b.max_words = budget_words;
    b.max_instances = budget_instances;
    b.sum_terms = sum_terms;
    return b;
  }
};

void emit(const GlobalOpts& g, const ordered_json& j, const std::string& text) {
  if (g.json())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string witness_text(const grassmann::CheckResult& r) {
  if (!r.witness) return "";
  std::string s = "  witness:\n";
  for (auto& [v, ge] : r.witness->assignment)
    s += "    x" + std::to_string(v) + " = " + io::print_gelem(ge) + "\n";
  s += "  value: " + io::print_gelem(r.witness->value) + "\n";
  return s;
}

std::string lemma_text(const paperlab::LemmaReport& rep) {
  std::string s = "suite " + rep.id + " (p=" + std::to_string(rep.p) + ")\n";
  for (auto& c : rep.checks) {
    s += std::string("  [") + (c.pass ? "pass" : "FAIL") + "] " + c.name;
    if (!c.detail.empty()) s += "  -- " + c.detail;
    s += "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", rep.duration_ms);
  s += std::string("  ") + (rep.pass() ? "PASS" : "FAIL") + " (" + buf + " ms)\n";
  return s;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact symbolic computation in free and Grassmann algebras over F_p"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--p", g.p, "field characteristic (odd prime)")->capture_default_str();
  app.add_option("--mode", g.mode, "polynomial mode")
      ->check(CLI::IsMember({"unitary", "nonunitary"}))
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--budget-words", g.budget_words, "max words per component")
      ->capture_default_str();
  app.add_option("--budget-instances", g.budget_instances, "max instances per component")
      ->capture_default_str();
  app.add_option("--sum-terms", g.sum_terms, "monomials per image in heuristic spans")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "parallelism cap for 'verify all'")
      ->capture_default_str();

  // nf
  auto* nf = app.add_subcommand("nf", "canonical normal form of an expression");
  std::string nf_mod = "t3";
  std::string nf_expr;
  nf->add_option("--mod", nf_mod, "modulus")->check(CLI::IsMember({"t3", "tg0"}));
  nf->add_option("expr", nf_expr, "polynomial expression")->required();

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate in a finite-rank Grassmann algebra");
  std::string ev_algebra = "G0";
  int ev_rank = 10;
  std::vector<std::string> ev_assign;
  std::string ev_expr;
  ev->add_option("--algebra", ev_algebra, "G (unitary) or G0")
      ->check(CLI::IsMember({"G", "G0"}));
  ev->add_option("--rank", ev_rank, "generator count")->capture_default_str();
  ev->add_option("--assign", ev_assign, "assignment x<i>=<element>, repeatable")->required();
  ev->add_option("expr", ev_expr, "polynomial expression")->required();

  // identity / central
  std::string chk_algebra = "G0";
  int chk_rank = 10;
  std::string chk_strategy = "random";
  int chk_trials = 1000;
  uint64_t chk_seed = 1;
  std::string chk_expr;
  auto add_check_opts = [&](CLI::App* cmd) {
    cmd->add_option("--algebra", chk_algebra, "G or G0")->check(CLI::IsMember({"G", "G0"}));
    cmd->add_option("--rank", chk_rank, "generator count")->capture_default_str();
    cmd->add_option("--strategy", chk_strategy, "random or exhaustive")
        ->check(CLI::IsMember({"random", "exhaustive"}));
    cmd->add_option("--trials", chk_trials, "random trial count")->capture_default_str();
    cmd->add_option("--seed", chk_seed, "random seed")->capture_default_str();
    cmd->add_option("expr", chk_expr, "polynomial expression")->required();
  };
  auto* idc = app.add_subcommand("identity", "test whether an expression vanishes identically");
  add_check_opts(idc);
  auto* cen = app.add_subcommand("central", "test whether an expression evaluates centrally");
  add_check_opts(cen);

  // member
  auto* mem = app.add_subcommand("member", "T-space / T-ideal membership at fixed multidegrees");
  std::string mem_space;
  std::string mem_coords = "auto";
  std::string mem_expr;
  mem->add_option("--space", mem_space, "e.g. \"S2+TG0\", \"T3\", \"TIdeal(x1^3)\"")->required();
  mem->add_option("--coords", mem_coords, "coordinates")
      ->check(CLI::IsMember({"auto", "free", "ss", "bss"}));
  mem->add_option("expr", mem_expr, "polynomial expression")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "generate the built-in polynomial families");
  auto* gen_wm = gen->add_subcommand("wm", "the kappa-product w_m");
  uint32_t gen_m = 1;
  gen_wm->add_option("--m", gen_m, "index")->capture_default_str();
  auto* gen_phi = gen->add_subcommand("phiprime", "the doubled-word family phi'_m");
  uint32_t phi_m = 1;
  std::string phi_variant = "as_printed";
  gen_phi->add_option("--m", phi_m, "index")->capture_default_str();
  gen_phi->add_option("--variant", phi_variant, "reading")
      ->check(CLI::IsMember({"as_printed", "bracketed"}));
  auto* gen_w = gen->add_subcommand("W", "the family W_m over x1..x<maxvar>");
  uint32_t genw_m = 1;
  uint32_t genw_maxvar = 2;
  gen_w->add_option("--m", genw_m, "index bound")->capture_default_str();
  gen_w->add_option("--maxvar", genw_maxvar, "largest variable index")->capture_default_str();
  gen->require_subcommand(1);

  // verify
  auto* ver = app.add_subcommand("verify", "run the scripted verification suites");
  std::string ver_id;
  paperlab::SuiteOptions sopt;
  ver->add_option("suite", ver_id, "suite id or 'all'")->required();
  ver->add_option("--seed", sopt.seed, "random seed")->capture_default_str();
  ver->add_option("--trials", sopt.trials, "random trial count")->capture_default_str();
  ver->add_option("--rank", sopt.rank, "Grassmann rank for sampled checks")->capture_default_str();
  ver->add_option("--chain-m", sopt.chain_m, "chain stage")->capture_default_str();
  ver->add_option("--degree", sopt.rewriter_degree, "rewriter suite degree bound")
      ->capture_default_str();
  ver->add_option("--vars", sopt.rewriter_vars, "rewriter suite variable count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  freealg::Field field(g.p);  // validates p

  if (nf->parsed()) {
    Poly f = io::parse_poly(nf_expr, g.p, g.poly_mode());
    canonical::SSForm form =
        nf_mod == "t3" ? canonical::straighten_t3(f) : canonical::straighten_tg0(f);
    ordered_json terms = ordered_json::array();
    std::string pretty;
    for (auto& [t, c] : form.terms()) {
      terms.push_back({{"coef", c}, {"term", t.to_string()}});
      if (!pretty.empty()) pretty += " + ";
      if (c != 1 || t.is_unit()) pretty += std::to_string(c) + (t.is_unit() ? "" : "*");
      if (!t.is_unit()) pretty += t.to_string();
    }
    if (pretty.empty()) pretty = "0";
    ordered_json j;
    j["p"] = g.p;
    j["modulus"] = nf_mod;
    j["terms"] = std::move(terms);
    j["poly"] = report::poly_json(form.embed(g.poly_mode()));
    emit(g, j, pretty + "\n");
    return 0;
  }

  if (ev->parsed()) {
    Mode amode = ev_algebra == "G" ? Mode::unitary : Mode::nonunitary;
    Poly f = io::parse_poly(ev_expr, g.p, g.poly_mode());
    if (amode == Mode::nonunitary && f.mode() == Mode::unitary) f = f.as_nonunitary();
    std::map<freealg::Var, grassmann::GElem> assignment;
    for (auto& a : ev_assign) {
      auto eq = a.find('=');
      if (eq == std::string::npos || a.empty() || a[0] != 'x')
        throw CLI::ValidationError("--assign", "expected x<i>=<element>");
      freealg::Var v = static_cast<freealg::Var>(std::stoul(a.substr(1, eq - 1)));
      assignment.emplace(v, io::parse_gelem(a.substr(eq + 1), g.p, ev_rank, amode));
    }
    grassmann::GElem value = grassmann::evaluate(f, assignment);
    ordered_json j;
    j["value"] = report::gelem_json(value);
    j["central"] = grassmann::is_central(value);
    emit(g, j, io::print_gelem(value) + "\n");
    return 0;
  }

  if (idc->parsed() || cen->parsed()) {
    Mode amode = chk_algebra == "G" ? Mode::unitary : Mode::nonunitary;
    Poly f = io::parse_poly(chk_expr, g.p, g.poly_mode());
    if (amode == Mode::nonunitary && f.mode() == Mode::unitary) f = f.as_nonunitary();
    grassmann::CheckOptions copt;
    copt.strategy = chk_strategy == "exhaustive" ? grassmann::Strategy::exhaustive_basis
                                                 : grassmann::Strategy::random_trials;
    copt.trials = chk_trials;
    copt.seed = chk_seed;
    grassmann::CheckResult res = idc->parsed()
                                     ? grassmann::check_identity(f, chk_rank, amode, copt)
                                     : grassmann::check_central(f, chk_rank, amode, copt);
    ordered_json j = report::check_result_json(res);
    std::string verdict;
    if (idc->parsed())
      verdict = res.holds ? "holds at this rank/strategy" : "fails";
    else
      verdict = res.holds ? (res.nonzero_attained ? "central, attains nonzero values"
                                                  : "central (only zero values sampled)")
                          : "not central";
    emit(g, j,
         verdict + " (" + std::to_string(res.points_checked) + " points, seed " +
             std::to_string(res.seed) + ")\n" + witness_text(res));
    return res.holds ? 0 : 1;
  }

  if (mem->parsed()) {
    Poly f = io::parse_poly(mem_expr, g.p, g.poly_mode());
    spans::SpaceSpec spec = spans::SpaceSpec::parse(mem_space, g.p);
    std::optional<spans::Coords> coords;
    if (mem_coords == "free") coords = spans::Coords::free_words;
    if (mem_coords == "ss") coords = spans::Coords::ss;
    if (mem_coords == "bss") coords = spans::Coords::bss;
    spans::MemberResult res = spans::member(f, spec, g.budget(), coords);
    ordered_json j = report::member_json(res);
    std::string text = std::string(res.member ? "member" : "not-member") +
                       (res.exact ? " (exact" : " (heuristic") + ", rank " +
                       std::to_string(res.rank) + ", " + spans::coords_name(res.coords) +
                       " coords)\n";
    for (auto& comp : res.components)
      for (auto& [c, descr] : comp.combination)
        text += "  " + std::to_string(c) + " * " + descr + "\n";
    emit(g, j, text);
    return 0;
  }

  if (gen->parsed()) {
    std::vector<Poly> polys;
    if (gen_wm->parsed()) polys.push_back(paperlab::w(g.p, gen_m));
    if (gen_phi->parsed())
      polys.push_back(paperlab::phi_prime(g.p, phi_m,
                                          phi_variant == "bracketed"
                                              ? paperlab::PhiVariant::bracketed
                                              : paperlab::PhiVariant::as_printed));
    if (gen_w->parsed()) polys = paperlab::enumerate_W(g.p, genw_m, genw_maxvar);
    ordered_json arr = ordered_json::array();
    std::string text;
    for (auto& f : polys) {
      arr.push_back(report::poly_json(f));
      text += io::print_poly(f) + "\n";
    }
    ordered_json j;
    j["polys"] = std::move(arr);
    emit(g, j, text);
    return 0;
  }

  if (ver->parsed()) {
    sopt.budget = g.budget();
    std::vector<std::string> ids =
        ver_id == "all" ? paperlab::suite_ids() : std::vector<std::string>{ver_id};
    std::vector<paperlab::LemmaReport> reports(ids.size());
    if (g.threads > 1 && ids.size() > 1) {
      // wave scheduling: up to --threads suites at a time; output order is
      // fixed by the id list regardless
      size_t next = 0;
      while (next < ids.size()) {
        unsigned batch = std::min<unsigned>(g.threads, static_cast<unsigned>(ids.size() - next));
        std::vector<std::future<paperlab::LemmaReport>> wave;
        for (unsigned i = 0; i < batch; ++i) {
          std::string id = ids[next + i];
          wave.push_back(std::async(std::launch::async,
                                    [id, &g, &sopt] { return paperlab::run_suite(id, g.p, sopt); }));
        }
        for (unsigned i = 0; i < batch; ++i) reports[next + i] = wave[i].get();
        next += batch;
      }
    } else {
      for (size_t i = 0; i < ids.size(); ++i) reports[i] = paperlab::run_suite(ids[i], g.p, sopt);
    }
    bool all_pass = true;
    ordered_json suites = ordered_json::array();
    std::string text;
    for (auto& rep : reports) {
      all_pass = all_pass && rep.pass();
      suites.push_back(report::lemma_json(rep));
      text += lemma_text(rep);
    }
    ordered_json j;
    if (reports.size() == 1) {
      j = suites[0];
    } else {
      j["p"] = g.p;
      j["suites"] = std::move(suites);
      j["pass"] = all_pass;
    }
    emit(g, j, text);
    return all_pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const spans::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grasspan/io.hpp"
#include "grasspan/paperlab.hpp"
#include "grasspan/report.hpp"

namespace py = pybind11;

using freealg::Mode;
using freealg::Poly;
using freealg::Var;

namespace {

Mode mode_of(const std::string& s) {
  if (s == "unitary") return Mode::unitary;
  if (s == "nonunitary") return Mode::nonunitary;
  throw std::invalid_argument("mode must be 'unitary' or 'nonunitary'");
}

spans::Budget budget_of(size_t words, size_t instances, uint32_t sum_terms) {
  spans::Budget b;
  b.max_words = words;
  b.max_instances = instances;
  b.sum_terms = sum_terms;
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact symbolic computation in free and Grassmann algebras over F_p";

  py::register_exception<spans::BudgetError>(m, "BudgetError");
  py::register_exception<io::ParseError>(m, "ParseError");

  py::class_<Poly>(m, "Poly")
      .def_property_readonly("p", &Poly::p)
      .def_property_readonly("mode",
                             [](const Poly& f) {
                               return f.mode() == Mode::unitary ? "unitary" : "nonunitary";
                             })
      .def("is_zero", &Poly::is_zero)
      .def("term_count", &Poly::term_count)
      .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
      .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
      .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
      .def("__neg__", [](const Poly& a) { return freealg::poly_neg(a); })
      .def("__pow__", [](const Poly& a, uint32_t e) { return freealg::poly_pow(a, e); })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__str__", [](const Poly& f) { return io::print_poly(f); })
      .def("__repr__", [](const Poly& f) { return "Poly(" + io::print_poly(f) + ")"; })
      .def("scale", [](const Poly& f, long long c) { return freealg::poly_scale(f, c); })
      .def("substitute",
           [](const Poly& f, const std::map<Var, Poly>& assignment) {
             return freealg::substitute(f, assignment);
           })
      .def("multidegree", [](const Poly& f) {
        auto d = freealg::is_multihomogeneous(f);
        std::optional<std::map<Var, uint32_t>> out;
        if (d) out = d->counts();
        return out;
      });

  m.def("parse", [](const std::string& text, uint32_t p,
                    const std::string& mode) { return io::parse_poly(text, p, mode_of(mode)); },
        py::arg("text"), py::arg("p") = 3, py::arg("mode") = "unitary");
  m.def("commutator", &freealg::commutator);
  m.def("kappa", &paperlab::kappa);
  m.def("w", &paperlab::w, py::arg("p"), py::arg("m"));
  m.def("enumerate_W", &paperlab::enumerate_W, py::arg("p"), py::arg("m"), py::arg("max_var"));
  m.def("phi_prime", [](uint32_t p, uint32_t m, const std::string& variant) {
          return paperlab::phi_prime(p, m,
                                     variant == "bracketed" ? paperlab::PhiVariant::bracketed
                                                            : paperlab::PhiVariant::as_printed);
        },
        py::arg("p"), py::arg("m"), py::arg("variant") = "as_printed");

  m.def("nf_json", [](const Poly& f, const std::string& modulus) {
          canonical::SSForm form = modulus == "tg0" ? canonical::straighten_tg0(f)
                                                    : canonical::straighten_t3(f);
          nlohmann::ordered_json terms = nlohmann::ordered_json::array();
          for (auto& [t, c] : form.terms())
            terms.push_back({{"coef", c}, {"term", t.to_string()}});
          nlohmann::ordered_json j;
          j["modulus"] = modulus;
          j["terms"] = std::move(terms);
          j["poly"] = report::poly_json(form.embed(f.mode()));
          return j.dump();
        },
        py::arg("poly"), py::arg("modulus") = "t3");

  m.def("member_json", [](const Poly& f, const std::string& space, size_t budget_words,
                          size_t budget_instances, uint32_t sum_terms) {
          spans::SpaceSpec spec = spans::SpaceSpec::parse(space, f.p());
          auto res = spans::member(f, spec, budget_of(budget_words, budget_instances, sum_terms));
          return report::member_json(res).dump();
        },
        py::arg("poly"), py::arg("space"), py::arg("budget_words") = 500000,
        py::arg("budget_instances") = 200000, py::arg("sum_terms") = 3);

  m.def("evaluate_json", [](const Poly& f, const std::map<Var, std::string>& assignment,
                            int rank, const std::string& algebra) {
          Mode amode = algebra == "G" ? Mode::unitary : Mode::nonunitary;
          Poly g = amode == Mode::nonunitary && f.mode() == Mode::unitary ? f.as_nonunitary() : f;
          std::map<Var, grassmann::GElem> asg;
          for (auto& [v, text] : assignment)
            asg.emplace(v, io::parse_gelem(text, f.p(), rank, amode));
          grassmann::GElem value = grassmann::evaluate(g, asg);
          nlohmann::ordered_json j;
          j["value"] = io::print_gelem(value);
          j["central"] = grassmann::is_central(value);
          j["zero"] = value.is_zero();
          return j.dump();
        },
        py::arg("poly"), py::arg("assignment"), py::arg("rank") = 10, py::arg("algebra") = "G0");

  m.def("check_identity_json", [](const Poly& f, int rank, const std::string& algebra,
                                  const std::string& strategy, int trials, uint64_t seed) {
          Mode amode = algebra == "G" ? Mode::unitary : Mode::nonunitary;
          Poly g = amode == Mode::nonunitary && f.mode() == Mode::unitary ? f.as_nonunitary() : f;
          grassmann::CheckOptions opts;
          opts.strategy = strategy == "exhaustive" ? grassmann::Strategy::exhaustive_basis
                                                   : grassmann::Strategy::random_trials;
          opts.trials = trials;
          opts.seed = seed;
          return report::check_result_json(grassmann::check_identity(g, rank, amode, opts)).dump();
        },
        py::arg("poly"), py::arg("rank") = 10, py::arg("algebra") = "G0",
        py::arg("strategy") = "random", py::arg("trials") = 1000, py::arg("seed") = 1);

  m.def("check_central_json", [](const Poly& f, int rank, const std::string& algebra, int trials,
                                 uint64_t seed) {
          Mode amode = algebra == "G" ? Mode::unitary : Mode::nonunitary;
          Poly g = amode == Mode::nonunitary && f.mode() == Mode::unitary ? f.as_nonunitary() : f;
          grassmann::CheckOptions opts;
          opts.trials = trials;
          opts.seed = seed;
          return report::check_result_json(grassmann::check_central(g, rank, amode, opts)).dump();
        },
        py::arg("poly"), py::arg("rank") = 10, py::arg("algebra") = "G0",
        py::arg("trials") = 1000, py::arg("seed") = 1);

  m.def("verify_json", [](const std::string& suite, uint32_t p, uint64_t seed, int trials,
                          int rank, uint32_t chain_m, int degree) {
          paperlab::SuiteOptions opt;
          opt.seed = seed;
          opt.trials = trials;
          opt.rank = rank;
          opt.chain_m = chain_m;
          opt.rewriter_degree = degree;
          return report::lemma_json(paperlab::run_suite(suite, p, opt)).dump();
        },
        py::arg("suite"), py::arg("p") = 3, py::arg("seed") = 1, py::arg("trials") = 1000,
        py::arg("rank") = 10, py::arg("chain_m") = 1, py::arg("degree") = 4);

  m.def("suite_ids", &paperlab::suite_ids);
}

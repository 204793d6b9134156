#ifndef GRASSPAN_REPORT_HPP
#define GRASSPAN_REPORT_HPP

#include <json.hpp>

#include "grasspan/grassmann.hpp"
#include "grasspan/paperlab.hpp"
#include "grasspan/poly.hpp"
#include "grasspan/spans.hpp"

// JSON renderings of the public value types. All serializers are
// deterministic: object keys in fixed order, arrays in canonical term
// order, no volatile fields (durations stay out; identical inputs and
// seeds give identical bytes).
namespace report {

using nlohmann::ordered_json;

ordered_json poly_json(const freealg::Poly& f);
freealg::Poly poly_from_json(const ordered_json& j);
ordered_json gelem_json(const grassmann::GElem& g);
ordered_json member_json(const spans::MemberResult& r);
ordered_json lemma_json(const paperlab::LemmaReport& r);
ordered_json check_result_json(const grassmann::CheckResult& r);

// Structural validation against the published schemas; returns an error
// description or empty on success.
std::string validate_poly_json(const ordered_json& j);
std::string validate_member_json(const ordered_json& j);
std::string validate_lemma_json(const ordered_json& j);

}  // namespace report

#endif

#pragma once

#include <json.hpp>

#include "cdzero/element.hpp"
#include "cdzero/parse.hpp"
#include "cdzero/spectrum.hpp"
#include "cdzero/stiefel.hpp"
#include "cdzero/verify.hpp"
#include "cdzero/zero_divisors.hpp"

namespace cdzero {

/// All payloads use nlohmann's order-preserving map so a fixed seed dumps a
/// byte-identical document.
using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline ordered_json scalar_json(const Rational& v) { return v.str(); }
inline ordered_json scalar_json(double v) { return v; }

template <class S>
ordered_json json_of(const Element<S>& a) {
    return ordered_json{{"level", a.level()}, {"text", format_element(a)}};
}

inline ordered_json json_of(const SpectrumReport& report) {
    ordered_json clusters = ordered_json::array();
    for (const auto& c : report.clusters)
        clusters.push_back({{"lambda", c.lambda},
                            {"multiplicity", c.multiplicity},
                            {"residual", c.residual}});
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"lambdas", report.lambdas},
                        {"clusters", clusters},
                        {"contains_zero", report.contains_zero},
                        {"contains_one", report.contains_one},
                        {"tolerance", report.tolerance}};
}

template <class S>
ordered_json json_of(const ZeroDivisorPair<S>& pair) {
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"construction", to_string(pair.construction)},
                        {"level", pair.level},
                        {"alpha", format_element(pair.alpha)},
                        {"chi", format_element(pair.chi)},
                        {"residual", pair.residual},
                        {"annihilator_dim", pair.annihilator_dim}};
}

template <class S>
ordered_json json_of(const Annihilator<S>& ann) {
    ordered_json basis = ordered_json::array();
    for (const auto& v : ann.basis) basis.push_back(format_element(v));
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"element", format_element(ann.element)},
                        {"dim", ann.dim},
                        {"basis", basis}};
}

template <class S>
ordered_json json_of(const StiefelClassification<S>& cls) {
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"is_stiefel", cls.is_stiefel},
                        {"is_nontrivial", cls.is_nontrivial},
                        {"witness",
                         {{"inner_ab", scalar_json(cls.inner_ab)},
                          {"inner_tilde_ab", scalar_json(cls.inner_tilde_ab)},
                          {"norm_gap", scalar_json(cls.norm_gap)}}},
                        {"case", to_string(cls.case_tag)}};
}

inline ordered_json json_of(const VerificationCase& vc) {
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"case_id", vc.case_id},
                        {"status", vc.passed ? "pass" : "fail"},
                        {"provenance", vc.provenance},
                        {"expected", vc.expected},
                        {"actual", vc.actual},
                        {"residual", vc.residual}};
}

inline ordered_json json_of(const VerificationSuite& suite) {
    ordered_json cases = ordered_json::array();
    for (const auto& c : suite.cases) cases.push_back(json_of(c));
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"passed", suite.passed},
                        {"failed", suite.failed},
                        {"cases", cases}};
}

inline ordered_json json_of(const StiefelSweepReport& report) {
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"level", report.level},
                        {"count", report.count},
                        {"seed", report.seed},
                        {"zero_divisors", report.zero_divisors},
                        {"by_case", report.by_case},
                        {"unclassified_zero_divisors", report.unclassified_zero_divisors},
                        {"failures", report.failures}};
}

}  // namespace cdzero

#pragma once

#include <edifice/flagpoint.hpp>
#include <edifice/kempf.hpp>

#include <string>

namespace edifice::io {

/// Group/apartment spec file: { name, rank, weights, weyl_gens, roots?,
/// labels?, form?, form2? }.  Rationals are "p/q" strings or plain integers.
struct ApartmentBundle {
  ApartmentData apartment;
  std::optional<QMat> form;   // optional metric form carried by the file
  std::optional<QMat> form2;  // optional second form (metric comparison)
};

ApartmentBundle parse_apartment_json(const std::string& text);
std::string apartment_json(const ApartmentBundle& bundle);

/// Block-group spec file: { name, n, pattern: ["ffz", ...],
/// det?: [{block, value: "unit" | "p/q"}], quotient?: {keep, name} }.
GroupPtr parse_blockgroup_json(const std::string& text);

/// Point file: { weights: [..], bases: [[[..]..]..], rep?: {conjugator, weights} }.
EdificePoint parse_point_json(const std::string& text, const GroupPtr& group);
std::string point_json(const EdificePoint& x);

Cocharacter parse_cochar_json(const std::string& text);
std::string cochar_json(const Cocharacter& c);
QMat parse_matrix_json(const std::string& text);
std::string matrix_json(const QMat& m);

/// "(1/2, 1+sqrt2, -sqrt5)" — rational and quadratic-irrational entries.
SVec parse_scalar_tuple(const std::string& text);

struct KempfInput {
  ApartmentData apartment;
  StatePoint point;
  std::optional<QMat> form;
};
KempfInput parse_kempf_json(const std::string& text);

// ---- deterministic report rendering ----

std::string fan_report_json(const ApartmentData& a, const ConeFan& fan, bool approx);
std::string fan_report_csv(const ApartmentData& a, const ConeFan& fan);
std::string poset_report_json(const ApartmentData& a, const ApartmentPoset& poset);
std::string poset_dot(const ApartmentData& a, const ApartmentPoset& poset);
std::string approx_report_json(const ApartmentData& a, const SVec& lambda, const IVec& result);
std::string metric_compare_report_json(const AdmissibleMetric& d1, const AdmissibleMetric& d2,
                                       const Rat& c, const Rat& big_c, size_t samples,
                                       size_t seed, bool approx);
std::string kempf_report_json(const LinearAction& action, const StatePoint& x,
                              const std::optional<KempfResult>& result, bool approx);

std::string scalar_to_json_string(const Scalar& s);

}  // namespace edifice::io

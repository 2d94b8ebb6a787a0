#pragma once

// Stable JSON / CSV / text renderings. Keys keep insertion order, big
// integers are decimal strings and timing never enters a report, so equal
// inputs give byte-identical output.

#include <string>

#include <nlohmann/json.hpp>

#include "scatseq/criteria.hpp"
#include "scatseq/equiv.hpp"
#include "scatseq/verify.hpp"

namespace scatseq::report {

using Json = nlohmann::ordered_json;

Json field_json(const gf::Field& field);
Json params_json(const useq::SeqParams& params);
Json point_json(const useq::UPoint& point);

Json to_json(const criteria::CriteriaReport& r);
Json to_json(const criteria::ExtensionCertificate& c);
Json to_json(const criteria::ClassLowerBound& b);
Json to_json(const verify::OracleReport& r);
Json to_json(const verify::TightnessResult& t);
Json to_json(const equiv::EquivWitness& w);
Json to_json(const equiv::EquivVerdict& v);
Json to_json(const equiv::ClassificationReport& r);

/// One row per class: representative codes and size.
std::string classification_csv(const equiv::ClassificationReport& r);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

/// Flat "key: value" lines; nested keys are joined with '.'.
std::string to_text(const Json& j);

}  // namespace scatseq::report

#pragma once

#include <string>

#include <json.hpp>

#include "higgsteich/higgs.hpp"
#include "higgsteich/metricsolve.hpp"
#include "higgsteich/parabolic.hpp"
#include "higgsteich/picard.hpp"
#include "higgsteich/repdim.hpp"

namespace higgsteich {

using Json = nlohmann::ordered_json;

/// Wraps a value with its provenance tag; every number emitted in a report
/// goes through one of these.
Json tagged_exact(Json value);
Json tagged_numeric(Json value, double tolerance);

Json to_json(const LineBundleClass& b);
Json to_json(const ParabolicBundle& pb);
Json to_json(const std::vector<std::vector<long long>>& m);
Json to_json(const StabilityVerdict& v);
Json to_json(const DimensionReport& rep);
Json to_json(const RadialSolution& sol);

std::string dims_csv(const std::vector<DimensionReport>& rows);

/// Report envelope shared by all CLI outputs.  The timestamp is omitted when
/// `timestamp` is empty so reruns can be byte-identical.
Json report_envelope(const std::string& command, const std::string& timestamp,
                     Json config, Json results);

std::string iso8601_utc_now();

} // namespace higgsteich

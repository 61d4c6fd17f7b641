#pragma once

#include <string>

#include <json.hpp>

#include "fkg/functional.hpp"
#include "fkg/lattice.hpp"
#include "fkg/measure.hpp"
#include "fkg/partitions.hpp"
#include "fkg/series.hpp"

namespace fkg::io {

using Json = nlohmann::ordered_json;

// Readers take the JSON path of the value being read and prefix it to every
// diagnostic, e.g. "measure.weights[3]: malformed rational ...".

Json to_json(const Rational& value);
Rational rational_from_json(const Json& j, const std::string& path);

SubsetId subset_from_json(const Json& j, GroundSet ground, const std::string& path);

Json to_json(const MonotoneComb& f);
MonotoneComb comb_from_json(const Json& j, GroundSet ground, const std::string& path,
                            bool allow_signed = false);

/// {"m": int, "weights": ["p/q", ...]}; the weights must sum to exactly 1.
Json to_json(const Measure& mu);
Measure measure_from_json(const Json& j, const std::string& path);

/// {"measure": <Measure>, "generators": [int, ...]}
Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j, const std::string& path);

/// Array of arrays of 1-based integers, canonical order.
Json to_json(const SetPartition& sigma);
SetPartition set_partition_from_json(const Json& j, int n, const std::string& path);

/// {"D": int, "coeffs": [<MonotoneComb>, ... D entries]}
Json to_json(const FnSeries& p);
FnSeries fn_series_from_json(const Json& j, GroundSet ground, const std::string& path,
                             bool allow_signed = false);

Json to_json(const ScalarSeries& s);
Json to_json(const FkgReport& report);
Json to_json(const ChainReport& report);
Json to_json(const LemmaResult& result);
Json to_json(const IdentityResult& result);
Json to_json(const NonnegResult& result);

}  // namespace fkg::io

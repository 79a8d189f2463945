#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "regen/bounds.hpp"
#include "regen/code_model.hpp"

namespace regen {

using ordered_json = nlohmann::ordered_json;

// "num/den" in lowest terms; integers drop the denominator.
std::string format_rational(const Rational& r);

ordered_json to_json(const VerificationReport& rep);
ordered_json to_json(const Certificate& cert);
ordered_json to_json(const VirtualConditionReport& rep);
ordered_json to_json(const VirtualSizeReport& rep);
ordered_json to_json(const ProofTranscript& t);
ordered_json to_json(const ImprovementTable& t);

// Delta with its per-pair terms plus the per-column gap breakdown for each j.
ordered_json gap_to_json(const RedundancyGap& gap, const std::vector<GapReport>& columns);

// Rows in entry order; header n,ell,v,source,bound_num,bound_den,slack where
// slack is the distance to the report minimum.
std::string bounds_csv(const BoundReport& rep);

struct TradeoffRow {
    int beta;
    Rational fr_min;
    Rational best_linear;
};
std::string tradeoff_csv(const std::vector<TradeoffRow>& rows);

}  // namespace regen

#pragma once

#include <json.hpp>

#include "clex/series.hpp"

namespace clex {

// JSON array of {order, numerator, denominator, variable} for exact coefficients and
// {order, value, variable} for floating ones.
nlohmann::json series_to_json(const TruncatedSeries<Rational>& s);
nlohmann::json series_to_json(const TruncatedSeries<double>& s);

TruncatedSeries<double> to_double(const TruncatedSeries<Rational>& s);

}  // namespace clex

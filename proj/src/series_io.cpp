#include "clex/series_io.hpp"

namespace clex {

std::string to_string(SeriesVariable v) { return v == SeriesVariable::Activity ? "z" : "rho"; }

nlohmann::json series_to_json(const TruncatedSeries<Rational>& s) {
  auto out = nlohmann::json::array();
  for (int n = 0; n <= s.order(); ++n)
    out.push_back({{"order", n},
                   {"numerator", boost::multiprecision::numerator(s[n]).str()},
                   {"denominator", boost::multiprecision::denominator(s[n]).str()},
                   {"variable", to_string(s.variable())}});
  return out;
}

nlohmann::json series_to_json(const TruncatedSeries<double>& s) {
  auto out = nlohmann::json::array();
  for (int n = 0; n <= s.order(); ++n)
    out.push_back({{"order", n}, {"value", s[n]}, {"variable", to_string(s.variable())}});
  return out;
}

TruncatedSeries<double> to_double(const TruncatedSeries<Rational>& s) {
  std::vector<double> c;
  for (const auto& x : s.coefficients()) c.push_back(x.convert_to<double>());
  return {c, s.variable()};
}

}  // namespace clex

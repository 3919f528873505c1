#pragma once

#include <string>

#include "fracmoser/profiles.hpp"
#include "json.hpp"

namespace fm {

/// Profile as JSON for plotting: breakpoints, tail tag and sampled values.
inline nlohmann::json profile_to_json(const RadialProfile& g, int samples,
                                      double r_max) {
  nlohmann::json out;
  out["dim"] = g.dim().n;
  out["breakpoints"] = g.breakpoints();
  out["origin_singular"] = g.origin_singular();
  switch (g.tail().kind) {
    case Tail::Kind::compact:
      out["tail"] = {{"kind", "compact"}, {"support", g.support_radius()}};
      break;
    case Tail::Kind::power:
      out["tail"] = {{"kind", "power"},
                     {"coeff", g.tail().coeff},
                     {"exponent", g.tail().exponent}};
      break;
    case Tail::Kind::log_growth:
      out["tail"] = {{"kind", "log_growth"},
                     {"coeff", g.tail().coeff},
                     {"offset", g.tail().offset}};
      break;
  }
  nlohmann::json rs = nlohmann::json::array();
  nlohmann::json vs = nlohmann::json::array();
  for (int i = 1; i <= samples; ++i) {
    const double r = r_max * i / samples;
    rs.push_back(r);
    vs.push_back(g.value(r));
  }
  out["r"] = rs;
  out["value"] = vs;
  return out;
}

}  // namespace fm

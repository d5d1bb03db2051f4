#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "hext/convex_domain.hpp"

// Domain description files: JSON documents with a top-level "type" field
// selecting the variant and an optional "point" for p.
//
//   {"type": "polygon", "vertices": [[re, im], ...]}
//   {"type": "disc", "center": [re, im], "radius": r}
//   {"type": "ellipse", "center": [re, im], "semi_axes": [a1, a2], "rotation": rho}
//   {"type": "family", "a": [re, im], "lambda": [re, im], "c": c, "n": n}
//   {"type": "sampled", "points": [[re, im], ...]}

namespace hext {

struct DomainSpec {
  ConvexDomain domain;
  std::optional<Complex> point;
};

namespace detail {

inline Complex json_complex(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array() || j[field].size() != 2)
    throw std::invalid_argument(std::string("domain spec: field '") + field +
                                "' must be a [re, im] pair");
  return Complex(j[field][0].get<double>(), j[field][1].get<double>());
}

inline std::vector<Complex> json_points(const nlohmann::json& j,
                                        const char* field) {
  if (!j.contains(field) || !j[field].is_array())
    throw std::invalid_argument(std::string("domain spec: field '") + field +
                                "' must be a list of [re, im] pairs");
  std::vector<Complex> out;
  for (const auto& p : j[field]) {
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument(std::string("domain spec: entries of '") +
                                  field + "' must be [re, im] pairs");
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

}  // namespace detail

inline DomainSpec parse_domain_spec(const nlohmann::json& j) {
  if (!j.contains("type"))
    throw std::invalid_argument("domain spec: missing 'type'");
  const std::string type = j["type"].get<std::string>();

  std::optional<ConvexDomain> domain;
  if (type == "polygon") {
    domain = ConvexDomain::polygon(detail::json_points(j, "vertices"));
  } else if (type == "disc") {
    domain = ConvexDomain::disc(detail::json_complex(j, "center"),
                                j.at("radius").get<double>());
  } else if (type == "ellipse") {
    const auto& ax = j.at("semi_axes");
    domain = ConvexDomain::ellipse(detail::json_complex(j, "center"),
                                   ax.at(0).get<double>(),
                                   ax.at(1).get<double>(),
                                   j.value("rotation", 0.0));
  } else if (type == "family") {
    const FamilyParams fp{detail::json_complex(j, "a"),
                          detail::json_complex(j, "lambda"),
                          j.at("c").get<double>()};
    domain = from_family(fp, j.value("n", 2048));
  } else if (type == "sampled") {
    domain = ConvexDomain::sampled(detail::json_points(j, "points"));
  } else {
    throw std::invalid_argument("domain spec: unknown type '" + type + "'");
  }

  DomainSpec spec{std::move(*domain), std::nullopt};
  if (j.contains("point")) spec.point = detail::json_complex(j, "point");
  return spec;
}

inline DomainSpec load_domain_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open domain spec: " + path);
  nlohmann::json j;
  in >> j;
  return parse_domain_spec(j);
}

}  // namespace hext

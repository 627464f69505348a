#pragma once

// JSON encodings of shapes, maps, presentations and reports.
//
// Objects: level 0 is "*", level n is the array of its level n-1 children,
// so [2]([1],[0]) in Theta_2 is [["*"],[]]. Shape strings also accept the
// bracket notation "[2]([1],[0])" and bare stars as in "[*]".

#include <string>

#include <json.hpp>

#include "theta/presheaf.hpp"

namespace theta {

  using Json = nlohmann::ordered_json;

  Json   object_to_json(Object const& o);
  Object object_from_json(Json const& j, int level);
  // Bracket notation or JSON with bare stars.
  Object parse_shape(std::string const& text, int level);

  Json         site_object_to_json(SiteObject const& o);
  SiteObject   site_object_from_json(Json const& j, Site const& site);
  Json         morphism_to_json(Morphism const& f);
  Morphism     morphism_from_json(Json const& j, Object const& source, Object const& target);
  Json         site_morphism_to_json(SiteMorphism const& f);
  SiteMorphism site_morphism_from_json(Json const& j, SiteObject const& source,
                                       SiteObject const& target);

  // {"site":[levels], "cells":[{"id", "shape"}], "glue":[[ref, ref]...]}
  // with ref = {"cell": id, "at": source object, "map": morphism}.
  Json         presentation_to_json(Presentation const& p);
  Presentation presentation_from_json(Json const& j);

  // Parses text, turning parse errors into MalformedInput.
  Json parse_json(std::string const& text);

}  // namespace theta

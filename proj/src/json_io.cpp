#include "theta/json_io.hpp"

#include <cctype>

namespace theta {

  namespace {

    // Recursive descent over "[k]" and "[k](c1,...,ck)".
    class BracketParser {
     public:
      explicit BracketParser(std::string const& s) : s_(s) {}

      Object parse(int level) {
        Object o = object(level);
        skip();
        if (pos_ != s_.size()) {
          fail("trailing characters");
        }
        return o;
      }

     private:
      Object object(int level) {
        skip();
        if (peek() == '*') {
          ++pos_;
          if (level != 0) {
            fail("'*' names a level-0 object");
          }
          return Object::point(0);
        }
        if (level == 0) {
          fail("level-0 objects are written '*'");
        }
        expect('[');
        std::size_t k = number();
        expect(']');
        std::vector<Object> children;
        skip();
        if (peek() == '(') {
          ++pos_;
          for (std::size_t i = 0; i < k; ++i) {
            if (i > 0) {
              expect(',');
            }
            children.push_back(object(level - 1));
          }
          expect(')');
        } else {
          children.assign(k, Object::point(level - 1));
        }
        return Object::make(level, std::move(children));
      }

      std::size_t number() {
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
          fail("expected a number");
        }
        std::size_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          v = 10 * v + static_cast<std::size_t>(s_[pos_++] - '0');
        }
        return v;
      }

      void expect(char c) {
        skip();
        if (peek() != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos_;
      }
      char peek() const {
        return pos_ < s_.size() ? s_[pos_] : '\0';
      }
      void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
          ++pos_;
        }
      }
      [[noreturn]] void fail(std::string const& why) const {
        throw MalformedInput("shape '" + s_ + "': " + why + " at position " + std::to_string(pos_));
      }

      std::string const& s_;
      std::size_t        pos_ = 0;
    };

    std::size_t cell_index(Json const& ref, Presentation const& p) {
      Json const& c = ref.at("cell");
      if (c.is_number_unsigned()) {
        return c.get<std::size_t>();
      }
      auto const id = c.get<std::string>();
      for (std::size_t i = 0; i < p.ids.size(); ++i) {
        if (p.ids[i] == id) {
          return i;
        }
      }
      throw MalformedInput("unknown cell id '" + id + "'");
    }

  }  // namespace

  Json object_to_json(Object const& o) {
    if (o.level() == 0) {
      return "*";
    }
    Json a = Json::array();
    for (auto const& c : o.children()) {
      a.push_back(object_to_json(c));
    }
    return a;
  }

  Object object_from_json(Json const& j, int level) {
    if (j.is_string()) {
      if (j.get<std::string>() == "*" && level == 0) {
        return Object::point(0);
      }
      return parse_shape(j.get<std::string>(), level);
    }
    if (!j.is_array() || level == 0) {
      throw MalformedInput("object at level " + std::to_string(level) + ": unexpected " + j.dump());
    }
    std::vector<Object> children;
    for (auto const& c : j) {
      children.push_back(object_from_json(c, level - 1));
    }
    return Object::make(level, std::move(children));
  }

  Object parse_shape(std::string const& text, int level) {
    std::size_t i = text.find_first_not_of(" \t");
    if (i != std::string::npos && text[i] == '[') {
      std::size_t k = text.find_first_not_of(" \t", i + 1);
      if (k != std::string::npos && std::isdigit(static_cast<unsigned char>(text[k]))) {
        return BracketParser(text).parse(level);
      }
    }
    std::string quoted;
    for (char c : text) {
      if (c == '*') {
        quoted += "\"*\"";
      } else {
        quoted += c;
      }
    }
    return object_from_json(parse_json(quoted), level);
  }

  Json site_object_to_json(SiteObject const& o) {
    Json a = Json::array();
    for (auto const& p : o.parts) {
      a.push_back(object_to_json(p));
    }
    return a;
  }

  SiteObject site_object_from_json(Json const& j, Site const& site) {
    if (!j.is_array() || j.size() != site.arity()) {
      throw MalformedInput("site object needs one entry per factor of " + site.to_string());
    }
    SiteObject o;
    for (std::size_t i = 0; i < site.arity(); ++i) {
      o.parts.push_back(object_from_json(j[i], site.level(i)));
    }
    return o;
  }

  Json morphism_to_json(Morphism const& f) {
    if (f.level() == 0) {
      return "*";
    }
    Json j;
    j["delta"] = Json(std::vector<int>(f.delta().begin(), f.delta().end()));
    if (f.level() == 1) {
      return j;
    }
    Json blocks = Json::array();
    for (std::size_t i = 1; i <= f.source().arity(); ++i) {
      Json row = Json::array();
      for (auto const& b : f.blocks_of(i)) {
        row.push_back(morphism_to_json(b));
      }
      blocks.push_back(row);
    }
    j["f"] = blocks;
    return j;
  }

  Morphism morphism_from_json(Json const& j, Object const& source, Object const& target) {
    if (source.level() == 0) {
      if (!(j.is_string() && j.get<std::string>() == "*")) {
        throw MalformedInput("level-0 morphisms are written \"*\"");
      }
      return Morphism::trivial();
    }
    if (!j.is_object() || !j.contains("delta")) {
      throw MalformedInput("morphism needs a \"delta\" field: " + j.dump());
    }
    auto const delta = j.at("delta").get<std::vector<int>>();
    if (delta.size() != source.arity() + 1) {
      throw MalformedInput("delta has the wrong length for " + source.to_string());
    }
    if (source.level() == 1) {
      return Morphism::delta_map(source.arity(), target.arity(), delta);
    }
    std::vector<Morphism> blocks;
    Json const&           f = j.contains("f") ? j.at("f") : Json::array();
    if (f.size() != source.arity()) {
      throw MalformedInput("morphism needs one block list per source child");
    }
    for (std::size_t i = 1; i <= source.arity(); ++i) {
      int const lo = delta[i - 1];
      int const hi = delta[i];
      if (hi - lo < 0 || f[i - 1].size() != static_cast<std::size_t>(hi - lo)) {
        throw MalformedInput("block list " + std::to_string(i) + " has the wrong length");
      }
      for (int jj = lo + 1; jj <= hi; ++jj) {
        blocks.push_back(morphism_from_json(f[i - 1][static_cast<std::size_t>(jj - lo - 1)],
                                            source.child(i - 1),
                                            target.child(static_cast<std::size_t>(jj - 1))));
      }
    }
    return Morphism::make(source, target, delta, std::move(blocks));
  }

  Json site_morphism_to_json(SiteMorphism const& f) {
    Json a = Json::array();
    for (auto const& p : f.parts) {
      a.push_back(morphism_to_json(p));
    }
    return a;
  }

  SiteMorphism site_morphism_from_json(Json const& j, SiteObject const& source,
                                       SiteObject const& target) {
    if (!j.is_array() || j.size() != source.arity()) {
      throw MalformedInput("site morphism needs one entry per factor");
    }
    SiteMorphism f;
    for (std::size_t i = 0; i < source.arity(); ++i) {
      f.parts.push_back(morphism_from_json(j[i], source[i], target[i]));
    }
    return f;
  }

  Json presentation_to_json(Presentation const& p) {
    Json j;
    j["site"]  = p.site.levels();
    Json cells = Json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
      cells.push_back({{"id", p.ids[i]}, {"shape", site_object_to_json(p.shapes[i])}});
    }
    j["cells"] = cells;
    Json glue  = Json::array();
    auto ref   = [&](ElemRef const& r) {
      return Json{{"cell", p.ids[r.cell]},
                  {"at", site_object_to_json(r.map.source())},
                  {"map", site_morphism_to_json(r.map)}};
    };
    for (auto const& rel : p.relations) {
      glue.push_back(Json::array({ref(rel.lhs), ref(rel.rhs)}));
    }
    j["glue"] = glue;
    return j;
  }

  Presentation presentation_from_json(Json const& j) {
    try {
      Presentation p;
      p.site = Site(j.at("site").get<std::vector<int>>());
      for (auto const& c : j.at("cells")) {
        p.ids.push_back(c.at("id").is_string() ? c.at("id").get<std::string>()
                                               : c.at("id").dump());
        p.shapes.push_back(site_object_from_json(c.at("shape"), p.site));
      }
      if (j.contains("glue")) {
        for (auto const& g : j.at("glue")) {
          if (!g.is_array() || g.size() != 2) {
            throw MalformedInput("glue entries are pairs of element references");
          }
          Relation rel;
          ElemRef* sides[2] = {&rel.lhs, &rel.rhs};
          for (std::size_t s = 0; s < 2; ++s) {
            std::size_t const c  = cell_index(g[s], p);
            SiteObject const  at = site_object_from_json(g[s].at("at"), p.site);
            *sides[s] = {c, site_morphism_from_json(g[s].at("map"), at, p.shapes[c])};
          }
          p.relations.push_back(std::move(rel));
        }
      }
      p.validate();
      return p;
    } catch (nlohmann::json::exception const& e) {
      throw MalformedInput(std::string("presentation: ") + e.what());
    }
  }

  Json parse_json(std::string const& text) {
    try {
      return Json::parse(text);
    } catch (nlohmann::json::exception const& e) {
      throw MalformedInput(std::string("malformed JSON: ") + e.what());
    }
  }

}  // namespace theta

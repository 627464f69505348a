#include "theta/presheaf.hpp"

#include <algorithm>
#include <unordered_set>

#include "theta/detail/memo.hpp"

namespace theta {

  ////////////////////////////////////////////////////////////////////////
  // Presentation
  ////////////////////////////////////////////////////////////////////////

  int Presentation::max_degree() const {
    int d = 0;
    for (auto const& s : shapes) {
      d = std::max(d, s.degree());
    }
    return d;
  }

  void Presentation::validate() const {
    if (ids.size() != shapes.size()) {
      throw MalformedInput("presentation: one id per cell required");
    }
    for (auto const& s : shapes) {
      site.check(s);
    }
    auto check_ref = [&](ElemRef const& r) {
      if (r.cell >= shapes.size()) {
        throw MalformedInput("relation refers to unknown cell " + std::to_string(r.cell));
      }
      if (r.map.target() != shapes[r.cell]) {
        throw MalformedInput("relation map " + r.map.to_string() + " does not land in cell "
                             + ids[r.cell]);
      }
    };
    for (auto const& r : relations) {
      check_ref(r.lhs);
      check_ref(r.rhs);
      if (r.lhs.map.source() != r.rhs.map.source()) {
        throw MalformedInput("related elements live over different objects");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Presheaf handle
  ////////////////////////////////////////////////////////////////////////

  Presheaf::Presheaf(std::shared_ptr<PresheafNode const> node) : node_(std::move(node)) {}

  Site const& Presheaf::site() const {
    return node().site();
  }

  std::size_t Presheaf::size(SiteObject const& d) const {
    return node().size(d);
  }

  Elem Presheaf::act(SiteMorphism const& g, Elem x) const {
    return node().act(g, x);
  }

  std::optional<int> Presheaf::support_degree() const {
    return node().support_degree();
  }

  std::string Presheaf::describe() const {
    return node().describe();
  }

  PresheafNode const& Presheaf::node() const {
    if (!node_) {
      throw Error("use of an empty presheaf handle");
    }
    return *node_;
  }

  std::shared_ptr<GeneratorData const> generators(Presheaf const& P, std::optional<int> degree) {
    PresheafNode const& node = P.node();
    {
      std::lock_guard lock(node.gen_mtx_);
      if (auto it = node.gen_cache_.find(-1); it != node.gen_cache_.end()) {
        return it->second;
      }
    }
    auto native = node.native_generators();
    if (native) {
      std::lock_guard lock(node.gen_mtx_);
      return node.gen_cache_.emplace(-1, native).first->second;
    }
    if (!degree) {
      degree = node.support_degree();
    }
    if (!degree) {
      throw WindowTooSmall("presheaf " + node.describe()
                           + " has no known support bound; give a degree explicitly");
    }
    {
      std::lock_guard lock(node.gen_mtx_);
      if (auto it = node.gen_cache_.find(*degree); it != node.gen_cache_.end()) {
        return it->second;
      }
    }
    auto extracted = extract_generators(P, *degree);
    std::lock_guard lock(node.gen_mtx_);
    return node.gen_cache_.emplace(*degree, extracted).first->second;
  }

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  PresheafMap::PresheafMap(Presheaf source, Presheaf target, Fn fn, std::string label)
      : source_(std::move(source)),
        target_(std::move(target)),
        fn_(std::make_shared<Fn const>(std::move(fn))),
        label_(std::move(label)) {
    if (source_.site() != target_.site()) {
      throw SiteMismatch("map between presheaves on different sites");
    }
  }

  PresheafMap identity_map(Presheaf const& P) {
    return PresheafMap(P, P, [](SiteObject const&, Elem x) { return x; }, "id");
  }

  PresheafMap compose(PresheafMap const& g, PresheafMap const& f) {
    return PresheafMap(
        f.source(), g.target(), [g, f](SiteObject const& d, Elem x) { return g(d, f(d, x)); },
        g.label() + "." + f.label());
  }

  PresheafMap map_from_images(Presheaf const& source, Presheaf const& target,
                              std::vector<Elem> images) {
    auto gens = generators(source);
    if (images.size() != gens->presentation.size()) {
      throw MalformedInput("map_from_images: one image per generator required");
    }
    for (std::size_t c = 0; c < images.size(); ++c) {
      if (images[c] >= target.size(gens->presentation.shapes[c])) {
        throw MalformedInput("map_from_images: image out of range for generator "
                             + gens->presentation.ids[c]);
      }
    }
    return PresheafMap(
        source, target,
        [gens, target, images = std::move(images)](SiteObject const& d, Elem x) {
          auto r = gens->express(d, x);
          return target.act(r.map, images[r.cell]);
        },
        "map");
  }

  std::vector<Elem> generator_images(PresheafMap const& f) {
    auto              gens = generators(f.source());
    std::vector<Elem> out;
    out.reserve(gens->presentation.size());
    for (std::size_t c = 0; c < gens->presentation.size(); ++c) {
      out.push_back(f(gens->presentation.shapes[c], gens->elements[c]));
    }
    return out;
  }

  PresheafMap tabulated_map(PresheafMap const& f) {
    auto memo = std::make_shared<detail::Memo<SiteObject, std::vector<Elem>>>();
    return PresheafMap(
        f.source(), f.target(),
        [f, memo](SiteObject const& d, Elem x) {
          auto tab = memo->get(d, [&] {
            std::vector<Elem> t(f.source().size(d));
            for (Elem y = 0; y < t.size(); ++y) {
              t[y] = f(d, y);
            }
            return t;
          });
          return tab->at(x);
        },
        f.label());
  }

  ////////////////////////////////////////////////////////////////////////
  // Segal cores
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // alpha^i : [1](c_{i+1}) -> [m](cs), 0 <= i < m.
    Morphism spine_edge(int level, std::vector<Object> const& cs, std::size_t i) {
      Object target = Object::make(level, cs);
      Object source = Object::make(level, {cs[i]});
      return Morphism::make(source, target, {static_cast<int>(i), static_cast<int>(i) + 1},
                            {identity(cs[i])});
    }

  }  // namespace

  Subobject segal_core(int level, std::vector<Object> const& cs) {
    if (cs.size() < 2) {
      throw PreconditionFailed("segal_core needs m >= 2");
    }
    if (level < 1) {
      throw MalformedInput("segal_core needs level >= 1");
    }
    Site const   site({level});
    Object const pt = Object::point(level);
    Presentation p;
    p.site = site;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      Object e = Object::make(level, {cs[i]});
      p.ids.push_back("e" + std::to_string(i));
      p.shapes.push_back(SiteObject{{e}});
    }
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      // target vertex of edge i is the source vertex of edge i+1
      Morphism v1 = Morphism::make(pt, p.shapes[i][0], {1}, {});
      Morphism v0 = Morphism::make(pt, p.shapes[i + 1][0], {0}, {});
      p.relations.push_back({{i, SiteMorphism{{v1}}}, {i + 1, SiteMorphism{{v0}}}});
    }
    Presheaf          G = presented(std::move(p));
    SiteObject const  a{{Object::make(level, cs)}};
    Presheaf          Y = representable(site, a);
    std::vector<Elem> images;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      images.push_back(hom_index(spine_edge(level, cs, i)));
    }
    return {G, map_from_images(G, Y, images)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Checks
  ////////////////////////////////////////////////////////////////////////

  bool is_mono_map(PresheafMap const& f, Window const& w) {
    for (auto const& d : w.objects()) {
      std::size_t const     n = f.source().size(d);
      std::unordered_set<Elem> seen;
      for (Elem x = 0; x < n; ++x) {
        if (!seen.insert(f(d, x)).second) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_epi_map(PresheafMap const& f, Window const& w) {
    for (auto const& d : w.objects()) {
      std::size_t const n = f.source().size(d);
      std::vector<bool> hit(f.target().size(d), false);
      std::size_t       count = 0;
      for (Elem x = 0; x < n; ++x) {
        Elem y = f(d, x);
        if (!hit[y]) {
          hit[y] = true;
          ++count;
        }
      }
      if (count != hit.size()) {
        return false;
      }
    }
    return true;
  }

  bool is_iso_map(PresheafMap const& f, Window const& w) {
    for (auto const& d : w.objects()) {
      if (f.source().size(d) != f.target().size(d)) {
        return false;
      }
    }
    return is_mono_map(f, w);
  }

  bool maps_agree(PresheafMap const& f, PresheafMap const& g, Window const& w) {
    for (auto const& d : w.objects()) {
      std::size_t const n = f.source().size(d);
      if (g.source().size(d) != n) {
        return false;
      }
      for (Elem x = 0; x < n; ++x) {
        if (f(d, x) != g(d, x)) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<std::string> check_functoriality(Presheaf const& P, Window const& w) {
    auto const& objs = w.objects();
    for (auto const& a : objs) {
      auto const        id = identity(a);
      std::size_t const na = P.size(a);
      for (Elem x = 0; x < na; ++x) {
        if (P.act(id, x) != x) {
          return "identity acts nontrivially at " + a.to_string();
        }
      }
      for (auto const& b : objs) {
        for (auto const& g : hom(b, a)) {
          for (auto const& c : objs) {
            for (auto const& f : hom(c, b)) {
              auto gf = compose(g, f);
              for (Elem x = 0; x < na; ++x) {
                if (P.act(gf, x) != P.act(f, P.act(g, x))) {
                  return "act(g.f) != act(f).act(g) for g = " + g.to_string()
                         + ", f = " + f.to_string();
                }
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> check_naturality(PresheafMap const& f, Window const& w) {
    auto const& objs = w.objects();
    for (auto const& a : objs) {
      std::size_t const na = f.source().size(a);
      for (auto const& b : objs) {
        for (auto const& g : hom(b, a)) {
          for (Elem x = 0; x < na; ++x) {
            if (f(b, f.source().act(g, x)) != f.target().act(g, f(a, x))) {
              return "naturality fails along " + g.to_string() + " at element "
                     + std::to_string(x);
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  std::size_t total_size(Presheaf const& P, Window const& w) {
    std::size_t n = 0;
    for (auto const& d : w.objects()) {
      n += P.size(d);
    }
    return n;
  }

}  // namespace theta

#include "theta/simplicial.hpp"

namespace theta {

  Site outer_site(Site const& inner) {
    return Site({1}).concat(inner);
  }

  Morphism coface(std::size_t p, std::size_t i) {
    if (p == 0 || i > p) {
      throw MalformedInput("coface d^i : [p-1] -> [p] needs p >= 1 and i <= p");
    }
    std::vector<int> v;
    for (std::size_t k = 0; k < p; ++k) {
      v.push_back(static_cast<int>(k < i ? k : k + 1));
    }
    return Morphism::delta_map(p - 1, p, std::move(v));
  }

  Morphism codegeneracy(std::size_t p, std::size_t i) {
    if (i > p) {
      throw MalformedInput("codegeneracy s^i : [p+1] -> [p] needs i <= p");
    }
    std::vector<int> v;
    for (std::size_t k = 0; k <= p + 1; ++k) {
      v.push_back(static_cast<int>(k <= i ? k : k - 1));
    }
    return Morphism::delta_map(p + 1, p, std::move(v));
  }

  Morphism vertex_map(std::size_t p, std::size_t v) {
    return Morphism::delta_map(0, p, {static_cast<int>(v)});
  }

  Morphism edge_map(std::size_t p, std::size_t i, std::size_t j) {
    return Morphism::delta_map(1, p, {static_cast<int>(i), static_cast<int>(j)});
  }

  Morphism to_point(std::size_t p) {
    return Morphism::delta_map(p, 0, std::vector<int>(p + 1, 0));
  }

  SiteMorphism outer(Morphism const& delta, SiteObject const& inner) {
    SiteMorphism f;
    f.parts.push_back(delta);
    for (auto const& o : inner.parts) {
      f.parts.push_back(identity(o));
    }
    return f;
  }

  SiteObject outer_object(std::size_t p, SiteObject const& inner) {
    SiteObject o;
    o.parts.push_back(Object::simplex(p));
    o.parts.insert(o.parts.end(), inner.parts.begin(), inner.parts.end());
    return o;
  }

  Presheaf level(Presheaf const& X, std::size_t p) {
    if (X.site().arity() < 2 || X.site().level(0) != 1) {
      throw SiteMismatch("level: the first site factor must be Delta");
    }
    return restrict_first(X, Object::simplex(p));
  }

  PresheafMap level(PresheafMap const& f, std::size_t p) {
    return restrict_first(f, Object::simplex(p));
  }

  PresheafMap outer_operator(Presheaf const& X, Morphism const& delta) {
    std::size_t const p = delta.target().arity();
    std::size_t const q = delta.source().arity();
    return PresheafMap(
        level(X, p), level(X, q),
        [X, delta](SiteObject const& theta, Elem x) { return X.act(outer(delta, theta), x); },
        "op" + delta.to_string());
  }

  PresheafMap face(Presheaf const& X, std::size_t p, std::size_t i) {
    return outer_operator(X, coface(p, i));
  }

  PresheafMap degeneracy(Presheaf const& X, std::size_t p, std::size_t i) {
    return outer_operator(X, codegeneracy(p, i));
  }

  SiteObject inner_point(Site const& inner) {
    return inner.terminal();
  }

  std::vector<SiteObject> edge_shapes(Site const& inner) {
    std::vector<SiteObject> out;
    SiteObject const        pt = inner.terminal();
    for (std::size_t j = 0; j < inner.arity(); ++j) {
      int const l = inner.level(j);
      if (l == 0) {
        continue;
      }
      SiteObject e = pt;
      e.parts[j]   = Object::make(l, {Object::point(l - 1)});
      out.push_back(std::move(e));
    }
    return out;
  }

  SegalPreObject::SegalPreObject(Presheaf diagram) : X_(std::move(diagram)) {
    if (X_.site().arity() < 2 || X_.site().level(0) != 1) {
      throw SiteMismatch("a Segal precategory object lives on (Delta) ++ inner site");
    }
    inner_ = X_.site().tail();
  }

  std::size_t SegalPreObject::vertex_count() const {
    return X_.size(outer_object(0, inner_.terminal()));
  }

  Elem SegalPreObject::vertex_of(SiteObject const& theta, Elem x) const {
    // any point of theta; for a discrete X_0 all of them agree
    auto const& pts = hom(inner_.terminal(), theta);
    return X_.act(concat(SiteMorphism{{identity(Object::simplex(0))}}, pts.front()), x);
  }

  std::vector<Elem> SegalPreObject::vertices(std::size_t p, SiteObject const& theta, Elem x) const {
    std::vector<Elem> out;
    out.reserve(p + 1);
    for (std::size_t v = 0; v <= p; ++v) {
      out.push_back(vertex_of(theta, X_.act(outer(vertex_map(p, v), theta), x)));
    }
    return out;
  }

  Elem SegalPreObject::constant_at(std::size_t p, SiteObject const& theta, Elem v) const {
    SiteMorphism g;
    g.parts.push_back(to_point(p));
    auto bang = hom_at(theta, inner_.terminal(), 0);
    g.parts.insert(g.parts.end(), bang.parts.begin(), bang.parts.end());
    return X_.act(g, v);
  }

  bool SegalPreObject::check_discrete(Window const& inner_window) const {
    std::size_t const n = vertex_count();
    for (auto const& theta : inner_window.objects()) {
      if (X_.size(outer_object(0, theta)) != n) {
        return false;
      }
      // the restriction X_0(pt) -> X_0(theta) must be injective, and the
      // sizes agree, so it is a bijection
      std::vector<bool> hit(n, false);
      for (Elem v = 0; v < n; ++v) {
        Elem y = constant_at(0, theta, v);
        if (hit[y]) {
          return false;
        }
        hit[y] = true;
      }
      // every point of theta must induce the inverse bijection
      for (auto const& pt : hom(inner_.terminal(), theta)) {
        for (Elem v = 0; v < n; ++v) {
          Elem y = constant_at(0, theta, v);
          if (X_.act(concat(SiteMorphism{{identity(Object::simplex(0))}}, pt), y) != v) {
            return false;
          }
        }
      }
    }
    return true;
  }

}  // namespace theta

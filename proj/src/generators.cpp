#include "theta/generators.hpp"

#include <algorithm>

namespace theta {

  namespace {

    Site const& delta_site() {
      static Site const s({1});
      return s;
    }

    SiteObject simplex_object(std::size_t p) {
      return SiteObject{{Object::simplex(p)}};
    }

    Presheaf delta(std::size_t p) {
      return representable(delta_site(), simplex_object(p));
    }

    // [q] -> [p] constant at v, as an element of Delta[p]([q])
    Elem constant_simplex(std::size_t q, std::size_t p, std::size_t v) {
      return hom_index(Morphism::delta_map(q, p, std::vector<int>(q + 1, static_cast<int>(v))));
    }

    PresheafMap delta_vertices(std::size_t p) {
      return PresheafMap(
          discrete(delta_site(), p + 1), delta(p),
          [p](SiteObject const& d, Elem v) { return constant_simplex(d[0].arity(), p, v); },
          "vertices");
    }

    PresheafMap relabel_points(Presheaf const& src, std::vector<std::size_t> const& vs,
                               std::size_t object_count) {
      return PresheafMap(
          src, discrete(src.site(), object_count),
          [vs](SiteObject const&, Elem v) { return vs.at(v); }, "labels");
    }

    void check_marking(std::size_t p, std::vector<std::size_t> const& vs, std::size_t object_count) {
      if (vs.size() != p + 1) {
        throw MalformedInput("a marked p-simplex needs p+1 vertex labels");
      }
      for (auto v : vs) {
        if (v >= object_count) {
          throw MalformedInput("vertex label outside the object set");
        }
      }
    }

    // Delta[p]_vs on the one-factor site.
    Pushout marked_simplex(std::size_t p, std::vector<std::size_t> const& vs,
                           std::size_t object_count) {
      check_marking(p, vs, object_count);
      PresheafMap const incl = delta_vertices(p);
      return pushout(incl, relabel_points(incl.source(), vs, object_count));
    }

    Subobject simplex_spine(std::size_t p) {
      Presheaf D = delta(p);
      if (p == 0) {
        return subpresheaf(
            D, [D](SiteObject const& d) { return std::vector<bool>(D.size(d), false); }, "G(0)", 0);
      }
      std::vector<std::pair<SiteObject, Elem>> gens;
      for (std::size_t i = 0; i < p; ++i) {
        gens.emplace_back(simplex_object(1), hom_index(edge_map(p, i, i + 1)));
      }
      return generated_subpresheaf(D, gens, "G(" + std::to_string(p) + ")");
    }

    Subobject simplex_boundary(std::size_t p) {
      return boundary(delta_site(), simplex_object(p));
    }

    // Subobject on Delta pushed to (Delta) ++ inner, constant inside.
    Subobject outer_sub(Subobject const& s, Site const& inner) {
      Presheaf const T = terminal_presheaf(inner);
      return {external_product(s.object, T), external_product(s.inclusion, identity_map(T))};
    }

    // The window used to certify monos of family members.
    Window mono_window(Site const& site, int degree) {
      return Window::up_to(site, degree);
    }

    std::string tuple_string(std::vector<std::size_t> const& vs) {
      std::string s = "(";
      for (std::size_t i = 0; i < vs.size(); ++i) {
        s += (i ? "," : "") + std::to_string(vs[i]);
      }
      return s + ")";
    }

    // All tuples in {0..n-1}^len, lexicographic.
    std::vector<std::vector<std::size_t>> tuples(std::size_t n, std::size_t len) {
      std::vector<std::vector<std::size_t>> out;
      if (n == 0) {
        return out;
      }
      std::vector<std::size_t> t(len, 0);
      while (true) {
        out.push_back(t);
        std::size_t i = len;
        while (i > 0 && ++t[i - 1] == n) {
          t[--i] = 0;
        }
        if (i == 0) {
          return out;
        }
      }
    }

    ABracket bracket_with(Presheaf const& A, std::size_t p, Presheaf const& points,
                          std::function<Elem(Elem)> label) {
      Site const     site = outer_site(A.site());
      Presheaf const P    = external_product(delta(p), A);
      Presheaf const V    = external_product(discrete(delta_site(), p + 1), A);
      auto           size_a = [A](SiteObject const& d) {
        SiteObject theta;
        theta.parts.assign(d.parts.begin() + 1, d.parts.end());
        return A.size(theta);
      };
      PresheafMap into(
          V, P,
          [p, size_a](SiteObject const& d, Elem x) {
            std::size_t const na = size_a(d);
            return constant_simplex(d[0].arity(), p, x / na) * na + x % na;
          },
          "A x vertices");
      PresheafMap collapse(
          V, points, [size_a, label](SiteObject const& d, Elem x) { return label(x / size_a(d)); },
          "collapse");
      ABracket r;
      r.pushout = pushout(into, collapse);
      r.object  = r.pushout.object;
      (void)site;
      return r;
    }

    PresheafMap bracket_map(PresheafMap const& f, std::size_t p, ABracket const& a,
                            ABracket const& b) {
      Presheaf const A = f.source();
      Presheaf const B = f.target();
      auto           inner_of = [](SiteObject const& d) {
        SiteObject theta;
        theta.parts.assign(d.parts.begin() + 1, d.parts.end());
        return theta;
      };
      PresheafMap const bl = b.pushout.left;
      PresheafMap       u(
          a.pushout.left.source(), b.object,
          [f, A, B, bl, inner_of](SiteObject const& d, Elem x) {
            SiteObject const  theta = inner_of(d);
            std::size_t const na    = A.size(theta);
            return bl(d, (x / na) * B.size(theta) + f(theta, x % na));
          },
          "f x Delta");
      PresheafMap const br = b.pushout.right;
      PresheafMap       v(a.pushout.right.source(), b.object,
                          [br](SiteObject const& d, Elem x) { return br(d, x); }, "points");
      (void)p;
      return pushout_induced(a.pushout, u, v);
    }

    FamilyMember make_member(std::string label, PresheafMap map, Window const& w, bool check) {
      FamilyMember m;
      m.label = std::move(label);
      m.mono  = check ? is_mono_map(map, w) : true;
      m.map   = std::move(map);
      return m;
    }

    ////////////////////////////////////////////////////////////////////////
    // Nerve of the free-standing isomorphism: E([q]) = {0,1}^{q+1}
    ////////////////////////////////////////////////////////////////////////

    class IsoNerveNode final : public PresheafNode {
     public:
      IsoNerveNode() : PresheafNode(Site({1})) {}
      std::size_t size(SiteObject const& d) const override {
        return std::size_t{1} << (d[0].arity() + 1);
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        auto const        delta = g.parts[0].delta();
        std::size_t const q     = g.parts[0].target().arity();
        Elem              y     = 0;
        for (int v : delta) {
          y = 2 * y + ((x >> (q - static_cast<std::size_t>(v))) & 1);
        }
        return y;
      }
      std::optional<int> support_degree() const override {
        return std::nullopt;
      }
      std::string describe() const override {
        return "E";
      }
    };

  }  // namespace

  Presheaf outer_simplex(Site const& inner, std::size_t p) {
    return external_product(delta(p), terminal_presheaf(inner));
  }

  Presheaf outer_vertices(Site const& inner, std::size_t p) {
    return external_product(discrete(delta_site(), p + 1), terminal_presheaf(inner));
  }

  PresheafMap vertex_inclusion(Site const& inner, std::size_t p) {
    return external_product(delta_vertices(p), identity_map(terminal_presheaf(inner)));
  }

  Marked delta_p_marked(Site const& inner, std::size_t p, std::vector<std::size_t> const& vs,
                        std::size_t object_count) {
    check_marking(p, vs, object_count);
    PresheafMap const incl = vertex_inclusion(inner, p);
    Marked            m;
    m.pushout = pushout(incl, relabel_points(incl.source(), vs, object_count));
    m.object  = m.pushout.object;
    return m;
  }

  Subobject spine_marked(Site const& inner, std::size_t p, std::vector<std::size_t> const& vs,
                         std::size_t object_count) {
    if (p == 0) {
      throw MalformedInput("spine_marked needs p >= 1");
    }
    Marked const     m  = delta_p_marked(inner, p, vs, object_count);
    SiteObject const pt = inner.terminal();
    std::vector<std::pair<SiteObject, Elem>> gens;
    for (std::size_t i = 0; i < p; ++i) {
      SiteObject const e = outer_object(1, pt);
      gens.emplace_back(e, m.pushout.left(e, hom_index(edge_map(p, i, i + 1))));
    }
    SiteObject const v = outer_object(0, pt);
    for (std::size_t o = 0; o < object_count; ++o) {
      gens.emplace_back(v, m.pushout.right(v, o));
    }
    return generated_subpresheaf(m.object, gens, "G(" + std::to_string(p) + ")" + tuple_string(vs));
  }

  Subobject simplicial_spine(std::size_t p) {
    return simplex_spine(p);
  }

  Subobject spine(Site const& inner, std::size_t p) {
    return outer_sub(simplex_spine(p), inner);
  }

  Subobject outer_boundary(Site const& inner, std::size_t p) {
    return outer_sub(simplex_boundary(p), inner);
  }

  ABracket a_bracket(Presheaf const& A, std::size_t p) {
    return bracket_with(A, p, outer_vertices(A.site(), p), [](Elem v) { return v; });
  }

  PresheafMap a_bracket_map(PresheafMap const& f, std::size_t p) {
    return bracket_map(f, p, a_bracket(f.source(), p), a_bracket(f.target(), p));
  }

  ABracket a_bracket_marked(Presheaf const& A, std::size_t p, std::vector<std::size_t> const& vs,
                            std::size_t object_count) {
    check_marking(p, vs, object_count);
    return bracket_with(A, p, discrete(outer_site(A.site()), object_count),
                        [vs](Elem v) { return vs[v]; });
  }

  PresheafMap a_bracket_marked_map(PresheafMap const& f, std::size_t p,
                                   std::vector<std::size_t> const& vs, std::size_t object_count) {
    return bracket_map(f, p, a_bracket_marked(f.source(), p, vs, object_count),
                       a_bracket_marked(f.target(), p, vs, object_count));
  }

  PresheafMap pushout_product(PresheafMap const& i, PresheafMap const& j) {
    Pushout const po = pushout(external_product(identity_map(i.source()), j),
                               external_product(i, identity_map(j.source())));
    return pushout_induced(po, external_product(i, identity_map(j.target())),
                           external_product(identity_map(i.target()), j));
  }

  std::vector<FamilyMember> inner_generators(Window const& inner_window) {
    std::vector<FamilyMember> out;
    for (auto const& a : inner_window.objects()) {
      Subobject b = boundary(inner_window.site(), a);
      out.push_back({"d" + a.to_string(), b.inclusion, true});
    }
    return out;
  }

  Window inner_window_for(Site const& inner, FamilyBounds const& b) {
    if (b.inner_factor_bounds.empty()) {
      return Window::up_to(inner, b.inner_degree);
    }
    return Window::bounded(inner, b.inner_factor_bounds, b.inner_degree);
  }

  std::vector<FamilyMember> family_If(Site const& inner, FamilyBounds const& b) {
    std::vector<FamilyMember> out;
    auto const                gens = inner_generators(inner_window_for(inner, b));
    Window const w = mono_window(outer_site(inner), static_cast<int>(b.max_p) + b.inner_degree);
    for (std::size_t p = 0; p <= b.max_p; ++p) {
      for (auto const& g : gens) {
        PresheafMap map = a_bracket_map(g.map, p);
        if (p == 0 && g.map.source().size(inner.terminal()) == 0) {
          // A_[0] for empty A is the vertex itself; the member is empty -> Delta[0]
          map = from_empty(map.target());
        }
        out.push_back(make_member("I_f p=" + std::to_string(p) + " " + g.label, map, w, true));
      }
    }
    return out;
  }

  std::vector<FamilyMember> family_Ic(Site const& inner, FamilyBounds const& b) {
    std::vector<FamilyMember> out;
    Site const                site = outer_site(inner);
    Window const              w    = mono_window(site, static_cast<int>(b.max_p) + b.inner_degree);
    SiteObject const          pt   = inner.terminal();
    Window const              iw   = inner_window_for(inner, b);
    for (std::size_t p = 0; p <= b.max_p; ++p) {
      for (auto const& a : iw.objects()) {
        if (p == 0 && a != pt) {
          continue;
        }
        SiteObject const full = outer_object(p, a);
        Subobject const  bd   = boundary(site, full);
        Reduction const  rs   = reduction(bd.object);
        Reduction const  rt   = reduction(bd.inclusion.target());
        out.push_back(make_member("I_c " + full.to_string(), reduce_map(bd.inclusion, rs, rt), w,
                                  true));
      }
    }
    return out;
  }

  FamilyMember reduction_counterexample(Site const& inner) {
    auto const shapes = edge_shapes(inner);
    if (shapes.empty()) {
      throw PreconditionFailed("the inner site has no 1-cell shape");
    }
    Site const       site = outer_site(inner);
    SiteObject const full = outer_object(0, shapes.front());
    Subobject const  bd   = boundary(site, full);
    Reduction const  rs   = reduction(bd.object);
    Reduction const  rt   = reduction(bd.inclusion.target());
    return make_member("reduced " + full.to_string(), reduce_map(bd.inclusion, rs, rt),
                       mono_window(site, 2), true);
  }

  std::vector<FamilyMember> family_IOf(Site const& inner, FamilyBounds const& b) {
    std::vector<FamilyMember> out;
    auto const                gens = inner_generators(inner_window_for(inner, b));
    Window const w = mono_window(outer_site(inner), static_cast<int>(b.max_p) + b.inner_degree);
    for (std::size_t p = 0; p <= b.max_p; ++p) {
      for (auto const& vs : tuples(b.object_count, p + 1)) {
        for (auto const& g : gens) {
          out.push_back(make_member("I_Of p=" + std::to_string(p) + tuple_string(vs) + " " + g.label,
                                    a_bracket_marked_map(g.map, p, vs, b.object_count), w, true));
        }
      }
    }
    return out;
  }

  std::vector<FamilyMember> family_IOc(Site const& inner, FamilyBounds const& b) {
    std::vector<FamilyMember> out;
    auto const                gens = inner_generators(inner_window_for(inner, b));
    Window const w = mono_window(outer_site(inner), static_cast<int>(b.max_p) + b.inner_degree);
    // p = 0 members are isomorphisms once all of O sits at level 0
    for (std::size_t p = 1; p <= b.max_p; ++p) {
      for (auto const& vs : tuples(b.object_count, p + 1)) {
        Pushout const   D  = marked_simplex(p, vs, b.object_count);
        Subobject const bd = simplex_boundary(p);
        // vertices of Delta[p] lie in its boundary
        PresheafMap const vin = corestrict(delta_vertices(p), bd);
        Pushout const     dD  = pushout(vin, relabel_points(vin.source(), vs, b.object_count));
        PresheafMap const j   = pushout_induced(dD, compose(D.left, bd.inclusion), D.right);
        for (auto const& g : gens) {
          PresheafMap const i  = pushout_product(j, g.map);
          Reduction const   rs = reduction(i.source());
          Reduction const   rt = reduction(i.target());
          out.push_back(make_member("I_Oc p=" + std::to_string(p) + tuple_string(vs) + " " + g.label,
                                    reduce_map(i, rs, rt), w, true));
        }
      }
    }
    return out;
  }

  std::vector<FamilyMember> family_Se(Site const& inner, FamilyBounds const& b) {
    std::vector<FamilyMember> out;
    Window const w = mono_window(outer_site(inner), static_cast<int>(b.max_p));
    for (std::size_t p = 1; p <= b.max_p; ++p) {
      for (auto const& vs : tuples(b.object_count, p + 1)) {
        out.push_back(make_member("Se p=" + std::to_string(p) + tuple_string(vs),
                                  spine_marked(inner, p, vs, b.object_count).inclusion, w, true));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // n = 1
  ////////////////////////////////////////////////////////////////////////

  Site css_site() {
    return Site({1, 1});
  }

  Subobject horn(std::size_t m, std::size_t k) {
    if (m == 0 || k > m) {
      throw MalformedInput("horn V[m,k] needs m >= 1 and k <= m");
    }
    std::vector<std::pair<SiteObject, Elem>> gens;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i != k) {
        gens.emplace_back(simplex_object(m - 1), hom_index(coface(m, i)));
      }
    }
    return generated_subpresheaf(delta(m), gens,
                                 "V[" + std::to_string(m) + "," + std::to_string(k) + "]");
  }

  Presheaf iso_nerve(int d) {
    if (d < 0) {
      throw MalformedInput("iso_nerve needs a nonnegative truncation degree");
    }
    Presheaf const E(std::make_shared<IsoNerveNode>());
    std::vector<std::pair<SiteObject, Elem>> gens;
    SiteObject const top = simplex_object(static_cast<std::size_t>(d));
    for (Elem x = 0; x < E.size(top); ++x) {
      gens.emplace_back(top, x);
    }
    return generated_subpresheaf(E, gens, "E<=" + std::to_string(d)).object;
  }

  std::vector<FamilyMember> css_acyclic(CssBounds const& b) {
    std::vector<FamilyMember> out;
    Window const w = Window::bounded(css_site(), {static_cast<int>(b.max_m),
                                                  std::max(static_cast<int>(b.max_p), b.e_degree)},
                                     static_cast<int>(b.max_m) + b.e_degree);
    Presheaf const    E = iso_nerve(b.e_degree);
    PresheafMap const pt_in_E(delta(0), E, [](SiteObject const&, Elem) { return Elem{0}; },
                              "x0");
    for (std::size_t m = 1; m <= b.max_m; ++m) {
      for (std::size_t k = 0; k <= m; ++k) {
        Subobject const   V  = horn(m, k);
        std::string const vk = "V[" + std::to_string(m) + "," + std::to_string(k) + "]";
        for (std::size_t p = 0; p <= b.max_p; ++p) {
          out.push_back(make_member(vk + " x Delta[" + std::to_string(p) + "]^t",
                                    pushout_product(V.inclusion, simplex_spine(p).inclusion), w,
                                    true));
        }
        out.push_back(make_member(vk + " x E^t", pushout_product(V.inclusion, pt_in_E), w, true));
      }
    }
    return out;
  }

  Presheaf css_discrete(Presheaf const& S) {
    return constant_along(1, S);
  }

  PresheafMap css_discrete(PresheafMap const& f) {
    return constant_along(1, f);
  }

}  // namespace theta

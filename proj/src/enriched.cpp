#include "theta/enriched.hpp"

#include <algorithm>
#include <map>

#include "theta/detail/memo.hpp"

namespace theta {

  namespace {

    SiteObject inner_part(SiteObject const& d) {
      SiteObject r;
      r.parts.assign(d.parts.begin() + 1, d.parts.end());
      return r;
    }

    SiteMorphism inner_part(SiteMorphism const& g) {
      SiteMorphism r;
      r.parts.assign(g.parts.begin() + 1, g.parts.end());
      return r;
    }

    SiteMorphism to_terminal_map(SiteObject const& d, Site const& site) {
      return hom_at(d, site.terminal(), 0);
    }

    ////////////////////////////////////////////////////////////////////////
    // Nerve
    ////////////////////////////////////////////////////////////////////////

    class NerveNode final : public PresheafNode {
     public:
      explicit NerveNode(EnrichedCategory C) : PresheafNode(outer_site(C.inner)), C_(std::move(C)) {}

      struct Layout {
        std::size_t              p = 0;
        std::vector<std::size_t> offsets;  // per object tuple, plus the total
      };

      std::size_t size(SiteObject const& d) const override {
        return layout(d)->offsets.back();
      }

      Elem act(SiteMorphism const& g, Elem x) const override {
        NerveCell const   c     = decode(g.target(), x);
        SiteObject const  theta = inner_part(g.source());
        SiteMorphism const tau  = inner_part(g);
        auto const        delta = g.parts[0].delta();
        std::size_t const q     = delta.size() - 1;
        NerveCell         r;
        for (int v : delta) {
          r.objects.push_back(c.objects[static_cast<std::size_t>(v)]);
        }
        for (std::size_t j = 1; j <= q; ++j) {
          auto const a = static_cast<std::size_t>(delta[j - 1]);
          auto const b = static_cast<std::size_t>(delta[j]);
          if (a == b) {
            r.homs.push_back(C_.unit_at(c.objects[a], theta));
            continue;
          }
          auto restrict = [&](std::size_t t) {
            return C_.homs[c.objects[t - 1]][c.objects[t]].act(tau, c.homs[t - 1]);
          };
          Elem h = restrict(a + 1);
          for (std::size_t t = a + 2; t <= b; ++t) {
            h = C_.comp(c.objects[a], c.objects[t - 1], c.objects[t], theta, restrict(t), h);
          }
          r.homs.push_back(h);
        }
        return encode(g.source(), r);
      }

      std::optional<int> support_degree() const override {
        return std::nullopt;
      }
      std::string describe() const override {
        return "nerve(" + std::to_string(C_.objects()) + " objects)";
      }

      NerveCell decode(SiteObject const& d, Elem x) const {
        auto              lay = layout(d);
        auto const&       off = lay->offsets;
        std::size_t const t =
            static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), x) - off.begin()) - 1;
        NerveCell         c;
        c.objects = tuple_of(t, lay->p);
        SiteObject const theta = inner_part(d);
        Elem             rest  = x - off[t];
        c.homs.resize(lay->p);
        for (std::size_t i = lay->p; i-- > 0;) {
          std::size_t const n = C_.homs[c.objects[i]][c.objects[i + 1]].size(theta);
          c.homs[i]           = rest % n;
          rest /= n;
        }
        return c;
      }

      Elem encode(SiteObject const& d, NerveCell const& c) const {
        auto              lay   = layout(d);
        SiteObject const  theta = inner_part(d);
        std::size_t       t     = 0;
        for (std::size_t z : c.objects) {
          t = t * C_.objects() + z;
        }
        Elem x = 0;
        for (std::size_t i = 0; i < lay->p; ++i) {
          x = x * C_.homs[c.objects[i]][c.objects[i + 1]].size(theta) + c.homs[i];
        }
        return lay->offsets[t] + x;
      }

      EnrichedCategory const& category() const noexcept {
        return C_;
      }

     private:
      std::vector<std::size_t> tuple_of(std::size_t t, std::size_t p) const {
        std::vector<std::size_t> z(p + 1);
        for (std::size_t i = p + 1; i-- > 0;) {
          z[i] = t % C_.objects();
          t /= C_.objects();
        }
        return z;
      }

      std::shared_ptr<Layout const> layout(SiteObject const& d) const {
        return memo_.get(d, [&] {
          site().check(d);
          Layout           lay;
          lay.p                  = d[0].arity();
          SiteObject const theta = inner_part(d);
          std::size_t      count = 1;
          for (std::size_t i = 0; i <= lay.p; ++i) {
            count *= C_.objects();
          }
          lay.offsets.reserve(count + 1);
          std::size_t acc = 0;
          for (std::size_t t = 0; t < count; ++t) {
            lay.offsets.push_back(acc);
            auto        z = tuple_of(t, lay.p);
            std::size_t n = 1;
            for (std::size_t i = 0; i < lay.p; ++i) {
              n *= C_.homs[z[i]][z[i + 1]].size(theta);
            }
            acc += n;
          }
          lay.offsets.push_back(acc);
          return lay;
        });
      }

      EnrichedCategory                     C_;
      detail::Memo<SiteObject, Layout>     memo_;
    };

    NerveNode const& nerve_node(SegalPreObject const& N) {
      auto const* node = dynamic_cast<NerveNode const*>(&N.diagram().node());
      if (!node) {
        throw PreconditionFailed("not a nerve: " + N.diagram().describe());
      }
      return *node;
    }

    ////////////////////////////////////////////////////////////////////////
    // Maps top(d) -> [k] under pointwise max
    ////////////////////////////////////////////////////////////////////////

    class MaxMonoidNode final : public PresheafNode {
     public:
      MaxMonoidNode(Site s, std::size_t k) : PresheafNode(std::move(s)), k_(k) {
        if (site().level(0) < 1) {
          throw MalformedInput("max_monoid needs a first factor of level >= 1");
        }
      }
      std::size_t size(SiteObject const& d) const override {
        return hom(top(d), Object::simplex(k_)).size();
      }
      Elem act(SiteMorphism const& g, Elem x) const override {
        Morphism const& u = hom(top(g.target()), Object::simplex(k_))[x];
        auto const      d = g.parts[0].delta();
        Morphism const  s = Morphism::delta_map(g.source()[0].arity(), g.target()[0].arity(),
                                                {d.begin(), d.end()});
        return hom_index(compose(u, s));
      }
      std::optional<int> support_degree() const override {
        return static_cast<int>(k_);
      }
      std::string describe() const override {
        return "max[" + std::to_string(k_) + "]";
      }

      Elem mult(SiteObject const& d, Elem a, Elem b) const {
        auto const& h  = hom(top(d), Object::simplex(k_));
        auto const  sa = h[a].delta();
        auto const  db = h[b].delta();
        std::vector<int> da(sa.begin(), sa.end());
        for (std::size_t i = 0; i < da.size(); ++i) {
          da[i] = std::max(da[i], db[i]);
        }
        return hom_index(Morphism::delta_map(da.size() - 1, k_, da));
      }
      Elem zero() const {
        return hom_index(Morphism::delta_map(0, k_, {0}));
      }

     private:
      static Object top(SiteObject const& d) {
        return Object::simplex(d[0].arity());
      }
      std::size_t k_;
    };

    // Position of parent elements inside fibers of X_1.
    struct FiberIndex {
      SegalPreObject                                    X;
      std::vector<std::vector<Subobject>>               F;
      detail::OrderedMemo<std::pair<std::size_t, SiteObject>, std::map<Elem, Elem>> memo;

      Elem position(std::size_t x, std::size_t y, SiteObject const& d, Elem e) {
        std::size_t const n   = F.size();
        auto              tab = memo.get({x * n + y, d}, [&] {
          std::map<Elem, Elem> m;
          auto const&          sub = F[x][y];
          std::size_t const    k   = sub.object.size(d);
          for (Elem i = 0; i < k; ++i) {
            m.emplace(sub.inclusion(d, i), i);
          }
          return m;
        });
        return tab->at(e);
      }
    };

    std::shared_ptr<FiberIndex> fiber_index(SegalPreObject const& X) {
      auto fi         = std::make_shared<FiberIndex>();
      fi->X           = X;
      std::size_t const n = X.vertex_count();
      fi->F.resize(n);
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          fi->F[x].push_back(fiber(X, 1, {x, y}));
        }
      }
      return fi;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Categories and functors
  ////////////////////////////////////////////////////////////////////////

  Elem EnrichedCategory::unit_at(std::size_t x, SiteObject const& d) const {
    return homs[x][x].act(to_terminal_map(d, inner), units[x]);
  }

  std::optional<std::string> EnrichedCategory::check_axioms(Window const& w) const {
    std::size_t const n = objects();
    for (auto const& d : w.objects()) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          std::size_t const nxy = homs[x][y].size(d);
          for (Elem f = 0; f < nxy; ++f) {
            if (comp(x, x, y, d, f, unit_at(x, d)) != f || comp(x, y, y, d, unit_at(y, d), f) != f) {
              return "unit law fails at " + names[x] + " -> " + names[y] + " over " + d.to_string();
            }
            for (std::size_t z = 0; z < n; ++z) {
              std::size_t const nyz = homs[y][z].size(d);
              for (Elem g = 0; g < nyz; ++g) {
                Elem const gf = comp(x, y, z, d, g, f);
                for (std::size_t v = 0; v < n; ++v) {
                  std::size_t const nzv = homs[z][v].size(d);
                  for (Elem h = 0; h < nzv; ++h) {
                    if (comp(x, z, v, d, h, gf) != comp(x, y, v, d, comp(y, z, v, d, h, g), f)) {
                      return "associativity fails over " + d.to_string();
                    }
                  }
                }
                for (auto const& e : w.objects()) {
                  for (auto const& t : hom(e, d)) {
                    if (homs[x][z].act(t, gf)
                        != comp(x, y, z, e, homs[y][z].act(t, g), homs[x][y].act(t, f))) {
                      return "composition is not natural along " + t.to_string();
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> EnrichedFunctor::check(Window const& w) const {
    std::size_t const n = source.objects();
    SiteObject const  pt = source.inner.terminal();
    for (std::size_t x = 0; x < n; ++x) {
      if (homs[x][x](pt, source.units[x]) != target.units[objects[x]]) {
        return "unit of " + source.names[x] + " is not preserved";
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (auto bad = check_naturality(homs[x][y], w)) {
          return *bad;
        }
      }
    }
    for (auto const& d : w.objects()) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            std::size_t const nxy = source.homs[x][y].size(d);
            std::size_t const nyz = source.homs[y][z].size(d);
            for (Elem f = 0; f < nxy; ++f) {
              for (Elem g = 0; g < nyz; ++g) {
                Elem const lhs = homs[x][z](d, source.comp(x, y, z, d, g, f));
                Elem const rhs = target.comp(objects[x], objects[y], objects[z], d,
                                             homs[y][z](d, g), homs[x][y](d, f));
                if (lhs != rhs) {
                  return "composition is not preserved over " + d.to_string();
                }
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  EnrichedFunctor identity_functor(EnrichedCategory const& C) {
    EnrichedFunctor F;
    F.source = C;
    F.target = C;
    for (std::size_t x = 0; x < C.objects(); ++x) {
      F.objects.push_back(x);
      F.homs.emplace_back();
      for (std::size_t y = 0; y < C.objects(); ++y) {
        F.homs[x].push_back(identity_map(C.homs[x][y]));
      }
    }
    return F;
  }

  EnrichedCategory UA(Presheaf const& A) {
    EnrichedCategory C;
    C.inner         = A.site();
    C.names         = {"x", "y"};
    Presheaf const I = terminal_presheaf(A.site());
    C.homs          = {{I, A}, {empty_presheaf(A.site()), I}};
    C.units         = {0, 0};
    C.comp          = [](std::size_t x, std::size_t y, std::size_t, SiteObject const&, Elem g, Elem f) {
      // one of the two maps is an identity
      return x == y ? g : f;
    };
    return C;
  }

  EnrichedFunctor UA_map(PresheafMap const& f) {
    EnrichedFunctor F;
    F.source  = UA(f.source());
    F.target  = UA(f.target());
    F.objects = {0, 1};
    auto same = [](Presheaf const& a, Presheaf const& b) {
      return PresheafMap(a, b, [](SiteObject const&, Elem x) { return x; }, "id");
    };
    F.homs = {{same(F.source.homs[0][0], F.target.homs[0][0]),
               PresheafMap(F.source.homs[0][1], F.target.homs[0][1],
                           [f](SiteObject const& d, Elem x) { return f(d, x); }, f.label())},
              {same(F.source.homs[1][0], F.target.homs[1][0]),
               same(F.source.homs[1][1], F.target.homs[1][1])}};
    return F;
  }

  ////////////////////////////////////////////////////////////////////////
  // Nerve
  ////////////////////////////////////////////////////////////////////////

  SegalPreObject nerve(EnrichedCategory const& C) {
    if (C.objects() == 0) {
      throw MalformedInput("nerve: the category needs at least one object");
    }
    return SegalPreObject(Presheaf(std::make_shared<NerveNode>(C)));
  }

  NerveCell nerve_decode(SegalPreObject const& N, SiteObject const& d, Elem x) {
    return nerve_node(N).decode(d, x);
  }

  Elem nerve_encode(SegalPreObject const& N, SiteObject const& d, NerveCell const& c) {
    return nerve_node(N).encode(d, c);
  }

  EnrichedCategory const& nerve_source(SegalPreObject const& N) {
    return nerve_node(N).category();
  }

  PresheafMap nerve_map(EnrichedFunctor const& F, SegalPreObject const& NC,
                        SegalPreObject const& ND) {
    NerveNode const* src = &nerve_node(NC);
    NerveNode const* tgt = &nerve_node(ND);
    return PresheafMap(
        NC.diagram(), ND.diagram(),
        [F, src, tgt](SiteObject const& d, Elem x) {
          NerveCell        c     = src->decode(d, x);
          SiteObject const theta = inner_part(d);
          for (std::size_t i = 0; i < c.homs.size(); ++i) {
            c.homs[i] = F.homs[c.objects[i]][c.objects[i + 1]](theta, c.homs[i]);
          }
          for (auto& z : c.objects) {
            z = F.objects[z];
          }
          return tgt->encode(d, c);
        },
        "N(F)");
  }

  ////////////////////////////////////////////////////////////////////////
  // Strictification
  ////////////////////////////////////////////////////////////////////////

  EnrichedCategory strictify(SegalPreObject const& X, Window const& inner_window) {
    auto strict = is_segal_strict(X, inner_window, 3);
    if (!strict.strict) {
      throw PreconditionFailed("strictify needs a strict Segal object: "
                               + strict.witness.value_or(""));
    }
    auto              fi = fiber_index(X);
    std::size_t const n  = X.vertex_count();
    SiteObject const  pt = X.inner_site().terminal();
    EnrichedCategory  C;
    C.inner = X.inner_site();
    for (std::size_t x = 0; x < n; ++x) {
      C.names.push_back("v" + std::to_string(x));
      C.homs.emplace_back();
      for (std::size_t y = 0; y < n; ++y) {
        C.homs[x].push_back(fi->F[x][y].object);
      }
      C.units.push_back(fi->position(x, x, pt, X.constant_at(1, pt, x)));
    }
    auto s2  = std::make_shared<SegalMap>(segal_map(X, 2));
    auto inv = std::make_shared<detail::Memo<SiteObject, std::vector<Elem>>>();
    C.comp   = [fi, s2, inv](std::size_t x, std::size_t y, std::size_t z, SiteObject const& d,
                           Elem g, Elem f) {
      auto table = inv->get(d, [&] {
        std::vector<Elem> t(s2->target.size(d), SIZE_MAX);
        std::size_t const m = s2->phi.source().size(d);
        for (Elem w = 0; w < m; ++w) {
          t[s2->phi(d, w)] = w;
        }
        return t;
      });
      Elem const ef = fi->F[x][y].inclusion(d, f);
      Elem const eg = fi->F[y][z].inclusion(d, g);
      auto const k  = s2->encode(d, {ef, eg});
      if (!k) {
        throw Error("strictify: edges are not composable");
      }
      Elem const w = (*table)[*k];
      Elem const e = fi->X.diagram().act(outer(coface(2, 1), d), w);
      return fi->position(x, z, d, e);
    };
    return C;
  }

  PresheafMap strictify_unit(SegalPreObject const& X, EnrichedCategory const& C,
                             SegalPreObject const& NC) {
    auto             fi  = fiber_index(X);
    NerveNode const* tgt = &nerve_node(NC);
    (void)C;
    return PresheafMap(
        X.diagram(), NC.diagram(),
        [fi, tgt](SiteObject const& d, Elem x) {
          std::size_t const p     = d[0].arity();
          SiteObject const  theta = inner_part(d);
          NerveCell         c;
          auto const        vs = fi->X.vertices(p, theta, x);
          c.objects.assign(vs.begin(), vs.end());
          for (std::size_t i = 1; i <= p; ++i) {
            Elem e = fi->X.diagram().act(outer(edge_map(p, i - 1, i), theta), x);
            c.homs.push_back(fi->position(vs[i - 1], vs[i], theta, e));
          }
          return tgt->encode(d, c);
        },
        "unit");
  }

  EnrichedFunctor strictify_counit(EnrichedCategory const& C, SegalPreObject const& NC,
                                   EnrichedCategory const& S) {
    (void)NC;
    EnrichedFunctor F;
    F.source = C;
    F.target = S;
    for (std::size_t x = 0; x < C.objects(); ++x) {
      F.objects.push_back(x);
      F.homs.emplace_back();
      for (std::size_t y = 0; y < C.objects(); ++y) {
        // the (x, y) block of N(C)_1 is C(x, y) in order
        F.homs[x].push_back(PresheafMap(
            C.homs[x][y], S.homs[x][y], [](SiteObject const&, Elem h) { return h; }, "block"));
      }
    }
    return F;
  }

  ////////////////////////////////////////////////////////////////////////
  // Components
  ////////////////////////////////////////////////////////////////////////

  HoCategory pi0_category(EnrichedCategory const& C) {
    std::size_t const n  = C.objects();
    SiteObject const  pt = C.inner.terminal();
    std::vector<std::vector<Pi0>> pis(n);
    HoCategory                    H;
    H.objects = n;
    H.homs.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        pis[x].push_back(pi0(C.homs[x][y]));
        H.homs[x][y] = pis[x][y].count;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      H.identity.push_back(pis[x][x].component.at(C.units[x]));
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          auto& tab = H.comp[{x, y, z}];
          tab.assign(H.homs[x][y] * H.homs[y][z], SIZE_MAX);
          std::size_t const nxy = C.homs[x][y].size(pt);
          std::size_t const nyz = C.homs[y][z].size(pt);
          for (Elem f = 0; f < nxy; ++f) {
            for (Elem g = 0; g < nyz; ++g) {
              std::size_t const a = pis[x][y].component[f];
              std::size_t const b = pis[y][z].component[g];
              std::size_t const c = pis[x][z].component[C.comp(x, y, z, pt, g, f)];
              auto&             slot = tab[a * H.homs[y][z] + b];
              if (slot != SIZE_MAX && slot != c) {
                throw Error("composition does not descend to components at " + C.names[x] + ", "
                            + C.names[y] + ", " + C.names[z]);
              }
              slot = c;
            }
          }
        }
      }
    }
    return H;
  }

  HoFunctor pi0_functor(EnrichedFunctor const& F) {
    std::size_t const n  = F.source.objects();
    SiteObject const  pt = F.source.inner.terminal();
    HoFunctor         H;
    H.objects = F.objects;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        Pi0 const         ps = pi0(F.source.homs[x][y]);
        Pi0 const         pt_ = pi0(F.target.homs[F.objects[x]][F.objects[y]]);
        auto&             row = H.homs[{x, y}];
        row.assign(ps.count, SIZE_MAX);
        std::size_t const m = F.source.homs[x][y].size(pt);
        for (Elem h = 0; h < m; ++h) {
          std::size_t const c    = pt_.component.at(F.homs[x][y](pt, h));
          auto&             slot = row[ps.component[h]];
          if (slot != SIZE_MAX && slot != c) {
            throw Error("functor does not respect components");
          }
          slot = c;
        }
      }
    }
    return H;
  }

  EnrichedDK dk_check_enriched(EnrichedFunctor const& F, Window const& w) {
    EnrichedDK        r;
    std::size_t const n = F.source.objects();
    r.w1                = true;
    for (std::size_t x = 0; x < n && r.w1; ++x) {
      for (std::size_t y = 0; y < n && r.w1; ++y) {
        if (!is_iso_map(F.homs[x][y], w)) {
          r.w1      = false;
          r.witness = "hom map " + F.source.names[x] + " -> " + F.source.names[y]
                      + " is not a bijection on the window";
        }
      }
    }
    auto fail = equivalence_failure(pi0_functor(F), pi0_category(F.source), pi0_category(F.target));
    r.w2      = !fail;
    if (fail && r.witness.empty()) {
      r.witness = *fail;
    }
    r.ok = r.w1 && r.w2;
    return r;
  }

  bool is_enriched_iso(EnrichedFunctor const& F, Window const& w) {
    std::size_t const n = F.source.objects();
    if (F.target.objects() != n) {
      return false;
    }
    std::vector<std::size_t> objs = F.objects;
    std::sort(objs.begin(), objs.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (objs[i] != i) {
        return false;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!is_iso_map(F.homs[x][y], w)) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Monoids and preorders
  ////////////////////////////////////////////////////////////////////////

  Monoid trivial_monoid(Site const& inner) {
    return {terminal_presheaf(inner), 0, [](SiteObject const&, Elem, Elem) { return Elem{0}; },
            "1"};
  }

  Monoid cyclic_monoid(Site const& inner, std::size_t k) {
    if (k == 0) {
      throw MalformedInput("cyclic_monoid needs k >= 1");
    }
    return {discrete(inner, k), 0,
            [k](SiteObject const&, Elem a, Elem b) { return (a + b) % k; },
            "Z/" + std::to_string(k)};
  }

  Monoid max_monoid(Site const& inner, std::size_t k) {
    auto node = std::make_shared<MaxMonoidNode>(inner, k);
    MaxMonoidNode const* raw = node.get();
    Presheaf carrier(node);
    return {carrier, raw->zero(),
            [raw, carrier](SiteObject const& d, Elem a, Elem b) { return raw->mult(d, a, b); },
            "max[" + std::to_string(k) + "]"};
  }

  EnrichedCategory preorder_category(std::vector<std::vector<bool>> const& le, Monoid const& M) {
    std::size_t const n = le.size();
    for (std::size_t x = 0; x < n; ++x) {
      if (le[x].size() != n || !le[x][x]) {
        throw MalformedInput("preorder_category: relation must be square and reflexive");
      }
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (le[x][y] && le[y][z] && !le[x][z]) {
            throw MalformedInput("preorder_category: relation is not transitive");
          }
        }
      }
    }
    EnrichedCategory C;
    C.inner          = M.carrier.site();
    Presheaf const E = empty_presheaf(C.inner);
    for (std::size_t x = 0; x < n; ++x) {
      C.names.push_back("o" + std::to_string(x));
      C.homs.emplace_back();
      for (std::size_t y = 0; y < n; ++y) {
        C.homs[x].push_back(le[x][y] ? M.carrier : E);
      }
      C.units.push_back(M.unit);
    }
    auto mult = M.mult;
    C.comp    = [mult](std::size_t, std::size_t, std::size_t, SiteObject const& d, Elem g, Elem f) {
      return mult(d, g, f);
    };
    return C;
  }

}  // namespace theta

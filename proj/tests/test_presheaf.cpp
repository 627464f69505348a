#include <gtest/gtest.h>

#include "theta/json_io.hpp"
#include "theta/random.hpp"

using namespace theta;

namespace {

  Site const kDelta({1});

  SiteObject simplex(std::size_t m) {
    return SiteObject{{Object::simplex(m)}};
  }

  // Monotone maps [m] -> [q] as value lists.
  std::vector<std::vector<int>> monotone(int m, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int>              v(static_cast<std::size_t>(m + 1), 0);
    while (true) {
      out.push_back(v);
      int i = m;
      while (i >= 0 && v[static_cast<std::size_t>(i)] == q) {
        --i;
      }
      if (i < 0) {
        return out;
      }
      int const x = ++v[static_cast<std::size_t>(i)];
      for (int k = i + 1; k <= m; ++k) {
        v[static_cast<std::size_t>(k)] = x;
      }
    }
  }

}  // namespace

TEST(Presheaf, RepresentableCounts) {
  Presheaf const D1 = representable(kDelta, simplex(1));
  EXPECT_EQ(D1.size(simplex(0)), 2u);
  EXPECT_EQ(D1.size(simplex(1)), 3u);

  Site const       t2({2});
  Object const     c1 = Object::simplex(1);
  Object const     c0 = Object::simplex(0);
  SiteObject const a{{Object::make(2, {c1, c0})}};
  SiteObject const d{{Object::make(1 + 1, {c0})}};
  Presheaf const   R = representable(t2, a);
  EXPECT_EQ(R.size(d), hom(d[0], a[0]).size());
  // The identity is an element of R(a).
  EXPECT_LT(hom_index(identity(a[0])), R.size(a));
}

TEST(Presheaf, BoundaryExamples) {
  Subobject const b1 = boundary(kDelta, simplex(1));
  EXPECT_EQ(b1.object.size(simplex(0)), 2u);
  EXPECT_EQ(b1.object.size(simplex(1)), 2u);

  Subobject const b0 = boundary(kDelta, simplex(0));
  EXPECT_EQ(b0.object.size(simplex(0)), 0u);
  EXPECT_EQ(b0.object.size(simplex(2)), 0u);

  // Elements of Delta[2]([1]) missing some vertex: every map [1] -> [2].
  std::size_t oracle = 0;
  for (auto const& v : monotone(1, 2)) {
    std::set<int> const hit(v.begin(), v.end());
    oracle += hit.size() < 3 ? 1 : 0;
  }
  EXPECT_EQ(oracle, 6u);
  EXPECT_EQ(boundary(kDelta, simplex(2)).object.size(simplex(1)), oracle);
}

TEST(Presheaf, SegalCoreExamples) {
  Object const    pt = Object::point(0);
  Subobject const g  = segal_core(1, {pt, pt});
  // Maps [1] -> [2] landing in {0,1} or in {1,2}.
  std::size_t oracle = 0;
  for (auto const& v : monotone(1, 2)) {
    oracle += (v[1] <= 1 || v[0] >= 1) ? 1 : 0;
  }
  EXPECT_EQ(oracle, 5u);
  EXPECT_EQ(g.object.size(simplex(1)), oracle);
  EXPECT_EQ(g.inclusion.target().size(simplex(1)), 6u);

  Object const    c1 = Object::simplex(1);
  Subobject const g2 = segal_core(2, {c1, c1});
  EXPECT_TRUE(is_mono_map(g2.inclusion, Window::up_to(Site({2}), 4)));
}

TEST(Presheaf, Limits) {
  Presheaf const D1 = representable(kDelta, simplex(1));
  Presheaf const T  = terminal_presheaf(kDelta);
  EXPECT_EQ(product({D1, D1}).object.size(simplex(1)), 9u);

  Product const pt = product({D1, T});
  EXPECT_TRUE(is_iso_map(pt.projections[0], Window::up_to(kDelta, 3)));

  Presheaf const  D0 = representable(kDelta, simplex(0));
  Pushout const   po = pushout(from_empty(D0), from_empty(D0));
  Window const    w  = Window::up_to(kDelta, 3);
  for (auto const& d : w.objects()) {
    EXPECT_EQ(po.object.size(d), 2u);
  }
  Coproduct const c = coproduct({D1, D0});
  EXPECT_EQ(c.object.size(simplex(2)), 4u + 1u);
}

TEST(Presheaf, PushoutGluesEndpoints) {
  // Two edges glued head to tail: Delta[1] + Delta[1] over a point.
  Presheaf const    D0 = representable(kDelta, simplex(0));
  Presheaf const    D1 = representable(kDelta, simplex(1));
  Morphism const    v0 = Morphism::delta_map(0, 1, {0});
  Morphism const    v1 = Morphism::delta_map(0, 1, {1});
  PresheafMap const head(D0, D1, [=](SiteObject const& d, Elem x) {
    return D1.act(SiteMorphism{{hom(d[0], Object::simplex(0))[x]}}, hom_index(v1));
  });
  PresheafMap const tail(D0, D1, [=](SiteObject const& d, Elem x) {
    return D1.act(SiteMorphism{{hom(d[0], Object::simplex(0))[x]}}, hom_index(v0));
  });
  Pushout const po = pushout(head, tail);
  EXPECT_EQ(po.object.size(simplex(0)), 3u);
  EXPECT_EQ(po.object.size(simplex(1)), 5u);  // the spine of Delta[2]
  EXPECT_FALSE(check_functoriality(po.object, Window::up_to(kDelta, 3)).has_value());
}

TEST(Presheaf, HomSetExamples) {
  Presheaf const D1 = representable(kDelta, simplex(1));
  EXPECT_EQ(count_homs(D1, D1), 3u);
  EXPECT_EQ(count_homs(empty_presheaf(kDelta), D1), 1u);
  EXPECT_EQ(count_homs(D1, empty_presheaf(kDelta)), 0u);
}

TEST(Presheaf, YonedaRandom) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    Site const       site({1 + t % 2});
    Presheaf const   X = random_presheaf(site, RandomSpec{1, 3, 2, 2, {}}, rng);
    SiteObject const a = random_site_object(site, 2, rng);
    HomSet const     h = hom_set(representable(site, a), X);
    ASSERT_EQ(h.size(), X.size(a));
    std::set<Elem> seen;
    for (std::size_t i = 0; i < h.size(); ++i) {
      seen.insert(h.as_map(i)(a, hom_index(identity(a[0]))));
    }
    EXPECT_EQ(seen.size(), X.size(a));
  }
}

// Maps out of the spine of Delta[2] are composable pairs of edges.
TEST(Presheaf, SpineHomsAreComposablePairs) {
  Rng             rng(22);
  Object const    pt = Object::point(0);
  Subobject const g  = segal_core(1, {pt, pt});
  for (int t = 0; t < 30; ++t) {
    Presheaf const     X  = random_presheaf(kDelta, RandomSpec{1, 4, 2, 2, {}}, rng);
    SiteMorphism const d0{{Morphism::delta_map(0, 1, {1})}};
    SiteMorphism const d1{{Morphism::delta_map(0, 1, {0})}};
    std::size_t        oracle = 0;
    std::size_t const  n      = X.size(simplex(1));
    for (Elem e = 0; e < n; ++e) {
      for (Elem f = 0; f < n; ++f) {
        oracle += X.act(d0, e) == X.act(d1, f) ? 1 : 0;
      }
    }
    EXPECT_EQ(count_homs(g.object, X), oracle);
  }
}

TEST(Presheaf, MonoExamples) {
  Presheaf const D1 = representable(kDelta, simplex(1));
  Window const   w  = Window::up_to(kDelta, 3);
  EXPECT_TRUE(is_mono_map(identity_map(D1), w));
  Coproduct const two = coproduct({terminal_presheaf(kDelta), terminal_presheaf(kDelta)});
  EXPECT_FALSE(is_mono_map(to_terminal(two.object), w));
}

TEST(Presheaf, Tabulation) {
  Presheaf const   D1 = representable(kDelta, simplex(1));
  Window const     w  = Window::up_to(kDelta, 1);
  Tabulation const t  = tabulate(D1, w);
  EXPECT_EQ(t.sizes, (std::vector<std::size_t>{2, 3}));
  Presheaf const   T  = from_tabulation(t);
  Tabulation const t2 = tabulate(T, w);
  EXPECT_EQ(t2.sizes, t.sizes);
  EXPECT_EQ(t2.action, t.action);
  EXPECT_FALSE(check_functoriality(T, w).has_value());
  EXPECT_THROW(T.size(simplex(2)), WindowTooSmall);
}

TEST(Presheaf, FunctorialityOfRandomPresheaves) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    Site const     site({1, 1 + t % 2});
    Presheaf const X = random_presheaf(site, RandomSpec{1, 4, 3, 2, {}}, rng);
    EXPECT_FALSE(check_functoriality(X, Window::up_to(site, 2)).has_value());
  }
}

TEST(Presheaf, ExternalProductCounts) {
  Presheaf const D1 = representable(kDelta, simplex(1));
  Presheaf const P  = external_product(D1, D1);
  SiteObject const d{{Object::simplex(1), Object::simplex(0)}};
  EXPECT_EQ(P.size(d), 3u * 2u);
  Presheaf const C = constant_along(1, D1);
  EXPECT_EQ(C.size(SiteObject{{Object::simplex(3), Object::simplex(1)}}), 3u);
}

TEST(Presheaf, PresentationJsonRoundTrip) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    Site const         site({1, 2});
    Presentation const p  = random_presentation(site, RandomSpec{1, 4, 3, 2, {}}, rng);
    Json const         j  = presentation_to_json(p);
    Presentation const q  = presentation_from_json(parse_json(j.dump()));
    EXPECT_EQ(presentation_to_json(q), j);
    Window const w = Window::up_to(site, 3);
    EXPECT_EQ(total_size(presented(p), w), total_size(presented(q), w));
  }
}

TEST(Presheaf, MalformedInputs) {
  EXPECT_THROW(parse_json("{"), MalformedInput);
  EXPECT_THROW(parse_shape("[2]([1])", 2), MalformedInput);
  EXPECT_THROW(presentation_from_json(parse_json(R"({"site":[1],"cells":[{"id":"a"}]})")),
               MalformedInput);
  Presheaf const D1 = representable(kDelta, simplex(1));
  Presheaf const E  = representable(Site({2}), SiteObject{{Object::point(2)}});
  EXPECT_THROW(product({D1, E}), SiteMismatch);
}

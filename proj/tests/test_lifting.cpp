#include <gtest/gtest.h>

#include <set>

#include "theta/lifting.hpp"
#include "theta/random.hpp"

using namespace theta;

namespace {

  Site const kInner({1});

  FamilyMember surjectivity_member() {
    FamilyBounds fb;
    fb.max_p        = 0;
    fb.inner_degree = 0;
    return family_If(kInner, fb).front();
  }

  Presheaf d1() {
    return representable(kInner, SiteObject{{Object::simplex(1)}});
  }

}  // namespace

TEST(Lifting, IsoLiftsAgainstEverything) {
  Rng                rng(61);
  FamilyMember const i = surjectivity_member();
  for (int t = 0; t < 10; ++t) {
    Presheaf const X = random_presheaf(outer_site(kInner), RandomSpec{1, 3, 2, 2, {}}, rng);
    EXPECT_TRUE(has_rlp(identity_map(X), i.map).rlp);
  }
}

TEST(Lifting, NonSurjectiveAtZeroHasWitness) {
  FamilyMember const i = surjectivity_member();
  Presheaf const     P = outer_simplex(kInner, 0);
  PresheafMap const  f = from_empty(P);
  RlpResult const    r = has_rlp(f, i.map);
  EXPECT_FALSE(r.rlp);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_FALSE(unfilled_squares(f, i.map).empty());

  // A surjection at level 0 lifts.
  Presheaf const two = constant_along(1, discrete(kInner, 2));
  EXPECT_TRUE(has_rlp(to_terminal(two), i.map).rlp);
}

TEST(Lifting, FamilyContents) {
  FamilyBounds fb;
  fb.max_p        = 1;
  fb.inner_degree = 1;
  Window const ow = Window::up_to(outer_site(kInner), 3);
  for (auto const& m : family_Ic(kInner, fb)) {
    EXPECT_TRUE(m.mono) << m.label;
    EXPECT_TRUE(is_mono_map(m.map, ow)) << m.label;
  }
  FamilyMember const c = reduction_counterexample(kInner);
  for (auto const& m : family_Ic(kInner, fb)) {
    EXPECT_NE(m.label, c.label);
  }
  // I_f keeps the empty-to-point member at p = 0.
  FamilyMember const s = surjectivity_member();
  SiteObject const   v = outer_object(0, inner_point(kInner));
  EXPECT_EQ(s.map.source().size(v), 0u);
  EXPECT_EQ(s.map.target().size(v), 1u);
}

TEST(Lifting, DiscreteMapsAreFibrations) {
  Rng                              rng(62);
  std::vector<FamilyMember> const family = css_acyclic(CssBounds{2, 1, 2});
  for (auto const& m : family) {
    EXPECT_TRUE(m.mono) << m.label;
  }
  Site const delta({1});
  int        done = 0;
  while (done < 5) {
    RandomSpec const spec{1, 2, 2, 1, {}};
    Presheaf const   S = random_presheaf(delta, spec, rng);
    Presheaf const   T = random_presheaf(delta, spec, rng);
    auto const       g = random_map(S, T, rng);
    if (!g) {
      continue;
    }
    ++done;
    FamilyRlp const r = has_rlp_family(css_discrete(*g), family);
    EXPECT_TRUE(r.all) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Lifting, CoproductOfFibrations) {
  FamilyMember const              i = surjectivity_member();
  std::vector<FamilyMember> const family{i};
  Presheaf const                  X = constant_along(1, discrete(kInner, 2));
  Presheaf const                  Y = outer_simplex(kInner, 1);
  EXPECT_TRUE(coproduct_fibration_check(identity_map(X), identity_map(Y), family).all);
  EXPECT_TRUE(coproduct_fibration_check(to_terminal(X), identity_map(Y), family).all);
  EXPECT_FALSE(coproduct_fibration_check(from_empty(Y), identity_map(X), family).all);
}

TEST(Lifting, SmallObjectArgument) {
  FamilyMember const              i = surjectivity_member();
  std::vector<FamilyMember> const family{i};
  Window const                    ow = Window::up_to(outer_site(kInner), 2);

  Presheaf const  X = constant_along(1, discrete(kInner, 2));
  SoaResult const a = soa_factorize(to_terminal(X), family, 3);
  EXPECT_TRUE(a.converged);
  EXPECT_EQ(a.attachments, 0u);

  Presheaf const  P = outer_simplex(kInner, 0);
  SoaResult const b = soa_factorize(from_empty(P), family, 3);
  EXPECT_TRUE(b.converged);
  EXPECT_EQ(b.attachments, 1u);
  EXPECT_TRUE(is_iso_map(b.remainder, ow));
  EXPECT_FALSE(check_naturality(b.cell, ow).has_value());
}

TEST(Lifting, SpineAgainstSegalFamily) {
  FamilyBounds fb;
  fb.max_p        = 2;
  fb.inner_degree = 0;
  std::vector<FamilyMember> const family = family_Se(kInner, fb);
  ASSERT_FALSE(family.empty());
  Subobject const g  = spine(kInner, 2);
  SoaResult const r  = soa_factorize(g.inclusion, family, 2);
  Window const    ow = Window::up_to(outer_site(kInner), 2);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(check_naturality(r.cell, ow).has_value());
  EXPECT_FALSE(check_naturality(r.remainder, ow).has_value());
}

TEST(Lifting, MappingObjects) {
  Presheaf const       A = d1();
  SegalPreObject const N = nerve(UA(A));
  Subobject const      m = mapping_object(N, 0, 1);
  for (auto const& th : Window::up_to(kInner, 2).objects()) {
    EXPECT_EQ(m.object.size(th), A.size(th));
    EXPECT_EQ(mapping_elements(N, 0, 1, th).size(), A.size(th));
    EXPECT_EQ(mapping_object(N, 0, 0).object.size(th), 1u);
    EXPECT_EQ(mapping_object(N, 1, 0).object.size(th), 0u);
  }

  // X_1 splits as the sum of the mapping objects.
  Rng rng(63);
  for (int t = 0; t < 5; ++t) {
    SegalPreObject const X = nerve(random_enriched_category(kInner, 3, rng));
    std::size_t const    n = X.vertex_count();
    for (auto const& th : Window::up_to(kInner, 1).objects()) {
      std::size_t sum = 0;
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          sum += mapping_object(X, a, b).object.size(th);
        }
      }
      EXPECT_EQ(sum, X.level(1).size(th));
    }
  }
}

TEST(Lifting, GeneratorShapes) {
  SiteObject const pt = inner_point(kInner);
  for (std::size_t p = 0; p <= 2; ++p) {
    Presheaf const D = outer_simplex(kInner, p);
    // The terminal A gives back Delta[p], the empty one its vertices.
    ABracket const t = a_bracket(terminal_presheaf(kInner), p);
    ABracket const e = a_bracket(empty_presheaf(kInner), p);
    for (std::size_t q = 0; q <= 2; ++q) {
      SiteObject const v = outer_object(q, pt);
      EXPECT_EQ(t.object.size(v), D.size(v));
      EXPECT_EQ(e.object.size(v), p + 1);
    }
  }

  // Delta[2] with vertices 0, 0, 1 in a two-object set.
  Marked const     m = delta_p_marked(kInner, 2, {0, 0, 1}, 2);
  SiteObject const v = outer_object(0, pt);
  EXPECT_EQ(m.object.size(v), 2u);
  // Monotone [2] -> [2] with constant maps identified by their label.
  std::set<std::vector<int>> cells;
  std::vector<int> const     label{0, 0, 1};
  for (int a = 0; a <= 2; ++a) {
    for (int b = a; b <= 2; ++b) {
      for (int c = b; c <= 2; ++c) {
        bool const constant = a == c;
        cells.insert(constant ? std::vector<int>{-1, label[static_cast<std::size_t>(a)]}
                              : std::vector<int>{a, b, c});
      }
    }
  }
  EXPECT_EQ(m.object.size(outer_object(2, pt)), cells.size());
  EXPECT_THROW(delta_p_marked(kInner, 2, {0, 2}, 2), MalformedInput);

  Subobject const s = spine_marked(kInner, 2, {0, 1, 0}, 2);
  EXPECT_TRUE(is_mono_map(s.inclusion, Window::up_to(outer_site(kInner), 2)));
  EXPECT_EQ(s.object.size(v), 2u);

  // Maps [1] -> [2] through the spine: 5 of the 6.
  EXPECT_EQ(simplicial_spine(2).object.size(SiteObject{{Object::simplex(1)}}), 5u);
  EXPECT_EQ(simplicial_spine(0).object.size(SiteObject{{Object::simplex(0)}}), 0u);
}

TEST(Lifting, IsoNerveCounts) {
  for (int d = 0; d <= 3; ++d) {
    Presheaf const E = iso_nerve(4);
    // Sequences of d+1 points in a two-object contractible groupoid.
    EXPECT_EQ(E.size(SiteObject{{Object::simplex(static_cast<std::size_t>(d))}}), std::size_t{1} << (d + 1));
  }
}

TEST(Lifting, HornsAreProper) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      Subobject const h = horn(m, k);
      EXPECT_LT(h.object.size(SiteObject{{Object::simplex(m)}}),
                h.inclusion.target().size(SiteObject{{Object::simplex(m)}}));
      EXPECT_TRUE(is_mono_map(h.inclusion, Window::up_to(Site({1}), 3)));
    }
  }
}

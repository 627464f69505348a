#include <gtest/gtest.h>

#include "theta/generators.hpp"
#include "theta/random.hpp"

using namespace theta;

namespace {

  Site const kInner({1});

  SiteObject at(std::size_t p, std::size_t q) {
    return SiteObject{{Object::simplex(p), Object::simplex(q)}};
  }

  // Monotone maps [m] -> [q] that are not injective, by brute force over
  // all functions.
  std::size_t noninjective_monotone(std::size_t m, std::size_t q) {
    std::size_t      count = 0;
    std::vector<int> v(m + 1, 0);
    while (true) {
      bool mono = true, inj = true;
      for (std::size_t i = 1; i <= m; ++i) {
        mono = mono && v[i - 1] <= v[i];
        inj  = inj && v[i - 1] != v[i];
      }
      count += (mono && !inj) ? 1 : 0;
      std::size_t i = 0;
      while (i <= m && v[i] == static_cast<int>(q)) {
        v[i++] = 0;
      }
      if (i > m) {
        return count;
      }
      ++v[i];
    }
  }

}  // namespace

TEST(Reedy, LatchingOfConstantDiagram) {
  Presheaf const P = representable(kInner, SiteObject{{Object::simplex(1)}});
  Presheaf const X = constant_along(1, P);
  LatchingData const L = latching(X, 1);
  for (auto const& th : Window::up_to(kInner, 2).objects()) {
    EXPECT_EQ(L.latching.object.size(th), X.size(outer_object(1, th)));
  }
  EXPECT_EQ(latching(X, 0).latching.object.size(inner_point(kInner)), 0u);
}

TEST(Reedy, LatchingOfNerveIsIdentities) {
  Presheaf const       A = representable(kInner, SiteObject{{Object::simplex(1)}});
  SegalPreObject const N = nerve(UA(A));
  LatchingData const   L = latching(N.diagram(), 1);
  EXPECT_EQ(L.latching.object.size(inner_point(kInner)), 2u);
}

TEST(Reedy, LatchingOfOuterSimplexIsClassical) {
  for (std::size_t p = 1; p <= 3; ++p) {
    Presheaf const     D = outer_simplex(kInner, p);
    LatchingData const L = latching(D, p);
    EXPECT_EQ(L.latching.object.size(inner_point(kInner)), noninjective_monotone(p, p));
    EXPECT_EQ(D.size(outer_object(p, inner_point(kInner))), noninjective_monotone(p, p) + 1);
  }
}

TEST(Reedy, NondegenerateExamples) {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    Presheaf const X = random_presheaf(outer_site(kInner), RandomSpec{1, 4, 3, 2, {}}, rng);
    for (auto const& th : Window::up_to(kInner, 2).objects()) {
      for (Elem x = 0; x < X.size(outer_object(0, th)); ++x) {
        EXPECT_FALSE(in_degeneracy_image(X, 0, th, x));
      }
      // s_0 s_0 = s_1 s_0 on degenerate edges.
      for (Elem v = 0; v < X.size(outer_object(0, th)); ++v) {
        Elem const e = X.act(outer(codegeneracy(0, 0), th), v);
        EXPECT_TRUE(in_degeneracy_image(X, 1, th, e));
        EXPECT_TRUE(has_equal_degeneracies(X, 1, th, e));
        EXPECT_EQ(X.act(outer(codegeneracy(1, 0), th), e), X.act(outer(codegeneracy(1, 1), th), e));
      }
    }
  }
}

TEST(Reedy, DualCriterionAgreesOnTabulatedDiagrams) {
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    Site const     site = outer_site(kInner);
    Presheaf const X    = random_presheaf(site, RandomSpec{1, 4, 3, 2, {}}, rng);
    Presheaf const T    = from_tabulation(tabulate(X, Window::up_to(site, 4)));
    for (std::size_t m = 0; m < 3; ++m) {
      PartitionReport const r = nondegenerate_partition(T, m, Window::up_to(kInner, 3 - static_cast<int>(m)));
      EXPECT_EQ(r.disagreements, 0u) << r.first_disagreement.value_or("");
    }
    EXPECT_EQ(inner_partition(T, Window::up_to(site, 3)).disagreements, 0u);
  }
}

TEST(Reedy, MatchingExamples) {
  Presheaf const D1 = representable(kInner, SiteObject{{Object::simplex(1)}});
  EXPECT_EQ(matching(D1, SiteObject{{Object::simplex(0)}}).size(), 1u);
  EXPECT_EQ(matching(D1, SiteObject{{Object::simplex(1)}}).size(), 4u);
  Presheaf const D = discrete(kInner, 3);
  // Pairs of endpoints in a 3-point set.
  EXPECT_EQ(matching(D, SiteObject{{Object::simplex(1)}}).size(), 9u);
}

TEST(Reedy, RelativeLatchingOfIdentityIsIso) {
  Rng            rng(33);
  Presheaf const X = random_presheaf(outer_site(kInner), RandomSpec{1, 3, 3, 2, {}}, rng);
  for (std::size_t m = 0; m <= 2; ++m) {
    RelativeLatching const r = relative_latching_map(identity_map(X), m);
    EXPECT_TRUE(is_iso_map(r.map, Window::up_to(kInner, 2)));
  }
}

TEST(Reedy, RandomMonosAreReedyCofibrations) {
  Rng rng(34);
  for (int t = 0; t < 30; ++t) {
    Site const        inner({1, 1 + t % 2});
    PresheafMap const f = random_mono(outer_site(inner), RandomSpec{1, 5, 3, 3, {}}, rng);
    CofibrationReport const r = check_relative_latching(f, 3, Window::up_to(inner, 2));
    EXPECT_TRUE(r.all_mono);
  }
}

TEST(Reedy, NonMonoFailsAtLevelZero) {
  Presheaf const    two  = constant_along(1, discrete(kInner, 2));
  Presheaf const    one  = constant_along(1, discrete(kInner, 1));
  PresheafMap const fold = to_terminal(two);
  ASSERT_EQ(fold.target().size(at(0, 0)), one.size(at(0, 0)));
  CofibrationReport const r = check_relative_latching(fold, 2, Window::up_to(kInner, 1));
  EXPECT_FALSE(r.all_mono);
  ASSERT_FALSE(r.levels.empty());
  EXPECT_FALSE(r.levels.front().mono);
}

TEST(Reedy, Coskeleton) {
  Rng            rng(35);
  Presheaf const X  = random_presheaf(outer_site(kInner), RandomSpec{1, 3, 2, 2, {}}, rng);
  Coskeleton const c = coskeleton0(X);
  for (auto const& th : Window::up_to(kInner, 2).objects()) {
    std::size_t const n0 = X.size(outer_object(0, th));
    EXPECT_EQ(c.object.size(outer_object(1, th)), n0 * n0);
    EXPECT_EQ(c.object.size(outer_object(2, th)), n0 * n0 * n0);
  }
  EXPECT_FALSE(check_naturality(c.unit, Window::up_to(outer_site(kInner), 3)).has_value());
}

TEST(Reedy, Skeleta) {
  Rng                  rng(36);
  Presheaf const       Y = random_presheaf(outer_site(kInner), RandomSpec{1, 3, 2, 2, {}}, rng);
  SegalPreObject const X(reduction(Y).reduced);
  Subobject const      s0 = skeleton(X.diagram(), 0);
  std::size_t const    v  = X.vertex_count();
  for (std::size_t p = 0; p <= 3; ++p) {
    EXPECT_EQ(s0.object.size(outer_object(p, inner_point(kInner))), v);
  }
  // Y has cells of outer degree <= 2, so sk_2 exhausts it.
  Subobject const s2 = skeleton(Y, 2);
  Window const    w  = Window::up_to(outer_site(kInner), 4);
  EXPECT_EQ(total_size(s2.object, w), total_size(Y, w));
}

TEST(Reedy, Fibers) {
  Presheaf const       A = representable(kInner, SiteObject{{Object::simplex(1)}});
  SegalPreObject const N = nerve(UA(A));
  Subobject const      F = fiber(N, 1, {0, 1});
  for (auto const& th : Window::up_to(kInner, 2).objects()) {
    EXPECT_EQ(F.object.size(th), A.size(th));
  }

  SegalPreObject const one = nerve(preorder_category({{true}}, cyclic_monoid(kInner, 3)));
  for (std::size_t p = 0; p <= 2; ++p) {
    Subobject const G = fiber(one, p, std::vector<Elem>(p + 1, 0));
    for (auto const& th : Window::up_to(kInner, 1).objects()) {
      EXPECT_EQ(G.object.size(th), one.level(p).size(th));
    }
  }

  Rng rng(37);
  for (int t = 0; t < 10; ++t) {
    SegalPreObject const X = nerve(random_enriched_category(kInner, 3, rng));
    std::size_t const    n = X.vertex_count();
    for (std::size_t p = 1; p <= 2; ++p) {
      for (auto const& th : Window::up_to(kInner, 1).objects()) {
        std::size_t sum = 0;
        std::vector<Elem> vs(p + 1, 0);
        while (true) {
          sum += fiber(X, p, vs).object.size(th);
          std::size_t i = 0;
          while (i <= p && vs[i] + 1 == n) {
            vs[i++] = 0;
          }
          if (i > p) {
            break;
          }
          ++vs[i];
        }
        EXPECT_EQ(sum, X.level(p).size(th));
      }
    }
  }
}

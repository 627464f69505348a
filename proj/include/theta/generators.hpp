#pragma once

// Generating map families for outer-simplicial diagrams of presheaves:
// vertex-marked simplices, spines, A_[p] objects, the I_f / I_c families,
// their fixed-object variants, and the n = 1 acyclic family.

#include <cstddef>
#include <string>
#include <vector>

#include "theta/segal.hpp"

namespace theta {

  // A map in a family, its parameters as text, and whether it passed the
  // mono check (members are always checked when the family promises monos).
  struct FamilyMember {
    std::string label;
    PresheafMap map;
    bool        mono = true;
  };

  // Outer simplices on (Delta) ++ inner, constant in the inner factors.
  Presheaf    outer_simplex(Site const& inner, std::size_t p);
  // Delta[p]_0 as a constant discrete diagram with p+1 points.
  Presheaf    outer_vertices(Site const& inner, std::size_t p);
  PresheafMap vertex_inclusion(Site const& inner, std::size_t p);

  // Delta[p] with its vertices relabeled by vs into an object set of size
  // object_count (all of which appear at level 0).
  struct Marked {
    Presheaf    object;
    Pushout     pushout;  // vertices -> Delta[p], vertices -> O
  };
  Marked delta_p_marked(Site const& inner, std::size_t p, std::vector<std::size_t> const& vs,
                        std::size_t object_count);
  // G(p)_vs -> Delta[p]_vs: the marked spine, p >= 1.
  Subobject spine_marked(Site const& inner, std::size_t p, std::vector<std::size_t> const& vs,
                         std::size_t object_count);
  // G(p) inside Delta[p] on the one-factor site Delta; G(0) is empty.
  Subobject simplicial_spine(std::size_t p);
  // Unmarked spine G(p) -> Delta[p] on (Delta) ++ inner.
  Subobject spine(Site const& inner, std::size_t p);
  // The boundary of Delta[p] on (Delta) ++ inner.
  Subobject outer_boundary(Site const& inner, std::size_t p);

  // A_[p] = A x Delta[p] with A x Delta[p]_0 collapsed onto Delta[p]_0.
  struct ABracket {
    Presheaf object;
    Pushout  pushout;  // A x Delta[p]_0 -> A x Delta[p], A x Delta[p]_0 -> Delta[p]_0
  };
  ABracket    a_bracket(Presheaf const& A, std::size_t p);
  PresheafMap a_bracket_map(PresheafMap const& f, std::size_t p);
  // A_[p],vs: the same with vertices relabeled into O.
  ABracket    a_bracket_marked(Presheaf const& A, std::size_t p, std::vector<std::size_t> const& vs,
                               std::size_t object_count);
  PresheafMap a_bracket_marked_map(PresheafMap const& f, std::size_t p,
                                   std::vector<std::size_t> const& vs, std::size_t object_count);

  // i □ j : A x D  u  B x C -> B x D for i : A -> B, j : C -> D on two sites.
  PresheafMap pushout_product(PresheafMap const& i, PresheafMap const& j);

  // Boundary inclusions of inner representables over the window: the
  // generating cofibrations of the inner presheaf category.
  std::vector<FamilyMember> inner_generators(Window const& inner_window);

  struct FamilyBounds {
    std::size_t max_p = 1;
    // Inner shapes of total degree <= inner_degree (per-factor caps apply).
    int              inner_degree = 1;
    std::vector<int> inner_factor_bounds;  // empty: no per-factor caps
    std::size_t      object_count = 1;     // |O| for fixed-object families
  };
  Window inner_window_for(Site const& inner, FamilyBounds const& b);

  std::vector<FamilyMember> family_If(Site const& inner, FamilyBounds const& b);
  // Reduced Reedy generators; drops p = 0 members other than the point.
  std::vector<FamilyMember> family_Ic(Site const& inner, FamilyBounds const& b);
  // The p = 0, m = 1 member dropped from I_c: Delta[0] + Delta[0] -> Delta[0].
  FamilyMember reduction_counterexample(Site const& inner);
  std::vector<FamilyMember> family_IOf(Site const& inner, FamilyBounds const& b);
  std::vector<FamilyMember> family_IOc(Site const& inner, FamilyBounds const& b);
  // G(p)_vs -> Delta[p]_vs for 1 <= p <= max_p and all vs in O^{p+1}.
  std::vector<FamilyMember> family_Se(Site const& inner, FamilyBounds const& b);

  // n = 1 complete Segal spaces live on (Delta_space, Delta).
  Site css_site();
  // Horn V[m,k] inside Delta[m], on the one-factor site Delta.
  Subobject horn(std::size_t m, std::size_t k);
  // Nerve of the free-standing isomorphism, truncated to its sk_d.
  Presheaf iso_nerve(int d);

  struct CssBounds {
    std::size_t max_m       = 3;
    std::size_t max_p       = 2;
    int         e_degree    = 4;  // truncation of E
  };
  // V[m,k] x Delta[p]^t u Delta[m] x G(p)^t -> Delta[m] x Delta[p]^t and
  // V[m,k] x E^t u Delta[m] x Delta[0]^t -> Delta[m] x E^t.
  std::vector<FamilyMember> css_acyclic(CssBounds const& b);
  // A simplicial set as a simplicial space constant in the space direction.
  Presheaf    css_discrete(Presheaf const& S);
  PresheafMap css_discrete(PresheafMap const& f);

}  // namespace theta

#pragma once

// Latching and matching data, skeleta, cosk_0 and fibers of outer-simplicial
// diagrams.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "theta/simplicial.hpp"

namespace theta {

  struct LatchingData {
    std::size_t m = 0;
    // L_m X inside X_m, a presheaf on the inner site.
    Subobject latching;
    // Some i with x in the image of s_i : X_{m-1} -> X_m, if any.
    std::function<std::optional<std::size_t>(SiteObject const&, Elem)> witness;
  };

  // L_0 X is empty.
  LatchingData latching(Presheaf const& X, std::size_t m);

  // x in X_m(theta) lies in the image of some s_i.
  bool in_degeneracy_image(Presheaf const& X, std::size_t m, SiteObject const& theta, Elem x);
  // Two of s_0 x, ..., s_m x in X_{m+1}(theta) coincide.
  bool has_equal_degeneracies(Presheaf const& X, std::size_t m, SiteObject const& theta, Elem x);

  // Inner-site version: for x in W(d), two distinct elementary codegeneracies
  // e -> d with a common source pull x back to the same element.
  bool has_equal_inner_degeneracies(Presheaf const& W, SiteObject const& d, Elem x);
  // Elementary codegeneracies with target d, grouped by source.
  std::vector<std::vector<SiteMorphism>> const& codegeneracies_onto(SiteObject const& d);

  struct PartitionReport {
    std::size_t                degenerate    = 0;
    std::size_t                nondegenerate = 0;
    std::size_t                disagreements = 0;
    std::optional<std::string> first_disagreement;
  };
  // Partition of X_m over the inner window, cross-checking image membership
  // against equal degeneracies.
  PartitionReport nondegenerate_partition(Presheaf const& X, std::size_t m,
                                          Window const& inner_window);
  // The same for a presheaf on any site, with elementary codegeneracies.
  PartitionReport inner_partition(Presheaf const& W, Window const& window);

  // Map(boundary of a, X).
  HomSet matching(Presheaf const& X, SiteObject const& a);

  struct RelativeLatching {
    Pushout     pushout;  // X_m + over L_m X of L_m Y
    PresheafMap map;      // pushout -> Y_m
  };
  RelativeLatching relative_latching_map(PresheafMap const& f, std::size_t m);

  struct LatchingLevel {
    std::size_t                m    = 0;
    bool                       mono = true;
    std::optional<std::string> witness;
  };
  struct CofibrationReport {
    std::vector<LatchingLevel> levels;
    bool                       all_mono = true;
  };
  CofibrationReport check_relative_latching(PresheafMap const& f, std::size_t max_m,
                                            Window const& inner_window);

  // Elements of outer degree k that are degenerate from level <= p.
  Subobject skeleton(Presheaf const& X, std::size_t p);

  struct Coskeleton {
    Presheaf    object;  // cosk_0(X_0)
    PresheafMap unit;    // X -> cosk_0(X_0)
  };
  Coskeleton coskeleton0(Presheaf const& X);
  // cosk_0 applied to f0 : P -> Q on the inner site.
  PresheafMap cosk0_map(PresheafMap const& f0);

  // X_p(v_0, ..., v_p) inside X_p.
  Subobject fiber(SegalPreObject const& X, std::size_t p, std::vector<Elem> const& vs);

}  // namespace theta

#pragma once

// Segal maps, strictness, components, homotopy categories, Dwyer-Kan checks,
// reduction and the Phi factorization.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theta/reedy.hpp"

namespace theta {

  // phi_k : X_k -> X_1 x_{X_0} ... x_{X_0} X_1 (k factors).
  struct SegalMap {
    std::size_t k = 0;
    Presheaf    target;
    PresheafMap phi;
    // Elements of the target are composable edge tuples in lexicographic
    // order.
    std::function<std::vector<Elem>(SiteObject const&, Elem)>          decode;
    std::function<std::optional<Elem>(SiteObject const&, std::vector<Elem> const&)> encode;
  };
  SegalMap segal_map(SegalPreObject const& X, std::size_t k);

  struct SegalCheck {
    bool                       strict = true;
    std::size_t                k      = 0;  // failing k
    std::optional<std::string> witness;
  };
  // phi_k bijective over the inner window for 2 <= k <= max_k.
  SegalCheck is_segal_strict(SegalPreObject const& X, Window const& inner_window,
                             std::size_t max_k = 3);

  // Components of a presheaf: P(pt) modulo the two vertex restrictions of
  // every element over a 1-cell shape.
  struct Pi0 {
    std::size_t              count = 0;
    std::vector<std::size_t> component;  // per element of P(pt)
  };
  Pi0         pi0(Presheaf const& P);
  std::size_t pi0_class(Presheaf const& P, Pi0 const& pi, SiteObject const& d, Elem x);

  struct HoCategory {
    std::size_t                            objects = 0;
    std::vector<std::vector<std::size_t>>  homs;      // homs[x][y] = |Hom(x, y)|
    std::vector<std::size_t>               identity;  // in Hom(x, x)
    // comp[{x, y, z}][a * homs[y][z] + b] = b o a for a : x -> y, b : y -> z
    std::map<std::array<std::size_t, 3>, std::vector<std::size_t>> comp;

    std::size_t                compose(std::size_t x, std::size_t y, std::size_t z, std::size_t a,
                                       std::size_t b) const;
    bool                       is_iso(std::size_t x, std::size_t y, std::size_t a) const;
    std::optional<std::string> check_axioms() const;
  };

  struct HoFunctor {
    std::vector<std::size_t>                                           objects;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> homs;
  };
  std::optional<std::string> check_functor(HoFunctor const& F, HoCategory const& C,
                                           HoCategory const& D);
  // Essentially surjective and fully faithful; nullopt when it is.
  std::optional<std::string> equivalence_failure(HoFunctor const& F, HoCategory const& C,
                                                 HoCategory const& D);

  // Requires strictness over the inner window. Hom(x, y) is pi0 of the fiber
  // X_1(x, y); composition goes through phi_2^{-1} and d_1 at the point.
  HoCategory homotopy_category(SegalPreObject const& X, Window const& inner_window);
  HoFunctor  induced_functor(PresheafMap const& f, SegalPreObject const& X,
                             SegalPreObject const& Y);

  struct DKResult {
    bool        w1 = false;  // fiber maps bijective on the window
    bool        w2 = false;  // Ho functor is an equivalence
    bool        ok = false;
    std::string witness;
  };
  DKResult dk_equivalence_check(PresheafMap const& f, SegalPreObject const& X,
                                SegalPreObject const& Y, Window const& inner_window);

  // (X)_r: level 0 collapsed to pi0(X_0), the rest pushed out along it.
  struct Reduction {
    Presheaf    reduced;
    PresheafMap unit;
    Pi0         components;  // of X_0
    // X <- c(X_0) -> c(pi0 X_0), c the constant outer diagram
    Pushout     pushout;
  };
  Reduction   reduction(Presheaf const& X);
  PresheafMap reduce_map(PresheafMap const& f, Reduction const& rx, Reduction const& ry);

  // X -> Phi Y -> Y with Phi Y = Y x_{cosk0 Y_0} cosk0 X_0.
  struct PhiFactorization {
    Presheaf    phiY;
    PresheafMap from_X;
    PresheafMap to_Y;
  };
  PhiFactorization phi_construction(PresheafMap const& f);

}  // namespace theta

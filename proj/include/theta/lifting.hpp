#pragma once

// Lifting problems decided by exhaustive search, and a bounded small object
// argument.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "theta/generators.hpp"

namespace theta {

  // A commuting square top : A -> X, bottom : B -> Y with f top = bottom i.
  // Both maps are given by generator images.
  struct Square {
    std::vector<Elem> top;
    std::vector<Elem> bottom;
  };

  struct RlpOptions {
    std::optional<int> degree;  // generator extraction bound for A and B
  };

  struct RlpResult {
    bool                  rlp     = true;
    std::size_t           squares = 0;
    std::optional<Square> witness;  // a square without a lift
  };

  // Does f : X -> Y have the right lifting property against i : A -> B?
  RlpResult has_rlp(PresheafMap const& f, PresheafMap const& i, RlpOptions const& opts = {});

  // All squares from i to f that have no lift, in lexicographic order.
  std::vector<Square> unfilled_squares(PresheafMap const& f, PresheafMap const& i,
                                       RlpOptions const& opts = {});

  struct FamilyRlp {
    bool                     all = true;
    std::vector<std::string> failures;  // member labels
  };
  FamilyRlp has_rlp_family(PresheafMap const& f, std::vector<FamilyMember> const& family,
                           RlpOptions const& opts = {});

  // f + f' against every member of the family.
  FamilyRlp coproduct_fibration_check(PresheafMap const& f, PresheafMap const& g,
                                      std::vector<FamilyMember> const& family,
                                      RlpOptions const& opts = {});

  // f = remainder o cell, cell a composite of pushouts of coproducts of
  // family members, one per stage, attaching every unfilled square.
  struct SoaResult {
    Presheaf    middle;
    PresheafMap cell;
    PresheafMap remainder;
    std::size_t stages_used = 0;
    std::size_t attachments = 0;
    bool        converged   = false;  // remainder has the RLP against the family
  };
  SoaResult soa_factorize(PresheafMap const& f, std::vector<FamilyMember> const& family,
                          std::size_t max_stages, RlpOptions const& opts = {});

  // M_X(x0, x1): the fiber of X_1 -> X_0 x X_0 over (x0, x1).
  Subobject         mapping_object(SegalPreObject const& X, Elem x0, Elem x1);
  std::vector<Elem> mapping_elements(SegalPreObject const& X, Elem x0, Elem x1,
                                     SiteObject const& c);

}  // namespace theta

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "theta/presheaf.hpp"

namespace theta {

  namespace {

    // One constraint checked when `cell` gets its value v:
    //   X.act(map, v) == X.act(other_map, value of other)   (other != SIZE_MAX)
    //   X.act(map, v) == pinned                             (other == SIZE_MAX)
    struct Constraint {
      std::size_t               cell  = 0;
      std::vector<Elem> const*  table = nullptr;  // X.act(map, .) over X(shape of cell)
      std::size_t               other = SIZE_MAX;
      std::vector<Elem> const*  other_table = nullptr;
      Elem                      pinned      = 0;
    };

    class Solver {
     public:
      Solver(Presheaf X, GeneratorData const& gens, HomSetOptions const& opts)
          : X_(std::move(X)), gens_(gens), opts_(opts) {
        auto const& pres = gens_.presentation;
        std::size_t const n = pres.size();
        dom_.resize(n);
        for (std::size_t c = 0; c < n; ++c) {
          dom_[c] = X_.size(pres.shapes[c]);
        }
        per_cell_.resize(n);
        for (auto const& r : pres.relations) {
          std::size_t const a = r.lhs.cell;
          std::size_t const b = r.rhs.cell;
          Constraint        k;
          if (a == b) {
            k.cell        = a;
            k.table       = &table(a, r.lhs.map);
            k.other       = a;
            k.other_table = &table(a, r.rhs.map);
          } else if (a > b) {
            k.cell        = a;
            k.table       = &table(a, r.lhs.map);
            k.other       = b;
            k.other_table = &table(b, r.rhs.map);
          } else {
            k.cell        = b;
            k.table       = &table(b, r.rhs.map);
            k.other       = a;
            k.other_table = &table(a, r.lhs.map);
          }
          per_cell_[k.cell].push_back(k);
        }
        for (auto const& p : opts_.pins) {
          if (p.cell >= n || p.map.target() != pres.shapes[p.cell]) {
            throw MalformedInput("hom_set: pin does not match the source presentation");
          }
          Constraint k;
          k.cell   = p.cell;
          k.table  = &table(p.cell, p.map);
          k.pinned = p.value;
          per_cell_[p.cell].push_back(k);
        }
        // anchor: the first constraint against an already assigned cell or a pin
        anchor_.assign(n, SIZE_MAX);
        for (std::size_t c = 0; c < n; ++c) {
          for (std::size_t i = 0; i < per_cell_[c].size(); ++i) {
            auto const& k = per_cell_[c][i];
            if (k.other != c) {
              anchor_[c] = i;
              break;
            }
          }
          if (anchor_[c] != SIZE_MAX) {
            auto const& tab = *per_cell_[c][anchor_[c]].table;
            auto&       inv = inverse_[c];
            for (Elem v = 0; v < tab.size(); ++v) {
              inv[tab[v]].push_back(v);
            }
          }
        }
      }

      std::vector<std::vector<Elem>> run() {
        value_.assign(dom_.size(), 0);
        search(0);
        return std::move(out_);
      }

     private:
      std::vector<Elem> const& table(std::size_t cell, SiteMorphism const& map) {
        auto key = std::make_pair(cell, map);
        auto it  = tables_.find(key);
        if (it != tables_.end()) {
          return it->second;
        }
        std::vector<Elem> t(dom_[cell]);
        for (Elem v = 0; v < t.size(); ++v) {
          t[v] = X_.act(map, v);
        }
        return tables_.emplace(std::move(key), std::move(t)).first->second;
      }

      bool satisfied(std::size_t c, Elem v) const {
        if (opts_.filter && !opts_.filter(c, v)) {
          return false;
        }
        for (auto const& k : per_cell_[c]) {
          Elem const lhs = (*k.table)[v];
          Elem const rhs = k.other == SIZE_MAX  ? k.pinned
                           : k.other == c       ? (*k.other_table)[v]
                                                : (*k.other_table)[value_[k.other]];
          if (lhs != rhs) {
            return false;
          }
        }
        return true;
      }

      void search(std::size_t c) {
        if (out_.size() >= opts_.limit) {
          return;
        }
        if (c == dom_.size()) {
          out_.push_back(value_);
          return;
        }
        if (anchor_[c] == SIZE_MAX) {
          for (Elem v = 0; v < dom_[c] && out_.size() < opts_.limit; ++v) {
            if (satisfied(c, v)) {
              value_[c] = v;
              search(c + 1);
            }
          }
          return;
        }
        auto const& k    = per_cell_[c][anchor_[c]];
        Elem const  want = k.other == SIZE_MAX ? k.pinned : (*k.other_table)[value_[k.other]];
        auto        it   = inverse_[c].find(want);
        if (it == inverse_[c].end()) {
          return;
        }
        for (Elem v : it->second) {
          if (out_.size() >= opts_.limit) {
            return;
          }
          if (satisfied(c, v)) {
            value_[c] = v;
            search(c + 1);
          }
        }
      }

      Presheaf                                                   X_;
      GeneratorData const&                                       gens_;
      HomSetOptions const&                                       opts_;
      std::vector<std::size_t>                                   dom_;
      std::vector<std::vector<Constraint>>                       per_cell_;
      std::vector<std::size_t>                                   anchor_;
      std::map<std::size_t, std::unordered_map<Elem, std::vector<Elem>>> inverse_;
      std::map<std::pair<std::size_t, SiteMorphism>, std::vector<Elem>>  tables_;
      std::vector<Elem>                                          value_;
      std::vector<std::vector<Elem>>                             out_;
    };

  }  // namespace

  PresheafMap HomSet::as_map(std::size_t i) const {
    return map_from_images(source, target, maps.at(i));
  }

  HomSet hom_set(Presheaf const& P, Presheaf const& X, HomSetOptions const& opts) {
    if (P.site() != X.site()) {
      throw SiteMismatch("hom_set: presheaves on different sites");
    }
    HomSet hs;
    hs.source     = P;
    hs.target     = X;
    hs.generators = generators(P, opts.degree);
    Solver solver(X, *hs.generators, opts);
    hs.maps = solver.run();
    return hs;
  }

  std::size_t count_homs(Presheaf const& P, Presheaf const& X) {
    return hom_set(P, X).size();
  }

}  // namespace theta

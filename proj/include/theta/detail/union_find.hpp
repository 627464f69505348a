#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace theta::detail {

  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : parent_(n) {
      std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
      while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x          = parent_[x];
      }
      return x;
    }

    // The smaller root survives, so every root is the least member of its
    // class.
    void unite(std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a == b) {
        return;
      }
      if (a < b) {
        parent_[b] = a;
      } else {
        parent_[a] = b;
      }
    }

    std::size_t size() const noexcept {
      return parent_.size();
    }

    // Class index of every member, classes numbered by least member.
    std::vector<std::size_t> classes(std::size_t* count = nullptr) {
      std::vector<std::size_t> cls(parent_.size());
      std::size_t              next = 0;
      for (std::size_t i = 0; i < parent_.size(); ++i) {
        std::size_t r = find(i);
        cls[i]        = r == i ? next++ : cls[r];
      }
      if (count) {
        *count = next;
      }
      return cls;
    }

   private:
    std::vector<std::size_t> parent_;
  };

}  // namespace theta::detail

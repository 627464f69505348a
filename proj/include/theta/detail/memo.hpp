#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace theta::detail {

  // Thread-safe memo table. The value is computed outside the lock so that
  // computations may recurse into the same table; if two threads race, the
  // first insertion wins and both observe it.
  template <class K, class V, class Table = std::unordered_map<K, std::shared_ptr<V const>>>
  class Memo {
   public:
    template <class F>
    std::shared_ptr<V const> get(K const& key, F&& compute) const {
      {
        std::lock_guard lock(mtx_);
        if (auto it = table_.find(key); it != table_.end()) {
          return it->second;
        }
      }
      auto value = std::make_shared<V const>(compute());
      std::lock_guard lock(mtx_);
      return table_.emplace(key, std::move(value)).first->second;
    }

   private:
    mutable std::mutex mtx_;
    mutable Table      table_;
  };

  template <class K, class V>
  using OrderedMemo = Memo<K, V, std::map<K, std::shared_ptr<V const>>>;

}  // namespace theta::detail

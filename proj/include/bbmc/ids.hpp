// Copyright 2026 The bbmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBMC_IDS_HPP
#define BBMC_IDS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bbmc/errors.hpp"

namespace bbmc {

/// Dense index tagged with the domain it indexes.
template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const Id&) const = default;
};

using StateId = Id<struct StateTag>;
using EventId = Id<struct EventTag>;
using InputId = Id<struct InputTag>;
using OutputId = Id<struct OutputTag>;

/// An interned, ordered set of names. Ids are assigned in insertion order.
template <class IdT>
class Alphabet {
 public:
  IdT add(std::string name) {
    if (index_.contains(name)) {
      throw ValidationError("duplicate name '" + name + "'");
    }
    IdT id{static_cast<std::uint32_t>(names_.size())};
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
  }

  std::optional<IdT> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view name) const { return find(name).has_value(); }

  const std::string& name(IdT id) const { return names_.at(id.value); }
  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::vector<IdT> ids() const {
    std::vector<IdT> out;
    out.reserve(names_.size());
    for (std::uint32_t i = 0; i < names_.size(); ++i) out.push_back(IdT{i});
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, IdT> index_;
};

}  // namespace bbmc

template <class Tag>
struct std::hash<bbmc::Id<Tag>> {
  std::size_t operator()(const bbmc::Id<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // BBMC_IDS_HPP

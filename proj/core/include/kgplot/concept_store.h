// Copyright 2026 The kgplot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGPLOT_CONCEPT_STORE_H_
#define KGPLOT_CONCEPT_STORE_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kgplot {

struct ConceptEdge {
  std::string relation;
  std::string head;          // normalized id
  std::string tail;          // normalized id
  std::string tail_surface;  // as written in the source
  double weight = 1.0;
};

bool is_entity_relation(std::string_view relation);

// Weighted (head, relation, tail) triples restricted to the physical-entity
// relation set. Loaded from UTF-8 TSV: relation<TAB>head<TAB>tail<TAB>weight.
class ConceptStore {
 public:
  static ConceptStore load(const std::filesystem::path &path);
  static ConceptStore parse(std::istream &in, const std::string &source);

  // Throws ValidationError for relations outside the allowed set.
  void add(std::string_view relation, std::string_view head, std::string_view tail,
           double weight);

  // Edges out of `head_id`, one per distinct tail (the heaviest), ordered by
  // weight descending, then tail, then relation.
  std::vector<ConceptEdge> lookup(std::string_view head_id) const;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

 private:
  std::map<std::string, std::vector<ConceptEdge>, std::less<>> by_head_;
  std::size_t size_ = 0;
};

}  // namespace kgplot

#endif  // KGPLOT_CONCEPT_STORE_H_

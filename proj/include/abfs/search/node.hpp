// Copyright 2026 The ABFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABFS_SEARCH_NODE_HPP_
#define ABFS_SEARCH_NODE_HPP_

#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "abfs/lexicon/tokenizer.hpp"

namespace abfs::search {

using lexicon::Substitution;

// A candidate test case. `priority` is the threat model's confidence in the
// ground-truth label; lower is closer to a flip.
struct SearchNode {
  std::string text;
  std::vector<Substitution> edits;  // sorted by position, positions distinct
  double priority = 1.0;
  std::string label;  // threat model's label for `text`
  std::uint64_t seq = 0;

  bool Edits(std::size_t position) const;
};

// Min-heap on (priority, seq): lowest confidence first, FIFO among equals.
class NodeQueue {
 public:
  void Push(SearchNode node) { heap_.push(std::move(node)); }

  SearchNode Pop() {
    SearchNode top = heap_.top();
    heap_.pop();
    return top;
  }

  const SearchNode& Top() const { return heap_.top(); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const SearchNode& a, const SearchNode& b) const {
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<SearchNode, std::vector<SearchNode>, Later> heap_;
};

}  // namespace abfs::search

#endif  // ABFS_SEARCH_NODE_HPP_

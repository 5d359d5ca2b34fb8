/*
Copyright 2026 The catsim Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/graph/encoding.hpp"
#include "catsim/reduction/content.hpp"
#include "catsim/tree/instance.hpp"

namespace catsim::reduction {

/// Tree Evaluation instance for one candidate encoding. Nodes are graph nodes; the tree is
/// the unfolding of the graph from (1, B), so a graph node reached along several paths appears
/// once per path.
class ReductionTree {
public:
    using node_type = GraphNode;

    ReductionTree(const ReductionParams& rp, GraphEncoding enc) : rp_(&rp), enc_(std::move(enc)) {
        if (enc_.p != rp.tapes() || enc_.B != rp.B || enc_.c != rp.c)
            throw std::invalid_argument("encoding shape does not match the reduction parameters");
        if (!graph::is_valid(enc_)) throw graph::InvalidEncoding("candidate encoding is not valid");
    }

    std::size_t fan_in() const { return 3 * rp_->tapes(); }
    std::size_t bit_length() const { return rp_->layout.width(); }
    std::size_t height() const { return rp_->B + 1; }
    node_type root() const { return GraphNode::inner(1, rp_->B); }
    bool is_leaf(const node_type& u) const { return u.is_source(); }
    std::size_t degree(const node_type& u) const { return u.is_source() ? 0 : children(u).size(); }
    std::vector<node_type> children(const node_type& u) const { return graph::predecessors(enc_, u); }
    Bits leaf_value(const node_type& u) const { return leaf_content(*rp_, u.h, u.v); }
    Bits apply(const node_type& u, std::span<const Bits> in) const { return block_step(*rp_, enc_, u.h, u.i, in); }

    const GraphEncoding& encoding() const { return enc_; }
    const ReductionParams& params() const { return *rp_; }

private:
    const ReductionParams* rp_;
    GraphEncoding enc_;
};

static_assert(tree::TreeInstance<ReductionTree>);

inline ReductionTree build_tree(const ReductionParams& rp, GraphEncoding enc) { return ReductionTree(rp, std::move(enc)); }

}  // namespace catsim::reduction

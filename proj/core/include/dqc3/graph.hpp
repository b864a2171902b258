// Copyright 2026 The dqc3 Authors
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

#ifndef DQC3_GRAPH_HPP
#define DQC3_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dqc3/tableau.hpp"

namespace dqc3 {

/// Sublattice role of a vertex.
///
/// Face and Edge are the two interleaved sublattices of the topological cluster state.
/// Aux marks the extra qubits that only exist during construction (dangling bonds).
/// Node is a plain vertex of a generic graph.
enum class VertexKind : uint8_t { Face, Edge, Aux, Node };

/// Vertex identifier. For lattice qubits (x, y, z) are doubled lattice coordinates:
/// faces have two odd coordinates, edges exactly one.
struct VertexId {
    int x = 0;
    int y = 0;
    int z = 0;
    VertexKind kind = VertexKind::Node;

    static VertexId node(int index) { return {index, 0, 0, VertexKind::Node}; }

    std::string str() const;
    auto operator<=>(const VertexId &other) const = default;
};

/// Simple undirected graph on labelled vertices.
class GraphSpec {
   public:
    GraphSpec() = default;

    void add_vertex(const VertexId &v);
    /// Adds an edge; both endpoints must exist and differ.
    void add_edge(const VertexId &a, const VertexId &b);
    void remove_edge(const VertexId &a, const VertexId &b);
    /// Removes the vertex and its incident edges.
    void remove_vertex(const VertexId &v);

    bool contains(const VertexId &v) const { return adjacency_.contains(v); }
    bool has_edge(const VertexId &a, const VertexId &b) const;
    const std::set<VertexId> &neighbors(const VertexId &v) const;
    size_t degree(const VertexId &v) const { return neighbors(v).size(); }

    size_t num_vertices() const { return adjacency_.size(); }
    size_t num_edges() const;
    std::vector<VertexId> vertices() const;
    /// Edges as (smaller, larger) pairs in sorted order.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    /// The graph-state stabilizer K_v = X_v prod_{b in N(v)} Z_b, with vertex u placed on
    /// qubit index.at(u).
    PauliString stabilizer(const VertexId &v, const std::map<VertexId, size_t> &index, size_t num_qubits) const;

    std::string str() const;

    bool operator==(const GraphSpec &other) const = default;

   private:
    std::map<VertexId, std::set<VertexId>> adjacency_;
};

/// The graph produced by a parity projection on (q1, q2) of a graph state, once the local
/// corrections have been applied.
///
/// The inheritor takes over the prior neighborhoods of both vertices: those in exactly one
/// of them (a neighbor shared by both has its two edges cancel). The other vertex is left
/// with a single dangling edge to the inheritor.
GraphSpec pp_graph_rule(const GraphSpec &g, const VertexId &q1, const VertexId &q2, const VertexId &inheritor);

/// The topological cluster state on a box of lx * ly * lz elementary cells.
GraphSpec tpcs_target(int lx, int ly, int lz);

/// Layers z_begin..z_end (inclusive, doubled coordinates) of the cluster state on an
/// lx * ly cell footprint.
GraphSpec tpcs_layers(int lx, int ly, int z_begin, int z_end);

}  // namespace dqc3

#endif  // DQC3_GRAPH_HPP

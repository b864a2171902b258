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

#include "dqc3/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqc3 {

std::string VertexId::str() const {
    const char *names[] = {"face", "edge", "aux", "node"};
    if (kind == VertexKind::Node) {
        return "v" + std::to_string(x);
    }
    return std::string(names[int(kind)]) + "(" + std::to_string(x) + "," + std::to_string(y) + "," +
           std::to_string(z) + ")";
}

void GraphSpec::add_vertex(const VertexId &v) { adjacency_.try_emplace(v); }

void GraphSpec::add_edge(const VertexId &a, const VertexId &b) {
    if (a == b) {
        throw std::invalid_argument("self-loop on " + a.str());
    }
    auto ia = adjacency_.find(a);
    auto ib = adjacency_.find(b);
    if (ia == adjacency_.end() || ib == adjacency_.end()) {
        throw std::invalid_argument("edge " + a.str() + "-" + b.str() + " references a missing vertex");
    }
    ia->second.insert(b);
    ib->second.insert(a);
}

void GraphSpec::remove_edge(const VertexId &a, const VertexId &b) {
    auto ia = adjacency_.find(a);
    auto ib = adjacency_.find(b);
    if (ia != adjacency_.end()) ia->second.erase(b);
    if (ib != adjacency_.end()) ib->second.erase(a);
}

void GraphSpec::remove_vertex(const VertexId &v) {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end()) return;
    for (const VertexId &u : it->second) {
        adjacency_[u].erase(v);
    }
    adjacency_.erase(it);
}

bool GraphSpec::has_edge(const VertexId &a, const VertexId &b) const {
    auto it = adjacency_.find(a);
    return it != adjacency_.end() && it->second.contains(b);
}

const std::set<VertexId> &GraphSpec::neighbors(const VertexId &v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end()) {
        throw std::out_of_range("no vertex " + v.str());
    }
    return it->second;
}

size_t GraphSpec::num_edges() const {
    size_t twice = 0;
    for (const auto &[v, nbrs] : adjacency_) twice += nbrs.size();
    return twice / 2;
}

std::vector<VertexId> GraphSpec::vertices() const {
    std::vector<VertexId> out;
    out.reserve(adjacency_.size());
    for (const auto &[v, nbrs] : adjacency_) out.push_back(v);
    return out;
}

std::vector<std::pair<VertexId, VertexId>> GraphSpec::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto &[v, nbrs] : adjacency_) {
        for (const VertexId &u : nbrs) {
            if (v < u) out.emplace_back(v, u);
        }
    }
    return out;
}

PauliString GraphSpec::stabilizer(const VertexId &v, const std::map<VertexId, size_t> &index,
                                  size_t num_qubits) const {
    PauliString p(num_qubits);
    p.set_x(index.at(v), true);
    for (const VertexId &u : neighbors(v)) {
        p.set_z(index.at(u), true);
    }
    return p;
}

std::string GraphSpec::str() const {
    std::string out;
    for (const auto &[v, nbrs] : adjacency_) {
        out += v.str() + ":";
        for (const VertexId &u : nbrs) out += " " + u.str();
        out += "\n";
    }
    return out;
}

GraphSpec pp_graph_rule(const GraphSpec &g, const VertexId &q1, const VertexId &q2, const VertexId &inheritor) {
    if (q1 == q2) {
        throw std::invalid_argument("parity projection needs two distinct vertices");
    }
    if (inheritor != q1 && inheritor != q2) {
        throw std::invalid_argument("inheritor must be one of the projected vertices");
    }
    const VertexId &other = inheritor == q1 ? q2 : q1;
    std::set<VertexId> merged;
    for (const VertexId *v : {&q1, &q2}) {
        for (const VertexId &u : g.neighbors(*v)) {
            if (u == q1 || u == q2) continue;
            if (!merged.erase(u)) merged.insert(u);
        }
    }
    GraphSpec out = g;
    for (const VertexId *v : {&q1, &q2}) {
        for (const VertexId &u : g.neighbors(*v)) out.remove_edge(*v, u);
    }
    for (const VertexId &u : merged) out.add_edge(inheritor, u);
    out.add_edge(inheritor, other);
    return out;
}

namespace {

int odd_count(int x, int y, int z) { return (x & 1) + (y & 1) + (z & 1); }

}  // namespace

GraphSpec tpcs_layers(int lx, int ly, int z_begin, int z_end) {
    if (lx < 1 || ly < 1) {
        throw std::invalid_argument("cluster state needs at least one cell per side");
    }
    if (z_begin < 0 || z_end < z_begin) {
        throw std::invalid_argument("invalid layer range");
    }
    GraphSpec g;
    auto kind_at = [](int x, int y, int z) { return odd_count(x, y, z) == 2 ? VertexKind::Face : VertexKind::Edge; };
    auto is_qubit = [&](int x, int y, int z) {
        int k = odd_count(x, y, z);
        return x >= 0 && x <= 2 * lx && y >= 0 && y <= 2 * ly && z >= z_begin && z <= z_end && (k == 1 || k == 2);
    };
    for (int z = z_begin; z <= z_end; z++) {
        for (int y = 0; y <= 2 * ly; y++) {
            for (int x = 0; x <= 2 * lx; x++) {
                if (is_qubit(x, y, z)) g.add_vertex({x, y, z, kind_at(x, y, z)});
            }
        }
    }
    // Faces touch the edges one half-step away along each of their odd directions.
    const int steps[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const VertexId &v : g.vertices()) {
        if (v.kind != VertexKind::Face) continue;
        for (const auto &d : steps) {
            for (int sgn : {-1, 1}) {
                int x = v.x + sgn * d[0];
                int y = v.y + sgn * d[1];
                int z = v.z + sgn * d[2];
                if (is_qubit(x, y, z) && kind_at(x, y, z) == VertexKind::Edge) {
                    g.add_edge(v, {x, y, z, VertexKind::Edge});
                }
            }
        }
    }
    return g;
}

GraphSpec tpcs_target(int lx, int ly, int lz) {
    if (lz < 1) {
        throw std::invalid_argument("cluster state needs at least one cell per side");
    }
    return tpcs_layers(lx, ly, 0, 2 * lz);
}

}  // namespace dqc3

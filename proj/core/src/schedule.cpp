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

#include "dqc3/schedule.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dqc3 {

std::string to_string(LocalClifford c) {
    switch (c) {
        case LocalClifford::I:
            return "I";
        case LocalClifford::H:
            return "H";
        case LocalClifford::S:
            return "S";
        case LocalClifford::HS:
            return "HS";
        case LocalClifford::SH:
            return "SH";
        case LocalClifford::HSH:
            return "HSH";
    }
    return "?";
}

std::vector<CliffordGate> gates_of(LocalClifford c, size_t q) {
    using G = CliffordGate;
    switch (c) {
        case LocalClifford::I:
            return {};
        case LocalClifford::H:
            return {G::h(q)};
        case LocalClifford::S:
            return {G::s(q)};
        case LocalClifford::HS:
            return {G::h(q), G::s(q)};
        case LocalClifford::SH:
            return {G::s(q), G::h(q)};
        case LocalClifford::HSH:
            return {G::h(q), G::s(q), G::h(q)};
    }
    return {};
}

std::vector<CliffordGate> inverse_gates_of(LocalClifford c, size_t q) {
    // H is self-inverse and S^-1 = S Z, so reversing the word undoes it up to a Pauli.
    std::vector<CliffordGate> g = gates_of(c, q);
    std::reverse(g.begin(), g.end());
    return g;
}

char image_of(LocalClifford c, char pauli) {
    PauliOperator p = PauliOperator::from_string(std::string(1, pauli));
    for (const CliffordGate &g : gates_of(c, 0)) p = conjugate(p, g);
    return p.at(0);
}

namespace {

// image[c][0] = image of X, image[c][1] = image of Z.
struct ImageTable {
    char image[6][2];
    ImageTable() {
        for (size_t k = 0; k < ALL_LOCAL_CLIFFORDS.size(); k++) {
            image[k][0] = image_of(ALL_LOCAL_CLIFFORDS[k], 'X');
            image[k][1] = image_of(ALL_LOCAL_CLIFFORDS[k], 'Z');
        }
    }
};

const ImageTable &images() {
    static const ImageTable table;
    return table;
}

std::vector<VertexId> bfs_order(const GraphSpec &g) {
    std::vector<VertexId> order;
    std::set<VertexId> seen;
    for (const VertexId &root : g.vertices()) {
        if (seen.contains(root)) continue;
        std::deque<VertexId> queue{root};
        seen.insert(root);
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (const VertexId &u : g.neighbors(v)) {
                if (seen.insert(u).second) queue.push_back(u);
            }
        }
    }
    return order;
}

class LocalCliffordSearch {
   public:
    LocalCliffordSearch(const Tableau &t, const GraphSpec &g, const std::map<VertexId, size_t> &index,
                        const std::vector<std::vector<LocalClifford>> *domains, const std::vector<VertexId> &check)
        : t_(t), assign_(t.num_qubits(), LocalClifford::I) {
        std::vector<VertexId> checks = check.empty() ? bfs_order(g) : check;
        std::map<size_t, size_t> position;
        auto add_var = [&](const VertexId &v) {
            size_t q = index.at(v);
            if (q >= t.num_qubits()) {
                throw std::out_of_range("vertex " + v.str() + " maps outside the tableau");
            }
            if (position.emplace(q, order_.size()).second) order_.push_back(q);
        };
        for (const VertexId &w : checks) {
            add_var(w);
            for (const VertexId &u : g.neighbors(w)) add_var(u);
        }
        completes_.resize(order_.size());
        for (const VertexId &w : checks) {
            Constraint c;
            c.center = index.at(w);
            size_t last = position.at(c.center);
            for (const VertexId &u : g.neighbors(w)) {
                c.neighbors.push_back(index.at(u));
                last = std::max(last, position.at(index.at(u)));
            }
            completes_[last].push_back(constraints_.size());
            constraints_.push_back(std::move(c));
        }
        for (size_t q : order_) {
            std::vector<size_t> dom;
            if (domains) {
                for (LocalClifford c : (*domains).at(q)) dom.push_back(size_t(c));
            } else {
                for (size_t k = 0; k < ALL_LOCAL_CLIFFORDS.size(); k++) dom.push_back(k);
            }
            if (dom.empty()) {
                throw std::invalid_argument("empty local-Clifford domain for qubit " + std::to_string(q));
            }
            domain_.push_back(std::move(dom));
        }
    }

    std::optional<std::vector<LocalClifford>> run() {
        if (!search(0)) return std::nullopt;
        return assign_;
    }

   private:
    struct Constraint {
        size_t center;
        std::vector<size_t> neighbors;
    };

    static constexpr size_t NODE_BUDGET = 2'000'000;

    bool satisfied(const Constraint &c) const {
        PauliString p(t_.num_qubits());
        p.set(c.center, images().image[size_t(assign_[c.center])][0]);
        for (size_t u : c.neighbors) p.set(u, images().image[size_t(assign_[u])][1]);
        return t_.stabilizes_up_to_sign(p);
    }

    bool search(size_t k) {
        if (k == order_.size()) return true;
        if (++nodes_ > NODE_BUDGET) {
            throw std::runtime_error("local-Clifford search exceeded its node budget");
        }
        size_t q = order_[k];
        for (size_t c : domain_[k]) {
            assign_[q] = ALL_LOCAL_CLIFFORDS[c];
            bool ok = true;
            for (size_t ci : completes_[k]) {
                if (!satisfied(constraints_[ci])) {
                    ok = false;
                    break;
                }
            }
            if (ok && search(k + 1)) return true;
        }
        assign_[q] = LocalClifford::I;
        return false;
    }

    const Tableau &t_;
    std::vector<LocalClifford> assign_;
    std::vector<size_t> order_;
    std::vector<std::vector<size_t>> domain_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<size_t>> completes_;
    size_t nodes_ = 0;
};

}  // namespace

std::optional<std::vector<LocalClifford>> find_local_cliffords(const Tableau &t, const GraphSpec &g,
                                                               const std::map<VertexId, size_t> &index,
                                                               const std::vector<std::vector<LocalClifford>> *domains,
                                                               const std::vector<VertexId> &check) {
    if (domains && domains->size() != t.num_qubits()) {
        throw std::invalid_argument("one local-Clifford domain per qubit expected");
    }
    return LocalCliffordSearch(t, g, index, domains, check).run();
}

std::optional<LocalEquivalence> check_equivalence(const Tableau &t, const GraphSpec &g,
                                                  const std::map<VertexId, size_t> &index) {
    const size_t n = t.num_qubits();
    std::vector<bool> in_graph(n, false);
    for (const VertexId &v : g.vertices()) {
        size_t q = index.at(v);
        if (q >= n || in_graph[q]) {
            throw std::invalid_argument("vertex-to-qubit map is not injective into the tableau");
        }
        in_graph[q] = true;
    }
    for (size_t q = 0; q < n; q++) {
        if (!in_graph[q] && !t.stabilizes_up_to_sign(PauliString::single(n, q, 'Z'))) return std::nullopt;
    }
    auto cliffords = find_local_cliffords(t, g, index);
    if (!cliffords) return std::nullopt;

    LocalEquivalence eq;
    eq.cliffords = *cliffords;
    eq.z_byproduct.assign(n, false);
    Tableau undone = t;
    for (size_t q = 0; q < n; q++) {
        for (const CliffordGate &gate : inverse_gates_of(eq.cliffords[q], q)) undone.apply(gate);
    }
    for (const VertexId &v : g.vertices()) {
        auto sign = undone.peek(g.stabilizer(v, index, n));
        if (!sign) return std::nullopt;
        eq.z_byproduct[index.at(v)] = *sign;
    }
    return eq;
}

PPOutcome apply_parity_projection(Tableau &t, size_t q1, size_t q2, bool parity_if_random) {
    if (q1 == q2) {
        throw std::invalid_argument("parity projection needs two distinct qubits");
    }
    if (q1 >= t.num_qubits() || q2 >= t.num_qubits()) {
        throw std::out_of_range("parity projection qubit out of range");
    }
    PauliString zz(t.num_qubits());
    zz.set_z(q1, true);
    zz.set_z(q2, true);
    MeasurementResult r = t.measure(zz, parity_if_random);
    return {r.outcome, r.deterministic};
}

std::string Action::str() const {
    std::string out;
    switch (kind) {
        case ActionKind::Prepare:
            out = "prepare";
            break;
        case ActionKind::Projection:
            out = "pp";
            break;
        case ActionKind::Measure:
            out = "measure_z";
            break;
        case ActionKind::Rotate:
            out = "rotate";
            break;
    }
    for (size_t q : qubits) out += " " + std::to_string(q);
    if (!gates.empty()) {
        out += " [";
        for (size_t k = 0; k < gates.size(); k++) out += (k ? ", " : "") + gates[k].str();
        out += "]";
    }
    return out;
}

std::map<VertexId, size_t> ConstructionSchedule::index() const {
    std::map<VertexId, size_t> out;
    for (size_t q = 0; q < labels.size(); q++) {
        if (!out.emplace(labels[q], q).second) {
            throw std::invalid_argument("duplicate qubit label " + labels[q].str());
        }
    }
    return out;
}

void ConstructionSchedule::validate() const {
    if (labels.size() != num_qubits) {
        throw std::invalid_argument("schedule needs one label per qubit");
    }
    index();
    std::vector<int> prepared(num_qubits, -1);
    std::vector<int> measured(num_qubits, -1);
    for (size_t s = 0; s < steps.size(); s++) {
        std::set<size_t> used;
        for (const Action &a : steps[s].actions) {
            size_t expected = a.kind == ActionKind::Projection ? 2 : 1;
            if (a.qubits.size() != expected) {
                throw std::invalid_argument("step " + std::to_string(s) + ": malformed action '" + a.str() + "'");
            }
            for (size_t q : a.qubits) {
                if (q >= num_qubits) {
                    throw std::invalid_argument("step " + std::to_string(s) + ": qubit out of range");
                }
                if (!used.insert(q).second) {
                    throw std::invalid_argument("step " + std::to_string(s) + ": qubit " + std::to_string(q) +
                                                " appears in two actions");
                }
                if (measured[q] >= 0) {
                    throw std::invalid_argument("step " + std::to_string(s) + ": qubit " + std::to_string(q) +
                                                " used after measurement");
                }
                if (a.kind == ActionKind::Prepare) {
                    if (prepared[q] >= 0) {
                        throw std::invalid_argument("qubit " + std::to_string(q) + " prepared twice");
                    }
                    prepared[q] = int(s);
                } else if (prepared[q] < 0) {
                    throw std::invalid_argument("step " + std::to_string(s) + ": qubit " + std::to_string(q) +
                                                " used before preparation");
                }
            }
            for (const CliffordGate &g : a.gates) {
                bool inside = std::find(a.qubits.begin(), a.qubits.end(), g.qubit0) != a.qubits.end();
                if (!inside || g.is_two_qubit()) {
                    throw std::invalid_argument("step " + std::to_string(s) + ": gate " + g.str() +
                                                " is not local to its action");
                }
            }
            if (a.kind == ActionKind::Measure) measured[a.qubits[0]] = int(s);
        }
    }
}

std::vector<int> ConstructionSchedule::prepared_at() const {
    std::vector<int> out(num_qubits, -1);
    for (size_t s = 0; s < steps.size(); s++) {
        for (const Action &a : steps[s].actions) {
            if (a.kind == ActionKind::Prepare) out[a.qubits[0]] = int(s);
        }
    }
    return out;
}

std::vector<int> ConstructionSchedule::measured_at() const {
    std::vector<int> out(num_qubits, int(steps.size()));
    for (size_t s = 0; s < steps.size(); s++) {
        for (const Action &a : steps[s].actions) {
            if (a.kind == ActionKind::Measure) out[a.qubits[0]] = int(s);
        }
    }
    return out;
}

std::vector<std::vector<bool>> ConstructionSchedule::activity() const {
    std::vector<std::vector<bool>> out(steps.size(), std::vector<bool>(num_qubits, false));
    for (size_t s = 0; s < steps.size(); s++) {
        for (const Action &a : steps[s].actions) {
            for (size_t q : a.qubits) out[s][q] = true;
        }
    }
    return out;
}

size_t ConstructionSchedule::num_projections() const {
    size_t total = 0;
    for (const ScheduleStep &s : steps) {
        for (const Action &a : s.actions) total += a.kind == ActionKind::Projection;
    }
    return total;
}

std::string ConstructionSchedule::export_text() const {
    std::ostringstream out;
    out << "qubits " << num_qubits << "\n";
    for (size_t q = 0; q < labels.size(); q++) {
        out << "qubit " << q << " " << labels[q].str() << "\n";
    }
    for (size_t s = 0; s < steps.size(); s++) {
        out << "step " << s << ":";
        for (size_t k = 0; k < steps[s].actions.size(); k++) {
            out << (k ? "; " : " ") << steps[s].actions[k].str();
        }
        out << "\n";
    }
    return out.str();
}

ExecutionResult execute(const ConstructionSchedule &s, std::mt19937_64 *rng) {
    s.validate();
    ExecutionResult r{Tableau(s.num_qubits), {}};
    auto coin = [&]() { return rng ? bool((*rng)() & 1) : false; };
    for (size_t step = 0; step < s.steps.size(); step++) {
        const auto &actions = s.steps[step].actions;
        for (size_t k = 0; k < actions.size(); k++) {
            const Action &a = actions[k];
            switch (a.kind) {
                case ActionKind::Prepare:
                    r.tableau.h(a.qubits[0]);
                    break;
                case ActionKind::Projection:
                case ActionKind::Measure: {
                    PauliString m(s.num_qubits);
                    for (size_t q : a.qubits) m.set_z(q, true);
                    MeasurementResult res = r.tableau.measure(m, coin());
                    r.measurements.push_back({step, k, m, res});
                    break;
                }
                case ActionKind::Rotate:
                    break;
            }
            for (const CliffordGate &g : a.gates) r.tableau.apply(g);
        }
    }
    return r;
}

namespace {

// Runs a schedule under construction on a tableau (even / +1 outcomes) while tracking the
// graph the state is expected to be locally equivalent to.
class Deriver {
   public:
    explicit Deriver(ConstructionSchedule &s) : s_(s), t_(s.num_qubits), index_(s.index()) {}

    /// Executes steps [from, to) as written.
    void replay(size_t from, size_t to) {
        for (size_t step = from; step < to; step++) {
            for (const Action &a : s_.steps[step].actions) {
                switch (a.kind) {
                    case ActionKind::Prepare:
                        t_.h(a.qubits[0]);
                        break;
                    case ActionKind::Projection:
                        apply_parity_projection(t_, a.qubits[0], a.qubits[1]);
                        break;
                    case ActionKind::Measure:
                        t_.measure(PauliString::single(s_.num_qubits, a.qubits[0], 'Z'));
                        break;
                    case ActionKind::Rotate:
                        break;
                }
                for (const CliffordGate &g : a.gates) t_.apply(g);
            }
        }
    }

    /// Finds the local rotations taking the current state to the graph state of `g`,
    /// searching over the listed qubits. Returns one Rotate action per non-trivial qubit
    /// and applies them.
    std::vector<Action> derive_rotations(const GraphSpec &g, const std::vector<size_t> &qubits) {
        std::vector<std::vector<LocalClifford>> domains(s_.num_qubits, {LocalClifford::I});
        for (size_t q : qubits) domains[q] = {ALL_LOCAL_CLIFFORDS.begin(), ALL_LOCAL_CLIFFORDS.end()};
        auto found = find_local_cliffords(t_, g, index_, &domains);
        if (!found) {
            throw std::logic_error("no local rotation maps the state onto the expected graph");
        }
        std::vector<Action> out;
        for (size_t q : qubits) {
            auto gates = inverse_gates_of((*found)[q], q);
            if (gates.empty()) continue;
            for (const CliffordGate &gate : gates) t_.apply(gate);
            out.push_back({ActionKind::Rotate, {q}, gates});
        }
        graph_ = g;
        return out;
    }

    /// Projects (inheritor, partner), applies the graph rewrite rule to the tracked graph
    /// and derives the local correction that makes the state match it.
    Action derive_projection(size_t inheritor, size_t partner) {
        const VertexId &vi = s_.labels[inheritor];
        const VertexId &vp = s_.labels[partner];
        PPOutcome out = apply_parity_projection(t_, inheritor, partner);
        if (out.deterministic) {
            throw std::logic_error("projection on " + vi.str() + ", " + vp.str() + " has a fixed outcome");
        }
        GraphSpec before = graph_;
        graph_ = pp_graph_rule(graph_, vi, vp, vi);
        std::set<VertexId> touched{vi, vp};
        for (const GraphSpec *g : {&before, &graph_}) {
            for (const VertexId *v : {&vi, &vp}) {
                for (const VertexId &u : g->neighbors(*v)) touched.insert(u);
            }
        }
        std::vector<std::vector<LocalClifford>> domains(s_.num_qubits, {LocalClifford::I});
        domains[inheritor] = {ALL_LOCAL_CLIFFORDS.begin(), ALL_LOCAL_CLIFFORDS.end()};
        domains[partner] = domains[inheritor];
        auto found =
            find_local_cliffords(t_, graph_, index_, &domains, std::vector<VertexId>(touched.begin(), touched.end()));
        if (!found) {
            throw std::logic_error("no local correction found after projecting " + vi.str() + ", " + vp.str());
        }
        Action a{ActionKind::Projection, {inheritor, partner}, {}};
        for (size_t q : {inheritor, partner}) {
            for (const CliffordGate &gate : inverse_gates_of((*found)[q], q)) a.gates.push_back(gate);
        }
        for (const CliffordGate &gate : a.gates) t_.apply(gate);
        return a;
    }

    void prepare(size_t q) { t_.h(q); }

    /// Measures q in Z and removes its vertex from the tracked graph.
    Action measure_out(size_t q) {
        t_.measure(PauliString::single(s_.num_qubits, q, 'Z'));
        graph_.remove_vertex(s_.labels[q]);
        return {ActionKind::Measure, {q}, {}};
    }

    void set_graph(GraphSpec g) { graph_ = std::move(g); }
    const GraphSpec &graph() const { return graph_; }

   private:
    ConstructionSchedule &s_;
    Tableau t_;
    std::map<VertexId, size_t> index_;
    GraphSpec graph_;
};

VertexKind center_kind(int z) { return z % 2 == 0 ? VertexKind::Face : VertexKind::Edge; }
VertexKind link_kind(int z) { return z % 2 == 0 ? VertexKind::Edge : VertexKind::Face; }

struct Star {
    std::vector<size_t> chain;  // center first, then arms
};

// Link positions of layer z: exactly one of (x, y) odd, inside the footprint.
std::vector<std::pair<int, int>> link_positions(int cells_x, int cells_y) {
    std::vector<std::pair<int, int>> out;
    for (int y = 0; y <= 2 * cells_y; y++) {
        for (int x = 0; x <= 2 * cells_x; x++) {
            if (((x & 1) + (y & 1)) == 1) out.emplace_back(x, y);
        }
    }
    return out;
}

// Appends the preparation, two projection steps and the (still empty) rotation step that
// turn each chain into a GHZ state.
void add_star_steps(ConstructionSchedule &s, const std::vector<Star> &stars) {
    s.steps.resize(4);
    for (const Star &star : stars) {
        for (size_t q : star.chain) s.steps[0].actions.push_back({ActionKind::Prepare, {q}, {}});
        const auto &c = star.chain;
        for (size_t k = 0; k + 1 < c.size(); k++) {
            // Links (0,1), (2,3) go first, (1,2), (3,4) second.
            s.steps[1 + (k % 2)].actions.push_back({ActionKind::Projection, {c[k], c[k + 1]}, {}});
        }
    }
}

GraphSpec star_graph(const ConstructionSchedule &s, const std::vector<Star> &stars) {
    GraphSpec g;
    for (const Star &star : stars) {
        for (size_t q : star.chain) g.add_vertex(s.labels[q]);
        for (size_t k = 1; k < star.chain.size(); k++) g.add_edge(s.labels[star.chain[0]], s.labels[star.chain[k]]);
    }
    return g;
}

}  // namespace

GraphSpec tpcs_with_dangling(int cells_x, int cells_y, int z_begin, int z_end) {
    GraphSpec g = tpcs_layers(cells_x, cells_y, z_begin, z_end);
    for (auto [x, y] : link_positions(cells_x, cells_y)) {
        VertexId aux{x, y, z_end, VertexKind::Aux};
        g.add_vertex(aux);
        g.add_edge(aux, {x, y, z_end, link_kind(z_end)});
    }
    return g;
}

ConstructionSchedule build_cross() {
    ConstructionSchedule s;
    s.labels = {{1, 1, 0, VertexKind::Face},
                {0, 1, 0, VertexKind::Edge},
                {2, 1, 0, VertexKind::Edge},
                {1, 0, 0, VertexKind::Edge},
                {1, 2, 0, VertexKind::Edge}};
    s.num_qubits = s.labels.size();
    std::vector<Star> stars{{{0, 1, 2, 3, 4}}};
    add_star_steps(s, stars);
    Deriver d(s);
    d.replay(0, 3);
    s.steps[3].actions = d.derive_rotations(star_graph(s, stars), stars[0].chain);
    s.target = d.graph();
    s.extent = LatticeExtent{1, 1, 0, 0};
    s.validate();
    return s;
}

ConstructionSchedule build_sheet(int cells_x, int cells_y, int z) {
    if (cells_x < 1 || cells_y < 1 || z < 0) {
        throw std::invalid_argument("sheet needs a footprint of at least one cell and z >= 0");
    }
    ConstructionSchedule s;
    auto add_qubit = [&](const VertexId &v) {
        s.labels.push_back(v);
        return s.labels.size() - 1;
    };
    auto inside = [&](int x, int y) { return x >= 0 && x <= 2 * cells_x && y >= 0 && y <= 2 * cells_y; };

    // Every link position collects the arms pointing at it, in creation order.
    std::map<std::pair<int, int>, std::vector<size_t>> arms_at;
    std::vector<Star> stars;
    int parity = z % 2 == 0 ? 1 : 0;
    for (int y = parity; y <= 2 * cells_y; y += 2) {
        for (int x = parity; x <= 2 * cells_x; x += 2) {
            Star star;
            star.chain.push_back(add_qubit({x, y, z, center_kind(z)}));
            for (auto [dx, dy] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
                int lx = x + dx;
                int ly = y + dy;
                if (!inside(lx, ly)) continue;
                auto &arms = arms_at[{lx, ly}];
                VertexKind kind = arms.empty() ? link_kind(z) : VertexKind::Aux;
                size_t q = add_qubit({lx, ly, z, kind});
                arms.push_back(q);
                star.chain.push_back(q);
            }
            stars.push_back(std::move(star));
        }
    }
    // Links reached by a single star get a fresh partner to carry their dangling bond.
    std::vector<size_t> fresh;
    for (auto &[pos, arms] : arms_at) {
        if (arms.size() == 1) {
            size_t q = add_qubit({pos.first, pos.second, z, VertexKind::Aux});
            arms.push_back(q);
            fresh.push_back(q);
        }
    }
    s.num_qubits = s.labels.size();
    add_star_steps(s, stars);

    Deriver d(s);
    d.replay(0, 3);
    std::vector<size_t> star_qubits;
    for (const Star &star : stars) star_qubits.insert(star_qubits.end(), star.chain.begin(), star.chain.end());
    GraphSpec stars_only = star_graph(s, stars);
    s.steps[3].actions = d.derive_rotations(stars_only, star_qubits);
    for (size_t q : fresh) {
        s.steps[3].actions.push_back({ActionKind::Prepare, {q}, {}});
        d.prepare(q);
    }

    GraphSpec g = stars_only;
    for (size_t q : fresh) g.add_vertex(s.labels[q]);
    d.set_graph(g);

    s.steps.emplace_back();
    for (auto [x, y] : link_positions(cells_x, cells_y)) {
        const auto &arms = arms_at.at({x, y});
        s.steps[4].actions.push_back(d.derive_projection(arms[0], arms[1]));
    }
    s.target = d.graph();
    s.extent = LatticeExtent{cells_x, cells_y, z, z};
    s.validate();
    return s;
}

ConstructionSchedule build_lattice_sheet(int lx, int ly) {
    if (lx < 2 || ly < 2) {
        throw std::invalid_argument("lattice sheet needs at least 2 x 2 crosses");
    }
    return build_sheet(lx, ly, 0);
}

ConstructionSchedule fuse_sheets(const std::vector<ConstructionSchedule> &sheets) {
    if (sheets.size() < 2) {
        throw std::invalid_argument("fusion needs at least two sheets");
    }
    for (size_t k = 0; k < sheets.size(); k++) {
        const auto &e = sheets[k].extent;
        const auto &first = sheets[0].extent;
        if (!e || e->z_begin != e->z_end || sheets[k].num_steps() != sheets[0].num_steps() ||
            e->cells_x != first->cells_x || e->cells_y != first->cells_y || e->z_begin != first->z_begin + int(k)) {
            throw std::invalid_argument("incompatible sheets: fusion needs single-layer sheets of equal footprint "
                                        "on consecutive layers");
        }
    }
    const int cx = sheets[0].extent->cells_x;
    const int cy = sheets[0].extent->cells_y;

    ConstructionSchedule s;
    s.steps.resize(sheets[0].num_steps());
    GraphSpec g;
    for (const ConstructionSchedule &sheet : sheets) {
        size_t offset = s.labels.size();
        s.labels.insert(s.labels.end(), sheet.labels.begin(), sheet.labels.end());
        for (size_t step = 0; step < sheet.num_steps(); step++) {
            for (Action a : sheet.steps[step].actions) {
                for (size_t &q : a.qubits) q += offset;
                for (CliffordGate &gate : a.gates) {
                    gate.qubit0 += offset;
                    gate.qubit1 += offset;
                }
                s.steps[step].actions.push_back(std::move(a));
            }
        }
        for (const VertexId &v : sheet.target.vertices()) g.add_vertex(v);
        for (const auto &[a, b] : sheet.target.edges()) g.add_edge(a, b);
    }
    s.num_qubits = s.labels.size();
    auto index = s.index();

    Deriver d(s);
    d.replay(0, s.num_steps());
    d.set_graph(g);
    ScheduleStep fuse;
    ScheduleStep remove;
    for (size_t k = 0; k + 1 < sheets.size(); k++) {
        int z = sheets[k].extent->z_begin;
        for (auto [x, y] : link_positions(cx, cy)) {
            size_t dangling = index.at({x, y, z, VertexKind::Aux});
            size_t above = index.at({x, y, z + 1, link_kind(z + 1)});
            fuse.actions.push_back(d.derive_projection(above, dangling));
        }
    }
    for (const Action &a : fuse.actions) remove.actions.push_back(d.measure_out(a.qubits[1]));
    s.steps.push_back(std::move(fuse));
    s.steps.push_back(std::move(remove));
    s.target = d.graph();
    s.extent = LatticeExtent{cx, cy, sheets.front().extent->z_begin, sheets.back().extent->z_end};
    s.validate();
    return s;
}

ConstructionSchedule build_tpcs(int cells_x, int cells_y, int cells_z) {
    if (cells_x < 1 || cells_y < 1 || cells_z < 1) {
        throw std::invalid_argument("cluster state needs at least one cell per side");
    }
    std::vector<ConstructionSchedule> sheets;
    for (int z = 0; z <= 2 * cells_z; z++) sheets.push_back(build_sheet(cells_x, cells_y, z));
    return fuse_sheets(sheets);
}

}  // namespace dqc3

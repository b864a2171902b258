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

#include "dqc3/accounting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace dqc3 {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1), got " + std::to_string(p));
    }
}

}  // namespace

double memory_rate(double idle_steps, double p_mem) { return 1.0 - std::pow(1.0 - p_mem, idle_steps); }

void ProtocolParams::validate() const {
    check_probability(p_ent, "p_ent");
    check_probability(p_local, "p_local");
    check_probability(p_mem, "p_mem");
    check_probability(f_herald, "f_herald");
    if (n_rounds < 0) throw std::invalid_argument("n_rounds must be >= 0");
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (H < M) throw std::invalid_argument("H must be >= M");
    double total = 0.0;
    for (double w : split) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("split weights must be non-negative");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("split weights must not all be zero");
    if (!(sync_factor >= 1.0) || !std::isfinite(sync_factor)) {
        throw std::invalid_argument("sync_factor must be >= 1");
    }
}

BellDiagonalState ProtocolParams::raw_pair() const {
    double total = split[0] + split[1] + split[2];
    BellDiagonalState s;
    s.b = p_ent * split[0] / total;
    s.c = p_ent * split[1] / total;
    s.d = p_ent * split[2] / total;
    s.a = 1.0 - s.b - s.c - s.d;
    return s;
}

double attempts_per_raw_pair(double f_herald) {
    check_probability(f_herald, "f_herald");
    return 1.0 / (1.0 - f_herald);
}

PauliChannel memory_channel(double idle_steps, double p_mem) {
    if (!(idle_steps >= 0.0)) throw std::invalid_argument("idle_steps must be non-negative");
    check_probability(p_mem, "p_mem");
    return depolarizing1(memory_rate(idle_steps, p_mem));
}

NoisyCircuit pp_application_circuit(double p_local, double client_idle_rate) {
    using namespace pp_qubits;
    NoisyCircuit c(4);
    c.noise(depolarizing1(client_idle_rate), {CLIENT_1});
    c.noise(depolarizing1(client_idle_rate), {CLIENT_2});
    c.gate(CliffordGate::cz(INTERMEDIATE_1, CLIENT_1));
    c.gate(CliffordGate::cz(INTERMEDIATE_2, CLIENT_2));
    c.noise(depolarizing2(p_local), {INTERMEDIATE_1, CLIENT_1});
    c.noise(depolarizing2(p_local), {INTERMEDIATE_2, CLIENT_2});
    // Noisy X measurements of the intermediates.
    c.noise(depolarizing1(p_local), {INTERMEDIATE_1});
    c.noise(depolarizing1(p_local), {INTERMEDIATE_2});
    return c;
}

bool pp_record_flipped(const PauliOperator &frame) {
    return frame.z(pp_qubits::INTERMEDIATE_1) != frame.z(pp_qubits::INTERMEDIATE_2);
}

PauliOperator client_part(const PauliOperator &frame) {
    return frame.restricted({pp_qubits::CLIENT_1, pp_qubits::CLIENT_2});
}

namespace {

PauliChannel application_input(const BellDiagonalState &intermediate, const PauliOperator &client) {
    PauliOperator c = client.embedded(4, {pp_qubits::CLIENT_1, pp_qubits::CLIENT_2});
    PauliChannel::Terms terms;
    PauliChannel error = intermediate.error_channel();
    for (const auto &[p, w] : error.terms()) {
        terms[p.embedded(4, {pp_qubits::INTERMEDIATE_1}) * c] += w;
    }
    return PauliChannel(4, std::move(terms));
}

}  // namespace

EffectivePP effective_pp_noise(const ProtocolParams &params) {
    params.validate();
    EffectivePP e;
    PPCost &cost = e.cost;
    cost.attempts_per_raw_pair = attempts_per_raw_pair(params.f_herald);
    cost.intermediate_idle_per_round = cost.attempts_per_raw_pair;
    e.pumping = pump_schedule(params.raw_pair(), params.n_rounds, params.p_local,
                              memory_rate(cost.intermediate_idle_per_round, params.p_mem));
    e.intermediate = e.pumping.state;

    // A rejected round discards the stored pair, so level k is rebuilt from scratch:
    // raw pairs R_k = (R_{k-1} + 1) / a_k, time T_k = (T_{k-1} + attempts + 2) / a_k.
    double raw_pairs = 1.0;
    double time = cost.attempts_per_raw_pair + 1.0;
    for (double a : e.pumping.round_accept) {
        if (!(a > 0.0)) throw std::domain_error("pumping round never accepts");
        raw_pairs = (raw_pairs + 1.0) / a;
        time = (time + cost.attempts_per_raw_pair + 2.0) / a;
    }
    cost.expected_raw_pairs = raw_pairs;
    cost.expected_eo_attempts = raw_pairs * cost.attempts_per_raw_pair;
    cost.expected_elementary_steps = time + 2.0;  // CZ layer and intermediate measurement
    cost.client_idle = params.sync_factor * cost.expected_elementary_steps - 1.0;

    e.circuit = pp_application_circuit(params.p_local, memory_rate(cost.client_idle, params.p_mem));
    PauliChannel out = e.circuit.propagate(application_input(e.intermediate, PauliOperator::identity(2)));
    PauliChannel::Terms residual;
    double flip = 0.0;
    for (const auto &[p, w] : out.terms()) {
        if (pp_record_flipped(p)) flip += w;
        residual[client_part(p)] += w;
    }
    e.p_phase = flip;
    e.residual = PauliChannel(2, std::move(residual));
    if (e.p_phase >= 0.5) {
        throw std::domain_error("record-flip probability " + std::to_string(e.p_phase) +
                                " leaves majority voting without signal");
    }
    e.walk = walk_dp({e.p_phase, params.M, params.H});
    e.fail_prob = e.walk.fail_prob;
    return e;
}

PauliChannel client_error_accumulation(const PPWalkResult &walk, const PauliChannel &residual,
                                       [[maybe_unused]] const ProtocolParams &params) {
    if (residual.num_qubits() != 2) throw std::invalid_argument("residual must act on the client pair");
    if (!(walk.success_prob > 0.0)) return PauliChannel::identity(2);
    int target = 0;
    for (const auto &[key, w] : walk.terminal_distribution) target = std::max(target, key.first);
    std::map<int, double> by_count;
    for (const auto &[key, w] : walk.terminal_distribution) {
        if (key.first == target && w > 0.0) by_count[key.second] += w / walk.success_prob;
    }
    PauliChannel::Terms mixed;
    PauliChannel power = PauliChannel::identity(2);
    int k = 0;
    for (const auto &[count, w] : by_count) {
        for (; k < count; k++) power = compose(power, residual);
        for (const auto &[p, pw] : power.terms()) mixed[p] += w * pw;
    }
    PauliChannel accumulated(2, std::move(mixed));
    double wrong = walk.residual_wrong_parity;
    PauliChannel misrecorded(2, {{PauliOperator::identity(2), 1.0 - wrong}, {PauliOperator::from_string("ZZ"), wrong}});
    return compose(accumulated, misrecorded);
}

size_t PPOutcomeDistribution::pauli_index(const PauliOperator &two_qubit) {
    if (two_qubit.num_qubits() != 2) throw std::invalid_argument("client frame must act on two qubits");
    return size_t(two_qubit.x_mask() | (two_qubit.z_mask() << 2));
}

PauliOperator PPOutcomeDistribution::pauli_at(size_t index) {
    if (index >= 16) throw std::out_of_range("client frame index out of range");
    return PauliOperator(2, index & 3, (index >> 2) & 3);
}

double PPOutcomeDistribution::wrong_parity() const {
    double w = 0.0;
    for (size_t i = 16; i < 32; i++) w += joint[i];
    return w;
}

PauliChannel PPOutcomeDistribution::client_channel() const {
    PauliChannel::Terms terms;
    for (size_t i = 0; i < 32; i++) {
        if (joint[i] > 0.0) terms[pauli_at(i & 15)] += joint[i];
    }
    if (terms.empty()) return PauliChannel::identity(2);
    return PauliChannel(2, std::move(terms));
}

const JointPPWalk::AtH &JointPPWalk::at(int H) const {
    if (H < M || H > max_h) {
        throw std::out_of_range("walk truncation " + std::to_string(H) + " outside [" + std::to_string(M) + ", " +
                                std::to_string(max_h) + "]");
    }
    return by_h[size_t(H - M)];
}

PPKernel PPKernel::from_circuit(const NoisyCircuit &circuit, const BellDiagonalState &intermediate) {
    if (circuit.num_qubits() != 4) throw std::invalid_argument("application circuit must have 4 qubits");
    PPKernel k;
    for (size_t f = 0; f < 16; f++) {
        PauliChannel out = circuit.propagate(application_input(intermediate, PPOutcomeDistribution::pauli_at(f)));
        std::array<double, 32> acc{};
        for (const auto &[p, w] : out.terms()) {
            acc[PPOutcomeDistribution::pauli_index(client_part(p)) + 16 * size_t(pp_record_flipped(p))] += w;
        }
        for (size_t i = 0; i < 32; i++) {
            if (acc[i] > 0.0) k.next[f].emplace_back(i, acc[i]);
        }
    }
    return k;
}

JointPPWalk joint_pp_walk(const PPKernel &kernel, int M, int max_h) {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (max_h < M) throw std::invalid_argument("max_h must be >= M");
    JointPPWalk out;
    out.M = M;
    out.max_h = max_h;
    const int width = 2 * M - 1;  // record differences -(M-1) .. M-1
    std::vector<std::array<double, 16>> dist(static_cast<size_t>(width));
    std::vector<std::array<double, 16>> next(dist.size());
    for (auto &row : dist) row.fill(0.0);
    dist[size_t(M - 1)][0] = 1.0;
    std::array<double, 32> absorbed{};
    double absorbed_count = 0.0;  // sum of h * absorbed mass
    for (int h = 1; h <= max_h; h++) {
        for (auto &row : next) row.fill(0.0);
        double absorbed_now = 0.0;
        for (int d = 0; d < width; d++) {
            for (size_t f = 0; f < 16; f++) {
                double mass = dist[size_t(d)][f];
                if (mass == 0.0) continue;
                for (const auto &[target, p] : kernel.next[f]) {
                    bool flipped = target >= 16;
                    size_t frame = target & 15;
                    int nd = d - (M - 1) + (flipped ? -1 : 1);
                    if (nd == M || nd == -M) {
                        absorbed[frame + (nd < 0 ? 16 : 0)] += mass * p;
                        absorbed_now += mass * p;
                    } else {
                        next[size_t(nd + M - 1)][frame] += mass * p;
                    }
                }
            }
        }
        std::swap(dist, next);
        absorbed_count += h * absorbed_now;
        if (h < M) continue;
        JointPPWalk::AtH at;
        double surviving = 0.0;
        for (const auto &row : dist) {
            for (double m : row) surviving += m;
        }
        for (double m : absorbed) at.success_prob += m;
        at.fail_prob = surviving;
        at.expected_pp_count = absorbed_count + h * surviving;
        if (at.success_prob > 0.0) {
            for (size_t i = 0; i < 32; i++) at.outcome.joint[i] = absorbed[i] / at.success_prob;
        } else {
            at.outcome.joint[0] = 1.0;
        }
        out.by_h.push_back(at);
    }
    return out;
}

ErrorBudget ErrorBudget::from_rates(double p_z, double p_zz, double p_loss) {
    ErrorBudget b;
    b.p_z = p_z;
    b.p_zz = p_zz;
    b.p_loss = p_loss;
    b.eps = p_z + p_zz;
    b.face = {p_z, p_zz, p_loss, b.eps};
    b.edge = b.face;
    b.validate();
    return b;
}

void ErrorBudget::validate() const {
    auto check = [](double v, const char *name) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    };
    check(p_z, "p_z");
    check(p_zz, "p_zz");
    check(p_loss, "p_loss");
    check(eps, "eps");
    for (const SublatticeBudget *s : {&face, &edge}) {
        check(s->p_z, "p_z");
        check(s->p_zz, "p_zz");
        check(s->p_loss, "p_loss");
        check(s->eps, "eps");
    }
}

std::string ErrorBudget::report() const {
    std::ostringstream out;
    out << std::setprecision(10);
    out << "p_z = " << p_z << '\n'
        << "p_zz = " << p_zz << '\n'
        << "p_loss = " << p_loss << '\n'
        << "eps = " << eps << '\n'
        << "face_p_z = " << face.p_z << '\n'
        << "face_p_zz = " << face.p_zz << '\n'
        << "face_p_loss = " << face.p_loss << '\n'
        << "face_eps = " << face.eps << '\n'
        << "edge_p_z = " << edge.p_z << '\n'
        << "edge_p_zz = " << edge.p_zz << '\n'
        << "edge_p_loss = " << edge.p_loss << '\n'
        << "edge_eps = " << edge.eps << '\n'
        << "expected_eo_attempts = " << expected_eo_attempts << '\n'
        << "expected_pp_count = " << expected_pp_count << '\n'
        << "pp_duration = " << pp_duration << '\n'
        << "steps = " << steps << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------------------
// Compiled schedule.

namespace {

using Pattern = std::vector<uint64_t>;  // bit per target

enum class LocationType : uint8_t { Local, Idle, Projection };

// What a single error location does to one target: which of its terms flip the target
// alone and which flip it together with other targets.
struct FlipKind {
    LocationType type;
    size_t step = 0;       // Idle
    uint8_t single = 0;    // Local / Idle: number of {X, Y, Z} terms
    uint8_t corr = 0;
    uint32_t single_mask = 0;  // Projection: subsets of the 32 joint outcomes
    uint32_t corr_mask = 0;

    auto key() const { return std::tie(type, step, single, corr, single_mask, corr_mask); }
    bool operator<(const FlipKind &o) const { return key() < o.key(); }
};

struct FrameOp {
    bool measurement = false;
    CliffordGate gate{GateKind::H, 0, 0};
    PauliString measured;
    PauliString flip;  // applied when the frame anticommutes with `measured`
};

}  // namespace

struct BudgetModel::Compiled {
    std::vector<FlipKind> kinds;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> per_target;  // (kind, count)
    std::vector<uint32_t> loss_exposure;
    std::vector<bool> is_face;
    std::vector<size_t> step_start;  // op index at which each step starts; last = end of steps
    std::vector<FrameOp> ops;        // includes the final undo of local Cliffords
    // Final conversion: per graph vertex, its qubit and the targets of itself / neighbours.
    std::vector<size_t> graph_qubit;
    std::vector<long> graph_target;  // -1 when not a reported target
    std::vector<std::vector<size_t>> neighbour_targets;

    size_t words() const { return (per_target.size() + 63) / 64; }

    Pattern propagate(PauliString frame, size_t from) const {
        for (size_t i = from; i < ops.size(); i++) {
            const FrameOp &op = ops[i];
            if (op.measurement) {
                if (!frame.commutes(op.measured)) frame *= op.flip;
            } else {
                conjugate_in_place(frame, op.gate);
            }
        }
        Pattern w(words(), 0);
        auto toggle = [&](size_t t) { w[t >> 6] ^= uint64_t(1) << (t & 63); };
        for (size_t g = 0; g < graph_qubit.size(); g++) {
            size_t q = graph_qubit[g];
            if (frame.z(q) && graph_target[g] >= 0) toggle(size_t(graph_target[g]));
            if (frame.x(q)) {
                for (size_t t : neighbour_targets[g]) toggle(t);
            }
        }
        return w;
    }
};

BudgetModel::BudgetModel(const ConstructionSchedule &schedule) : schedule_(schedule) {
    schedule_.validate();
    const size_t n = schedule_.num_qubits;
    const size_t steps = schedule_.num_steps();
    auto c = std::make_shared<Compiled>();

    projection_step_.assign(steps, false);
    for (size_t s = 0; s < steps; s++) {
        for (const Action &a : schedule_.steps[s].actions) {
            if (a.kind == ActionKind::Projection) projection_step_[s] = true;
        }
    }

    // Replay the ideal execution, recording frame operations and error locations.
    struct Location {
        LocationType type;
        size_t step;
        size_t at;  // op index before which the error acts
        std::vector<size_t> qubits;
        PauliString wrong;  // Projection: the misrecorded-parity flip
    };
    std::vector<Location> locations;
    std::vector<int> prepared = schedule_.prepared_at();
    std::vector<int> measured = schedule_.measured_at();
    auto active = schedule_.activity();

    std::vector<std::set<size_t>> pp_touching(n);
    std::vector<long> absorbed_into(n, -1);
    size_t pp_id = 0;

    Tableau t(n);
    for (size_t s = 0; s < steps; s++) {
        c->step_start.push_back(c->ops.size());
        for (size_t q = 0; q < n; q++) {
            if (prepared[q] < int(s) && measured[q] > int(s) && !active[s][q]) {
                locations.push_back({LocationType::Idle, s, c->ops.size(), {q}, {}});
            }
        }
        for (const Action &a : schedule_.steps[s].actions) {
            auto push_gates = [&]() {
                for (const CliffordGate &g : a.gates) {
                    t.apply(g);
                    c->ops.push_back({false, g, {}, {}});
                }
            };
            auto measure = [&](const PauliString &m) {
                MeasurementResult r = t.measure(m, false);
                if (r.deterministic) {
                    throw std::logic_error("schedule contains a deterministic measurement at step " +
                                           std::to_string(s));
                }
                c->ops.push_back({true, {}, m, r.destabilizer});
                return r.destabilizer;
            };
            switch (a.kind) {
                case ActionKind::Prepare: {
                    size_t q = a.qubits[0];
                    t.h(q);
                    c->ops.push_back({false, CliffordGate::h(q), {}, {}});
                    push_gates();
                    locations.push_back({LocationType::Local, s, c->ops.size(), {q}, {}});
                    break;
                }
                case ActionKind::Rotate:
                    push_gates();
                    locations.push_back({LocationType::Local, s, c->ops.size(), {a.qubits[0]}, {}});
                    break;
                case ActionKind::Measure: {
                    size_t q = a.qubits[0];
                    locations.push_back({LocationType::Local, s, c->ops.size(), {q}, {}});
                    measure(PauliString::single(n, q, 'Z'));
                    if (absorbed_into[q] >= 0) {
                        auto &into = pp_touching[size_t(absorbed_into[q])];
                        into.insert(pp_touching[q].begin(), pp_touching[q].end());
                    }
                    break;
                }
                case ActionKind::Projection: {
                    size_t q1 = a.qubits[0], q2 = a.qubits[1];
                    PauliString zz(n);
                    zz.set_z(q1, true);
                    zz.set_z(q2, true);
                    PauliString wrong = measure(zz);
                    locations.push_back({LocationType::Projection, s, c->ops.size(), {q1, q2}, wrong});
                    push_gates();
                    std::set<size_t> corrected;
                    for (const CliffordGate &g : a.gates) {
                        corrected.insert(g.qubit0);
                        if (g.is_two_qubit()) corrected.insert(g.qubit1);
                    }
                    for (size_t q : corrected) {
                        locations.push_back({LocationType::Local, s, c->ops.size(), {q}, {}});
                    }
                    pp_touching[q1].insert(pp_id);
                    pp_touching[q2].insert(pp_id);
                    absorbed_into[q2] = long(q1);
                    pp_id++;
                    break;
                }
            }
        }
    }
    c->step_start.push_back(c->ops.size());

    // Undo the local Cliffords relating the final state to the target graph state.
    auto index = schedule_.index();
    auto eq = check_equivalence(t, schedule_.target, index);
    if (!eq) throw std::logic_error("schedule does not produce its target graph");
    for (size_t q = 0; q < n; q++) {
        for (const CliffordGate &g : inverse_gates_of(eq->cliffords[q], q)) c->ops.push_back({false, g, {}, {}});
    }

    // Targets: cluster-state qubits (face and edge vertices) of the final graph.
    std::map<VertexId, long> target_of;
    for (const VertexId &v : schedule_.target.vertices()) {
        if (v.kind == VertexKind::Face || v.kind == VertexKind::Edge) {
            target_of[v] = long(targets_.size());
            targets_.push_back(v);
            c->is_face.push_back(v.kind == VertexKind::Face);
            c->loss_exposure.push_back(uint32_t(pp_touching[index.at(v)].size()));
        }
    }
    for (const VertexId &v : schedule_.target.vertices()) {
        auto it = target_of.find(v);
        c->graph_qubit.push_back(index.at(v));
        c->graph_target.push_back(it == target_of.end() ? -1 : it->second);
        std::vector<size_t> nb;
        for (const VertexId &u : schedule_.target.neighbors(v)) {
            auto jt = target_of.find(u);
            if (jt != target_of.end()) nb.push_back(size_t(jt->second));
        }
        c->neighbour_targets.push_back(std::move(nb));
    }
    c->per_target.resize(targets_.size());

    // Classify every location.
    std::map<FlipKind, uint32_t> kind_index;
    std::vector<std::map<uint32_t, uint32_t>> counts(targets_.size());
    auto record = [&](size_t target, const FlipKind &k) {
        auto [it, inserted] = kind_index.emplace(k, uint32_t(c->kinds.size()));
        if (inserted) c->kinds.push_back(k);
        counts[target][it->second]++;
    };
    auto weight = [](const Pattern &p) {
        size_t w = 0;
        for (uint64_t x : p) w += size_t(std::popcount(x));
        return w;
    };
    auto hits = [](const Pattern &p, size_t t) { return (p[t >> 6] >> (t & 63)) & 1; };
    auto for_each_hit = [&](const std::vector<Pattern> &patterns, auto &&fn) {
        Pattern any(c->words(), 0);
        for (const Pattern &p : patterns) {
            for (size_t i = 0; i < any.size(); i++) any[i] |= p[i];
        }
        for (size_t i = 0; i < any.size(); i++) {
            for (uint64_t bits = any[i]; bits; bits &= bits - 1) fn(i * 64 + size_t(std::countr_zero(bits)));
        }
    };
    auto xor_into = [](Pattern &a, const Pattern &b) {
        for (size_t i = 0; i < a.size(); i++) a[i] ^= b[i];
    };

    for (const Location &loc : locations) {
        if (loc.type == LocationType::Projection) {
            size_t q1 = loc.qubits[0], q2 = loc.qubits[1];
            // Generators in pauli_index bit order: X_C1, X_C2, Z_C1, Z_C2.
            std::array<Pattern, 4> gen = {c->propagate(PauliString::single(n, q1, 'X'), loc.at),
                                          c->propagate(PauliString::single(n, q2, 'X'), loc.at),
                                          c->propagate(PauliString::single(n, q1, 'Z'), loc.at),
                                          c->propagate(PauliString::single(n, q2, 'Z'), loc.at)};
            Pattern wrong = c->propagate(loc.wrong, loc.at);
            std::vector<Pattern> terms(32, Pattern(c->words(), 0));
            for (size_t i = 0; i < 32; i++) {
                for (size_t b = 0; b < 4; b++) {
                    if ((i >> b) & 1) xor_into(terms[i], gen[b]);
                }
                if (i >= 16) xor_into(terms[i], wrong);
            }
            std::vector<size_t> w(32);
            for (size_t i = 0; i < 32; i++) w[i] = weight(terms[i]);
            for_each_hit(terms, [&](size_t target) {
                FlipKind k{LocationType::Projection};
                for (size_t i = 0; i < 32; i++) {
                    if (!hits(terms[i], target)) continue;
                    (w[i] == 1 ? k.single_mask : k.corr_mask) |= uint32_t(1) << i;
                }
                record(target, k);
            });
        } else {
            size_t q = loc.qubits[0];
            Pattern px = c->propagate(PauliString::single(n, q, 'X'), loc.at);
            Pattern pz = c->propagate(PauliString::single(n, q, 'Z'), loc.at);
            Pattern py = px;
            xor_into(py, pz);
            std::vector<Pattern> terms = {px, py, pz};
            std::array<size_t, 3> w = {weight(px), weight(py), weight(pz)};
            for_each_hit(terms, [&](size_t target) {
                FlipKind k{loc.type};
                if (loc.type == LocationType::Idle) k.step = loc.step;
                for (size_t i = 0; i < 3; i++) {
                    if (!hits(terms[i], target)) continue;
                    (w[i] == 1 ? k.single : k.corr)++;
                }
                record(target, k);
            });
        }
    }
    for (size_t tgt = 0; tgt < targets_.size(); tgt++) {
        c->per_target[tgt].assign(counts[tgt].begin(), counts[tgt].end());
    }
    compiled_ = std::move(c);
}

std::vector<bool> BudgetModel::hit_pattern(const PauliString &error, size_t step) const {
    if (step >= schedule_.num_steps()) throw std::out_of_range("step out of range");
    if (error.num_qubits() != schedule_.num_qubits) throw std::invalid_argument("error acts on the wrong register");
    Pattern p = compiled_->propagate(error, compiled_->step_start[step + 1]);
    std::vector<bool> out(targets_.size());
    for (size_t t = 0; t < out.size(); t++) out[t] = (p[t >> 6] >> (t & 63)) & 1;
    return out;
}

size_t BudgetModel::loss_exposure(size_t t) const { return compiled_->loss_exposure.at(t); }

namespace {

struct TargetRates {
    double p_z, p_zz, eps;
};

std::vector<TargetRates> target_rates(const BudgetModel &m, const std::vector<FlipKind> &kinds,
                                      const std::vector<std::vector<std::pair<uint32_t, uint32_t>>> &per_target,
                                      const BudgetInputs &in) {
    if (in.idle_rate.size() != m.schedule().num_steps()) {
        throw std::invalid_argument("idle_rate needs one entry per schedule step");
    }
    std::vector<std::pair<double, double>> q(kinds.size());
    for (size_t i = 0; i < kinds.size(); i++) {
        const FlipKind &k = kinds[i];
        switch (k.type) {
            case LocationType::Local:
                q[i] = {in.p_local / 3.0 * k.single, in.p_local / 3.0 * k.corr};
                break;
            case LocationType::Idle:
                q[i] = {in.idle_rate[k.step] / 3.0 * k.single, in.idle_rate[k.step] / 3.0 * k.corr};
                break;
            case LocationType::Projection: {
                double s = 0.0, c = 0.0;
                for (size_t j = 0; j < 32; j++) {
                    if ((k.single_mask >> j) & 1) s += in.pp.joint[j];
                    if ((k.corr_mask >> j) & 1) c += in.pp.joint[j];
                }
                q[i] = {s, c};
                break;
            }
        }
    }
    std::vector<TargetRates> out(per_target.size());
    for (size_t t = 0; t < per_target.size(); t++) {
        double ps = 1.0, pc = 1.0, pa = 1.0;
        for (const auto &[kind, count] : per_target[t]) {
            auto [s, c] = q[kind];
            ps *= std::pow(1.0 - 2.0 * s, count);
            pc *= std::pow(1.0 - 2.0 * c, count);
            pa *= std::pow(1.0 - 2.0 * (s + c), count);
        }
        out[t] = {0.5 * (1.0 - ps), 0.5 * (1.0 - pc), 0.5 * (1.0 - pa)};
    }
    return out;
}

}  // namespace

std::vector<double> BudgetModel::qubit_flip_probabilities(const BudgetInputs &inputs) const {
    std::vector<double> out;
    for (const TargetRates &r : target_rates(*this, compiled_->kinds, compiled_->per_target, inputs)) {
        out.push_back(r.eps);
    }
    return out;
}

ErrorBudget BudgetModel::evaluate(const BudgetInputs &inputs) const {
    if (!(inputs.pp_fail >= 0.0 && inputs.pp_fail <= 1.0)) throw std::invalid_argument("pp_fail must lie in [0, 1]");
    auto rates = target_rates(*this, compiled_->kinds, compiled_->per_target, inputs);
    ErrorBudget b;
    for (size_t t = 0; t < rates.size(); t++) {
        SublatticeBudget &s = compiled_->is_face[t] ? b.face : b.edge;
        double loss = 1.0 - std::pow(1.0 - inputs.pp_fail, double(compiled_->loss_exposure[t]));
        s.p_z = std::max(s.p_z, rates[t].p_z);
        s.p_zz = std::max(s.p_zz, rates[t].p_zz);
        s.eps = std::max(s.eps, rates[t].eps);
        s.p_loss = std::max(s.p_loss, loss);
    }
    b.p_z = std::max(b.face.p_z, b.edge.p_z);
    b.p_zz = std::max(b.face.p_zz, b.edge.p_zz);
    b.p_loss = std::max(b.face.p_loss, b.edge.p_loss);
    b.eps = std::max(b.face.eps, b.edge.eps);
    b.steps = schedule_.num_steps();
    return b;
}

std::vector<double> step_durations(const BudgetModel &model, double pp_duration) {
    std::vector<double> d(model.schedule().num_steps(), 1.0);
    for (size_t s = 0; s < d.size(); s++) {
        if (model.is_projection_step(s)) d[s] = pp_duration;
    }
    return d;
}

const BudgetModel &default_budget_model() {
    static const BudgetModel model(build_tpcs(2, 2, 2));
    return model;
}

PPModel pp_model(const ProtocolParams &params, int max_h) {
    PPModel m{effective_pp_noise(params), {}};
    PPKernel kernel = PPKernel::from_circuit(m.effective.circuit, m.effective.intermediate);
    m.joint = joint_pp_walk(kernel, params.M, std::max(max_h, params.H));
    return m;
}

ErrorBudget schedule_error_budget(const BudgetModel &model, const ProtocolParams &params, const PPModel &pp) {
    params.validate();
    const JointPPWalk::AtH &walk = pp.joint.at(params.H);
    const PPCost &cost = pp.effective.cost;
    double pp_duration = walk.expected_pp_count * cost.expected_elementary_steps * params.sync_factor;
    BudgetInputs in;
    in.pp = walk.outcome;
    in.pp_fail = walk.fail_prob;
    in.p_local = params.p_local;
    for (double d : step_durations(model, pp_duration)) in.idle_rate.push_back(memory_rate(d, params.p_mem));
    ErrorBudget b = model.evaluate(in);
    b.expected_eo_attempts = walk.expected_pp_count * cost.expected_eo_attempts;
    b.expected_pp_count = walk.expected_pp_count;
    b.pp_duration = pp_duration;
    return b;
}

ErrorBudget schedule_error_budget(const BudgetModel &model, const ProtocolParams &params) {
    return schedule_error_budget(model, params, pp_model(params, params.H));
}

ErrorBudget schedule_error_budget(const ConstructionSchedule &schedule, const ProtocolParams &params) {
    return schedule_error_budget(BudgetModel(schedule), params);
}

}  // namespace dqc3

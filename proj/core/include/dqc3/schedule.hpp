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

#ifndef DQC3_SCHEDULE_HPP
#define DQC3_SCHEDULE_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dqc3/graph.hpp"
#include "dqc3/pauli.hpp"
#include "dqc3/tableau.hpp"

namespace dqc3 {

/// A single-qubit Clifford modulo Paulis: one of the six H/S words below, applied left to
/// right.
enum class LocalClifford : uint8_t { I, H, S, HS, SH, HSH };

inline constexpr std::array<LocalClifford, 6> ALL_LOCAL_CLIFFORDS = {
    LocalClifford::I, LocalClifford::H, LocalClifford::S, LocalClifford::HS, LocalClifford::SH, LocalClifford::HSH};

std::string to_string(LocalClifford c);
/// The gate word of `c` on qubit q, in application order.
std::vector<CliffordGate> gates_of(LocalClifford c, size_t q);
/// A gate word undoing `c` up to a Pauli.
std::vector<CliffordGate> inverse_gates_of(LocalClifford c, size_t q);
/// Image of the single-qubit Pauli ('X', 'Y' or 'Z') under conjugation by `c`.
char image_of(LocalClifford c, char pauli);

/// A stabilizer state written as (prod_v C_v) (prod_v Z_v^{s_v}) |G>.
struct LocalEquivalence {
    std::vector<LocalClifford> cliffords;  // per qubit
    std::vector<bool> z_byproduct;         // per qubit
};

/// Searches for single-qubit Cliffords that map the graph state of `g` (vertex v on qubit
/// index.at(v)) onto the tableau state, checking only the stabilizers of the vertices in
/// `check` (all vertices when empty). `domains`, if given, restricts the candidates per
/// qubit; qubits outside the graph are fixed to the identity. Byproducts are left unset.
std::optional<std::vector<LocalClifford>> find_local_cliffords(
    const Tableau &t, const GraphSpec &g, const std::map<VertexId, size_t> &index,
    const std::vector<std::vector<LocalClifford>> *domains = nullptr, const std::vector<VertexId> &check = {});

/// Full equivalence check: the tableau state equals the graph state of `g` up to local
/// Cliffords and Z byproducts, and every qubit outside the graph is in a Z eigenstate.
std::optional<LocalEquivalence> check_equivalence(const Tableau &t, const GraphSpec &g,
                                                  const std::map<VertexId, size_t> &index);

struct PPOutcome {
    /// false for even parity (+1 eigenvalue of Z Z).
    bool parity = false;
    /// True when the parity was already fixed by the state, which is then unchanged.
    bool deterministic = false;
};

/// Projects qubits q1, q2 onto an eigenspace of Z_q1 Z_q2. A random parity takes the value
/// `parity_if_random`.
PPOutcome apply_parity_projection(Tableau &t, size_t q1, size_t q2, bool parity_if_random = false);

enum class ActionKind { Prepare, Projection, Measure, Rotate };

struct Action {
    ActionKind kind;
    /// Prepare / Measure / Rotate: one qubit. Projection: {inheritor, partner}.
    std::vector<size_t> qubits;
    /// Rotate: the rotation. Projection: the local correction applied right after the
    /// projection (part of the same action).
    std::vector<CliffordGate> gates;

    std::string str() const;
};

struct ScheduleStep {
    std::vector<Action> actions;
};

/// Footprint of a (partial) cluster-state build: cells_x * cells_y cells, layers
/// z_begin..z_end in doubled coordinates.
struct LatticeExtent {
    int cells_x = 0;
    int cells_y = 0;
    int z_begin = 0;
    int z_end = 0;
};

/// A time-ordered construction. Qubit q carries vertex label labels[q]; `target` is the
/// graph the schedule produces (up to Z byproducts), on the labels of the qubits that are
/// still alive at the end.
struct ConstructionSchedule {
    size_t num_qubits = 0;
    std::vector<VertexId> labels;
    std::vector<ScheduleStep> steps;
    GraphSpec target;
    std::optional<LatticeExtent> extent;

    size_t num_steps() const { return steps.size(); }
    std::map<VertexId, size_t> index() const;
    /// Throws std::invalid_argument unless every step acts on disjoint qubits, qubits are
    /// prepared once before use and never touched after being measured.
    void validate() const;
    /// Step at which each qubit is prepared.
    std::vector<int> prepared_at() const;
    /// Step at which each qubit is measured, or num_steps() if never.
    std::vector<int> measured_at() const;
    /// Whether qubit q takes part in an action during `step`.
    std::vector<std::vector<bool>> activity() const;
    /// Number of projections, over all steps.
    size_t num_projections() const;

    /// Plain-text listing: qubit labels, then one line per step.
    std::string export_text() const;
};

/// Per-measurement record of an execution, in schedule order.
struct ExecutedMeasurement {
    size_t step;
    size_t action;
    PauliString measured;
    MeasurementResult result;
};

struct ExecutionResult {
    Tableau tableau;
    std::vector<ExecutedMeasurement> measurements;
};

/// Runs the schedule on a fresh tableau. Random outcomes are drawn from `rng` when given,
/// otherwise forced to even parity / +1.
ExecutionResult execute(const ConstructionSchedule &s, std::mt19937_64 *rng = nullptr);

/// The five-qubit cross: preparation, two steps of two parallel projections, one step of
/// local rotations.
ConstructionSchedule build_cross();

/// Layer z (doubled coordinate) of a cluster state with a cells_x * cells_y footprint:
/// stars built as in build_cross, joined by one step of parallel projections that leaves a
/// dangling auxiliary qubit on every link.
ConstructionSchedule build_sheet(int cells_x, int cells_y, int z);

/// An lx * ly grid of crosses joined into a 2D lattice sheet (lx, ly >= 2).
ConstructionSchedule build_lattice_sheet(int lx, int ly);

/// Runs the sheets side by side and fuses each consecutive pair through their dangling
/// qubits: one projection step, then one step measuring the used dangling qubits in Z. All
/// pairs fuse in the same two steps.
ConstructionSchedule fuse_sheets(const std::vector<ConstructionSchedule> &sheets);

/// The full cluster state on cells_x * cells_y * cells_z cells: 2*cells_z + 1 sheets built
/// in parallel and fused.
ConstructionSchedule build_tpcs(int cells_x, int cells_y, int cells_z);

/// The target graph of layers z_begin..z_end with one dangling auxiliary qubit on each link
/// of the top layer.
GraphSpec tpcs_with_dangling(int cells_x, int cells_y, int z_begin, int z_end);

}  // namespace dqc3

#endif  // DQC3_SCHEDULE_HPP

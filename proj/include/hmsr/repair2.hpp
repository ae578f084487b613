/**************************************************************************
 * repair2.hpp
 *
 * Copyright 2026 The hmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

/*
 * Optimal single-node repair for the (k+2, k) code. Every plan downloads
 * N/2 symbols from each of the k+1 survivors.
 *
 * Systematic i: both parities and every other systematic node are asked for
 * V_i = {prod_{s != i} X_s^{x_s} w}.
 *
 * Parity 1: with y_1 = sum_i f_i, systematic node 1 stores y_1 - sum_{s>1} f_s
 * and is asked for X_1 V_a; parity 2 is asked for V_a, where
 * V_a = {prod_{s=2}^{k+1} (X_1 X_s)^{x_s} w}.
 *
 * Parity 2: substituting f_i = A'_i z_i with A'_i = 2 A_i^{-1}
 * = I - a_i^{-1} b_i X_i X_{k+1} + a_i^{-1} X_i turns parity 2 into 2 sum z_i,
 * and the parity-1 scheme applies with V_b = {X_{k+1}^{x_{k+1}}
 * prod_{s=2}^{k} (X_1 X_s)^{x_s} w}. Systematic nodes still send combinations
 * of their own f_s; the A'_s scaling is folded into their download specs.
 */

#pragma once

#include "hmsr/code2.hpp"
#include "hmsr/repair.hpp"

namespace hmsr {

/// V_i realized as an N x N/2 matrix (columns in lattice order; first is w).
Matrix systematic_repair_matrix(unsigned i, const CodeDescriptor2& code);

/// Lattice points of V_i, V_a and V_b over the k+1 axes.
LatticeSet systematic_repair_points(unsigned i, unsigned k);
LatticeSet parity1_repair_points(unsigned k);
LatticeSet parity2_repair_points(unsigned k);

/// diag(A'_i). Throws ErrorKind::invalid_descriptor when a_i = 0 or when
/// A_i * A'_i != 2 (constants off the a^2 - b^2 = -1 curve).
Vector transformed_coding_diag(unsigned i, const CodeDescriptor2& code);

RepairPlan plan_repair(const CodeDescriptor2& code, NodeId failed);

RepairTranscript repair_systematic(unsigned i, const std::vector<NodeContents>& survivors,
                                   const CodeDescriptor2& code);
RepairTranscript repair_parity1(const std::vector<NodeContents>& survivors, const CodeDescriptor2& code);
RepairTranscript repair_parity2(const std::vector<NodeContents>& survivors, const CodeDescriptor2& code);

/// Dispatches on the failed node.
RepairTranscript repair(NodeId failed, const std::vector<NodeContents>& survivors, const CodeDescriptor2& code);

}  // namespace hmsr

// Copyright 2026 The microtrap-qdc Authors
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

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdc/physics.hpp"

namespace qdc {

using Complex = std::complex<double>;
using Unitary = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-10;

/// Normalized pure state over n qubits. Amplitude index bit (n-1-q) holds
/// qubit q, so ion 1 is the most significant bit and the basis label "abc"
/// reads ion 1, ion 2, ion 3 from left to right.
class PureState {
public:
    /// Throws if the vector length is not a power of two or the norm is off
    /// by more than kNormTolerance.
    explicit PureState(Eigen::VectorXcd amplitudes);

    static PureState basis(int index, int n_qubits = kNumIons);
    static PureState basis(const std::string& label);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_(i); }
    std::vector<double> probabilities() const;

private:
    Eigen::VectorXcd amplitudes_;
    int n_qubits_ = 0;
};

/// Microwave rotation exactly as the textbook matrix is
/// written: cos(theta/2) on the diagonal, -i e^{-i phi} sin(theta/2) in the
/// upper-right corner, -i e^{+i phi} sin(theta/2) in the lower-left. The
/// rows and columns are ordered (|1>, |0>), upper hyperfine level first.
Unitary u_single(double theta, double phi);

/// The same rotation expressed in computational order (|0>, |1>), which is
/// the form applied to amplitude vectors. Equals u_single(theta, -phi).
Unitary pulse_rotation(double theta, double phi);

/// Applies a 2x2 computational-basis matrix to 1-based `ion`.
PureState apply_single(const PureState& state, int ion, const Unitary& u);

/// Lifts a 2x2 computational-basis matrix on 1-based `ion` to the full register.
Unitary embed_single(const Unitary& u, int ion, int n_qubits = kNumIons);

/// Diagonal of exp(-i H t) for the spin Hamiltonian; single-ion terms are
/// included only when `freqs` is non-null.
Eigen::VectorXcd free_phase_diagonal(const QubitFrequencies* freqs, const CouplingData& J, double t);
Unitary free_phase(const QubitFrequencies* freqs, const CouplingData& J, double t);

/// Reference state Phi_abc: (|0 b c> + (-1)^a |1 !b !c>) / sqrt 2.
PureState phi_state(int a, int b, int c);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Phase that best aligns v to u, taken from the largest-magnitude entry of v.
Complex relative_phase(const Unitary& u, const Unitary& v);
/// max |u - lambda v| after aligning the global phase.
double phase_insensitive_distance(const Unitary& u, const Unitary& v);
bool equal_up_to_global_phase(const Unitary& u, const Unitary& v, double tol);

struct MeasurementRecord {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::uint64_t> counts;  // label -> count, only nonzero labels
};

/// Ideal projective measurement of every qubit. Sampling uses
/// std::mt19937_64 seeded with `seed`; each draw takes the top 53 bits of
/// one output as a double in [0, 1) and inverts the cumulative distribution
/// over basis order, so histograms are identical on every platform.
MeasurementRecord measure_all(const PureState& state, std::uint64_t shots, std::uint64_t seed);

}  // namespace qdc

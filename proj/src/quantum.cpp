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

#include "qdc/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace qdc {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_ion(int ion, int n_qubits) {
    if (ion < 1 || ion > n_qubits) {
        throw Error("ion index " + std::to_string(ion) + " out of range 1.." +
                    std::to_string(n_qubits));
    }
}

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    const auto n = static_cast<std::uint64_t>(amplitudes_.size());
    if (n < 2 || !std::has_single_bit(n)) {
        throw Error("state dimension " + std::to_string(n) + " is not a power of two");
    }
    n_qubits_ = std::countr_zero(n);
    const double norm = amplitudes_.squaredNorm();
    if (!(std::fabs(norm - 1.0) <= kNormTolerance)) {
        throw Error("state is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
}

PureState PureState::basis(int index, int n_qubits) {
    const int dim = 1 << n_qubits;
    if (index < 0 || index >= dim) throw Error("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::basis(const std::string& label) {
    int index = 0;
    for (char ch : label) {
        if (ch != '0' && ch != '1') throw Error("bad basis label '" + label + "'");
        index = (index << 1) | (ch == '1');
    }
    return basis(index, static_cast<int>(label.size()));
}

std::vector<double> PureState::probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(dim()));
    for (Eigen::Index i = 0; i < dim(); ++i) p[static_cast<std::size_t>(i)] = std::norm(amplitudes_(i));
    return p;
}

Unitary u_single(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Unitary u(2, 2);
    u << c, -kI * std::exp(-kI * phi) * s,
         -kI * std::exp(kI * phi) * s, c;
    return u;
}

Unitary pulse_rotation(double theta, double phi) { return u_single(theta, -phi); }

PureState apply_single(const PureState& state, int ion, const Unitary& u) {
    check_ion(ion, state.n_qubits());
    if (u.rows() != 2 || u.cols() != 2) throw Error("single-ion operator must be 2x2");
    const Eigen::Index stride = Eigen::Index{1} << (state.n_qubits() - ion);
    Eigen::VectorXcd out = state.amplitudes();
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        if (i & stride) continue;
        const Complex a0 = out(i);
        const Complex a1 = out(i | stride);
        out(i) = u(0, 0) * a0 + u(0, 1) * a1;
        out(i | stride) = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return PureState(std::move(out));
}

Unitary embed_single(const Unitary& u, int ion, int n_qubits) {
    check_ion(ion, n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const Eigen::Index stride = Eigen::Index{1} << (n_qubits - ion);
    Unitary full = Unitary::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const int bi = (i & stride) ? 1 : 0;
        for (int bj = 0; bj < 2; ++bj) {
            const Eigen::Index j = bj ? (i | stride) : (i & ~stride);
            full(i, j) = u(bi, bj);
        }
    }
    return full;
}

Eigen::VectorXcd free_phase_diagonal(const QubitFrequencies* freqs, const CouplingData& J, double t) {
    if (!(t >= 0.0)) throw Error("free evolution time must be non-negative");
    const auto energies = spin_eigenenergies(freqs, J);
    Eigen::VectorXcd d(8);
    for (int x = 0; x < 8; ++x) d(x) = std::exp(-kI * (energies[static_cast<std::size_t>(x)].energy * t));
    return d;
}

Unitary free_phase(const QubitFrequencies* freqs, const CouplingData& J, double t) {
    return free_phase_diagonal(freqs, J, t).asDiagonal();
}

PureState phi_state(int a, int b, int c) {
    for (int bit : {a, b, c}) {
        if (bit != 0 && bit != 1) throw Error("phi_state bits must be 0 or 1");
    }
    const int low = (b << 1) | c;         // |0 b c>
    const int high = 4 | ((b ^ 1) << 1) | (c ^ 1);  // |1 !b !c>
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v(low) = kInvSqrt2;
    v(high) = a ? -kInvSqrt2 : kInvSqrt2;
    return PureState(std::move(v));
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw Error("fidelity: dimension mismatch");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

Complex relative_phase(const Unitary& u, const Unitary& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) throw Error("unitary dimension mismatch");
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    const Complex ratio = u(r, c) / v(r, c);
    const double mag = std::abs(ratio);
    return mag > 0.0 ? ratio / mag : Complex{1.0, 0.0};
}

double phase_insensitive_distance(const Unitary& u, const Unitary& v) {
    const Complex lambda = relative_phase(u, v);
    return (u - lambda * v).cwiseAbs().maxCoeff();
}

bool equal_up_to_global_phase(const Unitary& u, const Unitary& v, double tol) {
    return phase_insensitive_distance(u, v) <= tol;
}

MeasurementRecord measure_all(const PureState& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw Error("shots must be at least 1");
    const auto probs = state.probabilities();
    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) cumulative[i] = (acc += probs[i]);

    std::mt19937_64 gen(seed);
    std::vector<std::uint64_t> hist(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * acc;
        std::size_t k = 0;
        while (k + 1 < cumulative.size() && !(u < cumulative[k])) ++k;
        // Skip zero-probability labels that a rounding tie could land on.
        while (probs[k] == 0.0 && k > 0) --k;
        ++hist[k];
    }

    MeasurementRecord rec;
    rec.shots = shots;
    rec.seed = seed;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] > 0) rec.counts[basis_label(static_cast<int>(i), state.n_qubits())] = hist[i];
    }
    return rec;
}

}  // namespace qdc

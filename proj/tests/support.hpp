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

// Independent oracles shared by the test binaries. Nothing here calls into
// the library's linear algebra: matrices are spelled out entry by entry and
// exponentials are summed as power series.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qdc/physics.hpp"
#include "qdc/quantum.hpp"

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M pauli(char p) {
    M m(2, 2);
    if (p == 'I') m << 1, 0, 0, 1;
    if (p == 'X') m << 0, 1, 1, 0;
    if (p == 'Y') m << 0, C(0, -1), C(0, 1), 0;
    if (p == 'Z') m << 1, 0, 0, -1;
    return m;
}

inline M kron(const M& a, const M& b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Pauli string on three ions, ion 1 leftmost ("ZIZ").
inline M pauli3(const char* s) { return kron(kron(pauli(s[0]), pauli(s[1])), pauli(s[2])); }

/// CNOT written out as a permutation table, control on |1>.
inline M cnot(int control, int target) {
    M u = M::Zero(8, 8);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                int bits[3] = {a, b, c};
                const int in = 4 * a + 2 * b + c;
                if (bits[control - 1] == 1) bits[target - 1] ^= 1;
                u(4 * bits[0] + 2 * bits[1] + bits[2], in) = 1.0;
            }
    return u;
}

/// exp(A) by a scaled Taylor series and repeated squaring.
inline M expm_taylor(const M& a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    const M scaled = a / std::pow(2.0, squarings);
    M term = M::Identity(a.rows(), a.cols());
    M sum = term;
    for (int k = 1; k < 40; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Spin Hamiltonian built from Pauli products (s_z|1> = +|1>, which is -Z).
inline M spin_hamiltonian(const std::array<double, 3>& w, double J12, double J23, double J13) {
    const M z1 = -pauli3("ZII"), z2 = -pauli3("IZI"), z3 = -pauli3("IIZ");
    return 0.5 * (w[0] * z1 + w[1] * z2 + w[2] * z3) - 0.5 * J13 * z1 * z3 - 0.5 * J12 * z1 * z2 -
           0.5 * J23 * z2 * z3;
}

/// max |u - lambda v| with lambda fixed by the largest entry of v.
inline double phase_distance(const M& u, const M& v) {
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    const C lambda = u(r, c) / v(r, c);
    return (u - (lambda / std::abs(lambda)) * v).cwiseAbs().maxCoeff();
}

/// Inverse of a 3x3 matrix through cofactors.
inline Eigen::Matrix3d cofactor_inverse(const Eigen::Matrix3d& a) {
    Eigen::Matrix3d cof;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            cof(i, j) = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
        }
    const double det = a(0, 0) * cof(0, 0) + a(0, 1) * cof(0, 1) + a(0, 2) * cof(0, 2);
    return cof.transpose() / det;
}

/// Coulomb stiffness matrix assembled from scratch (ions at 0, l, 2l).
inline Eigen::Matrix3d stiffness(const qdc::TrapConfig& t, const qdc::PhysConstants& pc = {}) {
    const double k = pc.elem_charge * pc.elem_charge / (4.0 * std::numbers::pi * pc.vacuum_permittivity);
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
        a(i, i) = t.ion_mass * t.trap_freqs[i] * t.trap_freqs[i];
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const double d = std::abs(i - j) * t.spacing_l;
            const double kij = 2.0 * k / (d * d * d);
            a(i, i) += kij;
            a(i, j) = -kij;
        }
    }
    return a;
}

/// J_ij = hbar/2 (dw/dz)^2 (A^-1)_ij, the closed form of the mode sum.
inline std::array<double, 3> couplings_by_inverse(const qdc::TrapConfig& t, const qdc::PhysConstants& pc = {}) {
    const Eigen::Matrix3d inv = cofactor_inverse(stiffness(t, pc));
    const double dw = t.g_factor * pc.mu_B * t.dBdz / pc.hbar;
    const double s = 0.5 * pc.hbar * dw * dw;
    return {s * inv(0, 1), s * inv(1, 2), s * inv(0, 2)};  // J12, J23, J13
}

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, int dim = 8) {
    std::normal_distribution<double> n;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = C(n(rng), n(rng));
    return v / v.norm();
}

}  // namespace oracle

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

// Trap physics for three ions held in individual microtraps inside a
// linear magnetic-field gradient: normal modes, gradient-induced Ising
// couplings, effective Lamb-Dicke parameters and the conditional
// spectrum of the spin Hamiltonian
//
//   H = sum_i 1/2 w_i s_z,i - 1/2 J13 s_z,1 s_z,3 - 1/2 J12 s_z,1 s_z,2 - 1/2 J23 s_z,2 s_z,3
//
// with s_z|1> = +|1>. All frequencies are angular (rad/s).

#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdc/units.hpp"

namespace qdc {

inline constexpr int kNumIons = 3;

struct PhysConstants {
    double hbar = 1.054571817e-34;               // J s
    double mu_B = 9.2740100783e-24;              // J/T
    double elem_charge = 1.602176634e-19;        // C
    double vacuum_permittivity = 8.8541878128e-12;  // F/m

    void validate() const;
};

inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

struct TrapConfig {
    double ion_mass = 170.936323 * kAtomicMassUnit;  // kg
    double g_factor = 1.0;
    std::array<double, kNumIons> trap_freqs{};  // rad/s, one per microtrap
    double spacing_l = 0.0;                     // m, neighbouring trap separation
    double B0 = 0.0;                            // T, field at ion 1
    double dBdz = 0.0;                          // T/m
    double qubit_base_freq = 0.0;               // rad/s, hyperfine splitting at B = 0
    double eta_bare = 0.0;                      // microwave Lamb-Dicke parameter

    /// Throws qdc::Error naming the first offending field.
    void validate() const;
    /// Equilibrium position of ion `index` (0-based); ion 1 sits at z = 0.
    double position(int index) const { return index * spacing_l; }
};

/// The three-microtrap Yb+ configuration used throughout the examples:
/// 0.5 / 5 / 0.5 MHz traps, 5 um spacing, 200 T/m, eta = 0.7e-6.
TrapConfig reference_trap_config();

struct ModeData {
    std::array<double, kNumIons> mode_freqs{};  // rad/s, ascending
    Eigen::Matrix3d mode_matrix;                // column p = eigenvector of mode p
};

struct QubitFrequencies {
    std::array<double, kNumIons> omega{};
    double domega_dz = 0.0;  // rad/(s m)
};

struct CouplingData {
    double J12 = 0.0;
    double J23 = 0.0;
    double J13 = 0.0;

    /// Coupling between 1-based ions i != j.
    double between(int i, int j) const;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // e.g. ">=", "<"
};

struct AddressingReport {
    Eigen::Matrix3d epsilon = Eigen::Matrix3d::Zero();
    double epsilon_max = 0.0;
    Eigen::Matrix3d eta_prime = Eigen::Matrix3d::Zero();
    std::array<double, kNumIons> carrier_spread{};
    double neighbor_splitting = 0.0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

struct FeasibilityMargins {
    double kappa_addressing = 10.0;
    double kappa_crosstalk = 10.0;
};

/// Maximum tolerated gradient-induced Lamb-Dicke parameter.
inline constexpr double kEpsilonLimit = 0.05;

// Gradient of the qubit frequency, g mu_B dB/dz / hbar.
double frequency_gradient(const TrapConfig& cfg, const PhysConstants& pc = {});

QubitFrequencies qubit_frequencies(const TrapConfig& cfg, const PhysConstants& pc = {});

/// Coulomb-coupled stiffness matrix of the three microtraps (kg/s^2).
Eigen::Matrix3d stiffness_matrix(const TrapConfig& cfg, const PhysConstants& pc = {});

/// Solves the normal-mode eigenproblem. Each eigenvector has its
/// largest-magnitude component positive; mirror-symmetric traps
/// (trap 1 == trap 3) give exactly mirror-symmetric eigenvectors.
ModeData normal_modes(const TrapConfig& cfg, const PhysConstants& pc = {});

/// J_ij = sum_p hbar / (2 m nu_p^2) D_ip D_jp (dw/dz)^2.
CouplingData couplings(const TrapConfig& cfg, const ModeData& modes, const PhysConstants& pc = {});

/// Fills epsilon, epsilon_max and eta_prime; other fields stay empty.
AddressingReport lamb_dicke(const TrapConfig& cfg, const ModeData& modes,
                            const PhysConstants& pc = {});

/// Spin configuration label, ion 1 first ("010" means ion 2 in |1>).
std::string basis_label(int index, int n_qubits = kNumIons);

struct EnergyLevel {
    std::string label;
    double energy = 0.0;  // rad/s
};

/// Eigenenergies of the diagonal spin Hamiltonian in basis order |000>..|111>.
/// Pass nullptr for `freqs` to drop the single-ion terms (interaction picture).
std::array<EnergyLevel, 8> spin_eigenenergies(const QubitFrequencies* freqs, const CouplingData& J);
std::array<EnergyLevel, 8> spin_eigenenergies(const QubitFrequencies& freqs, const CouplingData& J);

struct CarrierEntry {
    int ion = 0;                // 1-based
    std::string spectators;     // states of the other two ions, in ion order
    double frequency = 0.0;     // rad/s
};

/// Conditional carrier frequencies: 4 entries per ion, spectator order 11, 10, 01, 00.
std::array<CarrierEntry, 12> carrier_table(const QubitFrequencies& freqs, const CouplingData& J);

/// Max minus min conditional carrier frequency for each ion.
std::array<double, kNumIons> carrier_spread(const CouplingData& J);

/// Neighbouring-ion resonance separation g mu_B dB/dz l / hbar.
double neighbor_splitting(const TrapConfig& cfg, const PhysConstants& pc = {});

/// Addressing checks for a microwave of Rabi frequency `rabi`:
/// rabi >= kappa_a * spread_i for every ion, rabi <= splitting / kappa_c,
/// and epsilon_max < 0.05. Failures are report entries, never errors.
AddressingReport feasibility(const TrapConfig& cfg, const CouplingData& J, double rabi,
                             const FeasibilityMargins& margins = {},
                             const PhysConstants& pc = {});

/// Couplings J12 = J23 = 7 pi / (2 t0) for a target free-evolution time t0
/// of the refocused ZZ block, with J13 = j13_ratio * J.
CouplingData couplings_for_zz_time(double t0, double j13_ratio);

}  // namespace qdc

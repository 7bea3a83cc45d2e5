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

#include "qdc/physics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdc {
namespace {

// +1 for |1>, -1 for |0>; ion is 0-based, ion 0 is the most significant bit.
int spin(int basis_index, int ion) { return ((basis_index >> (kNumIons - 1 - ion)) & 1) ? 1 : -1; }

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw Error(std::string("invalid ") + field + ": " + what);
}

// Flips each column so its largest-magnitude component is positive. Ties
// (|a| == |b| up to rounding) resolve to the lowest index.
void fix_signs(Eigen::Matrix3d& v) {
    for (int p = 0; p < 3; ++p) {
        const double peak = v.col(p).cwiseAbs().maxCoeff();
        for (int i = 0; i < 3; ++i) {
            if (std::fabs(v(i, p)) >= peak * (1.0 - 1e-12)) {
                if (v(i, p) < 0) v.col(p) *= -1.0;
                break;
            }
        }
    }
}

// Enforces D_1p = +-D_3p exactly for mirror-symmetric traps.
void mirror_symmetrize(Eigen::Matrix3d& v) {
    for (int p = 0; p < 3; ++p) {
        const double outer = 0.5 * (std::fabs(v(0, p)) + std::fabs(v(2, p)));
        if (v(0, p) * v(2, p) >= 0.0) {
            const double s = v(0, p) + v(2, p) >= 0.0 ? 1.0 : -1.0;
            v(0, p) = s * outer;
            v(2, p) = s * outer;
        } else {
            v(0, p) = std::copysign(outer, v(0, p));
            v(2, p) = -v(0, p);
            v(1, p) = 0.0;
        }
        v.col(p).normalize();
    }
}

}  // namespace

void PhysConstants::validate() const {
    require(hbar > 0, "hbar", "must be positive");
    require(mu_B > 0, "mu_B", "must be positive");
    require(elem_charge > 0, "elem_charge", "must be positive");
    require(vacuum_permittivity > 0, "vacuum_permittivity", "must be positive");
}

void TrapConfig::validate() const {
    require(std::isfinite(ion_mass) && ion_mass > 0, "ion_mass", "must be positive");
    require(std::isfinite(g_factor), "g_factor", "must be finite");
    for (double f : trap_freqs) {
        require(std::isfinite(f) && f > 0, "trap_freqs", "every trap frequency must be positive");
    }
    require(spacing_l > 0, "spacing_l", "must be positive");
    require(std::isfinite(B0), "B0", "must be finite");
    require(std::isfinite(dBdz) && dBdz >= 0, "dBdz", "must be non-negative");
    require(std::isfinite(qubit_base_freq), "qubit_base_freq", "must be finite");
    require(std::isfinite(eta_bare) && eta_bare >= 0, "eta_bare", "must be non-negative");
}

TrapConfig reference_trap_config() {
    TrapConfig cfg;
    cfg.trap_freqs = {hz_to_rad(0.5e6), hz_to_rad(5e6), hz_to_rad(0.5e6)};
    cfg.spacing_l = 5e-6;
    cfg.B0 = 0.01;
    cfg.dBdz = 200.0;
    cfg.qubit_base_freq = hz_to_rad(12.642812118e9);
    cfg.eta_bare = 0.7e-6;
    return cfg;
}

double CouplingData::between(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == 1 && j == 2) return J12;
    if (i == 2 && j == 3) return J23;
    if (i == 1 && j == 3) return J13;
    throw Error("no coupling between ions " + std::to_string(i) + " and " + std::to_string(j));
}

bool AddressingReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double frequency_gradient(const TrapConfig& cfg, const PhysConstants& pc) {
    return cfg.g_factor * pc.mu_B * cfg.dBdz / pc.hbar;
}

QubitFrequencies qubit_frequencies(const TrapConfig& cfg, const PhysConstants& pc) {
    QubitFrequencies f;
    f.domega_dz = frequency_gradient(cfg, pc);
    for (int i = 0; i < kNumIons; ++i) {
        const double b = cfg.B0 + cfg.dBdz * cfg.position(i);
        f.omega[i] = cfg.qubit_base_freq + cfg.g_factor * pc.mu_B * b / pc.hbar;
    }
    return f;
}

Eigen::Matrix3d stiffness_matrix(const TrapConfig& cfg, const PhysConstants& pc) {
    const double coulomb = pc.elem_charge * pc.elem_charge / (4.0 * kPi * pc.vacuum_permittivity);
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    for (int i = 0; i < kNumIons; ++i) {
        a(i, i) = cfg.ion_mass * cfg.trap_freqs[i] * cfg.trap_freqs[i];
        for (int j = 0; j < kNumIons; ++j) {
            if (i == j) continue;
            const double d = std::abs(i - j) * cfg.spacing_l;
            const double k = 2.0 * coulomb / (d * d * d);
            a(i, i) += k;
            a(i, j) = -k;
        }
    }
    return a;
}

ModeData normal_modes(const TrapConfig& cfg, const PhysConstants& pc) {
    cfg.validate();
    pc.validate();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(stiffness_matrix(cfg, pc));
    if (solver.info() != Eigen::Success) throw Error("normal-mode eigensolver failed");

    ModeData out;
    const Eigen::Vector3d& lambda = solver.eigenvalues();
    for (int p = 0; p < kNumIons; ++p) {
        if (!(lambda(p) > 0.0)) throw Error("unstable trap configuration");
        out.mode_freqs[p] = std::sqrt(lambda(p) / cfg.ion_mass);
    }
    out.mode_matrix = solver.eigenvectors();
    if (cfg.trap_freqs[0] == cfg.trap_freqs[2]) mirror_symmetrize(out.mode_matrix);
    fix_signs(out.mode_matrix);
    return out;
}

CouplingData couplings(const TrapConfig& cfg, const ModeData& modes, const PhysConstants& pc) {
    const double grad = frequency_gradient(cfg, pc);
    const auto coupling = [&](int i, int j) {
        double sum = 0.0;
        for (int p = 0; p < kNumIons; ++p) {
            const double nu = modes.mode_freqs[p];
            sum += pc.hbar / (2.0 * cfg.ion_mass * nu * nu) * modes.mode_matrix(i, p) *
                   modes.mode_matrix(j, p);
        }
        return sum * grad * grad;
    };
    CouplingData J;
    J.J12 = coupling(0, 1);
    J.J23 = coupling(2, 1);
    J.J13 = coupling(0, 2);
    return J;
}

AddressingReport lamb_dicke(const TrapConfig& cfg, const ModeData& modes, const PhysConstants& pc) {
    const double grad = frequency_gradient(cfg, pc);
    AddressingReport r;
    for (int i = 0; i < kNumIons; ++i) {
        for (int p = 0; p < kNumIons; ++p) {
            const double nu = modes.mode_freqs[p];
            const double eps =
                modes.mode_matrix(i, p) * std::sqrt(pc.hbar / (2.0 * cfg.ion_mass * nu)) * grad / nu;
            r.epsilon(i, p) = eps;
            r.eta_prime(i, p) = std::hypot(cfg.eta_bare, eps);
        }
    }
    r.epsilon_max = r.epsilon.cwiseAbs().maxCoeff();
    return r;
}

std::string basis_label(int index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1) s[static_cast<std::size_t>(q)] = '1';
    }
    return s;
}

std::array<EnergyLevel, 8> spin_eigenenergies(const QubitFrequencies* freqs, const CouplingData& J) {
    std::array<EnergyLevel, 8> out;
    for (int x = 0; x < 8; ++x) {
        const int s1 = spin(x, 0), s2 = spin(x, 1), s3 = spin(x, 2);
        double e = -0.5 * J.J13 * s1 * s3 - 0.5 * J.J12 * s1 * s2 - 0.5 * J.J23 * s2 * s3;
        if (freqs != nullptr) {
            e += 0.5 * (freqs->omega[0] * s1 + freqs->omega[1] * s2 + freqs->omega[2] * s3);
        }
        out[x] = {basis_label(x), e};
    }
    return out;
}

std::array<EnergyLevel, 8> spin_eigenenergies(const QubitFrequencies& freqs, const CouplingData& J) {
    return spin_eigenenergies(&freqs, J);
}

std::array<CarrierEntry, 12> carrier_table(const QubitFrequencies& freqs, const CouplingData& J) {
    const auto energies = spin_eigenenergies(&freqs, J);
    std::array<CarrierEntry, 12> out;
    std::size_t k = 0;
    for (int ion = 0; ion < kNumIons; ++ion) {
        const int bit = 1 << (kNumIons - 1 - ion);
        // Spectator patterns 11, 10, 01, 00 over the other two ions in order.
        for (int pattern = 3; pattern >= 0; --pattern) {
            int base = 0;
            int shift = 1;
            std::string spectators;
            for (int other = 0; other < kNumIons; ++other) {
                if (other == ion) continue;
                const int value = (pattern >> shift) & 1;
                --shift;
                if (value) base |= 1 << (kNumIons - 1 - other);
                spectators.push_back(value ? '1' : '0');
            }
            out[k++] = {ion + 1, spectators,
                        energies[static_cast<std::size_t>(base | bit)].energy -
                            energies[static_cast<std::size_t>(base)].energy};
        }
    }
    return out;
}

std::array<double, kNumIons> carrier_spread(const CouplingData& J) {
    const auto table = carrier_table(QubitFrequencies{}, J);
    std::array<double, kNumIons> spread{};
    for (int ion = 0; ion < kNumIons; ++ion) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& e : table) {
            if (e.ion != ion + 1) continue;
            lo = std::min(lo, e.frequency);
            hi = std::max(hi, e.frequency);
        }
        spread[ion] = hi - lo;
    }
    return spread;
}

double neighbor_splitting(const TrapConfig& cfg, const PhysConstants& pc) {
    return frequency_gradient(cfg, pc) * cfg.spacing_l;
}

AddressingReport feasibility(const TrapConfig& cfg, const CouplingData& J, double rabi,
                             const FeasibilityMargins& margins, const PhysConstants& pc) {
    if (!(rabi > 0.0)) throw Error("invalid rabi: must be positive");
    AddressingReport r = lamb_dicke(cfg, normal_modes(cfg, pc), pc);
    r.carrier_spread = carrier_spread(J);
    r.neighbor_splitting = neighbor_splitting(cfg, pc);

    for (int i = 0; i < kNumIons; ++i) {
        const double need = margins.kappa_addressing * r.carrier_spread[i];
        r.checks.push_back({"addressing ion " + std::to_string(i + 1), rabi >= need, rabi, need, ">="});
    }
    const double ceiling = r.neighbor_splitting / margins.kappa_crosstalk;
    r.checks.push_back({"crosstalk", rabi <= ceiling, rabi, ceiling, "<="});
    r.checks.push_back(
        {"lamb-dicke epsilon_max", r.epsilon_max < kEpsilonLimit, r.epsilon_max, kEpsilonLimit, "<"});
    return r;
}

CouplingData couplings_for_zz_time(double t0, double j13_ratio) {
    if (!(t0 > 0.0)) throw Error("invalid zz_time: must be positive");
    const double j = 7.0 * kPi / (2.0 * t0);
    return {j, j, j13_ratio * j};
}

}  // namespace qdc

// Copyright 2026 The vmgbs Authors
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

#include <cmath>
#include <complex>
#include <numbers>

#include "vmgbs/errors.h"
#include "vmgbs/gbs.h"

namespace vmgbs {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Rotation {
    int m, n;
    double theta, phi;
};

// The 2x2 block of T acting on modes (m, n).
void t_block(double theta, double phi, cd out[2][2]) {
    const cd e = std::polar(1.0, phi);
    out[0][0] = e * std::cos(theta);
    out[0][1] = -std::sin(theta);
    out[1][0] = e * std::sin(theta);
    out[1][1] = std::cos(theta);
}

// v <- T v (row operation).
void apply_left(Eigen::MatrixXcd &v, const Rotation &r) {
    cd t[2][2];
    t_block(r.theta, r.phi, t);
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        cd a = v(r.m, c), b = v(r.n, c);
        v(r.m, c) = t[0][0] * a + t[0][1] * b;
        v(r.n, c) = t[1][0] * a + t[1][1] * b;
    }
}

// v <- v T^dagger (column operation).
void apply_right_inverse(Eigen::MatrixXcd &v, const Rotation &r) {
    cd t[2][2];
    t_block(r.theta, r.phi, t);
    for (Eigen::Index row = 0; row < v.rows(); ++row) {
        cd a = v(row, r.m), b = v(row, r.n);
        v(row, r.m) = a * std::conj(t[0][0]) + b * std::conj(t[0][1]);
        v(row, r.n) = a * std::conj(t[1][0]) + b * std::conj(t[1][1]);
    }
}

// Angles whose inverse rotation on columns (n, n+1) zeroes v(m, n).
Rotation null_from_right(int m, int n, const Eigen::MatrixXcd &v) {
    if (std::abs(v(m, n + 1)) == 0.0) return {n, n + 1, kPi / 2, 0};
    cd r = v(m, n) / v(m, n + 1);
    return {n, n + 1, std::atan(std::abs(r)), std::arg(r)};
}

// Angles whose rotation on rows (n-1, n) zeroes v(n, m).
Rotation null_from_left(int n, int m, const Eigen::MatrixXcd &v) {
    if (std::abs(v(n - 1, m)) == 0.0) return {n - 1, n, kPi / 2, 0};
    cd r = -v(n, m) / v(n - 1, m);
    return {n - 1, n, std::atan(std::abs(r)), std::arg(r)};
}

}  // namespace

Eigen::MatrixXcd ClementsMesh::reconstruct() const {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(modes, modes);
    for (const auto &z : mzis) apply_left(u, {z.i, z.j, z.theta, z.phi});
    return output_phases.asDiagonal() * u;
}

ClementsMesh compile_clements(const Eigen::MatrixXcd &u) {
    const int n = static_cast<int>(u.rows());
    if (n < 1 || u.cols() != n) throw InvalidArgument("compile_clements needs a non-empty square matrix");
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm() > 1e-10) {
        throw InvalidArgument("compile_clements needs a unitary matrix");
    }

    Eigen::MatrixXcd v = u;
    std::vector<Rotation> right, left;
    for (int k = 0, i = n - 2; i >= 0; ++k, --i) {
        if (k % 2 == 0) {
            for (int j = n - 2 - i; j >= 0; --j) {
                right.push_back(null_from_right(i + j + 1, j, v));
                apply_right_inverse(v, right.back());
            }
        } else {
            for (int j = 0; j <= n - 2 - i; ++j) {
                left.push_back(null_from_left(i + j + 1, j, v));
                apply_left(v, left.back());
            }
        }
    }
    // Now L_K..L_1 u R_1^-1..R_P^-1 = D, so u = L_1^-1..L_K^-1 D R_P..R_1.
    // Push each L^-1 through D, innermost first, so all rotations sit on the input side.
    Eigen::VectorXcd d = v.diagonal();
    std::vector<Rotation> sequence = right;
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const double alpha = std::arg(d(it->m)), beta = std::arg(d(it->n));
        const double phi = std::fmod(alpha - beta + kPi, 2 * kPi);
        d(it->m) = std::polar(1.0, beta - it->phi + kPi);
        d(it->n) = std::polar(1.0, beta);
        sequence.push_back({it->m, it->n, it->theta, phi});
    }

    ClementsMesh mesh;
    mesh.modes = n;
    mesh.output_phases = d;
    std::vector<int> last(n, 0);
    for (const auto &r : sequence) {
        int layer = std::max(last[r.m], last[r.n]) + 1;
        last[r.m] = last[r.n] = layer;
        mesh.mzis.push_back({layer, r.m, r.n, r.theta, r.phi});
        mesh.depth = std::max(mesh.depth, layer);
    }
    if (n == 1) mesh.depth = 1;
    return mesh;
}

double optical_latency(int n_modes, const LatencyParams &params) {
    if (n_modes < 1) throw InvalidArgument("optical_latency needs at least one mode");
    return n_modes * params.refractive_index * params.beamsplitter_length_m / params.speed_of_light_m_s;
}

}  // namespace vmgbs

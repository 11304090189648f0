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

// Classical simulation of a Gaussian boson sampler fed with a graph.
//
// Covariance matrices use the complex-amplitude ordering (a_1..a_N, a_1^+..a_N^+)
// with vacuum sigma = I/2, so Q = sigma + I/2 and X swaps the two halves. All
// matrices stay real because the encoded adjacency matrices are real.

#ifndef VMGBS_GBS_H
#define VMGBS_GBS_H

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "vmgbs/graph.h"
#include "vmgbs/random.h"

namespace vmgbs {

using PhotonPattern = std::vector<int>;

/// Squeezing in dB is 10*log10(e^{2r}).
double db_to_squeezing(double db);
double squeezing_to_db(double r);

struct TakagiResult {
    Eigen::MatrixXcd u;
    Eigen::VectorXd values;  // descending, nonnegative
};

/// A = U diag(values) U^T for real symmetric A. Built from the real
/// eigendecomposition: columns of negative eigenvalues pick up a factor i.
TakagiResult takagi(const Eigen::MatrixXd &a);

struct EncodingParams {
    double c = 0;
    double r_max = 0;
    double squeeze_db = 0;
};

/// c = tanh(r_max) / lambda_max. Throws DegenerateInput for the zero matrix.
double scale_constant(const Eigen::MatrixXd &a, double r_max);
EncodingParams encoding_params(const Eigen::MatrixXd &a, double squeeze_db);

/// r_i = atanh(c * lambda_i).
std::vector<double> squeezing_params(const Eigen::VectorXd &lambda, double c);

struct GaussianState {
    Eigen::MatrixXd sigma;  // 2N x 2N
    int modes = 0;
    /// c*A when the state is the lossless encoding of A; enables the pure-state formula.
    std::optional<Eigen::MatrixXd> pure_adjacency;

    Eigen::MatrixXd q() const;
};

GaussianState vacuum_state(int modes);

/// sigma = (I - X c(A + A))^{-1} - I/2. Throws InvalidEncoding unless c * s_max < 1.
GaussianState encode_graph(const Eigen::MatrixXd &a, double c);

/// Throws InvalidState unless sigma is symmetric and sigma + I/2 is positive definite.
void validate_state(const GaussianState &state);

enum class VacuumConvention {
    kHalfIdentity,  // physical vacuum of this covariance convention
    kIdentity,      // the identity term taken literally
};

/// sigma -> eta*sigma + (1 - eta)*V.
GaussianState apply_loss(const GaussianState &state, double eta,
                         VacuumConvention vacuum = VacuumConvention::kHalfIdentity);

struct LossBudget {
    double eta_c = 0.8;
    double eta_d = 0.95;
    double loss_db_per_cm = 0.25;
    double layer_length_m = 10e-6;

    /// Per-layer transmissivity 10^(-loss_db_per_cm * layer_length_cm / 10).
    double eta_o() const;
    void validate() const;

    static LossBudget lossless() { return {1.0, 1.0, 0.0, 10e-6}; }
};

/// eta_c * eta_o^n * eta_d.
double total_transmissivity(const LossBudget &budget, int n_modes);
double transmissivity_to_db(double eta);

/// Sum over perfect matchings. Odd sizes give 0 and the empty matrix gives 1.
/// Integer-valued inputs take an exact inclusion-exclusion route.
double hafnian(const Eigen::MatrixXd &m);
/// Power-trace formula in floating point; exposed for testing both routes.
double hafnian_power_trace(const Eigen::MatrixXd &m);
/// Exact hafnian of an integer matrix. Throws InvalidArgument if an entry is
/// not integral or the result could overflow.
int64_t hafnian_integer(const Eigen::MatrixXd &m);

/// Hafnian of the matrix whose row/column i is repeated reps[i] times, with
/// a_ii standing in for pairs of copies of i. Cost grows like prod(reps + 1)
/// rather than 2^(sum reps / 2), and the cheaper route is chosen per call.
double hafnian_repeated(const Eigen::MatrixXd &a, const std::vector<int> &reps);

/// Probability of a photon-number pattern. Uses Haf(cA_n)^2 when the state
/// carries its pure adjacency, and Haf(Abar_n) with Abar = X(I - Q^{-1}) otherwise.
double pattern_probability(const GaussianState &state, const PhotonPattern &pattern);

struct SamplerOptions {
    int cutoff = 5;
    /// Conditional steps capturing less than this fraction of the prefix mass are reported.
    double mass_warning = 0.999;
};

struct SamplerDiagnostics {
    size_t samples = 0;
    size_t low_mass_events = 0;
    double min_captured_mass = 1.0;

    void merge(const SamplerDiagnostics &other);
};

/// Mode-by-mode chain rule sampler over truncated photon counts.
class GbsSampler {
   public:
    explicit GbsSampler(const GaussianState &state, SamplerOptions options = {});

    PhotonPattern draw(Rng &rng, SamplerDiagnostics *diagnostics = nullptr) const;
    /// Marginal probability of the first prefix.size() modes.
    double prefix_probability(const PhotonPattern &prefix) const;
    int modes() const { return modes_; }

   private:
    int modes_;
    SamplerOptions options_;
    std::vector<Eigen::MatrixXd> abar_;   // per prefix length k >= 1, 2k x 2k
    std::vector<double> inv_sqrt_det_;   // per prefix length k >= 1
    std::optional<Eigen::MatrixXd> pure_adjacency_;
    double pure_inv_sqrt_det_ = 1;
};

PhotonPattern sample(const GaussianState &state, int cutoff, Rng &rng);

/// Sample i draws from derive_rng(seed, i), so output is independent of scheduling.
std::vector<PhotonPattern> sample_patterns(const GaussianState &state, size_t count, uint64_t seed,
                                           const SamplerOptions &options = {},
                                           SamplerDiagnostics *diagnostics = nullptr);

struct MziSetting {
    int layer = 0;
    int i = 0, j = 0;  // j == i + 1
    double theta = 0;
    double phi = 0;
};

/// Rectangular mesh: u = diag(output_phases) * T_last * ... * T_first, where
/// T acts on modes (i, j) as [[e^{i phi} cos theta, -sin theta], [e^{i phi} sin theta, cos theta]].
struct ClementsMesh {
    int modes = 0;
    int depth = 0;
    std::vector<MziSetting> mzis;  // in order of application to the input
    Eigen::VectorXcd output_phases;

    Eigen::MatrixXcd reconstruct() const;
};

ClementsMesh compile_clements(const Eigen::MatrixXcd &u);

struct LatencyParams {
    double refractive_index = 1.44;
    double beamsplitter_length_m = 10e-6;
    double speed_of_light_m_s = 3e8;
};

/// Time for light to cross an N-layer mesh.
double optical_latency(int n_modes, const LatencyParams &params = {});

/// Everything needed to drive the optical hardware for one graph.
struct GbsProgram {
    Eigen::MatrixXcd unitary;
    std::vector<double> squeezings;
    double eta = 1;
    ClementsMesh mesh;
};

struct GbsConfig {
    double squeeze_db = 5.0;
    LossBudget loss;
    VacuumConvention vacuum = VacuumConvention::kHalfIdentity;
    int cutoff = 5;

    nlohmann::json to_json() const;
};

/// Lossy encoded state of g under cfg. Edgeless graphs map to the vacuum.
GaussianState encode_with_config(const Graph &g, const GbsConfig &cfg);
GbsProgram compile_program(const Graph &g, const GbsConfig &cfg);
nlohmann::json program_to_json(const GbsProgram &program);

}  // namespace vmgbs

#endif  // VMGBS_GBS_H

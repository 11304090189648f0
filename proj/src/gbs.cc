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

#include "vmgbs/gbs.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vmgbs/errors.h"
#include "vmgbs/parallel.h"

namespace vmgbs {

namespace {

void require_symmetric(const Eigen::MatrixXd &a, const char *what) {
    if (a.rows() != a.cols()) throw InvalidArgument(std::string(what) + " needs a square matrix");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
        throw InvalidArgument(std::string(what) + " needs a symmetric matrix");
    }
}

double max_singular_value(const Eigen::MatrixXd &a) {
    if (a.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// X = [[0, I], [I, 0]] applied on the left.
Eigen::MatrixXd swap_halves(const Eigen::MatrixXd &m) {
    const Eigen::Index n = m.rows() / 2;
    Eigen::MatrixXd out(m.rows(), m.cols());
    out.topRows(n) = m.bottomRows(n);
    out.bottomRows(n) = m.topRows(n);
    return out;
}

double log_factorial_product(const PhotonPattern &p) {
    double s = 0;
    for (int k : p) s += std::lgamma(k + 1.0);
    return s;
}

// Hafnian of m with mode i repeated pattern[i] times; for a doubled matrix
// both halves repeat.
double pattern_hafnian(const Eigen::MatrixXd &m, const PhotonPattern &pattern, bool doubled) {
    std::vector<int> reps(m.rows(), 0);
    const size_t half = doubled ? m.rows() / 2 : m.rows();
    for (size_t i = 0; i < pattern.size(); ++i) {
        reps[i] = pattern[i];
        if (doubled) reps[i + half] = pattern[i];
    }
    return hafnian_repeated(m, reps);
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

void validate_pattern(const PhotonPattern &pattern, int modes) {
    if (static_cast<int>(pattern.size()) != modes) {
        throw InvalidArgument("pattern has " + std::to_string(pattern.size()) + " modes, state has " +
                              std::to_string(modes));
    }
    for (int k : pattern)
        if (k < 0) throw InvalidArgument("photon counts must be nonnegative");
}

}  // namespace

double db_to_squeezing(double db) { return db * std::log(10.0) / 20.0; }
double squeezing_to_db(double r) { return 20.0 * r / std::log(10.0); }

TakagiResult takagi(const Eigen::MatrixXd &a) {
    require_symmetric(a, "takagi");
    const Eigen::Index n = a.rows();
    TakagiResult out;
    out.u.resize(n, n);
    out.values.resize(n);
    if (n == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::VectorXd &d = es.eigenvalues();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return std::abs(d(x)) > std::abs(d(y)); });
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index j = order[k];
        out.values(k) = std::abs(d(j));
        const std::complex<double> phase = d(j) >= 0 ? 1.0 : std::complex<double>(0, 1);
        out.u.col(k) = es.eigenvectors().col(j).cast<std::complex<double>>() * phase;
    }
    return out;
}

double scale_constant(const Eigen::MatrixXd &a, double r_max) {
    require_symmetric(a, "scale_constant");
    if (!(r_max > 0)) throw InvalidArgument("r_max must be positive");
    const double lmax = max_singular_value(a);
    if (lmax == 0) throw DegenerateInput("cannot scale the zero matrix");
    return std::tanh(r_max) / lmax;
}

EncodingParams encoding_params(const Eigen::MatrixXd &a, double squeeze_db) {
    EncodingParams p;
    p.squeeze_db = squeeze_db;
    p.r_max = db_to_squeezing(squeeze_db);
    p.c = scale_constant(a, p.r_max);
    return p;
}

std::vector<double> squeezing_params(const Eigen::VectorXd &lambda, double c) {
    std::vector<double> r(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const double x = c * lambda(i);
        if (x < 0 || x >= 1) throw InvalidEncoding("c * lambda must lie in [0, 1)");
        r[i] = std::atanh(x);
    }
    return r;
}

Eigen::MatrixXd GaussianState::q() const {
    return sigma + 0.5 * Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols());
}

GaussianState vacuum_state(int modes) {
    GaussianState s;
    s.modes = modes;
    s.sigma = 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
    s.pure_adjacency = Eigen::MatrixXd::Zero(modes, modes);
    return s;
}

GaussianState encode_graph(const Eigen::MatrixXd &a, double c) {
    require_symmetric(a, "encode_graph");
    if (!(c >= 0)) throw InvalidEncoding("scale constant must be nonnegative");
    const Eigen::Index n = a.rows();
    if (c * max_singular_value(a) >= 1 - 1e-12) throw InvalidEncoding("c * s_max must be below 1");
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    m.topRightCorner(n, n) = -c * a;
    m.bottomLeftCorner(n, n) = -c * a;
    Eigen::MatrixXd q = m.inverse();
    GaussianState s;
    s.modes = static_cast<int>(n);
    s.sigma = 0.5 * (q + q.transpose()) - 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
    s.pure_adjacency = c * a;
    return s;
}

void validate_state(const GaussianState &state) {
    const Eigen::Index d = state.sigma.rows();
    if (d != 2 * state.modes || state.sigma.cols() != d) throw InvalidState("covariance has the wrong shape");
    if ((state.sigma - state.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw InvalidState("covariance is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(state.q());
    if (llt.info() != Eigen::Success) throw InvalidState("sigma + I/2 is not positive definite");
}

GaussianState apply_loss(const GaussianState &state, double eta, VacuumConvention vacuum) {
    if (!(eta > 0 && eta <= 1)) throw InvalidArgument("transmissivity must lie in (0, 1]");
    if (eta == 1) return state;
    const double v = vacuum == VacuumConvention::kHalfIdentity ? 0.5 : 1.0;
    GaussianState out;
    out.modes = state.modes;
    out.sigma = eta * state.sigma;
    out.sigma.diagonal().array() += (1 - eta) * v;
    return out;
}

double LossBudget::eta_o() const {
    return std::pow(10.0, -loss_db_per_cm * (layer_length_m * 100.0) / 10.0);
}

void LossBudget::validate() const {
    auto in_range = [](double x) { return x > 0 && x <= 1; };
    if (!in_range(eta_c) || !in_range(eta_d)) throw InvalidArgument("eta_c and eta_d must lie in (0, 1]");
    if (!(loss_db_per_cm >= 0) || !(layer_length_m > 0)) {
        throw InvalidArgument("loss_db_per_cm must be nonnegative and layer_length_m positive");
    }
}

double total_transmissivity(const LossBudget &budget, int n_modes) {
    budget.validate();
    return budget.eta_c * std::pow(budget.eta_o(), n_modes) * budget.eta_d;
}

double transmissivity_to_db(double eta) { return -10.0 * std::log10(eta); }

double pattern_probability(const GaussianState &state, const PhotonPattern &pattern) {
    validate_pattern(pattern, state.modes);
    validate_state(state);
    const double log_fact = log_factorial_product(pattern);
    const Eigen::MatrixXd q = state.q();
    const double det_q = q.partialPivLu().determinant();
    if (state.pure_adjacency) {
        const int total = std::accumulate(pattern.begin(), pattern.end(), 0);
        if (total % 2) return 0.0;
        const double h = pattern_hafnian(*state.pure_adjacency, pattern, false);
        return clamp_probability(h * h * std::exp(-log_fact) / std::sqrt(det_q));
    }
    const Eigen::Index d = q.rows();
    const Eigen::MatrixXd abar = swap_halves(Eigen::MatrixXd::Identity(d, d) - q.inverse());
    const double h = pattern_hafnian(abar, pattern, true);
    return clamp_probability(h * std::exp(-log_fact) / std::sqrt(det_q));
}

void SamplerDiagnostics::merge(const SamplerDiagnostics &other) {
    samples += other.samples;
    low_mass_events += other.low_mass_events;
    min_captured_mass = std::min(min_captured_mass, other.min_captured_mass);
}

GbsSampler::GbsSampler(const GaussianState &state, SamplerOptions options)
    : modes_(state.modes), options_(options) {
    if (options_.cutoff < 1) throw InvalidArgument("sampling cutoff must be at least 1");
    validate_state(state);
    const int n = state.modes;
    abar_.resize(n + 1);
    inv_sqrt_det_.assign(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        std::vector<int> idx;
        for (int i = 0; i < k; ++i) idx.push_back(i);
        for (int i = 0; i < k; ++i) idx.push_back(n + i);
        Eigen::MatrixXd q(2 * k, 2 * k);
        for (int r = 0; r < 2 * k; ++r)
            for (int c = 0; c < 2 * k; ++c) q(r, c) = state.sigma(idx[r], idx[c]) + (r == c ? 0.5 : 0.0);
        abar_[k] = swap_halves(Eigen::MatrixXd::Identity(2 * k, 2 * k) - q.inverse());
        inv_sqrt_det_[k] = 1.0 / std::sqrt(q.partialPivLu().determinant());
    }
    if (state.pure_adjacency) {
        pure_adjacency_ = state.pure_adjacency;
        pure_inv_sqrt_det_ = inv_sqrt_det_[n];
    }
}

double GbsSampler::prefix_probability(const PhotonPattern &prefix) const {
    const int k = static_cast<int>(prefix.size());
    if (k > modes_) throw InvalidArgument("prefix longer than the number of modes");
    if (k == 0) return 1.0;
    const double log_fact = log_factorial_product(prefix);
    if (k == modes_ && pure_adjacency_) {
        const int total = std::accumulate(prefix.begin(), prefix.end(), 0);
        if (total % 2) return 0.0;
        const double h = pattern_hafnian(*pure_adjacency_, prefix, false);
        return clamp_probability(h * h * std::exp(-log_fact) * pure_inv_sqrt_det_);
    }
    const double h = pattern_hafnian(abar_[k], prefix, true);
    return clamp_probability(h * std::exp(-log_fact) * inv_sqrt_det_[k]);
}

PhotonPattern GbsSampler::draw(Rng &rng, SamplerDiagnostics *diagnostics) const {
    PhotonPattern pattern;
    pattern.reserve(modes_);
    std::vector<double> probs(options_.cutoff + 1);
    double prefix_mass = 1.0;
    if (diagnostics) ++diagnostics->samples;
    for (int k = 0; k < modes_; ++k) {
        // Draw against the untruncated conditional and only evaluate counts up
        // to the one selected. A draw landing past the cutoff is redrawn over
        // the truncated range, which renormalizes the conditional exactly.
        const double target = uniform01(rng) * prefix_mass;
        double cumulative = 0;
        int chosen = -1;
        pattern.push_back(0);
        for (int j = 0; j <= options_.cutoff; ++j) {
            pattern.back() = j;
            probs[j] = prefix_probability(pattern);
            cumulative += probs[j];
            if (cumulative > target) {
                chosen = j;
                break;
            }
        }
        if (chosen < 0) {
            const double captured = prefix_mass > 0 ? cumulative / prefix_mass : 0.0;
            if (diagnostics) {
                diagnostics->min_captured_mass = std::min(diagnostics->min_captured_mass, captured);
                if (captured < options_.mass_warning) ++diagnostics->low_mass_events;
            }
            if (cumulative <= 0) {
                chosen = 0;
            } else {
                const double redraw = uniform01(rng) * cumulative;
                double run = 0;
                chosen = options_.cutoff;
                for (int j = 0; j <= options_.cutoff; ++j) {
                    run += probs[j];
                    if (run > redraw) {
                        chosen = j;
                        break;
                    }
                }
            }
        }
        pattern.back() = chosen;
        prefix_mass = probs[chosen];
    }
    return pattern;
}

PhotonPattern sample(const GaussianState &state, int cutoff, Rng &rng) {
    return GbsSampler(state, {cutoff}).draw(rng);
}

std::vector<PhotonPattern> sample_patterns(const GaussianState &state, size_t count, uint64_t seed,
                                           const SamplerOptions &options, SamplerDiagnostics *diagnostics) {
    GbsSampler sampler(state, options);
    std::vector<PhotonPattern> out(count);
    std::vector<SamplerDiagnostics> diag(count);
    parallel_for(count, [&](size_t i) {
        Rng rng = derive_rng(seed, i);
        out[i] = sampler.draw(rng, &diag[i]);
    });
    if (diagnostics) {
        for (const auto &d : diag) diagnostics->merge(d);
    }
    return out;
}

nlohmann::json GbsConfig::to_json() const {
    return {{"squeeze_db", squeeze_db},
            {"eta_c", loss.eta_c},
            {"eta_d", loss.eta_d},
            {"loss_db_per_cm", loss.loss_db_per_cm},
            {"layer_length_m", loss.layer_length_m},
            {"vacuum", vacuum == VacuumConvention::kHalfIdentity ? "half-identity" : "identity"},
            {"cutoff", cutoff}};
}

GaussianState encode_with_config(const Graph &g, const GbsConfig &cfg) {
    const int n = g.size();
    GaussianState state;
    if (g.edge_count() == 0) {
        state = vacuum_state(n);
    } else {
        const Eigen::MatrixXd a = g.adjacency_matrix();
        state = encode_graph(a, encoding_params(a, cfg.squeeze_db).c);
    }
    const double eta = total_transmissivity(cfg.loss, n);
    return eta < 1 ? apply_loss(state, eta, cfg.vacuum) : state;
}

GbsProgram compile_program(const Graph &g, const GbsConfig &cfg) {
    const Eigen::MatrixXd a = g.adjacency_matrix();
    TakagiResult t = takagi(a);
    const double c = g.edge_count() == 0 ? 0.0 : encoding_params(a, cfg.squeeze_db).c;
    GbsProgram p;
    p.unitary = t.u;
    p.squeezings = squeezing_params(t.values, c);
    p.eta = total_transmissivity(cfg.loss, g.size());
    p.mesh = compile_clements(t.u);
    return p;
}

nlohmann::json program_to_json(const GbsProgram &program) {
    nlohmann::json unitary = nlohmann::json::array();
    for (Eigen::Index r = 0; r < program.unitary.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < program.unitary.cols(); ++c) {
            row.push_back({program.unitary(r, c).real(), program.unitary(r, c).imag()});
        }
        unitary.push_back(row);
    }
    nlohmann::json mesh = nlohmann::json::array();
    for (const auto &z : program.mesh.mzis) {
        mesh.push_back({{"layer", z.layer}, {"pair", {z.i, z.j}}, {"theta", z.theta}, {"phi", z.phi}});
    }
    nlohmann::json phases = nlohmann::json::array();
    for (Eigen::Index i = 0; i < program.mesh.output_phases.size(); ++i) {
        phases.push_back(std::arg(program.mesh.output_phases(i)));
    }
    return {{"unitary", unitary},     {"squeezings", program.squeezings}, {"eta", program.eta},
            {"mesh", mesh},           {"output_phases", phases},          {"depth", program.mesh.depth}};
}

}  // namespace vmgbs

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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,3] [--expect-fail 6,10]
//
// Exit status is 0 when every selected criterion passes, except those listed
// in --expect-fail, which still print their real verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.h"
#include "vmgbs/bench.h"
#include "vmgbs/gbs.h"
#include "vmgbs/pipeline.h"
#include "vmgbs/vertex_minor.h"

using namespace vmgbs;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Verdict()> run;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Eigen::MatrixXd symmetric_01(int n, uint64_t bits) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            if ((bits >> k) & 1) m(i, j) = m(j, i) = 1;
    return m;
}

Verdict hafnian_oracle() {
    long checked = 0, bad = 0;
    for (int n = 0; n <= 6; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (uint64_t bits = 0; bits < (uint64_t{1} << pairs); ++bits) {
            Eigen::MatrixXd m = symmetric_01(n, bits);
            const long long expect = oracle::matching_count(m);
            bad += static_cast<long long>(hafnian(m)) != expect || hafnian(m) != static_cast<double>(expect);
            ++checked;
        }
    }
    Rng rng(20261016);
    for (int t = 0; t < 500; ++t) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 10));
        const int pairs = n * (n - 1) / 2;
        uint64_t bits = pairs == 0 ? 0 : rng() & ((uint64_t{1} << pairs) - 1);
        Eigen::MatrixXd m = symmetric_01(n, bits);
        for (int i = 0; i < n; ++i) m(i, i) = static_cast<double>(uniform_below(rng, 2));  // diagonal is ignored
        const long long expect = oracle::matching_count(m);
        bad += hafnian(m) != static_cast<double>(expect) || hafnian_integer(m) != expect;
        ++checked;
    }
    return {bad == 0, std::to_string(checked) + " matrices, " + std::to_string(bad) + " mismatches"};
}

Verdict takagi_check() {
    Rng rng(7);
    double worst_rec = 0, worst_unit = 0, worst_sv = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 12));
        Eigen::MatrixXd a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a(i, j) = a(j, i) = 2 * uniform01(rng) - 1;
        TakagiResult r = takagi(a);
        Eigen::MatrixXcd rec = r.u * r.values.cast<std::complex<double>>().asDiagonal() * r.u.transpose();
        worst_rec = std::max(worst_rec, (rec - a.cast<std::complex<double>>()).norm());
        worst_unit = std::max(worst_unit, (r.u.adjoint() * r.u - Eigen::MatrixXcd::Identity(n, n)).norm());
        std::vector<double> sv(r.values.data(), r.values.data() + n);
        std::vector<double> ref = oracle::jacobi_eigenvalues(a);
        for (double &v : ref) v = std::abs(v);
        std::sort(sv.begin(), sv.end());
        std::sort(ref.begin(), ref.end());
        for (int i = 0; i < n; ++i) worst_sv = std::max(worst_sv, std::abs(sv[i] - ref[i]));
    }
    return {worst_rec < 1e-10 && worst_unit < 1e-10 && worst_sv < 1e-10,
            "max reconstruction " + fmt("%.2e", worst_rec) + ", max unitarity " + fmt("%.2e", worst_unit) +
                ", max singular-value gap " + fmt("%.2e", worst_sv)};
}

std::vector<Graph> connected_graphs_up_to(int max_n) {
    std::set<Graph> seen;
    std::vector<Graph> out;
    for (int n = 2; n <= max_n; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (uint64_t bits = 0; bits < (uint64_t{1} << pairs); ++bits) {
            Graph g = Graph::from_adjacency(symmetric_01(n, bits));
            VertexMask reach = bit(0), frontier = bit(0);
            while (frontier) {
                VertexMask next = 0;
                for (VertexMask f = frontier; f; f &= f - 1) next |= g.neighbors(std::countr_zero(f));
                frontier = next & ~reach;
                reach |= next;
            }
            if (reach != all_vertices(n)) continue;
            if (seen.insert(canonical_form(g)).second) out.push_back(g);
        }
    }
    return out;
}

void for_each_pattern(int modes, int cutoff, const std::function<void(const PhotonPattern &)> &f) {
    PhotonPattern p(modes, 0);
    while (true) {
        f(p);
        int k = 0;
        while (k < modes && p[k] == cutoff) p[k++] = 0;
        if (k == modes) return;
        ++p[k];
    }
}

Verdict sampler_fidelity() {
    const auto graphs = connected_graphs_up_to(4);
    double worst = 0;
    bool odd_ok = true;
    int configs = 0;
    for (const Graph &g : graphs) {
        for (bool lossy : {false, true}) {
            GbsConfig cfg;
            cfg.loss = lossy ? LossBudget{std::pow(10.0, -0.12), 1.0, 0.0, 10e-6} : LossBudget::lossless();
            GaussianState s = encode_with_config(g, cfg);
            const size_t count = 100000;
            auto samples = sample_patterns(s, count, 1000 + configs, SamplerOptions{cfg.cutoff});
            std::map<PhotonPattern, double> freq;
            for (const auto &p : samples) {
                freq[p] += 1.0 / count;
                int total = 0;
                for (int v : p) total += v;
                if (!lossy && total % 2) odd_ok = false;
            }
            double tvd = 0, mass = 0;
            for_each_pattern(g.size(), cfg.cutoff, [&](const PhotonPattern &p) {
                const double q = pattern_probability(s, p);
                int total = 0;
                for (int v : p) total += v;
                if (!lossy && total % 2 && q != 0.0) odd_ok = false;
                mass += q;
                auto it = freq.find(p);
                tvd += std::abs(q - (it == freq.end() ? 0.0 : it->second));
            });
            tvd = 0.5 * (tvd + (1 - mass));
            worst = std::max(worst, tvd);
            ++configs;
        }
    }
    return {worst < 0.01 && odd_ok,
            std::to_string(graphs.size()) + " graphs x 2 loss settings, max TVD " + fmt("%.4f", worst) +
                (odd_ok ? ", odd patterns all zero" : ", odd pattern with nonzero probability")};
}

Verdict loss_budget() {
    const double db = transmissivity_to_db(total_transmissivity(LossBudget{}, 12));
    return {std::abs(db - 1.2) <= 0.05, "total loss " + fmt("%.4f", db) + " dB at N=12"};
}

Verdict trials_calculus() {
    bool ok = std::abs(p_error(3, 0.1) - 0.028) < 1e-15;
    std::string detail = "p_error(3,0.1)=" + fmt("%.17g", p_error(3, 0.1));
    const double k = k_of_delta(0.01);
    ok = ok && std::abs(k - 1.6796) <= 1e-4;
    detail += ", k(0.01)=" + fmt("%.5f", k);
    double worst_rel = 0;
    for (double eps = 0.01; eps <= 0.05 + 1e-12; eps += 0.0025) {
        const double ref = 1.41 / (eps * eps);
        worst_rel = std::max(worst_rel, std::abs(trials_needed(eps, 0.01) - ref) / ref);
    }
    ok = ok && worst_rel <= 0.10;
    detail += ", trials_needed max deviation " + fmt("%.3f", worst_rel);
    Rng rng(99);
    double worst_z = 0;
    for (auto [n, e] : std::vector<std::pair<int, double>>{{1, 0.3}, {3, 0.1}, {7, 0.35}, {21, 0.45}, {47, 0.4}}) {
        const int reps = 10000;
        int wrong = 0;
        for (int r = 0; r < reps; ++r) {
            std::vector<int> votes(n);
            for (int &v : votes) v = uniform01(rng) < e ? -1 : 1;
            wrong += majority_vote(votes) != 1;
        }
        const double p = p_error(n, e);
        const double sigma = std::sqrt(p * (1 - p) / reps);
        worst_z = std::max(worst_z, std::abs(wrong / double(reps) - p) / sigma);
    }
    ok = ok && worst_z <= 3;
    detail += ", Monte-Carlo max |z|=" + fmt("%.2f", worst_z);
    return {ok, detail};
}

Verdict baseline_ordering() {
    BaselineConfig c;
    auto rows = baseline_comparison(c);
    std::map<std::pair<int, std::string>, double> err;
    for (const auto &r : rows) err[{r.n_parent, r.method}] += r.test_error / c.seeds.size();
    bool ok = true;
    std::ostringstream d;
    for (int n : c.n_parents) {
        const double s = err[{n, "spectral"}];
        d << "N=" << n << " error spectral " << fmt("%.3f", s) << " graphlet " << fmt("%.3f", err[{n, "graphlet"}])
          << " shortest-path " << fmt("%.3f", err[{n, "shortest-path"}]) << " wl " << fmt("%.3f", err[{n, "wl"}])
          << "; ";
        for (const char *k : {"graphlet", "shortest-path", "wl"}) ok = ok && s < err[{n, k}];
        ok = ok && 1 - s > 0.55;
    }
    return {ok, d.str() + "3 seeds, 500+500 pairs"};
}

Verdict majority_gain() {
    const int n = 10;
    const uint64_t seed = 10;
    Dataset ds = generate_dataset(n, default_child_size(n), 200, 200, seed);
    Split split = split_dataset(ds, 0.25, seed);
    std::vector<LabeledPair> eval;
    {
        std::vector<LabeledPair> pos, neg;
        for (const auto &p : split.test) (p.is_vertex_minor ? pos : neg).push_back(p);
        for (size_t i = 0; eval.size() < 20 && (i < pos.size() || i < neg.size()); ++i) {
            if (i < pos.size()) eval.push_back(pos[i]);
            if (i < neg.size()) eval.push_back(neg[i]);
        }
    }
    LinearSvmOptions lo;
    lo.seed = seed;
    GbsConfig cfg;
    LinearSvmModel spectral = train_spectral_model(split.train, lo);
    LinearSvmModel gbs = train_gbs_model(split.train, cfg, 10, lo);
    const std::vector<int> grid{1, 47, 201};
    TrialCurve c = classical_trial_curve(eval, spectral, grid, 5, 71);
    TrialCurve q = quantum_trial_curve(eval, gbs, cfg, grid, 5, 72);
    const bool ok = c.accuracy[1] >= c.accuracy[0] && c.accuracy[2] < 1 && q.accuracy[1] >= q.accuracy[0] &&
                    q.accuracy[2] < 1;
    std::ostringstream d;
    d << eval.size() << " pairs x 5 vote seeds; classical acc(1,47,201)=" << fmt("%.3f", c.accuracy[0]) << ","
      << fmt("%.3f", c.accuracy[1]) << "," << fmt("%.3f", c.accuracy[2]) << "; quantum acc(1,47,201)="
      << fmt("%.3f", q.accuracy[0]) << "," << fmt("%.3f", q.accuracy[1]) << "," << fmt("%.3f", q.accuracy[2]);
    return {ok, d.str()};
}

Verdict sweep_monotonicity() {
    SweepConfig c;
    auto rows = sweep(c);
    const auto grid = trial_grid(c.trial_cap);
    auto index = [&](int n) { return static_cast<int>(std::find(grid.begin(), grid.end(), n) - grid.begin()); };
    const size_t ns = c.squeeze_db.size(), nl = c.loss_db.size();
    auto at = [&](size_t i, size_t j) { return rows[i * nl + j].n_required; };
    bool ok = true;
    int saturated = 0;
    for (const auto &r : rows) saturated += r.saturated;
    for (size_t j = 0; j < nl; ++j)
        for (size_t i = 0; i + 1 < ns; ++i) ok = ok && index(at(i + 1, j)) <= index(at(i, j)) + 1;
    for (size_t i = 0; i < ns; ++i)
        for (size_t j = 0; j + 1 < nl; ++j) ok = ok && index(at(i, j + 1)) >= index(at(i, j)) - 1;
    std::ostringstream d;
    d << "n_required by (squeeze dB, loss dB):";
    for (const auto &r : rows) d << " (" << r.squeeze_db << "," << r.loss_db << ")=" << r.n_required;
    d << "; " << saturated << "/" << rows.size() << " cells saturated at the cap " << c.trial_cap;
    if (saturated == static_cast<int>(rows.size())) d << " (trend not resolvable)";
    return {ok, d.str()};
}

Verdict lc_invariance() {
    Rng rng(2026);
    int positives = 0, changed = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 5 + static_cast<int>(uniform_below(rng, 3));
        const int m = std::max(2, n - static_cast<int>(uniform_below(rng, 3)));
        Graph parent = random_graph(n, 0.5, rng);
        Graph child;
        if (t % 2) {
            child = random_graph(m, 0.5, rng);
        } else {
            VertexMask keep = all_vertices(n);
            while (std::popcount(static_cast<unsigned>(keep)) > m) keep &= ~bit(static_cast<int>(uniform_below(rng, n)));
            child = random_lc_walk(parent, 3, rng).induced(keep);
        }
        Graph walked = random_lc_walk(parent, 1 + static_cast<int>(uniform_below(rng, 2 * n)), rng);
        const bool a = is_vertex_minor(parent, child), b = is_vertex_minor(walked, child);
        positives += a;
        changed += a != b;
    }
    return {changed == 0, "200 pairs with n_parent <= 7, " + std::to_string(positives) + " vertex-minors, " +
                              std::to_string(changed) + " verdict changes"};
}

Verdict runtime_band() {
    RuntimeConfig c;
    auto rows = runtime_report(c);
    bool ok = true;
    std::ostringstream d;
    d << "T_c/T_qgbs by N:";
    for (const auto &r : rows) {
        d << " " << r.n << "=" << fmt("%.0f", r.speedup) << (r.n_q_saturated ? "*" : "");
        ok = ok && r.speedup >= 1e2 && r.speedup <= 1e4;
    }
    d << " (* n_q at the cap " << c.trial_cap << ")";
    return {ok, d.str()};
}

std::set<int> parse_ids(const std::string &text) {
    std::set<int> ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) ids.insert(std::stoi(item));
    return ids;
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> only, expect_fail;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if ((a == "--only" || a == "--expect-fail") && i + 1 < argc) {
            (a == "--only" ? only : expect_fail) = parse_ids(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only 1,2] [--expect-fail 6,10]\n");
            return 2;
        }
    }
    const std::vector<Criterion> criteria{
        {1, "hafnian oracle equivalence", 60, hafnian_oracle},
        {2, "Takagi decomposition", 60, takagi_check},
        {3, "sampler fidelity", 600, sampler_fidelity},
        {4, "loss budget", 1, loss_budget},
        {5, "repeated-trials calculus", 60, trials_calculus},
        {6, "baseline ordering", 1800, baseline_ordering},
        {7, "majority-vote gain and plateau", 1800, majority_gain},
        {8, "sweep monotonicity", 1800, sweep_monotonicity},
        {9, "LC invariance of the oracle", 600, lc_invariance},
        {10, "runtime-model band", 1800, runtime_band},
    };
    int unexpected = 0;
    for (const auto &c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = v.pass && in_time;
        std::printf("criterion %d [%s]: %s (%s; %.1f s of %.0f s allowed)%s\n", c.id, c.name.c_str(),
                    pass ? "PASS" : "FAIL", v.detail.c_str(), secs, c.limit_s,
                    !pass && expect_fail.count(c.id) ? " [known failure]" : "");
        std::fflush(stdout);
        if (!pass && !expect_fail.count(c.id)) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}

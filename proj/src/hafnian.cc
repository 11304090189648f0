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

#include <bit>
#include <cmath>

#include "vmgbs/errors.h"
#include "vmgbs/gbs.h"

namespace vmgbs {

namespace {

constexpr int kMaxHafnianSize = 48;

void check_symmetric(const Eigen::MatrixXd &m) {
    if (m.rows() != m.cols()) throw InvalidArgument("hafnian needs a square matrix");
    if (m.rows() > kMaxHafnianSize) throw InvalidArgument("hafnian input too large");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (1 + std::abs(m(i, j)))) {
                throw InvalidArgument("hafnian needs a symmetric matrix");
            }
        }
    }
}

bool integral_entries(const Eigen::MatrixXd &m, double *max_abs) {
    double mx = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            double x = m(i, j);
            if (!std::isfinite(x) || x != std::nearbyint(x)) return false;
            mx = std::max(mx, std::abs(x));
        }
    }
    *max_abs = mx;
    return true;
}

// True when every partial sum of the inclusion-exclusion fits in 127 bits.
bool fits_exact(int n, double max_abs) {
    if (max_abs == 0) return true;
    const double bound = max_abs * n * (n - 1) / 2.0;
    return (n / 2) * std::log2(bound) + n < 120 && max_abs < 1e12;
}

__int128 ipow(__int128 x, int e) {
    __int128 r = 1;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

// haf(A) = (1/m!) sum_S (-1)^{n-|S|} (sum_{i<j in S} a_ij)^m over a Gray-code walk.
__int128 hafnian_exact(const Eigen::MatrixXd &m) {
    const int n = static_cast<int>(m.rows());
    const int half = n / 2;
    std::vector<int64_t> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i * n + j] = i == j ? 0 : static_cast<int64_t>(m(i, j));
    std::vector<int64_t> into(n, 0);  // into[v] = sum_{u in S} a_uv
    uint64_t subset = 0;
    __int128 edges = 0;
    __int128 total = ipow(0, half);  // S = {} term, sign +1 since n is even
    const uint64_t count = uint64_t{1} << n;
    for (uint64_t step = 1; step < count; ++step) {
        const int v = std::countr_zero(step);
        const bool adding = !(subset >> v & 1);
        subset ^= uint64_t{1} << v;
        if (adding) {
            edges += into[v];
            for (int u = 0; u < n; ++u) into[u] += a[v * n + u];
        } else {
            for (int u = 0; u < n; ++u) into[u] -= a[v * n + u];
            edges -= into[v];
        }
        __int128 term = ipow(edges, half);
        total += (std::popcount(subset) & 1) ? -term : term;
    }
    __int128 fact = 1;
    for (int k = 2; k <= half; ++k) fact *= k;
    return total / fact;
}

}  // namespace

double hafnian_power_trace(const Eigen::MatrixXd &m) {
    check_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (n % 2) return 0;
    if (n == 0) return 1;
    const int half = n / 2;
    double total = 0;
    std::vector<int> idx;
    std::vector<double> g(half + 1), e(half + 1);
    for (uint64_t z = 1; z < (uint64_t{1} << half); ++z) {
        idx.clear();
        for (int p = 0; p < half; ++p) {
            if (z >> p & 1) {
                idx.push_back(2 * p);
                idx.push_back(2 * p + 1);
            }
        }
        const int k = static_cast<int>(idx.size());
        // C = A_Z X_Z: swap the two columns of every pair. The diagonal never takes part.
        Eigen::MatrixXd c(k, k);
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) c(r, s) = r == (s ^ 1) ? 0.0 : m(idx[r], idx[s ^ 1]);
        Eigen::MatrixXd power = c;
        for (int j = 1; j <= half; ++j) {
            if (j > 1) power = power * c;
            g[j] = power.trace() / (2.0 * j);
        }
        // Coefficient of t^half in exp(sum_j g_j t^j).
        e[0] = 1;
        for (int j = 1; j <= half; ++j) {
            double s = 0;
            for (int l = 1; l <= j; ++l) s += l * g[l] * e[j - l];
            e[j] = s / j;
        }
        total += ((half - std::popcount(z)) & 1) ? -e[half] : e[half];
    }
    return total;
}

int64_t hafnian_integer(const Eigen::MatrixXd &m) {
    check_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (n % 2) return 0;
    if (n == 0) return 1;
    double max_abs = 0;
    if (!integral_entries(m, &max_abs)) throw InvalidArgument("hafnian_integer needs integer entries");
    if (!fits_exact(n, max_abs)) throw InvalidArgument("hafnian_integer input could overflow");
    __int128 h = hafnian_exact(m);
    if (h > INT64_MAX || h < INT64_MIN) throw InvalidArgument("hafnian exceeds 64 bits");
    return static_cast<int64_t>(h);
}

double hafnian(const Eigen::MatrixXd &m) {
    check_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (n % 2) return 0;
    if (n == 0) return 1;
    double max_abs = 0;
    if (n <= 28 && integral_entries(m, &max_abs) && fits_exact(n, max_abs)) {
        return static_cast<double>(hafnian_exact(m));
    }
    return hafnian_power_trace(m);
}

double hafnian_repeated(const Eigen::MatrixXd &a, const std::vector<int> &reps) {
    check_symmetric(a);
    if (static_cast<Eigen::Index>(reps.size()) != a.rows()) throw InvalidArgument("one repetition count per row");
    std::vector<int> idx, r;
    int total = 0;
    for (size_t i = 0; i < reps.size(); ++i) {
        if (reps[i] < 0) throw InvalidArgument("repetition counts must be nonnegative");
        if (reps[i] > 0) {
            idx.push_back(static_cast<int>(i));
            r.push_back(reps[i]);
            total += reps[i];
        }
    }
    if (total % 2) return 0;
    if (total == 0) return 1;
    const int k = static_cast<int>(idx.size());
    const int half = total / 2;

    // Pick the cheaper of the moment formula and power traces on the expanded matrix.
    double moment_cost = k * k;
    for (int x : r) moment_cost *= x + 1;
    const double trace_cost = std::ldexp(1.0, half) * std::pow(static_cast<double>(total), 4) / 8;
    if (trace_cost < moment_cost) {
        std::vector<int> expanded;
        for (int t = 0; t < k; ++t)
            for (int c = 0; c < r[t]; ++c) expanded.push_back(idx[t]);
        Eigen::MatrixXd m(total, total);
        for (int x = 0; x < total; ++x)
            for (int y = 0; y < total; ++y) m(x, y) = x == y ? 0.0 : a(expanded[x], expanded[y]);
        return hafnian(m);
    }

    // Kan's moment formula:
    // haf = (1/s!) sum_nu (-1)^{|nu|} prod C(r_i, nu_i) (h^T A h / 2)^s, with h = r/2 - nu.
    Eigen::MatrixXd b(k, k);
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) b(x, y) = a(idx[x], idx[y]);
    std::vector<std::vector<double>> binom(k);
    for (int t = 0; t < k; ++t) {
        binom[t].assign(r[t] + 1, 1.0);
        for (int v = 1; v <= r[t]; ++v) binom[t][v] = binom[t][v - 1] * (r[t] - v + 1) / v;
    }
    std::vector<int> nu(k, 0);
    Eigen::VectorXd h(k);
    double sum = 0;
    while (true) {
        double coeff = 1;
        int parity = 0;
        for (int t = 0; t < k; ++t) {
            h(t) = 0.5 * r[t] - nu[t];
            coeff *= binom[t][nu[t]];
            parity += nu[t];
        }
        const double q = 0.5 * h.dot(b * h);
        const double term = coeff * std::pow(q, half);
        sum += (parity & 1) ? -term : term;
        int t = 0;
        while (t < k && nu[t] == r[t]) nu[t++] = 0;
        if (t == k) break;
        ++nu[t];
    }
    return sum / std::exp(std::lgamma(half + 1.0));
}

}  // namespace vmgbs

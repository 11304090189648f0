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

// Python bindings for the main operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vmgbs/bench.h"
#include "vmgbs/dataset.h"
#include "vmgbs/gbs.h"
#include "vmgbs/graph.h"
#include "vmgbs/json_io.h"
#include "vmgbs/kernels.h"
#include "vmgbs/pipeline.h"
#include "vmgbs/vertex_minor.h"

namespace py = pybind11;
using namespace vmgbs;

namespace {

GbsConfig make_config(double squeeze_db, double eta_c, double eta_d, double loss_db_per_cm, int cutoff) {
    GbsConfig cfg;
    cfg.squeeze_db = squeeze_db;
    cfg.loss = {eta_c, eta_d, loss_db_per_cm, 10e-6};
    cfg.loss.validate();
    cfg.cutoff = cutoff;
    return cfg;
}

py::dict pair_dict(const LabeledPair &p) {
    py::dict d;
    d["parent"] = p.parent;
    d["child"] = p.child;
    d["label"] = p.is_vertex_minor ? 1 : 0;
    d["provenance"] = provenance_name(p.provenance);
    d["seed"] = p.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_vmgbs, m) {
    m.doc() = "Vertex-minor classification with simulated Gaussian boson sampling";
    m.attr("__version__") = VMGBS_VERSION;

    py::class_<Graph>(m, "Graph")
        .def(py::init([](const std::string &text) { return parse_graph_text(text); }), py::arg("text"),
             "Parse the 'n;u-v,...' text form.")
        .def(py::init([](int n, const std::vector<std::pair<int, int>> &edges) { return Graph::from_edges(n, edges); }),
             py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::size)
        .def_property_readonly("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("adjacency", &Graph::adjacency_matrix)
        .def("local_complement", [](const Graph &g, int v) { return local_complement(g, v); })
        .def("delete_vertex", [](const Graph &g, int v) { return delete_vertex(g, v); })
        .def("laplacian_spectrum", [](const Graph &g) { return laplacian_spectrum(g).values; })
        .def("canonical_form", [](const Graph &g) { return canonical_form(g); })
        .def("to_json", [](const Graph &g) { return nlohmann::json(g).dump(); })
        .def("__str__", &format_graph_text)
        .def("__repr__", [](const Graph &g) { return "Graph('" + format_graph_text(g) + "')"; })
        .def("__eq__", [](const Graph &a, const Graph &b) { return a == b; })
        .def("__hash__", [](const Graph &g) { return GraphHash{}(g); });

    m.def("random_graph", [](int n, double p, uint64_t seed) {
        Rng rng(seed);
        return random_graph(n, p, rng);
    }, py::arg("n"), py::arg("p") = 0.5, py::arg("seed"));
    m.def("random_lc_walk", [](const Graph &g, int length, uint64_t seed) {
        Rng rng(seed);
        return random_lc_walk(g, length, rng);
    }, py::arg("graph"), py::arg("length"), py::arg("seed"));
    m.def("are_isomorphic", &are_isomorphic);
    m.def("are_lc_equivalent", [](const Graph &a, const Graph &b) { return are_lc_equivalent(a, b); });
    m.def("is_vertex_minor", [](const Graph &parent, const Graph &child) { return is_vertex_minor(parent, child); },
          py::arg("parent"), py::arg("child"));
    m.def("bruteforce_cost", &bruteforce_cost);
    m.def("generate_dataset", [](int n_parent, int n_child, int positives, int negatives, uint64_t seed) {
        Dataset ds = generate_dataset(n_parent, n_child, positives, negatives, seed);
        py::list out;
        for (const auto &p : ds.pairs) out.append(pair_dict(p));
        return out;
    }, py::arg("n_parent"), py::arg("n_child"), py::arg("positives"), py::arg("negatives"), py::arg("seed"));

    m.def("hafnian", &hafnian, py::arg("matrix"));
    m.def("takagi", [](const Eigen::MatrixXd &a) {
        TakagiResult r = takagi(a);
        return py::make_tuple(r.u, r.values);
    }, py::arg("matrix"));
    m.def("db_to_squeezing", &db_to_squeezing);
    m.def("total_transmissivity", [](int n, double eta_c, double eta_d, double loss_db_per_cm) {
        return total_transmissivity({eta_c, eta_d, loss_db_per_cm, 10e-6}, n);
    }, py::arg("n_modes"), py::arg("eta_c") = 0.8, py::arg("eta_d") = 0.95, py::arg("loss_db_per_cm") = 0.25);
    m.def("transmissivity_to_db", &transmissivity_to_db);
    m.def("sample", [](const Graph &g, size_t count, uint64_t seed, double squeeze_db, double eta_c, double eta_d,
                       double loss_db_per_cm, int cutoff) {
        GbsConfig cfg = make_config(squeeze_db, eta_c, eta_d, loss_db_per_cm, cutoff);
        return sample_patterns(encode_with_config(g, cfg), count, seed, SamplerOptions{cutoff});
    }, py::arg("graph"), py::arg("count"), py::arg("seed"), py::arg("squeeze_db") = 5.0, py::arg("eta_c") = 0.8,
          py::arg("eta_d") = 0.95, py::arg("loss_db_per_cm") = 0.25, py::arg("cutoff") = 5);
    m.def("pattern_probability", [](const Graph &g, const PhotonPattern &pattern, double squeeze_db, double eta_c,
                                    double eta_d, double loss_db_per_cm) {
        GbsConfig cfg = make_config(squeeze_db, eta_c, eta_d, loss_db_per_cm, 5);
        return pattern_probability(encode_with_config(g, cfg), pattern);
    }, py::arg("graph"), py::arg("pattern"), py::arg("squeeze_db") = 5.0, py::arg("eta_c") = 0.8,
          py::arg("eta_d") = 0.95, py::arg("loss_db_per_cm") = 0.25);
    m.def("program_json", [](const Graph &g, double squeeze_db) {
        GbsConfig cfg;
        cfg.squeeze_db = squeeze_db;
        return program_to_json(compile_program(g, cfg)).dump();
    }, py::arg("graph"), py::arg("squeeze_db") = 5.0);

    m.def("graphlet_kernel", &graphlet_kernel);
    m.def("shortest_path_kernel", &shortest_path_kernel);
    m.def("wl_kernel", &wl_kernel, py::arg("a"), py::arg("b"), py::arg("iterations") = 3);

    m.def("spectral_feature", [](const Graph &a, const Graph &b) { return spectral_feature(a, b).values; });
    m.def("gbs_feature", [](const PhotonPattern &a, const PhotonPattern &b) { return gbs_feature(a, b).values; });
    m.def("train_linear_svm", [](const std::vector<std::vector<double>> &x, const std::vector<int> &y, double C,
                                 uint64_t seed) {
        LinearSvmOptions o;
        o.C = C;
        o.seed = seed;
        LinearSvmModel model = train_linear_svm(x, y, o);
        return py::make_tuple(model.weights, model.bias);
    }, py::arg("x"), py::arg("y"), py::arg("C") = 7.0, py::arg("seed") = 0);
    m.def("p_error", &p_error, py::arg("n"), py::arg("e"));
    m.def("k_of_delta", &k_of_delta, py::arg("delta"));
    m.def("trials_needed", &trials_needed, py::arg("epsilon"), py::arg("delta"));
    m.def("majority_vote", &majority_vote);

    m.def("quantum_wallclock", [](int n_modes, int n_trials, double rep_rate_hz, double t_takagi_s, double t_svm_s) {
        HardwareProfile p;
        p.rep_rate_hz = rep_rate_hz;
        p.t_takagi_s = t_takagi_s;
        p.t_svm_s = t_svm_s;
        return quantum_wallclock(p, n_modes, n_trials);
    }, py::arg("n_modes"), py::arg("n_trials"), py::arg("rep_rate_hz") = 1e7, py::arg("t_takagi_s") = 0.0,
          py::arg("t_svm_s") = 0.0);
    m.def("scaling_model", [](int n, double n_c, double n_q) {
        ScalingModel s = scaling_model(n, n_c, n_q);
        return py::make_tuple(s.classical, s.simulated_gbs, s.device);
    });
}

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

#include "cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "vmgbs/bench.h"
#include "vmgbs/dataset.h"
#include "vmgbs/errors.h"
#include "vmgbs/gbs.h"
#include "vmgbs/json_io.h"
#include "vmgbs/kernels.h"
#include "vmgbs/pipeline.h"

#ifndef VMGBS_GIT_REVISION
#define VMGBS_GIT_REVISION "unknown"
#endif

namespace vmgbs::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Every flag, with the same name as its config-file key. -1 means "command default".
struct Settings {
    uint64_t seed = 0;
    int parent = -1;
    int child = -1;
    int pos = -1;
    int neg = -1;
    int trials = -1;
    double target = 0.98;
    double squeeze_db = 5.0;
    double eta_c = 0.8;
    double eta_d = 0.95;
    double loss_db_per_cm = 0.25;
    double rep_rate_hz = 1e7;
    int cutoff = 5;
    std::string out;

    std::string data;
    std::string model;
    std::string kind = "spectral";
    std::string graph;
    std::string vacuum = "half-identity";
    std::string combine = "sum";
    std::string squeeze_grid = "3,5,8";
    std::string loss_grid = "0,1.2,3";
    double C = 7;
    double test_fraction = 0.25;
    int samples_per_pair = 10;
    int wl_iterations = 3;
    int min_n = 6;
    int max_n = 12;
    int eval_pairs = 15;
    int repetitions = -1;
    int timing_runs = 5;
    int samples = 0;
    int stride = 1;
};

using Field = std::variant<int *, double *, std::string *, uint64_t *>;

struct OptionSpec {
    std::string name;
    std::string help;
    Field field;
};

std::vector<OptionSpec> option_table(Settings &s) {
    return {
        {"seed", "RNG seed; required by stochastic commands", &s.seed},
        {"parent", "parent graph size", &s.parent},
        {"child", "child graph size (default max(6, parent-1))", &s.child},
        {"pos", "positive pairs", &s.pos},
        {"neg", "negative pairs", &s.neg},
        {"trials", "trial count; the cap for sweep and runtime-model", &s.trials},
        {"target", "target accuracy for sweep and runtime-model", &s.target},
        {"squeeze-db", "maximum squeezing in dB", &s.squeeze_db},
        {"eta-c", "coupling transmissivity", &s.eta_c},
        {"eta-d", "detector efficiency", &s.eta_d},
        {"loss-db-per-cm", "waveguide loss in dB/cm", &s.loss_db_per_cm},
        {"rep-rate-hz", "device repetition rate", &s.rep_rate_hz},
        {"cutoff", "photon-number cutoff per mode", &s.cutoff},
        {"out", "output path", &s.out},
        {"data", "dataset JSON-lines file", &s.data},
        {"model", "model JSON file", &s.model},
        {"kind", "spectral, gbs-sample, graphlet, shortest-path or wl", &s.kind},
        {"graph", "graph as 'n;u-v,...' or inline JSON", &s.graph},
        {"vacuum", "loss-channel vacuum: half-identity or identity", &s.vacuum},
        {"combine", "pair kernel: sum or product", &s.combine},
        {"squeeze-grid", "comma-separated squeezing values in dB", &s.squeeze_grid},
        {"loss-grid", "comma-separated total losses in dB", &s.loss_grid},
        {"C", "SVM regularization constant", &s.C},
        {"test-fraction", "held-out fraction for train", &s.test_fraction},
        {"samples-per-pair", "GBS training samples per pair", &s.samples_per_pair},
        {"wl-iterations", "Weisfeiler-Lehman rounds", &s.wl_iterations},
        {"min-n", "smallest size for runtime-model", &s.min_n},
        {"max-n", "largest size for runtime-model", &s.max_n},
        {"eval-pairs", "evaluation pairs per cell or size", &s.eval_pairs},
        {"repetitions", "vote-seed repetitions per evaluation pair", &s.repetitions},
        {"timing-runs", "timed runs per median", &s.timing_runs},
        {"samples", "GBS samples to write in verify", &s.samples},
        {"stride", "audit every stride-th dataset pair", &s.stride},
    };
}

void apply_config(const json &config, Settings &s) {
    if (!config.is_object()) throw UsageError("config file must hold a JSON object");
    auto table = option_table(s);
    for (const auto &[key, value] : config.items()) {
        if (key == "config") continue;
        auto it = std::find_if(table.begin(), table.end(), [&](const OptionSpec &o) { return o.name == key; });
        if (it == table.end()) throw UsageError("unknown config key '" + key + "'");
        try {
            std::visit([&](auto *p) { *p = value.get<std::remove_pointer_t<decltype(p)>>(); }, it->field);
        } catch (const json::exception &) {
            throw UsageError("config key '" + key + "' has the wrong type");
        }
    }
}

json settings_json(Settings &s) {
    json j = json::object();
    for (const auto &o : option_table(s)) std::visit([&](auto *p) { j[o.name] = *p; }, o.field);
    return j;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return os.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("error writing '" + path + "'");
}

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidDataset(what + " is not valid JSON: " + e.what());
    }
}

/// Collects written files and emits <out>.manifest.json next to the primary output.
class Manifest {
   public:
    Manifest(std::string command, Settings &s, std::map<std::string, bool> given)
        : command_(std::move(command)), config_(settings_json(s)), seed_(s.seed), given_(std::move(given)) {}

    void input(const std::string &path) {
        inputs_.push_back({{"path", path}, {"digest", content_digest(read_file(path))}});
    }
    void output(const std::string &path, const std::string &content) {
        write_file(path, content);
        outputs_.push_back({{"path", path}, {"digest", content_digest(content)}});
    }
    void set(const std::string &key, json value) { extra_[key] = std::move(value); }

    void write(const std::string &primary) {
        json m{{"command", command_},
               {"code_version", std::string(VMGBS_VERSION) + "+" + VMGBS_GIT_REVISION},
               {"seed", seed_},
               {"seed_given", given_.count("seed") > 0},
               {"config", config_},
               {"config_digest", json_digest(config_)},
               {"inputs", inputs_},
               {"outputs", outputs_}};
        for (auto &[k, v] : extra_.items()) m[k] = v;
        write_file(primary + ".manifest.json", m.dump(2) + "\n");
    }

   private:
    std::string command_;
    json config_;
    uint64_t seed_;
    std::map<std::string, bool> given_;
    json inputs_ = json::array();
    json outputs_ = json::array();
    json extra_ = json::object();
};

struct Context {
    Settings s;
    std::map<std::string, bool> given;  // flags set by the command line or the config file
    std::ostream *out;

    bool has(const std::string &name) const { return given.count(name) > 0; }
    void require(const std::string &name) const {
        if (!has(name)) throw UsageError("--" + name + " is required for this command");
    }
    int or_default(int value, int fallback) const { return value < 0 ? fallback : value; }
};

std::vector<double> parse_list(const std::string &text, const std::string &flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw UsageError("--" + flag + " expects comma-separated numbers, got '" + text + "'");
        }
    }
    if (values.empty()) throw UsageError("--" + flag + " is empty");
    return values;
}

GbsConfig gbs_config(const Settings &s) {
    GbsConfig cfg;
    cfg.squeeze_db = s.squeeze_db;
    cfg.loss = {s.eta_c, s.eta_d, s.loss_db_per_cm, 10e-6};
    cfg.loss.validate();
    if (s.vacuum == "half-identity") {
        cfg.vacuum = VacuumConvention::kHalfIdentity;
    } else if (s.vacuum == "identity") {
        cfg.vacuum = VacuumConvention::kIdentity;
    } else {
        throw UsageError("--vacuum must be half-identity or identity");
    }
    if (s.cutoff < 1) throw UsageError("--cutoff must be positive");
    cfg.cutoff = s.cutoff;
    return cfg;
}

GbsConfig gbs_config_from_json(const json &j) {
    GbsConfig cfg;
    cfg.squeeze_db = j.at("squeeze_db").get<double>();
    cfg.loss = {j.at("eta_c").get<double>(), j.at("eta_d").get<double>(), j.at("loss_db_per_cm").get<double>(),
                j.at("layer_length_m").get<double>()};
    cfg.vacuum = j.at("vacuum").get<std::string>() == "identity" ? VacuumConvention::kIdentity
                                                                   : VacuumConvention::kHalfIdentity;
    cfg.cutoff = j.at("cutoff").get<int>();
    return cfg;
}

KernelOptions kernel_options(const Settings &s) {
    KernelOptions k;
    k.kind = parse_kernel(s.kind);
    k.wl_iterations = s.wl_iterations;
    if (s.combine == "sum") {
        k.combine = PairCombine::kSum;
    } else if (s.combine == "product") {
        k.combine = PairCombine::kProduct;
    } else {
        throw UsageError("--combine must be sum or product");
    }
    return k;
}

KernelOptions kernel_options_from_json(const json &j) {
    KernelOptions k;
    k.kind = parse_kernel(j.at("kind").get<std::string>());
    k.wl_iterations = j.at("wl_iterations").get<int>();
    k.combine = j.at("combine").get<std::string>() == "product" ? PairCombine::kProduct : PairCombine::kSum;
    return k;
}

Dataset load_dataset(const std::string &path, Manifest *manifest) {
    std::string text = read_file(path);
    if (manifest) manifest->input(path);
    std::istringstream in(text);
    Dataset ds = read_dataset_jsonl(in);
    if (ds.pairs.empty()) throw InvalidDataset("dataset '" + path + "' has no pairs");
    return ds;
}

Graph parse_graph_arg(const std::string &text) {
    if (!text.empty() && text.front() == '{') return parse_json(text, "--graph").get<Graph>();
    return parse_graph_text(text);
}

std::vector<std::pair<Graph, Graph>> graph_pairs(const std::vector<LabeledPair> &pairs) {
    std::vector<std::pair<Graph, Graph>> out;
    for (const auto &p : pairs) out.emplace_back(p.parent, p.child);
    return out;
}

int label_of(const LabeledPair &p) { return p.is_vertex_minor ? 1 : -1; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// gen-dataset

int cmd_gen_dataset(Context &c) {
    c.require("seed");
    c.require("out");
    const int parent = c.or_default(c.s.parent, 7);
    const int child = c.or_default(c.s.child, default_child_size(parent));
    const int pos = c.or_default(c.s.pos, 500), neg = c.or_default(c.s.neg, 500);
    Dataset ds = generate_dataset(parent, child, pos, neg, c.s.seed);
    std::ostringstream body;
    write_dataset_jsonl(ds, body);
    Manifest m("gen-dataset", c.s, c.given);
    m.output(c.s.out, body.str());
    m.set("pairs", ds.pairs.size());
    m.write(c.s.out);
    *c.out << "wrote " << ds.pairs.size() << " pairs (n_parent=" << parent << ", n_child=" << child << ") to "
           << c.s.out << "\n";
    return kExitOk;
}

// train

int cmd_train(Context &c) {
    c.require("seed");
    c.require("data");
    c.require("out");
    Manifest m("train", c.s, c.given);
    Dataset ds = load_dataset(c.s.data, &m);
    if (!(c.s.test_fraction >= 0 && c.s.test_fraction < 1)) throw UsageError("--test-fraction must be in [0, 1)");
    Split split = split_dataset(ds, c.s.test_fraction, c.s.seed);
    if (split.train.empty()) throw UsageError("training split is empty");
    LinearSvmOptions lo;
    lo.C = c.s.C;
    lo.seed = c.s.seed;
    json model_json;
    int correct = 0;
    if (c.s.kind == "spectral" || c.s.kind == "gbs-sample") {
        const bool spectral = c.s.kind == "spectral";
        GbsConfig cfg = gbs_config(c.s);
        LinearSvmModel model = spectral ? train_spectral_model(split.train, lo)
                                        : train_gbs_model(split.train, cfg, c.s.samples_per_pair, lo);
        model_json = model.to_json();
        if (!spectral) model_json["gbs_config"] = cfg.to_json();
        for (size_t i = 0; i < split.test.size(); ++i) {
            const auto &p = split.test[i];
            const uint64_t seed = derive_seed(c.s.seed, 0x7e57 + i);
            int label = spectral ? model.predict(spectral_feature(p.parent, p.child).values)
                                 : quantum_classify(p.parent, p.child, model, 1, cfg, seed).label;
            correct += label == label_of(p);
        }
    } else {
        KernelOptions ko = kernel_options(c.s);
        const auto train = graph_pairs(split.train);
        Eigen::MatrixXd gram = pair_gram(train, train, ko);
        check_gram(gram);
        std::vector<int> y;
        for (const auto &p : split.train) y.push_back(label_of(p));
        KernelSvmModel model = train_kernel_svm(gram, y, c.s.C);
        json support = json::array();
        for (size_t i : model.support_indices()) {
            support.push_back({{"index", i}, {"parent", split.train[i].parent}, {"child", split.train[i].child}});
        }
        model_json = {{"kind", "kernel"},
                      {"kernel", ko.to_json()},
                      {"svm", model.to_json()},
                      {"support", support},
                      {"n_train", split.train.size()},
                      {"n_parent", ds.n_parent},
                      {"n_child", ds.n_child},
                      {"training_seed", c.s.seed}};
        std::ostringstream gram_csv;
        write_gram_csv(gram, ko, gram_csv);
        m.output(c.s.out + ".gram.csv", gram_csv.str());
        if (!split.test.empty()) {
            Eigen::MatrixXd cross = pair_gram(graph_pairs(split.test), train, ko);
            for (size_t i = 0; i < split.test.size(); ++i) {
                Eigen::VectorXd row = cross.row(static_cast<Eigen::Index>(i)).transpose();
                correct += predict_kernel(model, row) == label_of(split.test[i]);
            }
        }
    }
    m.output(c.s.out, model_json.dump(2) + "\n");
    const double accuracy = split.test.empty() ? 0.0 : static_cast<double>(correct) / split.test.size();
    m.set("train_pairs", split.train.size());
    m.set("test_pairs", split.test.size());
    m.set("held_out_single_shot_accuracy", accuracy);
    m.write(c.s.out);
    *c.out << "trained " << c.s.kind << " model on " << split.train.size() << " pairs; held-out single-shot accuracy "
           << fmt(accuracy) << " on " << split.test.size() << " pairs\n";
    return kExitOk;
}

// eval

int cmd_eval(Context &c) {
    c.require("seed");
    c.require("model");
    c.require("data");
    c.require("out");
    Manifest m("eval", c.s, c.given);
    json mj = parse_json(read_file(c.s.model), "model file");
    m.input(c.s.model);
    Dataset ds = load_dataset(c.s.data, &m);
    const int trials = c.or_default(c.s.trials, 1);
    if (trials < 1 || trials % 2 == 0) throw UsageError("--trials must be odd and positive");

    std::vector<Classification> results(ds.pairs.size());
    const bool kernel = mj.value("kind", std::string()) == "kernel";
    if (kernel) {
        if (trials != 1) throw UsageError("kernel models are deterministic; use --trials 1");
        KernelOptions ko = kernel_options_from_json(mj.at("kernel"));
        KernelSvmModel model = KernelSvmModel::from_json(mj.at("svm"));
        std::vector<size_t> index;
        std::vector<std::pair<Graph, Graph>> support;
        for (const auto &sv : mj.at("support")) {
            index.push_back(sv.at("index").get<size_t>());
            support.emplace_back(sv.at("parent").get<Graph>(), sv.at("child").get<Graph>());
        }
        Eigen::MatrixXd cross = pair_gram(graph_pairs(ds.pairs), support, ko);
        for (size_t i = 0; i < ds.pairs.size(); ++i) {
            Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.alphas.size()));
            for (size_t k = 0; k < index.size(); ++k) {
                if (index[k] >= model.alphas.size()) throw InvalidDataset("support index out of range");
                row(static_cast<Eigen::Index>(index[k])) = cross(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            }
            results[i].label = predict_kernel(model, row);
            results[i].votes = {results[i].label};
        }
    } else {
        LinearSvmModel model = LinearSvmModel::from_json(mj);
        GbsConfig cfg;
        if (model.kind == FeatureKind::kGbsSample) {
            if (!mj.contains("gbs_config")) throw InvalidDataset("GBS model lacks its encoding configuration");
            cfg = gbs_config_from_json(mj.at("gbs_config"));
            if (json_digest(cfg.to_json()) != model.encoding_digest) {
                throw InvalidDataset("GBS model's encoding digest does not match its configuration");
            }
        }
        for (size_t i = 0; i < ds.pairs.size(); ++i) {
            const auto &p = ds.pairs[i];
            const uint64_t seed = derive_seed(c.s.seed, i);
            results[i] = model.kind == FeatureKind::kSpectral
                             ? randomized_classical_classify(p.parent, p.child, model, trials, seed)
                             : quantum_classify(p.parent, p.child, model, trials, cfg, seed);
        }
    }

    std::ostringstream summary, votes;
    summary << "pair,label,prediction,correct,votes_plus,votes_minus\n";
    votes << "pair,trial,vote\n";
    int correct = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        const auto &r = results[i];
        const int truth = label_of(ds.pairs[i]);
        const auto plus = std::count(r.votes.begin(), r.votes.end(), 1);
        correct += r.label == truth;
        summary << i << ',' << truth << ',' << r.label << ',' << (r.label == truth ? 1 : 0) << ',' << plus << ','
                << (static_cast<long>(r.votes.size()) - plus) << '\n';
        for (size_t t = 0; t < r.votes.size(); ++t) votes << i << ',' << t << ',' << r.votes[t] << '\n';
    }
    const double accuracy = static_cast<double>(correct) / results.size();
    m.output(c.s.out, summary.str());
    m.output(c.s.out + ".votes.csv", votes.str());
    m.set("trials", trials);
    m.set("accuracy", accuracy);
    m.write(c.s.out);
    *c.out << "accuracy " << fmt(accuracy) << " over " << results.size() << " pairs at " << trials << " trials\n";
    return kExitOk;
}

// sweep

int cmd_sweep(Context &c) {
    c.require("seed");
    c.require("out");
    SweepConfig sc;
    sc.n_parent = c.or_default(c.s.parent, 6);
    sc.n_child = c.or_default(c.s.child, default_child_size(sc.n_parent));
    sc.positives = c.or_default(c.s.pos, 150);
    sc.negatives = c.or_default(c.s.neg, 150);
    sc.eval_pairs = c.s.eval_pairs;
    sc.squeeze_db = parse_list(c.s.squeeze_grid, "squeeze-grid");
    sc.loss_db = parse_list(c.s.loss_grid, "loss-grid");
    sc.target = c.s.target;
    sc.trial_cap = c.or_default(c.s.trials, 1023);
    sc.samples_per_pair = c.s.samples_per_pair;
    sc.repetitions = c.or_default(c.s.repetitions, 5);
    sc.cutoff = c.s.cutoff;
    sc.C = c.s.C;
    sc.seed = c.s.seed;
    auto rows = sweep(sc);
    std::ostringstream body;
    write_sweep_csv(rows, body);
    Manifest m("sweep", c.s, c.given);
    m.output(c.s.out, body.str());
    m.write(c.s.out);
    *c.out << body.str();
    return kExitOk;
}

// runtime-model

int cmd_runtime_model(Context &c) {
    c.require("seed");
    c.require("out");
    RuntimeConfig rc;
    rc.min_n = c.s.min_n;
    rc.max_n = c.s.max_n;
    rc.positives = c.or_default(c.s.pos, 100);
    rc.negatives = c.or_default(c.s.neg, 100);
    rc.eval_pairs = c.s.eval_pairs;
    rc.target = c.s.target;
    rc.trial_cap = c.or_default(c.s.trials, 1023);
    rc.samples_per_pair = c.s.samples_per_pair;
    rc.repetitions = c.or_default(c.s.repetitions, 3);
    rc.timing_runs = std::max(5, c.s.timing_runs);
    rc.C = c.s.C;
    rc.gbs = gbs_config(c.s);
    rc.profile.rep_rate_hz = c.s.rep_rate_hz;
    rc.profile.squeeze_db = c.s.squeeze_db;
    rc.profile.loss = rc.gbs.loss;
    rc.seed = c.s.seed;
    auto rows = runtime_report(rc);
    std::ostringstream body;
    write_runtime_csv(rows, body);
    Manifest m("runtime-model", c.s, c.given);
    m.output(c.s.out, body.str());
    m.set("host", host_description());
    m.set("timing_note", "t_c_s and t_cgbs_s are single-worker medians measured on this host");
    m.write(c.s.out);
    *c.out << body.str();
    return kExitOk;
}

// verify

int cmd_verify(Context &c) {
    if (!c.has("data") && !c.has("graph")) throw UsageError("verify needs --data or --graph");
    bool ok = true;
    if (c.has("data")) {
        Dataset ds = load_dataset(c.s.data, nullptr);
        if (c.s.stride < 1) throw UsageError("--stride must be positive");
        auto bad = audit_dataset(ds, PairOptions{}.oracle, static_cast<size_t>(c.s.stride));
        const size_t checked = (ds.pairs.size() + c.s.stride - 1) / c.s.stride;
        *c.out << "audited " << checked << " of " << ds.pairs.size() << " pairs; " << bad.size()
               << " label mismatches\n";
        for (size_t i : bad) *c.out << "  mismatch at pair " << i << "\n";
        ok = ok && bad.empty();
    }
    if (c.has("graph")) {
        Graph g = parse_graph_arg(c.s.graph);
        GbsConfig cfg = gbs_config(c.s);
        GbsProgram program = compile_program(g, cfg);
        const int n = g.size();
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
        const double unitarity = (program.unitary.adjoint() * program.unitary - id).norm();
        const double rebuild = (program.mesh.reconstruct() - program.unitary).norm();
        const bool mesh_ok = unitarity < 1e-10 && rebuild < 1e-10 && program.mesh.depth <= std::max(1, n) &&
                             static_cast<int>(program.mesh.mzis.size()) == n * (n - 1) / 2;
        *c.out << "program: unitarity error " << fmt(unitarity) << ", mesh reconstruction error " << fmt(rebuild)
               << ", depth " << program.mesh.depth << ", " << program.mesh.mzis.size() << " MZIs, eta "
               << fmt(program.eta) << (mesh_ok ? "" : " [FAILED]") << "\n";
        ok = ok && mesh_ok;
        if (c.has("out")) {
            Manifest m("verify", c.s, c.given);
            m.output(c.s.out, program_to_json(program).dump(2) + "\n");
            if (c.s.samples > 0) {
                c.require("seed");
                auto patterns = sample_patterns(encode_with_config(g, cfg), static_cast<size_t>(c.s.samples),
                                                c.s.seed, SamplerOptions{cfg.cutoff});
                std::ostringstream csv;
                csv << "sample";
                for (int k = 0; k < n; ++k) csv << ",m" << k;
                csv << '\n';
                for (size_t i = 0; i < patterns.size(); ++i) {
                    csv << i;
                    for (int v : patterns[i]) csv << ',' << v;
                    csv << '\n';
                }
                m.output(c.s.out + ".samples.csv", csv.str());
            }
            m.write(c.s.out);
        } else if (c.s.samples > 0) {
            throw UsageError("--samples needs --out");
        }
    }
    *c.out << (ok ? "verify: OK\n" : "verify: FAILED\n");
    return ok ? kExitOk : kExitVerifyFailed;
}

/// Finds --config PATH or --config=PATH before the real parse.
std::string find_config(const std::vector<std::string> &args) {
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Context c;
    c.out = &out;
    CLI::App app{"vmgbs: vertex-minor classification with simulated Gaussian boson sampling"};
    app.require_subcommand(1);
    std::string config_path;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"gen-dataset", "generate labeled (parent, child) pairs as JSON lines"},
        {"train", "train a spectral, GBS or kernel model"},
        {"eval", "classify pairs with repeated trials and majority vote"},
        {"sweep", "required trials over a squeezing by loss grid"},
        {"runtime-model", "classical versus modeled device wall-clock per graph size"},
        {"verify", "re-check dataset labels or compile and check a GBS program"},
    };
    std::map<std::string, CLI::App *> subs;
    auto table = option_table(c.s);
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON file whose keys mirror the flags; flags win");
        for (const auto &o : table) {
            std::visit([&](auto *p) { sub->add_option("--" + o.name, *p, o.help); }, o.field);
        }
        subs[name] = sub;
    }

    try {
        try {
            std::string path = find_config(args);
            if (!path.empty()) {
                json config = parse_json(read_file(path), "config file '" + path + "'");
                apply_config(config, c.s);
                for (const auto &[key, value] : config.items()) c.given[key] = true;
            }
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        } catch (const CLI::ParseError &e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitUsage;
        }
        for (const auto &[name, sub] : subs) {
            if (!sub->parsed()) continue;
            for (const auto &o : table) {
                if (sub->count("--" + o.name) > 0) c.given[o.name] = true;
            }
            if (name == "gen-dataset") return cmd_gen_dataset(c);
            if (name == "train") return cmd_train(c);
            if (name == "eval") return cmd_eval(c);
            if (name == "sweep") return cmd_sweep(c);
            if (name == "runtime-model") return cmd_runtime_model(c);
            if (name == "verify") return cmd_verify(c);
        }
        err << "no subcommand given\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidEncoding &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InvalidDataset &e) {
        err << "input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const json::exception &e) {
        err << "input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace vmgbs::cli

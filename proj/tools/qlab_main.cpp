// qlab command-line tool: ingest states, power pools and instance files,
// run validations, searches and invariance trials, and emit deterministic
// JSON or text reports. Talks to the library exclusively through the
// public C API.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qlab/qlab.h"

using json = nlohmann::ordered_json;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::chrono::steady_clock::time_point g_command_start;

void check(qlab_status status, const std::string& context) {
    if (status != QLAB_OK)
        throw CliError(context + ": " + qlab_status_name(status) + ": " +
                       qlab_last_error());
}

// unique_ptr deleters for the C handles
template <typename T, void (*F)(T*)>
struct CDeleter {
    void operator()(T* p) const { F(p); }
};
using StatePtr = std::unique_ptr<qlab_state, CDeleter<qlab_state, qlab_state_free>>;
using PoolPtr = std::unique_ptr<qlab_pool, CDeleter<qlab_pool, qlab_pool_free>>;
using GraphPtr = std::unique_ptr<qlab_graph, CDeleter<qlab_graph, qlab_graph_free>>;
using ContextsPtr =
    std::unique_ptr<qlab_contexts, CDeleter<qlab_contexts, qlab_contexts_free>>;
using IsaPtr =
    std::unique_ptr<qlab_isa_report, CDeleter<qlab_isa_report, qlab_isa_report_free>>;
using InstancePtr =
    std::unique_ptr<qlab_instance, CDeleter<qlab_instance, qlab_instance_free>>;
using VerifyPtr = std::unique_ptr<qlab_verify_report,
                                  CDeleter<qlab_verify_report, qlab_verify_report_free>>;
using SearchPtr = std::unique_ptr<qlab_search_result,
                                  CDeleter<qlab_search_result, qlab_search_result_free>>;
using CertificatePtr =
    std::unique_ptr<qlab_certificate, CDeleter<qlab_certificate, qlab_certificate_free>>;
using ArrangementPtr =
    std::unique_ptr<qlab_arrangement, CDeleter<qlab_arrangement, qlab_arrangement_free>>;
using ReconstructionPtr =
    std::unique_ptr<qlab_reconstruction,
                    CDeleter<qlab_reconstruction, qlab_reconstruction_free>>;
using IndividualPtr =
    std::unique_ptr<qlab_individual, CDeleter<qlab_individual, qlab_individual_free>>;

struct RunConfig {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output_path;
    bool timing = false;
    std::vector<std::pair<std::string, std::string>> inputs;  // (flag, bytes)
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw CliError(path + ": " + e.what());
    }
}

json load_input(RunConfig& config, const std::string& flag,
                const std::string& path) {
    std::string bytes = read_file(path);
    config.inputs.emplace_back(flag, bytes);
    return parse_json(bytes, path);
}

// FNV-1a 64-bit over the (flag, bytes) pairs sorted by flag name
std::string inputs_digest(const RunConfig& config) {
    auto sorted = config.inputs;
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto eat = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0;
        h *= 0x100000001b3ULL;
    };
    for (const auto& [flag, bytes] : sorted) {
        eat(flag);
        eat(bytes);
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

// ---- schema helpers ----

const json& field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key))
        throw CliError(ctx + ": missing field '" + key + "'");
    return j[key];
}

int int_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = field(j, key, ctx);
    if (!v.is_number_integer())
        throw CliError(ctx + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

// [re, im] pair -> two doubles
void complex_entry(const json& v, double* out, const std::string& ctx) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw CliError(ctx + ": expected an [re, im] pair");
    out[0] = v[0].get<double>();
    out[1] = v[1].get<double>();
}

std::vector<double> ket_entries(const json& v, int dim, const std::string& ctx) {
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        throw CliError(ctx + ": expected " + std::to_string(dim) +
                       " amplitude pairs");
    std::vector<double> out(2 * dim);
    for (int i = 0; i < dim; ++i)
        complex_entry(v[i], &out[2 * i], ctx + "[" + std::to_string(i) + "]");
    return out;
}

std::vector<double> matrix_entries(const json& v, int dim, const std::string& ctx) {
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        throw CliError(ctx + ": expected a " + std::to_string(dim) + "x" +
                       std::to_string(dim) + " matrix");
    std::vector<double> out(2 * dim * dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = v[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw CliError(ctx + ": row " + std::to_string(i) + " must have " +
                           std::to_string(dim) + " entries");
        for (int k = 0; k < dim; ++k)
            complex_entry(row[k], &out[2 * (i * dim + k)],
                          ctx + "[" + std::to_string(i) + "][" +
                              std::to_string(k) + "]");
    }
    return out;
}

json complex_to_json(double re, double im) { return json::array({re, im}); }

json ket_to_json(const std::vector<double>& flat, int dim) {
    json out = json::array();
    for (int i = 0; i < dim; ++i)
        out.push_back(complex_to_json(flat[2 * i], flat[2 * i + 1]));
    return out;
}

json matrix_to_json(const std::vector<double>& flat, int dim) {
    json out = json::array();
    for (int i = 0; i < dim; ++i) {
        json row = json::array();
        for (int k = 0; k < dim; ++k)
            row.push_back(complex_to_json(flat[2 * (i * dim + k)],
                                          flat[2 * (i * dim + k) + 1]));
        out.push_back(row);
    }
    return out;
}

// ---- loaders (spec'd file schemas) ----

StatePtr load_state(RunConfig& config, const std::string& path) {
    json j = load_input(config, "state", path);
    int dim = int_field(j, "dim", path);
    qlab_state* handle = nullptr;
    if (j.contains("ket")) {
        auto entries = ket_entries(j["ket"], dim, path + ": ket");
        check(qlab_state_from_ket(dim, entries.data(), config.tol, &handle), path);
    } else if (j.contains("rho")) {
        auto entries = matrix_entries(j["rho"], dim, path + ": rho");
        check(qlab_state_from_density(dim, entries.data(), config.tol, &handle),
              path);
    } else {
        throw CliError(path + ": state needs a 'ket' or 'rho' field");
    }
    return StatePtr(handle);
}

PoolPtr load_pool(RunConfig& config, const std::string& path) {
    json j = load_input(config, "pool", path);
    int dim = int_field(j, "dim", path);
    const json& powers = field(j, "powers", path);
    if (!powers.is_array() || powers.empty())
        throw CliError(path + ": 'powers' must be a nonempty array");
    qlab_pool* handle = nullptr;
    check(qlab_pool_new(dim, &handle), path);
    PoolPtr pool(handle);
    for (std::size_t i = 0; i < powers.size(); ++i) {
        const json& p = powers[i];
        std::string ctx = path + ": powers[" + std::to_string(i) + "]";
        std::string label = p.contains("label") ? p["label"].get<std::string>() : "";
        if (p.contains("ket")) {
            auto entries = ket_entries(p["ket"], dim, ctx + ": ket");
            check(qlab_pool_add_ket(pool.get(), entries.data(), label.c_str(),
                                    config.tol),
                  ctx);
        } else if (p.contains("matrix")) {
            auto entries = matrix_entries(p["matrix"], dim, ctx + ": matrix");
            check(qlab_pool_add_matrix(pool.get(), entries.data(), label.c_str(),
                                       config.tol),
                  ctx);
        } else {
            throw CliError(ctx + ": power needs a 'ket' or 'matrix' field");
        }
    }
    return pool;
}

InstancePtr load_instance(RunConfig& config, const std::string& path) {
    json j = load_input(config, "instance", path);
    int dim = int_field(j, "dim", path);
    const json& vectors = field(j, "vectors", path);
    if (!vectors.is_array() || vectors.empty())
        throw CliError(path + ": 'vectors' must be a nonempty array");
    qlab_instance* handle = nullptr;
    check(qlab_instance_new(dim, &handle), path);
    InstancePtr instance(handle);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto entries = ket_entries(vectors[i], dim,
                                   path + ": vectors[" + std::to_string(i) + "]");
        check(qlab_instance_add_vector(instance.get(), entries.data(), config.tol),
              path);
    }
    if (j.contains("contexts")) {
        const json& contexts = j["contexts"];
        if (!contexts.is_array())
            throw CliError(path + ": 'contexts' must be an array");
        for (std::size_t c = 0; c < contexts.size(); ++c) {
            std::vector<int> members;
            for (const json& m : contexts[c]) {
                if (!m.is_number_integer())
                    throw CliError(path + ": contexts[" + std::to_string(c) +
                                   "] must hold integers");
                members.push_back(m.get<int>());
            }
            check(qlab_instance_add_context(instance.get(),
                                            static_cast<int>(members.size()),
                                            members.data()),
                  path);
        }
    }
    return instance;
}

// single power: {"dim":., "label"?:., "ket"|"matrix":.} or a pool file
PoolPtr load_power_file(RunConfig& config, const std::string& path) {
    json j = load_input(config, "power", path);
    int dim = int_field(j, "dim", path);
    qlab_pool* handle = nullptr;
    check(qlab_pool_new(dim, &handle), path);
    PoolPtr pool(handle);
    if (j.contains("powers")) {
        for (std::size_t i = 0; i < j["powers"].size(); ++i) {
            const json& p = j["powers"][i];
            std::string ctx = path + ": powers[" + std::to_string(i) + "]";
            std::string label =
                p.contains("label") ? p["label"].get<std::string>() : "";
            if (p.contains("ket")) {
                auto entries = ket_entries(p["ket"], dim, ctx);
                check(qlab_pool_add_ket(pool.get(), entries.data(), label.c_str(),
                                        config.tol),
                      ctx);
            } else if (p.contains("matrix")) {
                auto entries = matrix_entries(p["matrix"], dim, ctx);
                check(qlab_pool_add_matrix(pool.get(), entries.data(),
                                           label.c_str(), config.tol),
                      ctx);
            } else {
                throw CliError(ctx + ": power needs a 'ket' or 'matrix' field");
            }
        }
        return pool;
    }
    std::string label = j.contains("label") ? j["label"].get<std::string>() : "";
    if (j.contains("ket")) {
        auto entries = ket_entries(j["ket"], dim, path + ": ket");
        check(qlab_pool_add_ket(pool.get(), entries.data(), label.c_str(),
                                config.tol),
              path);
    } else if (j.contains("matrix")) {
        auto entries = matrix_entries(j["matrix"], dim, path + ": matrix");
        check(qlab_pool_add_matrix(pool.get(), entries.data(), label.c_str(),
                                   config.tol),
              path);
    } else {
        throw CliError(path + ": power needs a 'ket' or 'matrix' field");
    }
    return pool;
}

std::vector<int> parse_factors(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty()) dims.push_back(std::stoi(part));
    if (dims.empty()) throw CliError("empty factorization '" + text + "'");
    return dims;
}

std::vector<int> prime_factorization(int n) {
    std::vector<int> factors;
    for (int p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            factors.push_back(p);
            n /= p;
        }
    if (n > 1) factors.push_back(n);
    return factors;
}

// ---- report emission ----

void render_text(const json& j, std::ostream& os, int indent = 0) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                os << pad << it.key() << ":\n";
                render_text(it.value(), os, indent + 2);
            } else {
                os << pad << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

int emit_report(const RunConfig& config, const std::string& command,
                const std::string& verdict, json details) {
    json report;
    report["command"] = command;
    report["inputs_digest"] = inputs_digest(config);
    report["verdict"] = verdict;
    report["details"] = std::move(details);
    if (config.timing) {
        auto elapsed = std::chrono::steady_clock::now() - g_command_start;
        report["wall_time_ms"] =
            std::chrono::duration<double, std::milli>(elapsed).count();
    }

    std::string text;
    if (config.format == "json") {
        text = report.dump(2) + "\n";
    } else {
        std::ostringstream os;
        render_text(report, os);
        text = os.str();
    }
    std::cout << text;
    if (!config.output_path.empty()) {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) throw CliError("cannot write " + config.output_path);
        out << text;
    }
    return 0;
}

void write_artifact(const std::string& path, const json& artifact) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError("cannot write " + path);
    out << artifact.dump(2) << "\n";
}

// ---- shared views over C handles ----

json contexts_to_json(const qlab_contexts* contexts) {
    json out = json::array();
    for (int c = 0; c < qlab_contexts_count(contexts); ++c) {
        std::vector<int> members(qlab_contexts_size(contexts, c));
        check(qlab_contexts_members(contexts, c, members.data()), "contexts");
        out.push_back(members);
    }
    return out;
}

json arrangement_artifact(const qlab_arrangement* ea) {
    int screens = qlab_arrangement_screen_count(ea);
    int degree = qlab_arrangement_degree(ea);
    json artifact;
    json dims = json::array();
    for (int s = 0; s < screens; ++s)
        dims.push_back(qlab_arrangement_factor_dim(ea, s));
    artifact["factor_dims"] = dims;
    json bases = json::array();
    for (int s = 0; s < screens; ++s) {
        int d = qlab_arrangement_factor_dim(ea, s);
        json screen = json::array();
        for (int k = 0; k < d; ++k) {
            std::vector<double> ket(2 * d);
            check(qlab_arrangement_basis_ket(ea, s, k, ket.data()), "basis ket");
            screen.push_back(ket_to_json(ket, d));
        }
        bases.push_back(screen);
    }
    artifact["bases"] = bases;
    std::vector<double> alpha(2 * degree * degree);
    check(qlab_arrangement_alpha(ea, alpha.data()), "alpha");
    artifact["alpha"] = matrix_to_json(alpha, degree);
    return artifact;
}

ArrangementPtr arrangement_from_artifact(const json& j, double tol,
                                         const std::string& ctx) {
    const json& dims_json = field(j, "factor_dims", ctx);
    std::vector<int> dims;
    for (const json& d : dims_json) dims.push_back(d.get<int>());
    if (dims.empty()) throw CliError(ctx + ": empty factor_dims");
    int degree = 1;
    for (int d : dims) degree *= d;

    const json& bases_json = field(j, "bases", ctx);
    if (static_cast<int>(bases_json.size()) != static_cast<int>(dims.size()))
        throw CliError(ctx + ": one basis per screen required");
    std::vector<std::vector<double>> bases;
    std::vector<const double*> base_ptrs;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        int d = dims[s];
        const json& screen = bases_json[s];
        if (!screen.is_array() || static_cast<int>(screen.size()) != d)
            throw CliError(ctx + ": screen " + std::to_string(s) + " needs " +
                           std::to_string(d) + " detector kets");
        std::vector<double> flat(2 * d * d);
        for (int k = 0; k < d; ++k) {
            auto ket = ket_entries(screen[k], d,
                                   ctx + ": bases[" + std::to_string(s) + "][" +
                                       std::to_string(k) + "]");
            std::copy(ket.begin(), ket.end(), flat.begin() + 2 * k * d);
        }
        bases.push_back(std::move(flat));
    }
    for (const auto& b : bases) base_ptrs.push_back(b.data());

    auto alpha = matrix_entries(field(j, "alpha", ctx), degree, ctx + ": alpha");
    qlab_arrangement* handle = nullptr;
    check(qlab_arrangement_from_alpha(static_cast<int>(dims.size()), dims.data(),
                                      base_ptrs.data(), alpha.data(), tol, &handle),
          ctx);
    return ArrangementPtr(handle);
}

json individual_artifact(const qlab_individual* ind) {
    int dim = qlab_individual_dim(ind);
    int size = qlab_individual_size(ind);
    json artifact;
    artifact["dim"] = dim;
    json powers = json::array();
    for (int i = 0; i < size; ++i) {
        std::vector<double> matrix(2 * dim * dim);
        check(qlab_individual_power_matrix(ind, i, matrix.data()), "power matrix");
        powers.push_back({{"matrix", matrix_to_json(matrix, dim)}});
    }
    artifact["powers"] = powers;
    if (qlab_individual_has_potentia(ind) == 1) {
        std::vector<double> values(size);
        check(qlab_individual_potentia(ind, values.data()), "potentia");
        artifact["potentia"] = values;
    }
    artifact["complete"] = qlab_individual_complete(ind) == 1;
    artifact["certified_minimal"] = qlab_individual_certified(ind) == 1;
    return artifact;
}

}  // namespace

// ---- commands ----

namespace {

int cmd_validate(RunConfig& config, const std::vector<std::string>& states,
                 const std::vector<std::string>& pools,
                 const std::vector<std::string>& instances,
                 const std::vector<std::string>& arrangements,
                 const std::vector<std::string>& individuals) {
    json targets = json::array();
    bool all_pass = true;
    auto add = [&](const std::string& kind, const std::string& path, bool pass,
                   json extra, const std::string& violation) {
        json t;
        t["kind"] = kind;
        t["path"] = path;
        t["pass"] = pass;
        if (!violation.empty()) t["violations"] = json::array({violation});
        for (auto& [k, v] : extra.items()) t[k] = v;
        targets.push_back(t);
        all_pass = all_pass && pass;
    };

    for (const auto& path : states) {
        try {
            StatePtr state = load_state(config, path);
            double purity = 0.0;
            check(qlab_state_purity(state.get(), &purity), path);
            add("state", path, true,
                {{"dim", qlab_state_dim(state.get())}, {"purity", purity}}, "");
        } catch (const CliError& e) {
            add("state", path, false, json::object(), e.what());
        }
    }
    for (const auto& path : pools) {
        try {
            PoolPtr pool = load_pool(config, path);
            add("pool", path, true,
                {{"dim", qlab_pool_dim(pool.get())},
                 {"powers", qlab_pool_size(pool.get())}},
                "");
        } catch (const CliError& e) {
            add("pool", path, false, json::object(), e.what());
        }
    }
    for (const auto& path : instances) {
        try {
            InstancePtr instance = load_instance(config, path);
            qlab_verify_report* raw = nullptr;
            check(qlab_instance_verify(instance.get(), config.tol, &raw), path);
            VerifyPtr report(raw);
            bool pass = qlab_verify_pass(report.get()) == 1;
            json extra;
            extra["dim"] = qlab_instance_dim(instance.get());
            extra["vectors"] = qlab_instance_vector_count(instance.get());
            extra["contexts"] = qlab_verify_context_count(report.get());
            if (!pass) {
                json violations = json::array();
                for (int v = 0; v < qlab_verify_violation_count(report.get()); ++v)
                    violations.push_back(qlab_verify_violation(report.get(), v));
                extra["violations"] = violations;
            }
            add("instance", path, pass, extra, "");
        } catch (const CliError& e) {
            add("instance", path, false, json::object(), e.what());
        }
    }
    for (const auto& path : arrangements) {
        try {
            json j = load_input(config, "arrangement", path);
            ArrangementPtr ea = arrangement_from_artifact(j, config.tol, path);
            add("arrangement", path, true,
                {{"degree", qlab_arrangement_degree(ea.get())},
                 {"screens", qlab_arrangement_screen_count(ea.get())}},
                "");
        } catch (const CliError& e) {
            add("arrangement", path, false, json::object(), e.what());
        }
    }
    for (const auto& path : individuals) {
        try {
            json j = load_input(config, "individual", path);
            int dim = int_field(j, "dim", path);
            const json& powers = field(j, "powers", path);
            std::vector<double> flat;
            for (std::size_t i = 0; i < powers.size(); ++i) {
                auto m = matrix_entries(field(powers[i], "matrix", path), dim,
                                        path + ": powers[" + std::to_string(i) +
                                            "]");
                flat.insert(flat.end(), m.begin(), m.end());
            }
            std::vector<double> potentia;
            if (j.contains("potentia"))
                potentia = j["potentia"].get<std::vector<double>>();
            qlab_individual* raw = nullptr;
            check(qlab_individual_create(
                      dim, static_cast<int>(powers.size()), flat.data(),
                      potentia.empty() ? nullptr : potentia.data(), config.tol,
                      &raw),
                  path);
            IndividualPtr ind(raw);
            add("individual", path, true,
                {{"dim", dim},
                 {"powers", qlab_individual_size(ind.get())},
                 {"complete", qlab_individual_complete(ind.get()) == 1},
                 {"rank", qlab_individual_rank(ind.get())}},
                "");
        } catch (const CliError& e) {
            add("individual", path, false, json::object(), e.what());
        }
    }

    json details;
    details["targets"] = targets;
    return emit_report(config, "validate", all_pass ? "pass" : "fail",
                       std::move(details));
}

int cmd_graph(RunConfig& config, const std::string& pool_path,
              const std::string& export_format, const std::string& emit_path,
              int cap) {
    PoolPtr pool = load_pool(config, pool_path);
    qlab_graph* raw = nullptr;
    check(qlab_graph_build(pool.get(), config.tol, cap, &raw), pool_path);
    GraphPtr graph(raw);

    qlab_contexts* raw_contexts = nullptr;
    check(qlab_graph_contexts(graph.get(), config.tol, &raw_contexts), pool_path);
    ContextsPtr contexts(raw_contexts);

    json details;
    details["dim"] = qlab_pool_dim(pool.get());
    details["vertices"] = qlab_graph_vertex_count(graph.get());
    details["edges"] = qlab_graph_edge_count(graph.get());
    std::vector<int> edges(2 * qlab_graph_edge_count(graph.get()));
    check(qlab_graph_edges(graph.get(), edges.data()), pool_path);
    json edge_list = json::array();
    for (std::size_t e = 0; e + 1 < edges.size(); e += 2)
        edge_list.push_back({edges[e], edges[e + 1]});
    details["edge_list"] = edge_list;
    details["contexts"] = contexts_to_json(contexts.get());

    if (!export_format.empty()) {
        char* text = nullptr;
        check(qlab_graph_export(graph.get(), export_format.c_str(), &text),
              pool_path);
        std::string exported(text);
        qlab_string_free(text);
        details["export_format"] = export_format;
        details["export"] = exported;
        if (!emit_path.empty()) {
            std::ofstream out(emit_path, std::ios::binary);
            if (!out) throw CliError("cannot write " + emit_path);
            out << exported;
        }
    }
    return emit_report(config, "graph", "pass", std::move(details));
}

int cmd_isa_check(RunConfig& config, const std::string& pool_path,
                  const std::string& state_path, const std::string& values_path) {
    PoolPtr pool = load_pool(config, pool_path);
    qlab_graph* raw_graph = nullptr;
    check(qlab_graph_build(pool.get(), config.tol, 0, &raw_graph), pool_path);
    GraphPtr graph(raw_graph);
    qlab_contexts* raw_contexts = nullptr;
    check(qlab_graph_contexts(graph.get(), config.tol, &raw_contexts), pool_path);
    ContextsPtr contexts(raw_contexts);

    int n = qlab_graph_vertex_count(graph.get());
    std::vector<double> values(n);
    std::string source;
    if (!state_path.empty()) {
        StatePtr state = load_state(config, state_path);
        check(qlab_giv_values(state.get(), graph.get(), config.tol, values.data()),
              state_path);
        source = "state";
    } else {
        json j = load_input(config, "values", values_path);
        const json& v = field(j, "values", values_path);
        if (static_cast<int>(v.size()) != n)
            throw CliError(values_path + ": expected " + std::to_string(n) +
                           " values, got " + std::to_string(v.size()));
        for (int i = 0; i < n; ++i) values[i] = v[i].get<double>();
        source = "table";
    }

    qlab_isa_report* raw_report = nullptr;
    check(qlab_isa_validate(graph.get(), contexts.get(), values.data(), n,
                            config.tol, &raw_report),
          pool_path);
    IsaPtr report(raw_report);

    json details;
    details["source"] = source;
    details["values"] = values;
    details["contexts"] = contexts_to_json(contexts.get());
    json context_checks = json::array();
    for (int c = 0; c < qlab_isa_report_context_count(report.get()); ++c) {
        double sum = 0.0, deviation = 0.0;
        int pass = 0;
        check(qlab_isa_report_context_check(report.get(), c, &sum, &deviation,
                                            &pass),
              "context check");
        context_checks.push_back(
            {{"context", c}, {"sum", sum}, {"deviation", deviation},
             {"pass", pass == 1}});
    }
    details["context_checks"] = context_checks;
    json additivity = json::array();
    for (int a = 0; a < qlab_isa_report_additivity_count(report.get()); ++a) {
        int target = 0, pass = 0, nmembers = 0;
        double lhs = 0.0, rhs = 0.0, deviation = 0.0;
        check(qlab_isa_report_additivity_check(report.get(), a, &target, &lhs,
                                               &rhs, &deviation, &pass, &nmembers),
              "additivity check");
        std::vector<int> members(nmembers);
        check(qlab_isa_report_additivity_members(report.get(), a, members.data()),
              "additivity members");
        additivity.push_back({{"members", members},
                              {"target", target},
                              {"target_value", lhs},
                              {"family_sum", rhs},
                              {"deviation", deviation},
                              {"pass", pass == 1}});
    }
    details["additivity_checks"] = additivity;
    double max_dev = 0.0;
    check(qlab_isa_report_max_deviation(report.get(), &max_dev), "max deviation");
    details["max_deviation"] = max_dev;

    bool pass = qlab_isa_report_pass(report.get()) == 1;
    return emit_report(config, "isa-check", pass ? "pass" : "fail",
                       std::move(details));
}

int cmd_ks(RunConfig& config, const std::string& instance_path) {
    InstancePtr instance = load_instance(config, instance_path);
    qlab_verify_report* raw_verify = nullptr;
    check(qlab_instance_verify(instance.get(), config.tol, &raw_verify),
          instance_path);
    VerifyPtr verification(raw_verify);

    json details;
    details["dim"] = qlab_instance_dim(instance.get());
    details["vectors"] = qlab_instance_vector_count(instance.get());
    details["contexts"] = qlab_verify_context_count(verification.get());

    if (qlab_verify_pass(verification.get()) != 1) {
        json violations = json::array();
        for (int v = 0; v < qlab_verify_violation_count(verification.get()); ++v)
            violations.push_back(qlab_verify_violation(verification.get(), v));
        details["violations"] = violations;
        return emit_report(config, "ks", "fail", std::move(details));
    }

    qlab_search_result* raw_result = nullptr;
    check(qlab_instance_search(instance.get(), config.tol, &raw_result),
          instance_path);
    SearchPtr result(raw_result);

    bool found = qlab_search_found(result.get()) == 1;
    details["nodes"] = qlab_search_nodes(result.get());
    if (config.timing) details["search_wall_ms"] = qlab_search_wall_ms(result.get());
    if (found) {
        std::vector<int> assignment(qlab_instance_vector_count(instance.get()));
        check(qlab_search_assignment(result.get(), assignment.data()),
              instance_path);
        details["assignment"] = assignment;
    }
    return emit_report(config, "ks", found ? "found" : "not-found",
                       std::move(details));
}

int cmd_certify(RunConfig& config, const std::string& state_path,
                const std::string& instance_path) {
    StatePtr state = load_state(config, state_path);
    InstancePtr instance = load_instance(config, instance_path);
    qlab_certificate* raw = nullptr;
    check(qlab_instance_certify(instance.get(), state.get(), config.tol, &raw),
          instance_path);
    CertificatePtr certificate(raw);

    json details;
    int n = qlab_instance_vector_count(instance.get());
    std::vector<double> potentia(n);
    check(qlab_certificate_potentia(certificate.get(), potentia.data()),
          instance_path);
    details["potentia"] = potentia;
    std::vector<double> sums(qlab_certificate_context_count(certificate.get()));
    check(qlab_certificate_context_sums(certificate.get(), sums.data()),
          instance_path);
    details["context_sums"] = sums;
    double max_dev = 0.0;
    check(qlab_certificate_max_deviation(certificate.get(), &max_dev),
          instance_path);
    details["max_deviation"] = max_dev;
    bool pass = qlab_certificate_pass(certificate.get()) == 1;
    return emit_report(config, "certify", pass ? "pass" : "fail",
                       std::move(details));
}

ArrangementPtr build_arrangement_from_files(RunConfig& config,
                                            const std::string& state_path,
                                            const std::string& factors,
                                            const std::string& bases_path) {
    StatePtr state = load_state(config, state_path);
    std::vector<int> dims = parse_factors(factors);

    std::vector<std::vector<double>> bases;
    std::vector<const double*> base_ptrs;
    if (!bases_path.empty()) {
        json j = load_input(config, "bases", bases_path);
        const json& screens = field(j, "bases", bases_path);
        if (static_cast<int>(screens.size()) != static_cast<int>(dims.size()))
            throw CliError(bases_path + ": one basis per screen required");
        for (std::size_t s = 0; s < dims.size(); ++s) {
            int d = dims[s];
            std::vector<double> flat(2 * d * d);
            for (int k = 0; k < d; ++k) {
                auto ket = ket_entries(screens[s][k], d,
                                       bases_path + ": bases[" +
                                           std::to_string(s) + "][" +
                                           std::to_string(k) + "]");
                std::copy(ket.begin(), ket.end(), flat.begin() + 2 * k * d);
            }
            bases.push_back(std::move(flat));
        }
        for (const auto& b : bases) base_ptrs.push_back(b.data());
    }

    qlab_arrangement* raw = nullptr;
    check(qlab_arrangement_build(state.get(), static_cast<int>(dims.size()),
                                 dims.data(),
                                 base_ptrs.empty() ? nullptr : base_ptrs.data(),
                                 config.tol, &raw),
          state_path);
    return ArrangementPtr(raw);
}

int cmd_arrange(RunConfig& config, const std::string& state_path,
                const std::string& factors, const std::string& bases_path,
                const std::string& emit_path) {
    ArrangementPtr ea =
        build_arrangement_from_files(config, state_path, factors, bases_path);

    int degree = qlab_arrangement_degree(ea.get());
    int screens = qlab_arrangement_screen_count(ea.get());
    json details;
    json dims = json::array();
    for (int s = 0; s < screens; ++s)
        dims.push_back(qlab_arrangement_factor_dim(ea.get(), s));
    details["factor_dims"] = dims;
    details["degree"] = degree;

    std::vector<double> alpha(2 * degree * degree);
    check(qlab_arrangement_alpha(ea.get(), alpha.data()), state_path);
    json diagonal = json::array();
    for (int k = 0; k < degree; ++k) diagonal.push_back(alpha[2 * (k * degree + k)]);
    details["diagonal_potentia"] = diagonal;

    int kdegree = 0, parameters = 0;
    double purity = 0.0;
    check(qlab_arrangement_knowledge(ea.get(), &kdegree, &parameters, &purity),
          state_path);
    details["independent_real_parameters"] = parameters;
    details["purity"] = purity;
    details["alpha"] = matrix_to_json(alpha, degree);

    if (!emit_path.empty())
        write_artifact(emit_path, arrangement_artifact(ea.get()));
    return emit_report(config, "arrange", "pass", std::move(details));
}

int cmd_invariance(RunConfig& config, const std::string& state_path, int trials,
                   std::vector<std::string> factor_args) {
    StatePtr state = load_state(config, state_path);
    int dim = qlab_state_dim(state.get());

    std::vector<std::vector<int>> factorizations;
    if (factor_args.empty()) {
        auto primes = prime_factorization(dim);
        factorizations.push_back(primes);
    } else {
        for (const auto& text : factor_args)
            factorizations.push_back(parse_factors(text));
    }

    const double threshold = 1e-10;  // pinned by the invariance contract
    double overall_max = 0.0;
    bool degree_stable = true;
    json per_factorization = json::array();

    for (std::size_t fi = 0; fi < factorizations.size(); ++fi) {
        const auto& dims = factorizations[fi];
        int product = 1;
        for (int d : dims) product *= d;
        if (product != dim)
            throw CliError("factorization does not multiply to the state dim " +
                           std::to_string(dim));
        int nscreens = static_cast<int>(dims.size());

        double basis_max = 0.0;
        double sub_max = 0.0;
        for (int t = 0; t < trials; ++t) {
            std::uint64_t ts = qlab_mix_seed(config.seed, fi, t);

            // random detector bases per screen (columns of a random unitary)
            std::vector<std::vector<double>> bases;
            for (int s = 0; s < nscreens; ++s) {
                std::vector<double> u(2 * dims[s] * dims[s]);
                check(qlab_random_unitary(dims[s], qlab_mix_seed(ts, 1, s),
                                          u.data()),
                      "random basis");
                // columns become detector kets
                std::vector<double> flat(2 * dims[s] * dims[s]);
                for (int k = 0; k < dims[s]; ++k)
                    for (int r = 0; r < dims[s]; ++r) {
                        flat[2 * (k * dims[s] + r)] = u[2 * (r * dims[s] + k)];
                        flat[2 * (k * dims[s] + r) + 1] =
                            u[2 * (r * dims[s] + k) + 1];
                    }
                bases.push_back(std::move(flat));
            }
            std::vector<const double*> base_ptrs;
            for (const auto& b : bases) base_ptrs.push_back(b.data());

            qlab_arrangement* raw = nullptr;
            check(qlab_arrangement_build(state.get(), nscreens, dims.data(),
                                         base_ptrs.data(), config.tol, &raw),
                  "arrangement");
            ArrangementPtr ea(raw);

            // ---- basis invariance: rebase by fresh per-screen unitaries
            std::vector<std::vector<double>> rotations;
            for (int s = 0; s < nscreens; ++s) {
                std::vector<double> u(2 * dims[s] * dims[s]);
                check(qlab_random_unitary(dims[s], qlab_mix_seed(ts, 2, s),
                                          u.data()),
                      "random rotation");
                rotations.push_back(std::move(u));
            }
            std::vector<const double*> rot_ptrs;
            for (const auto& u : rotations) rot_ptrs.push_back(u.data());
            qlab_arrangement* raw_rotated = nullptr;
            check(qlab_arrangement_rebase(ea.get(), rot_ptrs.data(), config.tol,
                                          &raw_rotated),
                  "rebase");
            ArrangementPtr rotated(raw_rotated);

            if (qlab_arrangement_degree(rotated.get()) !=
                qlab_arrangement_degree(ea.get()))
                degree_stable = false;

            for (int k = 0; k < 4; ++k) {
                std::vector<double> ket(2 * dim);
                check(qlab_random_ket(dim, qlab_mix_seed(ts, 3, k), ket.data()),
                      "random power");
                std::vector<double> projector(2 * dim * dim);
                check(qlab_make_projector(dim, ket.data(), config.tol,
                                          projector.data()),
                      "projector");
                double a = 0.0, b = 0.0, direct = 0.0;
                check(qlab_arrangement_potentia(ea.get(), projector.data(),
                                                config.tol, &a),
                      "potentia");
                check(qlab_arrangement_potentia(rotated.get(), projector.data(),
                                                config.tol, &b),
                      "potentia");
                check(qlab_state_potentia(state.get(), projector.data(),
                                          config.tol, &direct),
                      "potentia");
                basis_max = std::max({basis_max, std::abs(a - b),
                                      std::abs(a - direct)});
            }

            // ---- factorization invariance: restrict to a random subset
            if (nscreens >= 2) {
                std::uint64_t bits = qlab_mix_seed(ts, 4, 0);
                std::vector<int> keep;
                for (int s = 0; s < nscreens; ++s)
                    if ((bits >> s) & 1) keep.push_back(s);
                if (keep.empty())
                    keep.push_back(static_cast<int>(bits % static_cast<std::uint64_t>(nscreens)));
                qlab_arrangement* raw_sub = nullptr;
                check(qlab_arrangement_subarrangement(
                          ea.get(), static_cast<int>(keep.size()), keep.data(),
                          config.tol, &raw_sub),
                      "subarrangement");
                ArrangementPtr sub(raw_sub);

                int kept_dim = qlab_arrangement_degree(sub.get());
                for (int k = 0; k < 4; ++k) {
                    std::vector<double> ket(2 * kept_dim);
                    check(qlab_random_ket(kept_dim, qlab_mix_seed(ts, 5, k),
                                          ket.data()),
                          "random power");
                    std::vector<double> projector(2 * kept_dim * kept_dim);
                    check(qlab_make_projector(kept_dim, ket.data(), config.tol,
                                              projector.data()),
                          "projector");
                    std::vector<double> embedded(2 * dim * dim);
                    check(qlab_embed_power(nscreens, dims.data(),
                                           static_cast<int>(keep.size()),
                                           keep.data(), projector.data(),
                                           embedded.data()),
                          "embed");
                    double on_sub = 0.0, on_full = 0.0;
                    check(qlab_arrangement_potentia(sub.get(), projector.data(),
                                                    config.tol, &on_sub),
                          "potentia");
                    check(qlab_arrangement_potentia(ea.get(), embedded.data(),
                                                    config.tol, &on_full),
                          "potentia");
                    sub_max = std::max(sub_max, std::abs(on_sub - on_full));
                }
            }
        }
        overall_max = std::max({overall_max, basis_max, sub_max});
        json entry;
        entry["factor_dims"] = dims;
        entry["trials"] = trials;
        entry["basis_max_deviation"] = basis_max;
        entry["subarrangement_max_deviation"] = sub_max;
        per_factorization.push_back(entry);
    }

    json details;
    details["trials"] = trials;
    details["factorizations"] = per_factorization;
    details["max_deviation"] = overall_max;
    details["degree_stable"] = degree_stable;
    details["threshold"] = threshold;
    bool pass = degree_stable && overall_max <= threshold;
    return emit_report(config, "invariance", pass ? "pass" : "fail",
                       std::move(details));
}

int cmd_individual(RunConfig& config, const std::string& pool_path,
                   const std::string& state_path, const std::string& emit_path) {
    PoolPtr pool = load_pool(config, pool_path);
    StatePtr state;
    if (!state_path.empty()) state = load_state(config, state_path);

    int rank = 0, complete = 0;
    check(qlab_completeness_rank(pool.get(), &rank, &complete), pool_path);

    json details;
    details["pool_size"] = qlab_pool_size(pool.get());
    details["pool_rank"] = rank;
    details["pool_complete"] = complete == 1;

    if (complete != 1)
        return emit_report(config, "individual", "not-found", std::move(details));

    qlab_individual* raw = nullptr;
    check(qlab_find_minimal_individual(pool.get(), state.get(), config.tol, &raw),
          pool_path);
    IndividualPtr individual(raw);

    int size = qlab_individual_size(individual.get());
    details["size"] = size;
    details["certified_minimal"] = qlab_individual_certified(individual.get()) == 1;
    json members = json::array();
    for (int i = 0; i < size; ++i) {
        int at = qlab_individual_member_index(individual.get(), i);
        json m;
        m["pool_index"] = at;
        const char* label = qlab_pool_label(pool.get(), at);
        if (label && label[0]) m["label"] = label;
        members.push_back(m);
    }
    details["members"] = members;

    if (state) {
        std::vector<double> potentia(size);
        check(qlab_individual_potentia(individual.get(), potentia.data()),
              pool_path);
        details["potentia"] = potentia;

        // reconstruct from the member powers alone and compare to the state
        int dim = qlab_individual_dim(individual.get());
        qlab_pool* raw_members = nullptr;
        check(qlab_pool_new(dim, &raw_members), pool_path);
        PoolPtr member_pool(raw_members);
        for (int i = 0; i < size; ++i) {
            std::vector<double> matrix(2 * dim * dim);
            check(qlab_individual_power_matrix(individual.get(), i, matrix.data()),
                  pool_path);
            check(qlab_pool_add_matrix(member_pool.get(), matrix.data(), "",
                                       config.tol),
                  pool_path);
        }
        qlab_reconstruction* raw_rec = nullptr;
        check(qlab_reconstruct(member_pool.get(), potentia.data(), 0, config.tol,
                               &raw_rec),
              pool_path);
        ReconstructionPtr rec(raw_rec);
        double residual = 0.0, min_eig = 0.0;
        check(qlab_reconstruction_residual(rec.get(), &residual), pool_path);
        check(qlab_reconstruction_min_eigenvalue(rec.get(), &min_eig), pool_path);
        std::vector<double> rho_hat(2 * dim * dim), rho(2 * dim * dim);
        check(qlab_reconstruction_density(rec.get(), rho_hat.data()), pool_path);
        check(qlab_state_density(state.get(), rho.data()), pool_path);
        double err2 = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            double d = rho_hat[i] - rho[i];
            err2 += d * d;
        }
        json reconstruction;
        reconstruction["residual"] = residual;
        reconstruction["min_eigenvalue"] = min_eig;
        reconstruction["consistent"] =
            qlab_reconstruction_consistent(rec.get()) == 1;
        reconstruction["roundtrip_error"] = std::sqrt(err2);
        details["reconstruction"] = reconstruction;
    }

    if (!emit_path.empty())
        write_artifact(emit_path, individual_artifact(individual.get()));
    return emit_report(config, "individual", "found", std::move(details));
}

int cmd_potentia(RunConfig& config, const std::string& state_path,
                 const std::string& power_path) {
    StatePtr state = load_state(config, state_path);
    PoolPtr powers = load_power_file(config, power_path);
    if (qlab_pool_dim(powers.get()) != qlab_state_dim(state.get()))
        throw CliError("power dim " + std::to_string(qlab_pool_dim(powers.get())) +
                       " does not match state dim " +
                       std::to_string(qlab_state_dim(state.get())));

    int n = qlab_pool_size(powers.get());
    int dim = qlab_pool_dim(powers.get());
    json values = json::array();
    double single = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<double> matrix(2 * dim * dim);
        check(qlab_pool_power_matrix(powers.get(), i, matrix.data()), power_path);
        double v = 0.0;
        check(qlab_state_potentia(state.get(), matrix.data(), config.tol, &v),
              power_path);
        json entry;
        const char* label = qlab_pool_label(powers.get(), i);
        if (label && label[0]) entry["label"] = label;
        entry["value"] = v;
        values.push_back(entry);
        single = v;
    }
    json details;
    if (n == 1) {
        details["value"] = single;
        const char* label = qlab_pool_label(powers.get(), 0);
        if (label && label[0]) details["label"] = label;
    } else {
        details["values"] = values;
    }
    return emit_report(config, "potentia", "pass", std::move(details));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional quantum lab toolkit"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_option("--tol", config.tol, "validation tolerance in (0,1)")
        ->envname("LOGOS_QLAB_TOL");
    app.add_option("--seed", config.seed, "random seed (64-bit)");
    app.add_option("--format", config.format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--output", config.output_path, "also write the report here");
    app.add_flag("--timing", config.timing,
                 "include wall-clock timing in the report (non-deterministic)");

    // validate
    auto* validate = app.add_subcommand("validate", "file hygiene checks")->fallthrough();
    std::vector<std::string> v_states, v_pools, v_instances, v_arrangements,
        v_individuals;
    validate->add_option("--state", v_states, "state file(s)");
    validate->add_option("--pool", v_pools, "power pool file(s)");
    validate->add_option("--instance", v_instances, "instance file(s)");
    validate->add_option("--arrangement", v_arrangements, "arrangement file(s)");
    validate->add_option("--individual", v_individuals, "individual file(s)");

    // graph
    auto* graph = app.add_subcommand("graph", "build and export a power graph")->fallthrough();
    std::string g_pool, g_export, g_emit;
    int g_cap = 4096;
    graph->add_option("--pool", g_pool, "power pool file")->required();
    graph->add_option("--export", g_export, "dot or adjacency-json")
        ->check(CLI::IsMember({"dot", "adjacency-json"}));
    graph->add_option("--emit-path", g_emit, "write the export here");
    graph->add_option("--cap", g_cap, "pool size cap");

    // isa-check
    auto* isa = app.add_subcommand("isa-check",
                                   "validate a valuation table against the "
                                   "intensive-state axioms")->fallthrough();
    std::string i_pool, i_state, i_values;
    isa->add_option("--pool", i_pool, "power pool file")->required();
    isa->add_option("--state", i_state, "derive the table from this state");
    isa->add_option("--values", i_values, "explicit value table file");

    // ks
    auto* ks = app.add_subcommand("ks", "exhaustive binary-valuation search")->fallthrough();
    std::string k_instance;
    ks->add_option("--instance", k_instance, "instance file")->required();

    // certify
    auto* certify = app.add_subcommand("certify",
                                       "intensive consistency certificate")->fallthrough();
    std::string c_state, c_instance;
    certify->add_option("--state", c_state, "state file")->required();
    certify->add_option("--instance", c_instance, "instance file")->required();

    // arrange
    auto* arrange = app.add_subcommand("arrange", "build an arrangement")->fallthrough();
    std::string a_state, a_factors, a_bases, a_emit;
    arrange->add_option("--state", a_state, "lab state file")->required();
    arrange->add_option("--factors", a_factors, "screen dims, e.g. 2,2")
        ->required();
    arrange->add_option("--bases", a_bases, "detector bases file");
    arrange->add_option("--emit-path", a_emit, "write the arrangement here");

    // invariance
    auto* invariance = app.add_subcommand(
        "invariance", "random basis and factorization invariance trials")->fallthrough();
    std::string n_state;
    int n_trials = 100;
    std::vector<std::string> n_factors;
    invariance->add_option("--state", n_state, "lab state file")->required();
    invariance->add_option("--trials", n_trials, "trials per factorization");
    invariance->add_option("--factors", n_factors,
                           "factorization(s), e.g. --factors 2,2");

    // individual
    auto* individual = app.add_subcommand("individual",
                                          "minimal quantum individual")->fallthrough();
    std::string d_pool, d_state, d_emit;
    individual->add_option("--pool", d_pool, "power pool file")->required();
    individual->add_option("--state", d_state, "measure potentia on this state");
    individual->add_option("--emit-path", d_emit, "write the individual here");

    // potentia
    auto* pot = app.add_subcommand("potentia", "evaluate intensities")->fallthrough();
    std::string p_state, p_power;
    pot->add_option("--state", p_state, "state file")->required();
    pot->add_option("--power", p_power, "power file")->required();

    CLI11_PARSE(app, argc, argv);

    if (!(config.tol > 0.0 && config.tol < 1.0)) {
        std::cerr << "qlab: tolerance must lie in (0,1), got " << config.tol
                  << "\n";
        return 1;
    }

    try {
        g_command_start = std::chrono::steady_clock::now();
        int rc = 1;
        if (*validate)
            rc = cmd_validate(config, v_states, v_pools, v_instances,
                              v_arrangements, v_individuals);
        else if (*graph)
            rc = cmd_graph(config, g_pool, g_export, g_emit, g_cap);
        else if (*isa) {
            if (i_state.empty() == i_values.empty())
                throw CliError("isa-check needs exactly one of --state/--values");
            rc = cmd_isa_check(config, i_pool, i_state, i_values);
        } else if (*ks)
            rc = cmd_ks(config, k_instance);
        else if (*certify)
            rc = cmd_certify(config, c_state, c_instance);
        else if (*arrange)
            rc = cmd_arrange(config, a_state, a_factors, a_bases, a_emit);
        else if (*invariance)
            rc = cmd_invariance(config, n_state, n_trials, n_factors);
        else if (*individual)
            rc = cmd_individual(config, d_pool, d_state, d_emit);
        else if (*pot)
            rc = cmd_potentia(config, p_state, p_power);
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "qlab: " << e.what() << "\n";
        return 1;
    }
}

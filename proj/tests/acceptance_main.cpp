// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "core/arrangement.hpp"
#include "core/contextuality.hpp"
#include "core/graph.hpp"
#include "core/individual.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "core/valuation.hpp"
#include "test_helpers.hpp"

using namespace qlab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// ---- criterion 1: intensive-state axioms --------------------------------

void criterion_isa_axioms() {
    auto t0 = Clock::now();
    double max_unit_dev = 0.0;
    double max_additivity_dev = 0.0;
    Rng rng(1001);
    for (int dim : {2, 3, 4, 6, 8}) {
        Power ident(identity(dim), "I");
        for (int trial = 0; trial < 100; ++trial) {
            IntensiveState state = random_state(
                dim, trial % 2 ? StatePurity::Pure : StatePurity::Mixed,
                rng.next());
            max_unit_dev = std::max(
                max_unit_dev, std::abs(potentia(state, ident) - 1.0));

            // random orthogonal decomposition of I into random-rank powers
            Matrix u = random_unitary(dim, rng);
            double total = 0.0;
            int at = 0;
            while (at < dim) {
                int take = 1 + static_cast<int>(rng.next() % (dim - at));
                Matrix p = Matrix::Zero(dim, dim);
                for (int j = at; j < at + take; ++j)
                    p += u.col(j) * u.col(j).adjoint();
                p = ((p + p.adjoint()) / 2.0).eval();
                total += potentia(state, Power(p));
                at += take;
            }
            max_additivity_dev =
                std::max(max_additivity_dev, std::abs(total - 1.0));
        }
    }
    double elapsed = seconds_since(t0);
    bool pass = max_unit_dev <= 1e-12 && max_additivity_dev <= 1e-10 &&
                elapsed < 5.0;
    report(1, "intensive-state axioms", pass,
           "max |Psi(I)-1| = " + fmt(max_unit_dev) +
               " (<=1e-12), max additivity deviation = " +
               fmt(max_additivity_dev) + " (<=1e-10), " + fmt(elapsed) +
               "s (<5s)");
}

// ---- criterion 2: no global binary valuation ----------------------------

void criterion_ks_obstruction() {
    KsInstance inst = qt::load_ks_instance(qt::data_path("ks18.json"));
    VerifyReport verification = verify_instance(inst);
    if (!verification.pass) {
        report(2, "binary-valuation obstruction", false,
               "bundled instance failed verification");
        return;
    }

    auto t0 = Clock::now();
    SearchResult search = search_binary_valuation(inst);
    double backtrack_s = seconds_since(t0);
    bool not_found = !search.valuation.has_value();

    // independent flat enumeration: one choice per context, 4^9 candidates
    auto t1 = Clock::now();
    int n = static_cast<int>(inst.vectors.size());
    std::vector<std::uint32_t> orth_mask(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double overlap = std::abs(
                inst.vectors[i].amplitudes().dot(inst.vectors[j].amplitudes()));
            if (overlap <= 1e-9) orth_mask[i] |= (1u << j);
        }
    const auto& contexts = verification.effective_contexts;
    std::vector<std::uint32_t> context_mask;
    for (const Context& c : contexts) {
        std::uint32_t m = 0;
        for (int v : c.members) m |= (1u << v);
        context_mask.push_back(m);
    }
    long long candidates = 0;
    long long valid = 0;
    std::vector<int> choice(contexts.size(), 0);
    bool done = false;
    while (!done) {
        ++candidates;
        std::uint32_t chosen = 0;
        for (std::size_t c = 0; c < contexts.size(); ++c)
            chosen |= (1u << contexts[c].members[choice[c]]);
        bool ok = true;
        for (std::size_t c = 0; c < contexts.size() && ok; ++c)
            if (__builtin_popcount(chosen & context_mask[c]) != 1) ok = false;
        for (int v = 0; v < n && ok; ++v)
            if ((chosen >> v) & 1u)
                if (chosen & orth_mask[v]) ok = false;
        if (ok) ++valid;
        // odometer
        for (std::size_t c = 0;; ++c) {
            if (c == contexts.size()) {
                done = true;
                break;
            }
            if (++choice[c] < static_cast<int>(contexts[c].members.size())) break;
            choice[c] = 0;
        }
    }
    double flat_s = seconds_since(t1);

    bool pass = not_found && valid == 0 && candidates == 262144 &&
                backtrack_s < 1.0 && flat_s < 10.0;
    report(2, "binary-valuation obstruction", pass,
           std::string("backtracking verdict ") +
               (not_found ? "not-found" : "FOUND") + " in " + fmt(backtrack_s) +
               "s (<1s), flat enumeration " + std::to_string(candidates) +
               " candidates, " + std::to_string(valid) + " valid in " +
               fmt(flat_s) + "s (<10s)");
}

// ---- criterion 3: intensive bypass --------------------------------------

void criterion_intensive_bypass() {
    auto t0 = Clock::now();
    KsInstance inst = qt::load_ks_instance(qt::data_path("ks18.json"));
    Rng rng(3003);
    double max_dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        IntensiveState state = random_state(
            4, trial % 2 ? StatePurity::Pure : StatePurity::Mixed, rng.next());
        CertificateReport cert = intensive_certificate(state, inst);
        max_dev = std::max(max_dev, cert.max_deviation);
    }
    double elapsed = seconds_since(t0);
    bool pass = max_dev <= 1e-10 && elapsed < 2.0;
    report(3, "intensive bypass", pass,
           "100 states, max context-sum deviation = " + fmt(max_dev) +
               " (<=1e-10), " + fmt(elapsed) + "s (<2s)");
}

// ---- criteria 4 and 5: invariance under rebasing and restriction --------

DetectorBasis random_basis(const Factorization& f, Rng& rng) {
    std::vector<std::vector<Ket>> screens;
    for (int d : f.factor_dims) {
        Matrix u = random_unitary(d, rng);
        std::vector<Ket> kets;
        for (int j = 0; j < d; ++j) kets.emplace_back(CVector(u.col(j)));
        screens.push_back(std::move(kets));
    }
    return DetectorBasis(f, std::move(screens));
}

void criterion_basis_invariance() {
    auto t0 = Clock::now();
    Rng rng(4004);
    double max_dev = 0.0;
    bool degree_stable = true;
    for (const auto& dims :
         std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}}) {
        Factorization f(dims);
        int dim = f.total_dim();
        for (int trial = 0; trial < 100; ++trial) {
            IntensiveState lab = random_state(
                dim, trial % 2 ? StatePurity::Pure : StatePurity::Mixed,
                rng.next());
            ExperimentalArrangement ea =
                build_arrangement(lab, f, random_basis(f, rng));
            std::vector<Matrix> rotations;
            for (int d : dims) rotations.push_back(random_unitary(d, rng));
            ExperimentalArrangement rotated = rebase(ea, rotations);
            if (rotated.degree() != ea.degree()) degree_stable = false;

            // shared powers: the original product-basis powers plus random ones
            Matrix w = ea.basis().product_basis_matrix();
            for (int k = 0; k < ea.degree(); ++k) {
                Power p = make_projector(Ket(CVector(w.col(k))));
                double a = arrangement_potentia(ea, p);
                double b = arrangement_potentia(rotated, p);
                double direct = potentia(lab, p);
                max_dev = std::max({max_dev, std::abs(a - b),
                                    std::abs(a - direct)});
            }
            for (int k = 0; k < 4; ++k) {
                Power p = make_projector(Ket(random_unit_vector(dim, rng)));
                double a = arrangement_potentia(ea, p);
                double b = arrangement_potentia(rotated, p);
                max_dev = std::max(max_dev, std::abs(a - b));
            }
        }
    }
    double elapsed = seconds_since(t0);
    bool pass = degree_stable && max_dev <= 1e-10;
    report(4, "basis invariance", pass,
           "300 trials over (2,2),(2,3),(3,3): degree " +
               std::string(degree_stable ? "stable" : "CHANGED") +
               ", max potentia deviation = " + fmt(max_dev) + " (<=1e-10), " +
               fmt(elapsed) + "s");
}

void criterion_factorization_invariance() {
    auto t0 = Clock::now();
    Rng rng(5005);
    double max_dev = 0.0;
    for (const auto& dims :
         std::vector<std::vector<int>>{{2, 2}, {2, 3}, {2, 2, 2}}) {
        Factorization f(dims);
        int dim = f.total_dim();
        for (int trial = 0; trial < 100; ++trial) {
            IntensiveState lab = random_state(
                dim, trial % 2 ? StatePurity::Pure : StatePurity::Mixed,
                rng.next());
            ExperimentalArrangement ea =
                build_arrangement(lab, f, random_basis(f, rng));
            std::vector<int> keep;
            while (keep.empty())
                for (int s = 0; s < f.screens(); ++s)
                    if (rng.next() % 2) keep.push_back(s);
            ExperimentalArrangement sub = derive_subarrangement(ea, keep);
            for (int k = 0; k < 4; ++k) {
                Power p =
                    make_projector(Ket(random_unit_vector(sub.degree(), rng)));
                Power embedded{embed_on_factors(p.op(), f.factor_dims, keep)};
                double a = arrangement_potentia(sub, p);
                double b = arrangement_potentia(ea, embedded);
                max_dev = std::max(max_dev, std::abs(a - b));
            }
        }
    }
    double elapsed = seconds_since(t0);
    bool pass = max_dev <= 1e-10;
    report(5, "factorization invariance", pass,
           "300 trials over (2,2),(2,3),(2,2,2): max sub-arrangement deviation "
           "= " +
               fmt(max_dev) + " (<=1e-10), " + fmt(elapsed) + "s");
}

// ---- criterion 6: minimal individual at dim 2 ---------------------------

void criterion_individual_dim2() {
    auto t0 = Clock::now();
    auto pool = qt::spin_pool();
    QuantumIndividual ind = find_minimal_individual(pool, 2);
    bool three = ind.powers.size() == 3 && ind.complete && ind.certified_minimal;

    bool no_two_subset = true;
    for (std::size_t a = 0; a < pool.size(); ++a)
        for (std::size_t b = a + 1; b < pool.size(); ++b)
            if (completeness_rank({pool[a], pool[b]}, 2).complete)
                no_two_subset = false;

    Rng rng(6006);
    double max_roundtrip = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        IntensiveState state = random_state(
            2, trial % 2 ? StatePurity::Pure : StatePurity::Mixed, rng.next());
        QuantumIndividual measured = measure_individual(ind, state);
        ReconstructionResult rec =
            reconstruct(measured.powers, measured.potentia, 2);
        max_roundtrip =
            std::max(max_roundtrip, (rec.rho_hat - state.rho()).norm());
    }
    double elapsed = seconds_since(t0);
    bool pass = three && no_two_subset && max_roundtrip <= 1e-8 && elapsed < 1.0;
    report(6, "minimal individual, dim 2", pass,
           "spin pool -> " + std::to_string(ind.powers.size()) +
               " powers (=3), no complete 2-subset: " +
               (no_two_subset ? "confirmed" : "VIOLATED") +
               ", max reconstruction error = " + fmt(max_roundtrip) +
               " (<=1e-8), " + fmt(elapsed) + "s (<1s)");
}

// ---- criterion 7: minimal individual at dim 3 ---------------------------

void criterion_individual_dim3() {
    auto t0 = Clock::now();
    bool all_eight = true;
    bool exhaustively_minimal = true;
    for (int pool_id = 0; pool_id < 5; ++pool_id) {
        Rng rng(7007 + pool_id);
        std::vector<Power> pool;
        for (int i = 0; i < 12; ++i)
            pool.push_back(make_projector(Ket(random_unit_vector(3, rng))));
        QuantumIndividual ind = find_minimal_individual(pool, 3);
        if (!(ind.complete && ind.certified_minimal && ind.powers.size() == 8))
            all_eight = false;

        // exhaustive: no 7-subset of the pool is complete
        std::vector<int> subset(7);
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b)
                for (int c = b + 1; c < 12; ++c)
                    for (int d = c + 1; d < 12; ++d)
                        for (int e = d + 1; e < 12; ++e)
                            for (int f = e + 1; f < 12; ++f)
                                for (int g = f + 1; g < 12; ++g) {
                                    std::vector<Power> sub = {
                                        pool[a], pool[b], pool[c], pool[d],
                                        pool[e], pool[f], pool[g]};
                                    if (completeness_rank(sub, 3).complete)
                                        exhaustively_minimal = false;
                                }
    }
    double elapsed = seconds_since(t0);
    bool pass = all_eight && exhaustively_minimal && elapsed < 30.0;
    report(7, "minimal individual, dim 3", pass,
           std::string("5 random 12-power pools -> cardinality 8: ") +
               (all_eight ? "yes" : "NO") + ", no complete 7-subset: " +
               (exhaustively_minimal ? "confirmed" : "VIOLATED") + ", " +
               fmt(elapsed) + "s (<30s)");
}

// ---- criterion 8: derivability closure ----------------------------------

void criterion_derivability_closure() {
    auto t0 = Clock::now();
    double max_gap = 0.0;

    // dim 2: antipodal spin individuals share no power
    auto pool = qt::spin_pool();
    Rng rng(8008);
    IntensiveState state2 = random_state(2, StatePurity::Mixed, rng.next());
    QuantumIndividual first = measure_individual(
        find_minimal_individual({pool[0], pool[2], pool[4]}, 2), state2);
    QuantumIndividual second = measure_individual(
        find_minimal_individual({pool[1], pool[3], pool[5]}, 2), state2);
    for (int k = 0; k < 50; ++k) {
        Power target = make_projector(Ket(random_unit_vector(2, rng)));
        max_gap = std::max(max_gap, std::abs(derive_potentia(first, target) -
                                             derive_potentia(second, target)));
    }

    // dim 3: canonical tomographic family vs a rotated disjoint copy
    IntensiveState state3 = random_state(3, StatePurity::Mixed, rng.next());
    std::vector<Power> canonical = tomographic_pool(3);
    Matrix u = random_unitary(3, rng);
    std::vector<Power> rotated;
    for (const Power& p : canonical)
        rotated.emplace_back(conjugate(p.op(), u), p.label() + "'");
    QuantumIndividual third =
        measure_individual(find_minimal_individual(canonical, 3), state3);
    QuantumIndividual fourth =
        measure_individual(find_minimal_individual(rotated, 3), state3);
    for (int k = 0; k < 50; ++k) {
        Power target = make_projector(Ket(random_unit_vector(3, rng)));
        max_gap = std::max(max_gap, std::abs(derive_potentia(third, target) -
                                             derive_potentia(fourth, target)));
    }

    double elapsed = seconds_since(t0);
    bool pass = max_gap <= 1e-8;
    report(8, "derivability closure", pass,
           "two disjoint complete individuals, 50 targets each at dims 2 and "
           "3: max disagreement = " +
               fmt(max_gap) + " (<=1e-8), " + fmt(elapsed) + "s");
}

// ---- criterion 9: atomist contrast --------------------------------------

void criterion_atomist_contrast() {
    auto t0 = Clock::now();
    IntensiveState singlet = qt::singlet_state();
    Matrix mixture = Matrix::Zero(4, 4);
    mixture(1, 1) = 0.5;
    mixture(2, 2) = 0.5;
    IntensiveState classical{mixture};

    std::vector<Power> locals = local_diagonal_powers(2, 2);
    double max_local_gap = 0.0;
    for (const Power& p : locals)
        max_local_gap = std::max(max_local_gap, std::abs(potentia(singlet, p) -
                                                         potentia(classical, p)));

    auto joint_pool = tomographic_pool(4);
    QuantumIndividual ind = find_minimal_individual(joint_pool, 4);
    QuantumIndividual on_singlet = measure_individual(ind, singlet);
    QuantumIndividual on_classical = measure_individual(ind, classical);
    Power singlet_power = make_projector(qt::singlet_ket(), "singlet");
    double from_singlet = derive_potentia(on_singlet, singlet_power);
    double from_classical = derive_potentia(on_classical, singlet_power);
    double separation = std::abs(from_singlet - from_classical);

    double elapsed = seconds_since(t0);
    bool pass = max_local_gap <= 1e-12 && separation > 0.4;
    report(9, "atomist contrast", pass,
           "local-diagonal gap = " + fmt(max_local_gap) +
               " (<=1e-12), joint individual separates them by " +
               fmt(separation) + " (>0.4), " + fmt(elapsed) + "s");
}

// ---- criterion 10: CLI determinism ---------------------------------------

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(QLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
    int status = pclose(pipe);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        out += "<exit " + std::to_string(WEXITSTATUS(status)) + ">";
    return out;
}

void criterion_cli_determinism() {
    auto t0 = Clock::now();
    std::string ks18 = qt::data_path("ks18.json");
    std::string singlet = qt::data_path("singlet.json");
    std::string updown = qt::data_path("updown.json");
    std::string spins = qt::data_path("spin_pool_d2.json");
    std::string up2 = qt::data_path("up_d2.json");
    std::vector<std::string> commands = {
        "ks --instance " + ks18,
        "certify --state " + singlet + " --instance " + ks18,
        "potentia --state " + singlet + " --power " + updown,
        "graph --pool " + spins + " --export dot",
        "isa-check --pool " + spins + " --state " + up2,
        "invariance --state " + singlet + " --trials 20 --seed 7 --factors 2,2",
        "individual --pool " + spins + " --state " + up2,
        "validate --state " + singlet + " --pool " + spins + " --instance " +
            ks18,
    };
    int stable = 0;
    for (const auto& command : commands) {
        std::string first = run_cli(command);
        std::string second = run_cli(command);
        if (!first.empty() && first == second &&
            first.find("<exit") == std::string::npos)
            ++stable;
    }
    double elapsed = seconds_since(t0);
    bool pass = stable == static_cast<int>(commands.size());
    report(10, "CLI determinism", pass,
           std::to_string(stable) + "/" + std::to_string(commands.size()) +
               " commands byte-identical across reruns, " + fmt(elapsed) + "s");
}

}  // namespace

int main() {
    criterion_isa_axioms();
    criterion_ks_obstruction();
    criterion_intensive_bypass();
    criterion_basis_invariance();
    criterion_factorization_invariance();
    criterion_individual_dim2();
    criterion_individual_dim3();
    criterion_derivability_closure();
    criterion_atomist_contrast();
    criterion_cli_determinism();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}

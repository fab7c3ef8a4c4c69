// povmtool: build POVM families, compute outcome probabilities, reconstruct
// pure states, certify informational completeness, search for ambiguity
// witnesses, and run tomography efficiency sweeps.
//
// Exit codes: 0 success, 1 I/O or schema error, 2 invalid construction
// parameters, 3 reconstruction failure (report still printed).

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pstomo/analysis.hpp"
#include "pstomo/constructions.hpp"
#include "pstomo/json_io.hpp"
#include "pstomo/reconstruction.hpp"
#include "pstomo/tomosim.hpp"

using namespace pstomo;

namespace {

constexpr int kSchemaVersion = 1;

struct FamilyOptions {
    std::string family = "tetrahedral";
    Eigen::Index dim = 2;
    double a = -1.0;  // negative means "use the default"
    double b = -1.0;
    std::string theta = "tetra";
};

double parse_theta(const std::string& s) {
    if (s == "tetra") return RankOneConstructionParams::tetrahedral_angle();
    return std::stod(s);
}

TwoDConstructionParams twod_params(const FamilyOptions& opt) {
    TwoDConstructionParams p = TwoDConstructionParams::defaults(opt.dim);
    if (opt.a > 0.0) p.a = opt.a;
    if (opt.b > 0.0) p.b = opt.b;
    return p;
}

RankOneConstructionParams rank1_params(const FamilyOptions& opt) {
    return {opt.dim, parse_theta(opt.theta)};
}

Povm build_family(const FamilyOptions& opt) {
    if (opt.family == "psic2d") return build_psic_2d(twod_params(opt));
    if (opt.family == "rank1-3dm2") return build_rank_one_3dm2(rank1_params(opt));
    if (opt.family == "tetrahedral") return build_tetrahedral();
    if (opt.family == "trine") return build_trine();
    if (opt.family == "comp-bases") return build_complementary_bases(opt.dim);
    if (opt.family == "comp-bases-2dm1") {
        return amalgamate_last_pair(build_complementary_bases(opt.dim));
    }
    throw InvalidParameter("unknown family: " + opt.family);
}

json family_metadata(const FamilyOptions& opt) {
    return {{"family", opt.family},
            {"dim", opt.dim},
            {"a", opt.a},
            {"b", opt.b},
            {"theta", opt.theta}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return json::parse(in);
}

// Accepts both the bare schema object and CLI output files that wrap it.
json unwrap(const json& j, const std::string& key) {
    return j.contains(key) ? j.at(key) : j;
}

void emit(const json& payload, const std::string& output_path) {
    const std::string text = payload.dump(2);
    if (output_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(output_path);
        if (!out) {
            throw std::runtime_error("cannot write " + output_path);
        }
        out << text << "\n";
    }
}

void add_family_options(CLI::App* cmd, FamilyOptions& opt) {
    cmd->add_option("--family", opt.family,
                    "psic2d | rank1-3dm2 | tetrahedral | trine | comp-bases | comp-bases-2dm1");
    cmd->add_option("--dim", opt.dim, "Hilbert space dimension");
    cmd->add_option("--a", opt.a, "anchor weight for psic2d (default 1/(4D))");
    cmd->add_option("--b", opt.b, "middle-element weight for psic2d (default 1/(4D))");
    cmd->add_option("--theta", opt.theta,
                    "angle in radians for rank1-3dm2, or 'tetra' for cos(theta) = -1/3");
}

int run(int argc, char** argv) {
    CLI::App app{"pure-state informationally complete POVM toolkit"};
    app.require_subcommand(1);

    FamilyOptions fam;
    std::string output_path;
    std::string povm_path, state_path, probs_path, true_state_path, target_path;
    std::uint64_t seed = 0;
    int trials = 1000;
    int restarts = 50;
    std::string shots_list = "1000,10000,100000,1000000";
    int num_seeds = 100;

    auto* cmd_build = app.add_subcommand("build", "construct a POVM and emit it as JSON");
    add_family_options(cmd_build, fam);
    cmd_build->add_option("-o,--output", output_path, "output file (default stdout)");

    auto* cmd_probs =
        app.add_subcommand("probs", "outcome probabilities of a state under a POVM");
    cmd_probs->add_option("--povm", povm_path, "POVM JSON file")->required();
    cmd_probs->add_option("--state", state_path, "state JSON file")->required();
    cmd_probs->add_option("-o,--output", output_path);

    auto* cmd_reconstruct =
        app.add_subcommand("reconstruct", "invert outcome probabilities to a pure state");
    add_family_options(cmd_reconstruct, fam);
    cmd_reconstruct->add_option("--probs", probs_path, "probabilities JSON file")->required();
    cmd_reconstruct->add_option("--true-state", true_state_path,
                                "optional reference state for a fidelity field");
    cmd_reconstruct->add_option("-o,--output", output_path);

    auto* cmd_check =
        app.add_subcommand("check", "frame rank and round-trip certification");
    add_family_options(cmd_check, fam);
    cmd_check->add_option("--povm", povm_path, "check a POVM file instead of a family");
    cmd_check->add_option("--trials", trials, "certification trials");
    cmd_check->add_option("--seed", seed);
    cmd_check->add_option("-o,--output", output_path);

    auto* cmd_ambiguity =
        app.add_subcommand("ambiguity", "search for two states the POVM cannot distinguish");
    add_family_options(cmd_ambiguity, fam);
    cmd_ambiguity->add_option("--povm", povm_path, "POVM file instead of a family");
    cmd_ambiguity->add_option("--target", target_path, "target state file (default: Haar)");
    cmd_ambiguity->add_option("--restarts", restarts);
    cmd_ambiguity->add_option("--seed", seed);
    cmd_ambiguity->add_option("-o,--output", output_path);

    auto* cmd_tomo = app.add_subcommand("tomo", "shot-count efficiency sweep, CSV output");
    add_family_options(cmd_tomo, fam);
    cmd_tomo->add_option("--shots", shots_list, "comma-separated shot counts");
    cmd_tomo->add_option("--num-seeds", num_seeds, "Haar states per shot count");
    cmd_tomo->add_option("--seed", seed);
    cmd_tomo->add_option("-o,--output", output_path);

    CLI11_PARSE(app, argc, argv);

    if (cmd_build->parsed()) {
        Povm povm = [&] {
            try {
                return build_family(fam);
            } catch (const ThrowawayNotPositive& e) {
                std::cerr << "error: " << e.what() << "\n";
                std::exit(2);
            } catch (const InvalidParameter& e) {
                std::cerr << "error: " << e.what() << "\n";
                std::exit(2);
            }
        }();
        json validation;
        json min_eigs = json::array();
        ComplexMatrix sum = ComplexMatrix::Zero(povm.dim(), povm.dim());
        for (const auto& e : povm.elements()) {
            min_eigs.push_back(min_eigenvalue(e));
            sum += e.matrix();
        }
        validation["min_eigenvalue_per_element"] = min_eigs;
        validation["completeness_residual"] = frobenius_distance(
            sum, ComplexMatrix::Identity(povm.dim(), povm.dim()));
        emit({{"schema_version", kSchemaVersion},
              {"command", "build"},
              {"params", family_metadata(fam)},
              {"povm", to_json(povm)},
              {"validation", validation}},
             output_path);
        return 0;
    }

    if (cmd_probs->parsed()) {
        const Povm povm = povm_from_json(unwrap(read_json_file(povm_path), "povm"));
        const PureState state = state_from_json(unwrap(read_json_file(state_path), "state"));
        const OutcomeDistribution dist = probabilities(povm, state);
        json out = to_json(dist);
        out["schema_version"] = kSchemaVersion;
        out["command"] = "probs";
        emit(out, output_path);
        return 0;
    }

    if (cmd_reconstruct->parsed()) {
        const OutcomeDistribution probs =
            distribution_from_json(unwrap(read_json_file(probs_path), "distribution"));
        ReconstructionReport report;
        if (fam.family == "psic2d") {
            report = invert_psic_2d(probs, twod_params(fam));
        } else if (fam.family == "rank1-3dm2") {
            report = invert_rank_one_3dm2(probs, rank1_params(fam));
        } else {
            std::cerr << "error: no inverter for family " << fam.family << "\n";
            return 1;
        }
        json out = to_json(report);
        out["schema_version"] = kSchemaVersion;
        out["command"] = "reconstruct";
        out["params"] = family_metadata(fam);
        if (!true_state_path.empty() && report.ok()) {
            const PureState truth =
                state_from_json(unwrap(read_json_file(true_state_path), "state"));
            out["fidelity"] = fidelity(truth, report.state);
        }
        if (!report.ok()) {
            // failure detail goes to stdout regardless of --output
            std::cout << out.dump(2) << "\n";
            if (!output_path.empty()) emit(out, output_path);
            return 3;
        }
        emit(out, output_path);
        return 0;
    }

    if (cmd_check->parsed()) {
        json out = {{"schema_version", kSchemaVersion}, {"command", "check"}};
        std::optional<Povm> povm;
        if (!povm_path.empty()) {
            povm.emplace(povm_from_json(unwrap(read_json_file(povm_path), "povm")));
        } else {
            povm.emplace(build_family(fam));
            out["params"] = family_metadata(fam);
        }
        const FrameReport frame = frame_rank(*povm);
        json sv = json::array();
        for (Eigen::Index i = 0; i < frame.singular_values.size(); ++i) {
            sv.push_back(frame.singular_values[i]);
        }
        out["frame"] = {{"frame_rank", frame.frame_rank},
                        {"dim_hermitian", frame.dim_hermitian},
                        {"is_ic", frame.is_ic},
                        {"singular_values", sv}};
        if (povm_path.empty() && (fam.family == "psic2d" || fam.family == "rank1-3dm2")) {
            Inverter inverter;
            if (fam.family == "psic2d") {
                const auto params = twod_params(fam);
                inverter = [params, &povm](const OutcomeDistribution& p) {
                    const auto r = invert_psic_2d(p, params, &*povm);
                    return InversionOutcome{r.state, r.residual, !r.ok()};
                };
            } else {
                const auto params = rank1_params(fam);
                inverter = [params, &povm](const OutcomeDistribution& p) {
                    const auto r = invert_rank_one_3dm2(p, params, &*povm);
                    return InversionOutcome{r.state, r.residual, !r.ok()};
                };
            }
            const CertificationStats stats = certify_psic(*povm, inverter, trials, seed);
            out["certification"] = {{"trials", stats.trials},
                                    {"successes", stats.successes},
                                    {"declared_failures", stats.declared_failures},
                                    {"silent_failures", stats.silent_failures},
                                    {"worst_residual", stats.worst_residual},
                                    {"passed", stats.passed()},
                                    {"seed", seed}};
        }
        emit(out, output_path);
        return 0;
    }

    if (cmd_ambiguity->parsed()) {
        const Povm povm = povm_path.empty()
                              ? build_family(fam)
                              : povm_from_json(unwrap(read_json_file(povm_path), "povm"));
        const PureState target =
            target_path.empty()
                ? random_pure_state(povm.dim(), detail::mix_seed(seed, 0xabcdef))
                : state_from_json(unwrap(read_json_file(target_path), "state"));
        const auto witness = find_ambiguity(povm, target, restarts, seed);
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "ambiguity"},
                    {"seed", seed},
                    {"restarts", restarts},
                    {"found", witness.has_value()}};
        if (witness) {
            out["state_a"] = to_json(witness->state_a);
            out["state_b"] = to_json(witness->state_b);
            out["prob_gap"] = witness->prob_gap;
            out["infidelity"] = witness->infidelity;
        }
        emit(out, output_path);
        return 0;
    }

    if (cmd_tomo->parsed()) {
        PovmFamily family;
        if (fam.family == "psic2d") {
            family = PovmFamily::Psic2D;
        } else if (fam.family == "rank1-3dm2") {
            family = PovmFamily::RankOne3Dm2;
        } else {
            std::cerr << "error: tomo supports psic2d and rank1-3dm2\n";
            return 1;
        }
        std::vector<long> shot_grid;
        std::stringstream ss(shots_list);
        std::string token;
        while (std::getline(ss, token, ',')) {
            shot_grid.push_back(std::stol(token));
        }
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < num_seeds; ++i) {
            seeds.push_back(detail::mix_seed(seed, 0x70d0 + i));
        }
        const auto table =
            efficiency_sweep(family, fam.dim, shot_grid, seeds, parse_theta(fam.theta));
        std::ostringstream csv;
        csv << "shots,median_infidelity,iqr_low,iqr_high,failures\n";
        for (const auto& row : table) {
            csv << row.shots << "," << row.median_infidelity << "," << row.iqr_low << ","
                << row.iqr_high << "," << row.failures << "\n";
        }
        if (output_path.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream out(output_path);
            if (!out) {
                throw std::runtime_error("cannot write " + output_path);
            }
            out << csv.str();
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

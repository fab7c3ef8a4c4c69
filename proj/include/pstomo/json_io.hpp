#pragma once

// JSON schema shared by the library and the CLI. Complex numbers are
// two-element arrays [re, im].

#include <json.hpp>
#include <string>

#include "pstomo/povm.hpp"
#include "pstomo/reconstruction.hpp"

namespace pstomo {

using json = nlohmann::json;

inline json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex numbers are [re, im] arrays");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const PureState& state) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        amps.push_back(to_json(state.amplitudes[i]));
    }
    return {{"dim", state.dim()}, {"amplitudes", amps}};
}

inline PureState state_from_json(const json& j) {
    const auto dim = j.at("dim").get<Eigen::Index>();
    const json& amps = j.at("amplitudes");
    if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != dim) {
        throw std::invalid_argument("amplitudes length must equal dim");
    }
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = complex_from_json(amps[static_cast<std::size_t>(i)]);
    }
    return PureState::from_amplitudes(std::move(v));
}

inline json to_json(const HermitianOperator& op) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < op.dim(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < op.dim(); ++c) {
            row.push_back(to_json(op.matrix()(r, c)));
        }
        rows.push_back(row);
    }
    return rows;
}

inline HermitianOperator operator_from_json(const json& j, Eigen::Index dim) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
        throw std::invalid_argument("matrix row count must equal dim");
    }
    ComplexMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw std::invalid_argument("matrix column count must equal dim");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return HermitianOperator(m);
}

inline json to_json(const Povm& povm) {
    json elements = json::array();
    for (std::size_t c = 0; c < povm.size(); ++c) {
        elements.push_back({{"label", povm.label(c)}, {"matrix", to_json(povm.element(c))}});
    }
    return {{"dim", povm.dim()}, {"elements", elements}};
}

inline Povm povm_from_json(const json& j) {
    const auto dim = j.at("dim").get<Eigen::Index>();
    std::vector<HermitianOperator> elements;
    std::vector<std::string> labels;
    for (const json& e : j.at("elements")) {
        labels.push_back(e.at("label").get<std::string>());
        elements.push_back(operator_from_json(e.at("matrix"), dim));
    }
    return Povm(std::move(elements), std::move(labels));
}

inline json to_json(const OutcomeDistribution& dist) {
    json values = json::array();
    for (Eigen::Index i = 0; i < dist.values.size(); ++i) {
        values.push_back(dist.values[i]);
    }
    return {{"values", values}, {"normalized_state", dist.normalized_state}};
}

inline OutcomeDistribution distribution_from_json(const json& j) {
    const json& values = j.at("values");
    RealVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = values[i].get<double>();
    }
    return {v, j.value("normalized_state", true)};
}

inline std::string failure_name(const ReconstructionFailure& f) {
    switch (f.kind) {
        case FailureKind::ZeroAnchorAmplitude:
            return "ZeroAnchorAmplitude";
        case FailureKind::ChainBroken:
            return "ChainBroken(" + std::to_string(f.chain_index) + ")";
        case FailureKind::NegativeRadicand:
            return "NegativeRadicand";
    }
    return "Unknown";
}

inline json to_json(const ReconstructionReport& report) {
    json j = {{"state", to_json(report.state)}, {"residual", report.residual}};
    j["failure"] = report.failure ? json(failure_name(*report.failure)) : json(nullptr);
    return j;
}

}  // namespace pstomo

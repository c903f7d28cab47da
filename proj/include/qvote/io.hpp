// Copyright 2026 The qvote Authors
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

// JSON forms of configs, ballots and results. Complex numbers are [re, im].

#ifndef QVOTE_IO_HPP
#define QVOTE_IO_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvote/ballots.hpp"
#include "qvote/protocol.hpp"
#include "qvote/rule.hpp"

namespace qvote {

using Json = nlohmann::json;

inline constexpr int kConfigVersion = 1;

namespace detail {

[[noreturn]] inline void config_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::config, where + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) config_error(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) config_error(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline double number(const Json& j, const std::string& where) {
    if (!j.is_number()) config_error(where, "expected a number");
    return j.get<double>();
}

inline std::uint64_t unsigned_integer(const Json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    config_error(where, "expected a nonnegative integer");
}

inline Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) config_error(where, "complex numbers are [re, im] pairs");
    return {number(j[0], where), number(j[1], where)};
}

inline std::vector<Complex> amplitudes_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) config_error(where, "amplitudes must be an array of [re, im] pairs");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

inline std::array<Complex, 2> qubit_amplitudes(const Json& j, const std::string& where) {
    const auto amps = amplitudes_from_json(j, where);
    if (amps.size() != 2) config_error(where, "a single-voter ballot has exactly 2 amplitudes");
    return {amps[0], amps[1]};
}

inline Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace detail

inline BallotSpec ballot_from_json(const Json& j, const std::string& where = "ballot") {
    using detail::field;
    const Json& kind_json = field(j, "kind", where);
    if (!kind_json.is_string()) detail::config_error(where, "\"kind\" must be a string");
    const std::string kind = kind_json.get<std::string>();

    BallotSpec spec;
    if (kind == "classical") {
        const Json& bit = field(j, "bit", where);
        if (!bit.is_number_integer() || (bit.get<std::int64_t>() != 0 && bit.get<std::int64_t>() != 1)) {
            detail::config_error(where, "\"bit\" must be 0 or 1");
        }
        spec = BallotSpec::classical(static_cast<int>(bit.get<std::int64_t>()));
    } else if (kind == "probabilistic") {
        const double r = detail::number(field(j, "r", where), where + ".r");
        if (!(r >= 0.0 && r <= 1.0)) detail::config_error(where, "\"r\" must lie in [0, 1]");
        spec = BallotSpec::probabilistic(r);
    } else if (kind == "pure") {
        const auto amps = detail::qubit_amplitudes(field(j, "amplitudes", where), where + ".amplitudes");
        spec = BallotSpec::pure(amps[0], amps[1]);
    } else if (kind == "mixed") {
        const Json& comps = field(j, "components", where);
        if (!comps.is_array() || comps.empty()) detail::config_error(where, "\"components\" must be a non-empty array");
        std::vector<MixedComponent> components;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const std::string at = where + ".components[" + std::to_string(i) + "]";
            components.push_back({detail::number(field(comps[i], "weight", at), at + ".weight"),
                                  detail::qubit_amplitudes(field(comps[i], "amplitudes", at), at + ".amplitudes")});
        }
        spec = BallotSpec::mixed(std::move(components));
    } else if (kind == "joint") {
        const Json& slots_json = field(j, "slots", where);
        if (!slots_json.is_array() || slots_json.empty()) detail::config_error(where, "\"slots\" must be a non-empty array");
        std::vector<std::size_t> slots;
        for (const auto& s : slots_json) slots.push_back(detail::unsigned_integer(s, where + ".slots"));
        spec = BallotSpec::joint(std::move(slots),
                                 detail::amplitudes_from_json(field(j, "amplitudes", where), where + ".amplitudes"));
    } else {
        detail::config_error(where, "unknown ballot kind \"" + kind + "\"");
    }
    if (const auto it = j.find("voter"); it != j.end()) {
        if (spec.is_joint()) detail::config_error(where, "joint ballots name their voters in \"slots\"");
        spec.voter = detail::unsigned_integer(*it, where + ".voter");
    }
    return spec;
}

inline Json ballot_to_json(const BallotSpec& spec) {
    Json j = std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ClassicalBallot>) {
                return {{"kind", "classical"}, {"bit", b.bit}};
            } else if constexpr (std::is_same_v<T, ProbabilisticBallot>) {
                return {{"kind", "probabilistic"}, {"r", b.r}};
            } else if constexpr (std::is_same_v<T, PureBallot>) {
                return {{"kind", "pure"},
                        {"amplitudes", Json::array({detail::complex_to_json(b.amplitudes[0]),
                                                    detail::complex_to_json(b.amplitudes[1])})}};
            } else if constexpr (std::is_same_v<T, MixedBallot>) {
                Json comps = Json::array();
                for (const auto& c : b.components) {
                    comps.push_back({{"weight", c.weight},
                                     {"amplitudes", Json::array({detail::complex_to_json(c.amplitudes[0]),
                                                                 detail::complex_to_json(c.amplitudes[1])})}});
                }
                return {{"kind", "mixed"}, {"components", comps}};
            } else {
                Json amps = Json::array();
                for (const auto& a : b.amplitudes) amps.push_back(detail::complex_to_json(a));
                return {{"kind", "joint"}, {"slots", b.slots}, {"amplitudes", amps}};
            }
        },
        spec.kind);
    if (spec.voter) j["voter"] = *spec.voter;
    return j;
}

inline ElectionConfig config_from_json(const Json& j) {
    using detail::field;
    const std::string where = "config";
    if (!j.is_object()) detail::config_error(where, "top level must be an object");
    if (const auto it = j.find("version"); it != j.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() != kConfigVersion) {
            detail::config_error(where, "unsupported version (expected " + std::to_string(kConfigVersion) + ")");
        }
    }
    ElectionConfig config;
    const Json& rule = field(j, "rule", where);
    if (!rule.is_string()) detail::config_error(where, "\"rule\" must be a string");
    try {
        config.rule = ElectionRule::parse(rule.get<std::string>());
    } catch (const ParseError& e) {
        detail::config_error(where + ".rule", e.what());
    }
    config.voters = detail::unsigned_integer(field(j, "voters", where), where + ".voters");
    config.machines = detail::unsigned_integer(field(j, "machines", where), where + ".machines");
    const Json& ballots = field(j, "ballots", where);
    if (!ballots.is_array()) detail::config_error(where, "\"ballots\" must be an array");
    for (std::size_t i = 0; i < ballots.size(); ++i) {
        config.ballots.push_back(ballot_from_json(ballots[i], "ballots[" + std::to_string(i) + "]"));
    }
    if (const auto it = j.find("seed"); it != j.end()) config.seed = detail::unsigned_integer(*it, where + ".seed");
    if (const auto it = j.find("trials"); it != j.end()) config.trials = detail::unsigned_integer(*it, where + ".trials");
    if (const auto it = j.find("strict_majority"); it != j.end()) {
        if (!it->is_boolean()) detail::config_error(where, "\"strict_majority\" must be a boolean");
        config.tie_rule = it->get<bool>() ? TieRule::strict : TieRule::inclusive;
    }
    validate(config);
    return config;
}

inline Json config_to_json(const ElectionConfig& config) {
    Json ballots = Json::array();
    for (const auto& b : config.ballots) ballots.push_back(ballot_to_json(b));
    return {{"version", kConfigVersion},
            {"rule", config.rule.to_string()},
            {"voters", config.voters},
            {"machines", config.machines},
            {"ballots", ballots},
            {"seed", config.seed},
            {"trials", config.trials},
            {"strict_majority", config.tie_rule == TieRule::strict}};
}

inline ElectionConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::config, path + ": malformed JSON: " + e.what());
    }
    return config_from_json(j);
}

inline Json outcome_to_json(const ElectionConfig& config, const ElectionOutcome& outcome) {
    Json records = Json::array();
    for (const auto& r : outcome.records) records.push_back({{"machine", r.machine}, {"bit", r.bit}});
    Json decisions = Json::array();
    for (const auto d : outcome.machine_decisions) decisions.push_back(to_string(d));
    return {{"rule", config.rule.to_string()},
            {"voters", config.voters},
            {"machines", config.machines},
            {"seed", config.seed},
            {"trial", outcome.trial},
            {"tie_rule", config.tie_rule == TieRule::strict ? "strict" : "inclusive"},
            {"records", records},
            {"machine_decisions", decisions},
            {"decision", to_string(outcome.decision)},
            {"ones_fraction", outcome.ones_fraction},
            {"analytic_wp", outcome.analytic_wp}};
}

inline Json estimate_to_json(const ElectionConfig& config, const WpEstimate& est) {
    return {{"rule", config.rule.to_string()},
            {"machines", config.machines},
            {"seed", config.seed},
            {"trials", est.trials},
            {"samples", est.samples},
            {"empirical_mean", est.empirical_mean},
            {"ci", {{"level", 0.95}, {"low", est.ci_low}, {"high", est.ci_high}}},
            {"analytic_wp", est.analytic_wp}};
}

inline Json ast_to_json(const RuleAst& ast) {
    if (ast.op == RuleAst::Op::atom) return {{"op", "atom"}, {"voter", ast.voter}};
    Json children = Json::array();
    for (const auto& c : ast.children) children.push_back(ast_to_json(c));
    return {{"op", keyword(ast.op)}, {"children", children}};
}

}  // namespace qvote

#endif  // QVOTE_IO_HPP

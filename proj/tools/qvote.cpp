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

// qvote: run, estimate and check quantum logical veto/nomination elections.
// JSON goes to stdout; diagnostics go to stderr.
// Exit codes: 0 ok, 1 failed checks or internal error, 2 config error, 3 numeric corruption.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qvote/io.hpp"
#include "qvote/qvote.hpp"
#include "qvote/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void emit(const qvote::Json& j) { std::cout << j.dump(2) << '\n'; }

struct Overrides {
    std::optional<std::uint64_t> seed;
    bool strict_majority = false;
    unsigned threads = 1;
};

qvote::ElectionConfig load(const std::string& path, const Overrides& o) {
    auto config = qvote::load_config(path);
    if (o.seed) config.seed = *o.seed;
    if (o.strict_majority) config.tie_rule = qvote::TieRule::strict;
    config.threads = o.threads;
    return config;
}

int cmd_run(const std::string& path, const Overrides& o) {
    const auto config = load(path, o);
    const auto outcome = qvote::run_election(config);
    emit(qvote::outcome_to_json(config, outcome));
    return kExitOk;
}

int cmd_estimate(const std::string& path, const Overrides& o, std::optional<std::uint64_t> trials) {
    const auto config = load(path, o);
    const auto est = qvote::estimate_wp(config, trials.value_or(config.trials));
    emit(qvote::estimate_to_json(config, est));
    return kExitOk;
}

int cmd_eval(const std::string& formula, const std::vector<double>& probs) {
    const auto ast = qvote::parse_rule(formula);
    const double wp = qvote::evaluate_algebraic(ast, probs);
    std::vector<qvote::BallotSpec> specs;
    for (double p : probs) specs.push_back(qvote::BallotSpec::probabilistic(p));
    const auto ballots = qvote::realize(specs, probs.size());
    const double wp_density = qvote::winning_probability(qvote::evaluate_density(ast, ballots));
    emit({{"formula", qvote::to_string(ast)}, {"probs", probs}, {"wp", wp}, {"wp_density", wp_density}});
    return kExitOk;
}

int cmd_parse(const std::string& formula) {
    const auto ast = qvote::parse_rule(formula);
    emit({{"formula", qvote::to_string(ast)}, {"ast", qvote::ast_to_json(ast)}});
    return kExitOk;
}

int cmd_verify(const std::string& filter) {
    const auto results = qvote::run_verification(filter);
    qvote::Json checks = qvote::Json::array();
    int pass = 0, fail = 0, discrepancy = 0;
    for (const auto& r : results) {
        checks.push_back({{"name", r.name}, {"group", r.group}, {"status", qvote::to_string(r.status)},
                          {"detail", r.detail}});
        switch (r.status) {
            case qvote::CheckStatus::pass: ++pass; break;
            case qvote::CheckStatus::fail: ++fail; break;
            case qvote::CheckStatus::discrepancy: ++discrepancy; break;
        }
        std::cerr << std::left << std::setw(12) << qvote::to_string(r.status) << std::setw(14) << r.group
                  << std::setw(32) << r.name << r.detail << '\n';
    }
    emit({{"checks", checks}, {"summary", {{"pass", pass}, {"fail", fail}, {"discrepancy", discrepancy}}}});
    return fail == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum logical veto and nomination voting simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string config_path;
    std::optional<std::uint64_t> trials;
    std::string formula;
    std::vector<double> probs;
    std::string filter;

    const auto add_election_flags = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "election config (JSON)")->required();
        cmd->add_option("--seed", overrides.seed, "override the config seed");
        cmd->add_flag("--strict-majority", overrides.strict_majority,
                      "Agree only when strictly more than half of the records are 1");
        cmd->add_option("--threads", overrides.threads, "machines evaluated concurrently")
            ->check(CLI::Range(1U, 256U));
    };

    auto* run = app.add_subcommand("run", "run one election and print its outcome");
    add_election_flags(run);

    auto* estimate = app.add_subcommand("estimate", "estimate the winning probability by repeated elections");
    add_election_flags(estimate);
    estimate->add_option("--trials", trials, "number of elections (default: config trials)")
        ->check(CLI::PositiveNumber);

    auto* eval = app.add_subcommand("eval", "analytic winning probability of a formula");
    eval->add_option("--formula", formula, "rule formula, e.g. OR(v1, AND(v2, v3))")->required();
    eval->add_option("--probs", probs, "per-voter preferences, comma separated")->required()->delimiter(',');

    auto* parse = app.add_subcommand("parse", "parse a formula and print its syntax tree");
    parse->add_option("--formula,formula", formula, "rule formula")->required();

    auto* verify = app.add_subcommand("verify", "run every property check and report a table");
    verify->add_option("--filter", filter, "only one group: lemmas, theorems, examples, observations, protocol");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path, overrides);
        if (*estimate) return cmd_estimate(config_path, overrides, trials);
        if (*eval) return cmd_eval(formula, probs);
        if (*parse) return cmd_parse(formula);
        if (*verify) return cmd_verify(filter);
    } catch (const qvote::Error& e) {
        std::cerr << "qvote: " << e.what() << '\n';
        return e.kind() == qvote::ErrorKind::numeric_corruption ? kExitNumeric : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "qvote: internal error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitFailed;
}

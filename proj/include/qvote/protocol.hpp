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

// Quantum logical veto / nomination elections over simulated voting machines.
//
// Each election runs five steps: every voter hands a fresh copy of its ballot
// to every machine; each machine aggregates (AND fold for veto, OR fold for
// nomination, or a rule formula); each machine measures with P1 and records a
// bit; records are broadcast to all machines; each machine outputs Agree when
// at least half of the records are 1.

#ifndef QVOTE_PROTOCOL_HPP
#define QVOTE_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qvote/ballots.hpp"
#include "qvote/density.hpp"
#include "qvote/qlogic.hpp"
#include "qvote/random.hpp"
#include "qvote/rule.hpp"

namespace qvote {

class ElectionRule {
public:
    enum class Kind { veto, nomination, formula };

    static ElectionRule veto() { return ElectionRule(Kind::veto, {}); }
    static ElectionRule nomination() { return ElectionRule(Kind::nomination, {}); }
    static ElectionRule from_formula(RuleAst ast) { return ElectionRule(Kind::formula, std::move(ast)); }

    /// "qlv", "qln", or formula text.
    static ElectionRule parse(std::string_view text) {
        if (text == "qlv") return veto();
        if (text == "qln") return nomination();
        return from_formula(parse_rule(text));
    }

    Kind kind() const noexcept { return kind_; }
    const RuleAst& formula() const noexcept { return formula_; }

    std::string to_string() const {
        switch (kind_) {
            case Kind::veto: return "qlv";
            case Kind::nomination: return "qln";
            case Kind::formula: return qvote::to_string(formula_);
        }
        return {};
    }

private:
    ElectionRule(Kind kind, RuleAst ast) : kind_(kind), formula_(std::move(ast)) {}

    Kind kind_;
    RuleAst formula_;
};

enum class Decision { agree, disagree };

inline const char* to_string(Decision d) { return d == Decision::agree ? "Agree" : "Disagree"; }

/// inclusive: Agree iff ones >= n/2. strict: Agree iff ones > n/2.
enum class TieRule { inclusive, strict };

struct ElectionConfig {
    ElectionRule rule = ElectionRule::veto();
    std::size_t voters = 1;
    std::size_t machines = 1;
    std::vector<BallotSpec> ballots;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    TieRule tie_rule = TieRule::inclusive;
    unsigned threads = 1;  // machines evaluated concurrently when > 1
};

inline void validate(const ElectionConfig& config) {
    if (config.voters < 1) throw Error(ErrorKind::config, "voters must be at least 1");
    if (config.machines < 1) throw Error(ErrorKind::config, "machines must be at least 1");
    if (config.trials < 1) throw Error(ErrorKind::config, "trials must be at least 1");
    if (config.rule.kind() == ElectionRule::Kind::formula) {
        const std::size_t top = max_voter(config.rule.formula());
        if (top > config.voters) {
            throw Error(ErrorKind::config, "formula refers to v" + std::to_string(top) + " but there are only " +
                                               std::to_string(config.voters) + " voters");
        }
    }
}

/// The single-qubit aggregate every machine computes from its ballot copies.
inline DensityOperator aggregate(const BallotAssignment& ballots, const ElectionRule& rule) {
    switch (rule.kind()) {
        case ElectionRule::Kind::veto: return and_fold(ballots.voter_order_operands());
        case ElectionRule::Kind::nomination: return or_fold(ballots.voter_order_operands());
        case ElectionRule::Kind::formula: return evaluate_density(rule.formula(), ballots);
    }
    throw Error(ErrorKind::evaluation, "unknown rule");
}

struct MachineRecord {
    std::size_t machine = 0;  // 1-based
    int bit = 0;

    friend bool operator==(const MachineRecord&, const MachineRecord&) = default;
};

/// One machine: aggregate its own copies of the ballots, measure with P1.
inline int run_machine(std::size_t machine_id, const BallotAssignment& ballots, const ElectionRule& rule,
                       RandomStream& rng) {
    (void)machine_id;
    const DensityOperator aggregated = aggregate(ballots, rule);
    return sample_outcome(aggregated, Projector::p1(), rng);
}

/// Synchronous lossless all-to-all exchange: view j holds every record.
inline std::vector<std::vector<MachineRecord>> broadcast_records(std::span<const MachineRecord> records) {
    return std::vector<std::vector<MachineRecord>>(records.size(),
                                                   std::vector<MachineRecord>(records.begin(), records.end()));
}

inline Decision decide(std::span<const MachineRecord> view, TieRule tie = TieRule::inclusive) {
    if (view.empty()) throw Error(ErrorKind::protocol, "cannot decide on an empty record view");
    const auto ones = static_cast<std::size_t>(
        std::count_if(view.begin(), view.end(), [](const MachineRecord& r) { return r.bit == 1; }));
    const std::size_t n = view.size();
    const bool agree = tie == TieRule::inclusive ? 2 * ones >= n : 2 * ones > n;
    return agree ? Decision::agree : Decision::disagree;
}

struct ElectionOutcome {
    std::uint64_t trial = 0;
    std::vector<MachineRecord> records;
    std::vector<Decision> machine_decisions;
    Decision decision = Decision::disagree;
    double ones_fraction = 0.0;
    double analytic_wp = 0.0;
};

namespace detail {

inline std::vector<MachineRecord> sample_records(const ElectionConfig& config, const BallotAssignment& ballots,
                                                 std::uint64_t trial) {
    std::vector<MachineRecord> records(config.machines);
    const auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t j = begin; j < config.machines; j += stride) {
            RandomStream rng = RandomStream::for_machine(config.seed, j + 1, trial);
            records[j] = {j + 1, run_machine(j + 1, ballots, config.rule, rng)};
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(config.machines)));
    if (threads == 1) {
        work(0, 1);
        return records;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                work(t, threads);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return records;
}

inline ElectionOutcome run_election(const ElectionConfig& config, const BallotAssignment& ballots,
                                    double analytic_wp, std::uint64_t trial) {
    ElectionOutcome out;
    out.trial = trial;
    out.analytic_wp = analytic_wp;
    out.records = sample_records(config, ballots, trial);
    const auto views = broadcast_records(out.records);
    out.machine_decisions.reserve(views.size());
    for (const auto& view : views) out.machine_decisions.push_back(decide(view, config.tie_rule));
    out.decision = out.machine_decisions.front();
    const auto ones = std::count_if(out.records.begin(), out.records.end(),
                                    [](const MachineRecord& r) { return r.bit == 1; });
    out.ones_fraction = static_cast<double>(ones) / static_cast<double>(out.records.size());
    return out;
}

}  // namespace detail

/// WP of the aggregate, computed once from the realized ballots.
inline double analytic_wp(const ElectionConfig& config) {
    validate(config);
    return winning_probability(aggregate(realize(config.ballots, config.voters), config.rule));
}

/// Runs one election. Deterministic in (config, trial); machine j draws from
/// the substream keyed by (seed, j, trial).
inline ElectionOutcome run_election(const ElectionConfig& config, std::uint64_t trial = 0) {
    validate(config);
    const BallotAssignment ballots = realize(config.ballots, config.voters);
    const double wp = winning_probability(aggregate(ballots, config.rule));
    return detail::run_election(config, ballots, wp, trial);
}

struct WpEstimate {
    double empirical_mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double analytic_wp = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t samples = 0;  // trials * machines
};

/// Repeats the election `trials` times and pools every machine record.
/// The interval is the normal-approximation 95% binomial interval.
inline WpEstimate estimate_wp(const ElectionConfig& config, std::uint64_t trials) {
    validate(config);
    if (trials < 1) throw Error(ErrorKind::config, "trials must be at least 1");
    const BallotAssignment ballots = realize(config.ballots, config.voters);
    const double wp = winning_probability(aggregate(ballots, config.rule));
    std::uint64_t ones = 0;
    std::uint64_t samples = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto records = detail::sample_records(config, ballots, t);
        for (const auto& r : records) ones += static_cast<std::uint64_t>(r.bit);
        samples += records.size();
    }
    WpEstimate est;
    est.trials = trials;
    est.samples = samples;
    est.analytic_wp = wp;
    est.empirical_mean = static_cast<double>(ones) / static_cast<double>(samples);
    const double p = est.empirical_mean;
    const double half_width = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.ci_low = std::max(0.0, p - half_width);
    est.ci_high = std::min(1.0, p + half_width);
    return est;
}

}  // namespace qvote

#endif  // QVOTE_PROTOCOL_HPP

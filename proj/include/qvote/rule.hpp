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

// Voting-rule formulas.
//
//   formula := atom | "NOT" "(" formula ")" | ("AND" | "OR") "(" formula ("," formula)+ ")"
//   atom    := "v" nonzero-digit digit*
//
// Every atom occurrence stands for a fresh copy of that voter's ballot, so
// OR(AND(v1,v2), AND(v2,v3), AND(v1,v3)) is not classical majority for
// non-extremal preferences: at (0.5, 0.5, 0.5) it evaluates to 0.578125.

#ifndef QVOTE_RULE_HPP
#define QVOTE_RULE_HPP

#include <cctype>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qvote/ballots.hpp"
#include "qvote/density.hpp"
#include "qvote/qlogic.hpp"

namespace qvote {

struct RuleAst {
    enum class Op { atom, negation, conjunction, disjunction };

    Op op = Op::atom;
    std::size_t voter = 0;  // atoms only, 1-based
    std::vector<RuleAst> children;

    static RuleAst atom(std::size_t voter) { return {Op::atom, voter, {}}; }
    static RuleAst negation(RuleAst child) { return {Op::negation, 0, {std::move(child)}}; }
    static RuleAst conjunction(std::vector<RuleAst> children) { return {Op::conjunction, 0, std::move(children)}; }
    static RuleAst disjunction(std::vector<RuleAst> children) { return {Op::disjunction, 0, std::move(children)}; }

    friend bool operator==(const RuleAst&, const RuleAst&) = default;
};

inline const char* keyword(RuleAst::Op op) {
    switch (op) {
        case RuleAst::Op::negation: return "NOT";
        case RuleAst::Op::conjunction: return "AND";
        case RuleAst::Op::disjunction: return "OR";
        case RuleAst::Op::atom: break;
    }
    return "v";
}

inline std::size_t max_voter(const RuleAst& ast) {
    std::size_t m = ast.op == RuleAst::Op::atom ? ast.voter : 0;
    for (const auto& c : ast.children) m = std::max(m, max_voter(c));
    return m;
}

inline std::size_t depth(const RuleAst& ast) {
    std::size_t d = 0;
    for (const auto& c : ast.children) d = std::max(d, depth(c));
    return d + 1;
}

/// Canonical text: ", " between operands, no padding inside parentheses.
inline std::string to_string(const RuleAst& ast) {
    if (ast.op == RuleAst::Op::atom) return "v" + std::to_string(ast.voter);
    std::string out = keyword(ast.op);
    out += '(';
    for (std::size_t i = 0; i < ast.children.size(); ++i) {
        if (i) out += ", ";
        out += to_string(ast.children[i]);
    }
    out += ')';
    return out;
}

namespace detail {

class RuleParser {
public:
    explicit RuleParser(std::string_view text) : text_(text) {}

    RuleAst parse() {
        RuleAst ast = formula();
        skip_space();
        if (pos_ != text_.size()) fail("end of input");
        return ast;
    }

private:
    // Nesting deeper than this is rejected instead of exhausting the stack.
    static constexpr std::size_t kMaxDepth = 256;

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    std::string describe_here() const {
        if (pos_ >= text_.size()) return "end of input";
        std::size_t end = pos_;
        if (is_word(text_[pos_])) {
            while (end < text_.size() && is_word(text_[end])) ++end;
        } else {
            end = pos_ + 1;
        }
        std::string token;
        for (std::size_t i = pos_; i < end; ++i) {
            const auto c = static_cast<unsigned char>(text_[i]);
            if (std::isprint(c)) {
                token += static_cast<char>(c);
            } else {
                static const char* hex = "0123456789abcdef";
                token += "\\x";
                token += hex[c >> 4];
                token += hex[c & 15];
            }
        }
        return "'" + token + "'";
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(pos_, expected, describe_here());
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("'") + c + "'");
        ++pos_;
    }

    RuleAst formula() {
        if (++depth_ > kMaxDepth) fail("shallower nesting (limit " + std::to_string(kMaxDepth) + ")");
        skip_space();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && is_word(text_[end])) ++end;
        const std::string_view word = text_.substr(start, end - start);

        RuleAst result;
        if (word == "NOT") {
            pos_ = end;
            expect('(');
            result = RuleAst::negation(formula());
            expect(')');
        } else if (word == "AND" || word == "OR") {
            pos_ = end;
            expect('(');
            std::vector<RuleAst> children;
            children.push_back(formula());
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ',') fail("',' (AND/OR need at least two operands)");
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                children.push_back(formula());
                skip_space();
            }
            expect(')');
            result = word == "AND" ? RuleAst::conjunction(std::move(children))
                                   : RuleAst::disjunction(std::move(children));
        } else {
            result = atom(word);
        }
        --depth_;
        return result;
    }

    RuleAst atom(std::string_view word) {
        if (word.empty() || word[0] != 'v') fail("a voter atom, AND, OR or NOT");
        if (word.size() < 2 || word[1] < '1' || word[1] > '9') {
            ++pos_;
            fail("a nonzero digit after 'v'");
        }
        std::size_t voter = 0;
        for (std::size_t i = 1; i < word.size(); ++i) {
            const char c = word[i];
            if (c < '0' || c > '9') {
                pos_ += i;
                fail("a digit");
            }
            const std::size_t digit = static_cast<std::size_t>(c - '0');
            if (voter > (kMaxVoter - digit) / 10) fail("a voter index at most " + std::to_string(kMaxVoter));
            voter = voter * 10 + digit;
        }
        pos_ += word.size();
        return RuleAst::atom(voter);
    }

    static constexpr std::size_t kMaxVoter = 1'000'000'000;

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
};

}  // namespace detail

/// Parses a rule formula. Throws ParseError with the byte offset of the fault.
inline RuleAst parse_rule(std::string_view text) { return detail::RuleParser(text).parse(); }

/// WP of a rule from per-voter preferences (index 0 is voter 1), composing
/// AND -> x*y, OR -> x + y - x*y, NOT -> 1 - x.
inline double evaluate_algebraic(const RuleAst& ast, std::span<const double> probs) {
    switch (ast.op) {
        case RuleAst::Op::atom: {
            if (ast.voter < 1 || ast.voter > probs.size()) {
                throw Error(ErrorKind::evaluation, "formula refers to unknown voter v" + std::to_string(ast.voter));
            }
            const double p = probs[ast.voter - 1];
            if (!(p >= 0.0 && p <= 1.0)) {
                throw Error(ErrorKind::domain, "probability for v" + std::to_string(ast.voter) + " is outside [0, 1]");
            }
            return p;
        }
        case RuleAst::Op::negation:
            return 1.0 - evaluate_algebraic(ast.children.at(0), probs);
        case RuleAst::Op::conjunction: {
            double acc = evaluate_algebraic(ast.children.at(0), probs);
            for (std::size_t i = 1; i < ast.children.size(); ++i) acc *= evaluate_algebraic(ast.children[i], probs);
            return acc;
        }
        case RuleAst::Op::disjunction: {
            double acc = evaluate_algebraic(ast.children.at(0), probs);
            for (std::size_t i = 1; i < ast.children.size(); ++i) {
                const double y = evaluate_algebraic(ast.children[i], probs);
                acc = acc + y - acc * y;
            }
            return acc;
        }
    }
    throw Error(ErrorKind::evaluation, "malformed formula node");
}

/// Algebraic WP from realized ballots. Entangled ballots have no per-voter
/// probability that composes this way, so they are rejected.
inline double evaluate_algebraic(const RuleAst& ast, const BallotAssignment& ballots) {
    if (ballots.has_joint()) {
        throw Error(ErrorKind::unsupported_input, "algebraic evaluation needs unentangled ballots");
    }
    std::vector<double> probs;
    probs.reserve(ballots.voter_count());
    for (std::size_t v = 1; v <= ballots.voter_count(); ++v) probs.push_back(winning_probability(ballots.state_of(v)));
    return evaluate_algebraic(ast, probs);
}

namespace detail {

inline void count_atoms(const RuleAst& ast, std::map<std::size_t, std::size_t>& counts) {
    if (ast.op == RuleAst::Op::atom) ++counts[ast.voter];
    for (const auto& c : ast.children) count_atoms(c, counts);
}

class DensityEvaluator {
public:
    explicit DensityEvaluator(const BallotAssignment& ballots) : ballots_(ballots) {}

    void check(const RuleAst& ast) {
        count_atoms(ast, counts_);
        for (const auto& [voter, count] : counts_) {
            if (voter < 1 || voter > ballots_.voter_count()) {
                throw Error(ErrorKind::evaluation, "formula refers to unknown voter v" + std::to_string(voter));
            }
            if (ballots_.is_joint(voter) && count != 1) {
                throw Error(ErrorKind::evaluation, "voter v" + std::to_string(voter) +
                                                       " holds a joint ballot and must appear exactly once");
            }
        }
    }

    DensityOperator eval(const RuleAst& ast) {
        switch (ast.op) {
            case RuleAst::Op::atom:
                if (ballots_.is_joint(ast.voter)) misplaced_joint(ast.voter);
                return ballots_.state_of(ast.voter);
            case RuleAst::Op::negation:
                if (ast.children.size() != 1) throw Error(ErrorKind::arity, "NOT takes one operand");
                if (ast.children[0].op == RuleAst::Op::atom && ballots_.is_joint(ast.children[0].voter)) {
                    misplaced_joint(ast.children[0].voter);
                }
                return quantum_not(eval(ast.children[0]));
            case RuleAst::Op::conjunction:
            case RuleAst::Op::disjunction:
                return eval_fold(ast);
        }
        throw Error(ErrorKind::evaluation, "malformed formula node");
    }

private:
    [[noreturn]] void misplaced_joint(std::size_t voter) const {
        throw Error(ErrorKind::evaluation,
                    "voter v" + std::to_string(voter) +
                        " holds a joint ballot; all of its voters must be sibling operands of one AND or OR");
    }

    DensityOperator eval_fold(const RuleAst& ast) {
        if (ast.children.size() < 2) throw Error(ErrorKind::arity, "AND/OR take at least two operands");
        std::vector<FoldOperand> operands;
        std::map<std::size_t, std::size_t> joint_operand;  // group index -> operand index
        for (std::size_t slot = 0; slot < ast.children.size(); ++slot) {
            const RuleAst& child = ast.children[slot];
            if (child.op == RuleAst::Op::atom && ballots_.is_joint(child.voter)) {
                const std::size_t g = ballots_.group_index_of(child.voter);
                auto it = joint_operand.find(g);
                if (it == joint_operand.end()) {
                    const auto& group = ballots_.groups()[g];
                    FoldOperand op{group.state, std::vector<std::size_t>(group.voters.size(), kUnset)};
                    it = joint_operand.emplace(g, operands.size()).first;
                    operands.push_back(std::move(op));
                }
                operands[it->second].slots[ballots_.qubit_of(child.voter)] = slot;
                continue;
            }
            operands.push_back({eval(child), {slot}});
        }
        for (const auto& [g, index] : joint_operand) {
            for (std::size_t s : operands[index].slots) {
                if (s == kUnset) misplaced_joint(ballots_.groups()[g].voters.front());
            }
        }
        const auto conn = ast.op == RuleAst::Op::conjunction ? Connective::conjunction : Connective::disjunction;
        return fold(operands, conn);
    }

    static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

    const BallotAssignment& ballots_;
    std::map<std::size_t, std::size_t> counts_;
};

}  // namespace detail

/// Density-level evaluation: every atom occurrence takes a fresh copy of its
/// voter's state; AND/OR nodes are left folds; NOT is Pauli-X conjugation.
/// A joint ballot is accepted only when all of its voters appear once, as
/// operands of the same AND or OR node.
inline DensityOperator evaluate_density(const RuleAst& ast, const BallotAssignment& ballots) {
    detail::DensityEvaluator evaluator(ballots);
    evaluator.check(ast);
    return evaluator.eval(ast);
}

}  // namespace qvote

#endif  // QVOTE_RULE_HPP

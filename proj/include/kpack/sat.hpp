#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kpack {

// MAX2SAT(3): clauses with one or two literals, every variable occurring in
// at most three literals overall. Variables are dense 0-based ids.
struct Literal {
    int variable = 0;
    bool positive = true;
    bool operator==(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct Formula {
    int variable_count = 0;
    std::vector<Clause> clauses;

    // m_i: number of literals mentioning each variable.
    std::vector<int> occurrence_counts() const;

    // Throws std::invalid_argument naming the offending clause/variable when
    // the MAX2SAT(3) shape is violated.
    void validate() const;

    // Reduction-ready: validate() passes, every variable occurs 2..3 times,
    // and each clause mentions distinct variables.
    bool is_reduction_ready(std::string* why = nullptr) const;

    bool operator==(const Formula&) const = default;
};

struct Assignment {
    std::vector<bool> values; // one per variable
    bool operator==(const Assignment&) const = default;
};

int count_satisfied(const Formula& phi, const Assignment& f);

// Removes single-occurrence variables to a fixpoint: such a variable is set
// to satisfy its only clause and the clause is dropped. Surviving variables
// are renumbered densely; kept_variables maps new ids to original ids and
// fixed holds the forced values by original id.
// optimum(input) == optimum(output) + removed_clauses.
struct PreprocessResult {
    Formula formula;
    std::vector<int> kept_variables;
    std::vector<std::optional<bool>> fixed;
    int removed_clauses = 0;
};

PreprocessResult preprocess_single_occurrence(const Formula& phi);

// Deterministic half-guarantee greedy: repeatedly set the unset variable
// whose more popular polarity satisfies the most currently-unsatisfied
// clauses (ties: lower index, then positive). Satisfies >= |clauses|/2.
Assignment greedy_half(const Formula& phi);

struct MaxSatResult {
    int optimum = 0;
    Assignment witness; // lexicographically least optimal assignment
};

// Exhaustive optimum; throws guard_error above guard_variables variables.
MaxSatResult brute_force_maxsat(const Formula& phi, int guard_variables = 24);

// DIMACS CNF ("p cnf <vars> <clauses>", zero-terminated clause lines). The
// reader enforces the MAX2SAT(3) shape and names offenders in errors.
Formula read_dimacs_cnf(std::istream& in);
Formula read_dimacs_cnf_file(const std::string& path);
void write_dimacs_cnf(const Formula& phi, std::ostream& out);
void write_dimacs_cnf_file(const Formula& phi, const std::string& path);

// Deterministic instance sources for verification drivers.
// Every reduction-ready formula over exactly two variables whose clauses all
// have two literals: clause counts 2 and 3, each clause one of the eight
// ordered sign/variable patterns.
std::vector<Formula> all_two_variable_reduction_ready_formulas();
// Rejection-samples a reduction-ready formula with two-literal clauses in
// which all `variables` variables occur.
Formula random_reduction_ready_formula(int variables, std::uint64_t seed);

} // namespace kpack

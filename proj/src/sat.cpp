#include "kpack/sat.hpp"

#include "kpack/errors.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kpack {

std::vector<int> Formula::occurrence_counts() const {
    std::vector<int> counts(static_cast<std::size_t>(variable_count), 0);
    for (const auto& clause : clauses)
        for (const auto& lit : clause) {
            if (lit.variable < 0 || lit.variable >= variable_count)
                throw std::invalid_argument("literal variable " + std::to_string(lit.variable) + " out of range");
            ++counts[static_cast<std::size_t>(lit.variable)];
        }
    return counts;
}

void Formula::validate() const {
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        const auto& clause = clauses[c];
        if (clause.empty() || clause.size() > 2)
            throw std::invalid_argument("clause " + std::to_string(c + 1) +
                                        " must have one or two literals, has " +
                                        std::to_string(clause.size()));
        for (const auto& lit : clause)
            if (lit.variable < 0 || lit.variable >= variable_count)
                throw std::invalid_argument("clause " + std::to_string(c + 1) +
                                            " mentions out-of-range variable " +
                                            std::to_string(lit.variable + 1));
    }
    const auto counts = occurrence_counts();
    for (int i = 0; i < variable_count; ++i)
        if (counts[static_cast<std::size_t>(i)] > 3)
            throw std::invalid_argument("variable " + std::to_string(i + 1) + " occurs " +
                                        std::to_string(counts[static_cast<std::size_t>(i)]) +
                                        " times (at most 3 allowed)");
}

bool Formula::is_reduction_ready(std::string* why) const {
    try {
        validate();
    } catch (const std::invalid_argument& e) {
        if (why) *why = e.what();
        return false;
    }
    const auto counts = occurrence_counts();
    for (int i = 0; i < variable_count; ++i) {
        const int m = counts[static_cast<std::size_t>(i)];
        if (m < 2 || m > 3) {
            if (why) *why = "variable " + std::to_string(i + 1) + " occurs " + std::to_string(m) +
                            " times (need 2 or 3)";
            return false;
        }
    }
    for (std::size_t c = 0; c < clauses.size(); ++c)
        if (clauses[c].size() == 2 && clauses[c][0].variable == clauses[c][1].variable) {
            if (why) *why = "clause " + std::to_string(c + 1) + " mentions a variable twice";
            return false;
        }
    return true;
}

int count_satisfied(const Formula& phi, const Assignment& f) {
    if (static_cast<int>(f.values.size()) != phi.variable_count)
        throw std::invalid_argument("assignment size does not match the variable count");
    int count = 0;
    for (const auto& clause : phi.clauses)
        for (const auto& lit : clause)
            if (f.values[static_cast<std::size_t>(lit.variable)] == lit.positive) {
                ++count;
                break;
            }
    return count;
}

PreprocessResult preprocess_single_occurrence(const Formula& phi) {
    phi.validate();
    PreprocessResult result;
    result.fixed.assign(static_cast<std::size_t>(phi.variable_count), std::nullopt);

    std::vector<Clause> clauses = phi.clauses;
    std::vector<char> alive(clauses.size(), 1);
    for (;;) {
        std::vector<int> counts(static_cast<std::size_t>(phi.variable_count), 0);
        std::vector<int> only_clause(static_cast<std::size_t>(phi.variable_count), -1);
        for (std::size_t c = 0; c < clauses.size(); ++c) {
            if (!alive[c]) continue;
            for (const auto& lit : clauses[c]) {
                ++counts[static_cast<std::size_t>(lit.variable)];
                only_clause[static_cast<std::size_t>(lit.variable)] = static_cast<int>(c);
            }
        }
        int var = -1;
        for (int i = 0; i < phi.variable_count; ++i)
            if (counts[static_cast<std::size_t>(i)] == 1) { var = i; break; }
        if (var < 0) break;
        const int c = only_clause[static_cast<std::size_t>(var)];
        for (const auto& lit : clauses[static_cast<std::size_t>(c)])
            if (lit.variable == var)
                result.fixed[static_cast<std::size_t>(var)] = lit.positive;
        alive[static_cast<std::size_t>(c)] = 0;
        ++result.removed_clauses;
    }

    // Renumber the variables that still occur.
    std::vector<int> new_id(static_cast<std::size_t>(phi.variable_count), -1);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (!alive[c]) continue;
        for (const auto& lit : clauses[c])
            if (new_id[static_cast<std::size_t>(lit.variable)] < 0) {
                new_id[static_cast<std::size_t>(lit.variable)] = static_cast<int>(result.kept_variables.size());
                result.kept_variables.push_back(lit.variable);
            }
    }
    std::vector<int> order(result.kept_variables);
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < order.size(); ++i)
        new_id[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    result.kept_variables = order;

    result.formula.variable_count = static_cast<int>(order.size());
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (!alive[c]) continue;
        Clause mapped;
        for (const auto& lit : clauses[c])
            mapped.push_back({new_id[static_cast<std::size_t>(lit.variable)], lit.positive});
        result.formula.clauses.push_back(std::move(mapped));
    }
    return result;
}

Assignment greedy_half(const Formula& phi) {
    phi.validate();
    Assignment f;
    f.values.assign(static_cast<std::size_t>(phi.variable_count), false);
    std::vector<char> set_already(static_cast<std::size_t>(phi.variable_count), 0);
    std::vector<char> satisfied(phi.clauses.size(), 0);
    for (int step = 0; step < phi.variable_count; ++step) {
        int best_var = -1, best_gain = -1;
        bool best_polarity = true;
        for (int i = 0; i < phi.variable_count; ++i) {
            if (set_already[static_cast<std::size_t>(i)]) continue;
            int pos = 0, neg = 0;
            for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
                if (satisfied[c]) continue;
                for (const auto& lit : phi.clauses[c])
                    if (lit.variable == i) (lit.positive ? pos : neg) += 1;
            }
            const int gain = std::max(pos, neg);
            if (gain > best_gain) {
                best_gain = gain;
                best_var = i;
                best_polarity = pos >= neg;
            }
        }
        f.values[static_cast<std::size_t>(best_var)] = best_polarity;
        set_already[static_cast<std::size_t>(best_var)] = 1;
        for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
            if (satisfied[c]) continue;
            for (const auto& lit : phi.clauses[c])
                if (lit.variable == best_var && lit.positive == best_polarity) satisfied[c] = 1;
        }
    }
    return f;
}

MaxSatResult brute_force_maxsat(const Formula& phi, int guard_variables) {
    phi.validate();
    const int n = phi.variable_count;
    if (n > guard_variables || n > 30)
        throw guard_error("brute_force_maxsat: " + std::to_string(n) + " variables exceed the guard of " +
                          std::to_string(std::min(guard_variables, 30)));
    // Per-clause satisfying masks; variable 0 is the most significant bit so
    // ascending masks enumerate assignments in lexicographic order.
    std::vector<std::uint32_t> pos_mask(phi.clauses.size(), 0), neg_mask(phi.clauses.size(), 0);
    for (std::size_t c = 0; c < phi.clauses.size(); ++c)
        for (const auto& lit : phi.clauses[c]) {
            const std::uint32_t bit = std::uint32_t{1} << (n - 1 - lit.variable);
            (lit.positive ? pos_mask[c] : neg_mask[c]) |= bit;
        }
    MaxSatResult out;
    out.optimum = -1;
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        int count = 0;
        for (std::size_t c = 0; c < phi.clauses.size(); ++c)
            if ((mask & pos_mask[c]) || (~mask & neg_mask[c])) ++count;
        if (count > out.optimum) {
            out.optimum = count;
            out.witness.values.assign(static_cast<std::size_t>(n), false);
            for (int i = 0; i < n; ++i)
                out.witness.values[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1;
        }
    }
    return out;
}

Formula read_dimacs_cnf(std::istream& in) {
    std::string line;
    Formula phi;
    long long declared = -1;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            if (header) throw parse_error("line " + std::to_string(lineno) + ": repeated problem line");
            std::string fmt;
            if (!(ls >> fmt >> phi.variable_count >> declared) || fmt != "cnf" ||
                phi.variable_count < 0 || declared < 0)
                throw parse_error("line " + std::to_string(lineno) + ": expected 'p cnf <vars> <clauses>'");
            header = true;
            continue;
        }
        if (!header) throw parse_error("line " + std::to_string(lineno) + ": clause before problem line");
        Clause clause;
        int v = 0;
        std::istringstream body(line);
        bool terminated = false;
        while (body >> v) {
            if (v == 0) { terminated = true; break; }
            const int var = std::abs(v) - 1;
            if (var >= phi.variable_count)
                throw parse_error("line " + std::to_string(lineno) + ": variable " +
                                  std::to_string(std::abs(v)) + " out of range");
            clause.push_back({var, v > 0});
        }
        if (!terminated) throw parse_error("line " + std::to_string(lineno) + ": clause not 0-terminated");
        if (clause.empty() || clause.size() > 2)
            throw parse_error("line " + std::to_string(lineno) + ": clauses must have one or two literals");
        phi.clauses.push_back(std::move(clause));
    }
    if (!header) throw parse_error("missing 'p cnf' problem line");
    if (static_cast<long long>(phi.clauses.size()) != declared)
        throw parse_error("clause count mismatch: header says " + std::to_string(declared) +
                          ", file has " + std::to_string(phi.clauses.size()));
    try {
        phi.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
    return phi;
}

Formula read_dimacs_cnf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return read_dimacs_cnf(in);
}

void write_dimacs_cnf(const Formula& phi, std::ostream& out) {
    out << "p cnf " << phi.variable_count << ' ' << phi.clauses.size() << '\n';
    for (const auto& clause : phi.clauses) {
        for (const auto& lit : clause)
            out << (lit.positive ? lit.variable + 1 : -(lit.variable + 1)) << ' ';
        out << "0\n";
    }
}

void write_dimacs_cnf_file(const Formula& phi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_dimacs_cnf(phi, out);
}

std::vector<Formula> all_two_variable_reduction_ready_formulas() {
    // Ordered two-literal clauses over two variables: (variable order) x
    // (sign, sign). Every clause touches both variables, so k clauses give
    // m_0 = m_1 = k; k in {2, 3} keeps the formula reduction-ready.
    std::vector<Clause> patterns;
    for (int order = 0; order < 2; ++order)
        for (int s0 = 0; s0 < 2; ++s0)
            for (int s1 = 0; s1 < 2; ++s1) {
                const int a = order == 0 ? 0 : 1;
                const int b = 1 - a;
                patterns.push_back({{a, s0 == 0}, {b, s1 == 0}});
            }
    std::vector<Formula> out;
    for (int k = 2; k <= 3; ++k) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
        for (;;) {
            Formula phi;
            phi.variable_count = 2;
            for (int c = 0; c < k; ++c) phi.clauses.push_back(patterns[pick[static_cast<std::size_t>(c)]]);
            out.push_back(std::move(phi));
            int pos = k - 1;
            while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == patterns.size() - 1) --pos;
            if (pos < 0) break;
            ++pick[static_cast<std::size_t>(pos)];
            for (int q = pos + 1; q < k; ++q) pick[static_cast<std::size_t>(q)] = 0;
        }
    }
    return out;
}

Formula random_reduction_ready_formula(int variables, std::uint64_t seed) {
    if (variables < 2) throw std::invalid_argument("need at least two variables");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        // Occurrence total must be even; clause count follows from it.
        std::vector<int> m(static_cast<std::size_t>(variables));
        int total = 0;
        for (auto& mi : m) { mi = 2 + static_cast<int>(rng() % 2); total += mi; }
        if (total % 2 != 0) continue;
        std::vector<int> slots; // variable ids, m_i copies each
        for (int i = 0; i < variables; ++i)
            for (int q = 0; q < m[static_cast<std::size_t>(i)]; ++q) slots.push_back(i);
        for (std::size_t i = slots.size(); i > 1; --i)
            std::swap(slots[i - 1], slots[rng() % i]);
        Formula phi;
        phi.variable_count = variables;
        bool ok = true;
        for (std::size_t p = 0; p + 1 < slots.size(); p += 2) {
            if (slots[p] == slots[p + 1]) { ok = false; break; }
            phi.clauses.push_back({{slots[p], rng() % 2 == 0}, {slots[p + 1], rng() % 2 == 0}});
        }
        if (ok && phi.is_reduction_ready()) return phi;
    }
    throw std::runtime_error("random_reduction_ready_formula: sampling failed");
}

} // namespace kpack

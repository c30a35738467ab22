#include "kpack/reduction.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kpack {

namespace {

std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& rng) {
    for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[static_cast<std::size_t>(next_below(rng, i))]);
}

// Greedy packing over a fixed clique universe in shuffled order; when partial
// is set each compatible clique is kept only on a coin flip, giving a
// deliberately suboptimal feasible solution.
Packing random_packing(const std::vector<Clique>& universe, Mode mode, int r,
                       std::mt19937_64& rng, bool partial) {
    std::vector<std::size_t> idx(universe.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    shuffle_indices(idx, rng);
    Packing out{mode, r, {}};
    for (std::size_t i : idx) {
        const Clique& c = universe[i];
        bool fits = true;
        for (const auto& chosen : out.cliques)
            if (!cliques_compatible(chosen, c, mode)) { fits = false; break; }
        if (!fits) continue;
        if (partial && next_below(rng, 2) == 0) continue;
        out.cliques.push_back(c);
    }
    std::sort(out.cliques.begin(), out.cliques.end());
    return out;
}

struct Checker {
    LReductionReport& rep;
    bool& any_ratio;
    int instance = 0;
    int opt_source = 0;
    int opt_target = 0;

    void check_alpha() {
        if (opt_target > rep.alpha * opt_source) {
            ++rep.alpha_violations;
            std::ostringstream os;
            os << "instance " << instance << ": opt_target=" << opt_target << " exceeds "
               << rep.alpha << "*opt_source=" << rep.alpha * opt_source;
            rep.violation_details.push_back(os.str());
        }
        if (opt_source > 0) {
            const double ratio = static_cast<double>(opt_target) / opt_source;
            if (!any_ratio || ratio < rep.min_alpha_ratio) rep.min_alpha_ratio = ratio;
            if (!any_ratio || ratio > rep.max_alpha_ratio) rep.max_alpha_ratio = ratio;
            any_ratio = true;
        }
    }

    void check_beta(int sample, int mapped_value, int target_value) {
        ++rep.solution_samples;
        const int regret_source = opt_source - mapped_value;
        const int regret_target = opt_target - target_value;
        if (regret_source > rep.beta * regret_target) {
            ++rep.beta_violations;
            std::ostringstream os;
            os << "instance " << instance << " sample " << sample << ": source regret "
               << regret_source << " exceeds " << rep.beta << "*target regret " << regret_target;
            rep.violation_details.push_back(os.str());
        }
        if (regret_target > 0) {
            const double ratio = static_cast<double>(regret_source) / regret_target;
            rep.max_beta_ratio = std::max(rep.max_beta_ratio, ratio);
        }
    }

    void record_mapping_failure(int sample, const std::string& what) {
        ++rep.solution_samples;
        ++rep.beta_violations;
        std::ostringstream os;
        os << "instance " << instance << " sample " << sample << ": mapping failed: " << what;
        rep.violation_details.push_back(os.str());
    }
};

} // namespace

LReductionReport verify_l_reduction(const std::vector<Graph>& sources, int r,
                                    int samples_per_instance, std::uint64_t seed) {
    LReductionReport rep;
    rep.kind = ReductionKind::vdkr;
    rep.r = r;
    rep.alpha = 1;
    rep.beta = 1;
    std::mt19937_64 rng(seed);
    bool any_ratio = false;
    for (const auto& g : sources) {
        ++rep.instances;
        const auto red = reduce_mis_to_vdkr(g, r);
        Checker ck{rep, any_ratio};
        ck.instance = rep.instances;
        ck.opt_source = brute_force_max_independent_set(g);
        const Packing exact = exact_max_packing(red.target, r, Mode::vertex);
        ck.opt_target = exact.size();
        ck.check_alpha();

        std::vector<Packing> samples;
        samples.push_back(Packing{Mode::vertex, r, {}});
        samples.push_back(greedy_maximal_packing(red.target, r, Mode::vertex));
        samples.push_back(exact);
        while (static_cast<int>(samples.size()) < samples_per_instance)
            samples.push_back(random_packing(red.clique_of_vertex, Mode::vertex, r, rng,
                                             samples.size() % 2 == 1));
        for (std::size_t s = 0; s < samples.size(); ++s) {
            try {
                const auto back = vdkr_map_packing_to_is(red, samples[s]);
                ck.check_beta(static_cast<int>(s), static_cast<int>(back.size()),
                              samples[s].size());
            } catch (const std::exception& e) {
                ck.record_mapping_failure(static_cast<int>(s), e.what());
            }
        }
    }
    return rep;
}

LReductionReport verify_l_reduction(ReductionKind kind, const std::vector<Formula>& sources,
                                    int samples_per_instance, std::uint64_t seed) {
    if (kind != ReductionKind::edk4 && kind != ReductionKind::edk5)
        throw std::invalid_argument("verify_l_reduction: formula sources need kind edk4 or edk5");
    LReductionReport rep;
    rep.kind = kind;
    rep.r = kind == ReductionKind::edk4 ? 4 : 5;
    rep.alpha = kind == ReductionKind::edk4 ? 13 : 9;
    rep.beta = 1;
    std::mt19937_64 rng(seed);
    bool any_ratio = false;
    for (const auto& phi : sources) {
        ++rep.instances;
        const auto red = kind == ReductionKind::edk4 ? reduce_max2sat3_to_edk4(phi)
                                                     : reduce_max2sat3_to_edk5(phi);
        Checker ck{rep, any_ratio};
        ck.instance = rep.instances;
        ck.opt_source = brute_force_maxsat(phi).optimum;
        const Packing exact = exact_max_packing(red.target, rep.r, Mode::edge);
        ck.opt_target = exact.size();
        ck.check_alpha();

        std::vector<Clique> universe;
        for (const auto& gadget : red.gadgets) {
            universe.insert(universe.end(), gadget.even_cliques.begin(),
                            gadget.even_cliques.end());
            universe.insert(universe.end(), gadget.odd_cliques.begin(),
                            gadget.odd_cliques.end());
        }
        for (const auto& cg : red.clause_gadgets)
            for (const auto& entry : cg.cliques) universe.push_back(entry.clique);

        Assignment all_true, all_false;
        all_true.values.assign(static_cast<std::size_t>(phi.variable_count), true);
        all_false.values.assign(static_cast<std::size_t>(phi.variable_count), false);
        std::vector<Packing> samples;
        samples.push_back(Packing{Mode::edge, rep.r, {}});
        samples.push_back(greedy_maximal_packing(red.target, rep.r, Mode::edge));
        samples.push_back(exact);
        samples.push_back(edk_assignment_to_packing(red, all_true));
        samples.push_back(edk_assignment_to_packing(red, all_false));
        samples.push_back(edk_assignment_to_packing(red, greedy_half(phi)));
        while (static_cast<int>(samples.size()) < samples_per_instance)
            samples.push_back(random_packing(universe, Mode::edge, rep.r, rng,
                                             samples.size() % 2 == 1));
        for (std::size_t s = 0; s < samples.size(); ++s) {
            try {
                const Assignment f = edk_packing_to_assignment(red, samples[s]);
                ck.check_beta(static_cast<int>(s), count_satisfied(phi, f), samples[s].size());
            } catch (const std::exception& e) {
                ck.record_mapping_failure(static_cast<int>(s), e.what());
            }
        }
    }
    return rep;
}

} // namespace kpack

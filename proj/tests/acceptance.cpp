/**************************************************************************
 * acceptance.cpp
 *
 * Copyright 2026 The mrgrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Runtime limits are part of each criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mrgrid/cli.hpp"
#include "mrgrid/classify.hpp"
#include "mrgrid/codes.hpp"
#include "mrgrid/construct.hpp"
#include "mrgrid/kernel.hpp"
#include "mrgrid/mr.hpp"
#include "mrgrid/topology.hpp"
#include "oracles.hpp"

using namespace mrgrid;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

IndexSet random_subset(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
    std::bernoulli_distribution pick(density);
    IndexSet out;
    for (std::size_t i = 0; i < n; ++i) {
        if (pick(rng)) out.push_back(i);
    }
    return out;
}

/// Positions of `keep` within the complement of `removed`, i.e. the indices a
/// kept position receives after deleting `removed`.
IndexSet reindex(const IndexSet& keep, const IndexSet& removed, std::size_t n) {
    const IndexSet kept = complement(removed, n);
    IndexSet out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (std::binary_search(keep.begin(), keep.end(), kept[i])) out.push_back(i);
    }
    return out;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// A random information set: greedy over a shuffled position order.
IndexSet random_information_set(const LinearCode& c, std::mt19937_64& rng) {
    IndexSet order(c.n());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    IndexSet info;
    for (auto j : order) {
        if (info.size() == c.k()) break;
        IndexSet trial = info;
        trial.push_back(j);
        std::sort(trial.begin(), trial.end());
        if (rank(restrict_cols(c.generator(), trial)) == trial.size()) info = trial;
    }
    return info;
}

FieldRef random_small_field(std::mt19937_64& rng) {
    static const std::vector<FieldRef> fields = {make_field(2, 1), make_field(3, 1), make_field(2, 2), make_field(2, 3),
                                                 make_field(5, 1), make_field(7, 1), make_field(13, 1), make_field(3, 2)};
    return fields[std::uniform_int_distribution<std::size_t>(0, fields.size() - 1)(rng)];
}

bool rows_annihilated(const FMatrix& h, const FMatrix& words) {
    for (std::size_t i = 0; i < words.rows(); ++i) {
        for (auto s : times_column(h, words.row(i))) {
            if (s != 0) return false;
        }
    }
    return true;
}

// 1 -------------------------------------------------------------------------
Outcome counterexample_reproduction() {
    const ErasurePattern e = counterexample_pattern();
    std::size_t good = 0, total = 0;
    for (const char* spec : {"2^3", "13", "2^13"}) {
        const FieldRef field = parse_field(spec);
        std::mt19937_64 rng(0x5eed);
        for (int i = 0; i < 100; ++i, ++total) {
            const LinearCode col = random_mds_code(field, 5, 3, rng);
            const LinearCode row = random_mds_code(field, 5, 3, rng);
            const KernelCodeword kc = kernel_codeword(col, row, FieldElement(field, random_nonzero(*field, rng)));
            const FMatrix hr = parity_check(row), hc = parity_check(col);
            const bool checks_valid = rank(hr) == 2 && rank(hc) == 2 && rows_annihilated(hr, row.generator()) &&
                                      rows_annihilated(hc, col.generator());
            bool support = !kc.array.is_zero();
            for (std::size_t r = 0; r < 5; ++r) {
                for (std::size_t c = 0; c < 5; ++c) support = support && ((kc.array(r, c) != 0) == e.contains(r, c));
            }
            const bool members = rows_annihilated(hr, kc.array) && rows_annihilated(hc, transpose(kc.array));
            const bool uncorrectable = !corrects(product_code(col, row), e);
            good += (checks_valid && support && members && uncorrectable) ? 1 : 0;
        }
    }
    return {good == total, std::to_string(good) + "/" + std::to_string(total) + " valid kernel arrays over GF(8), GF(13), GF(2^13)"};
}

// 2 -------------------------------------------------------------------------
Outcome census_450() {
    const GridTopology topo{5, 5, 2, 2, 0};
    const auto patterns = enumerate_regular_max(topo);
    const auto census = classify_census(topo, patterns, make_field(2, 13), 20, 0, 1);
    std::set<ErasurePattern> bad, orbit;
    std::size_t proven = 0;
    for (const auto& r : census) {
        if (*r.status != Status::kCorrectable) bad.insert(r.pattern);
        if (*r.status == Status::kProvenUncorrectable) ++proven;
    }
    for (const auto& m : counterexample_orbit()) orbit.insert(m.pattern);
    const bool pass = bad.size() == 450 && bad == orbit && proven == 450;
    return {pass, std::to_string(patterns.size()) + " regular patterns, " + std::to_string(bad.size()) +
                      " non-correctable, orbit match " + (bad == orbit ? "yes" : "no") + ", " + std::to_string(proven) +
                      " proven"};
}

// 3 -------------------------------------------------------------------------
Outcome global_redundancy() {
    const GridTopology topo{2, 4, 0, 1, 1};
    const LinearCode base = pmds_block_code(2, 4, 1, make_field(2, 3));
    const auto emax0 = enumerate_regular_max(topo.without_global());
    const bool base_mr = is_mr(base, emax0);
    const GlobalRedundancyCode g = add_global_redundancy(base, topo);
    const auto decs = emax_global_decompositions(emax0, topo);
    std::size_t corrected = 0;
    for (const auto& d : decs) corrected += corrects(g.code, d.pattern) ? 1 : 0;
    std::size_t mds = 0;
    for (const auto& e : emax0) {
        const LinearCode r = puncture(g.code, e.flat());
        mds += (r.n() == 6 && r.k() == 5 && is_mds(r)) ? 1 : 0;
    }
    const bool pass = base_mr && decs.size() == 96 && corrected == 96 && g.code.k() == 5 && mds == emax0.size();
    return {pass, std::to_string(corrected) + "/" + std::to_string(decs.size()) + " corrected, dimension " +
                      std::to_string(g.code.k()) + ", " + std::to_string(mds) + "/" + std::to_string(emax0.size()) +
                      " restrictions are [6,5,2] MDS"};
}

// 4 -------------------------------------------------------------------------
Outcome shorten_puncture() {
    std::mt19937_64 rng(4);
    std::size_t failures = 0, correctable_cases = 0;
    for (int it = 0; it < 1000; ++it) {
        const FieldRef f = random_small_field(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
        const LinearCode c = random_code(f, n, k, rng);
        const FMatrix h = parity_check(c);
        const IndexSet I = random_subset(n, rng, 0.3);
        const IndexSet kept = complement(I, n);
        const IndexSet E = random_subset(n, rng, 0.4);

        // item 1: H restricted checks the shortened code, G restricted spans the punctured one
        const LinearCode sh = shorten(c, I);
        const FMatrix h_kept = restrict_cols(h, kept);
        const LinearCode by_checks = LinearCode::span(right_kernel(h_kept));
        if (!same_code(sh, by_checks)) ++failures;
        const LinearCode pu = puncture(c, I);
        const FMatrix g_kept = restrict_cols(c.generator(), kept);
        if (pu.k() != rank(g_kept)) ++failures;
        for (std::size_t i = 0; i < c.k(); ++i) {
            if (!contains(pu, g_kept.row(i))) ++failures;
        }

        // item 2: rank criterion and the two dimension conditions agree
        const bool by_rank = corrects(c, E);
        const bool by_short = shorten(c, complement(E, n)).k() == 0;
        const bool by_punct = puncture(c, E).k() == c.k();
        if (by_rank != by_short || by_rank != by_punct) ++failures;
        if (std::pow(static_cast<double>(f->order()), static_cast<double>(k)) <= 4096 && by_rank != oracle::corrects(c, E)) {
            ++failures;
        }

        if (!by_rank) continue;
        ++correctable_cases;
        // item 3: E \ I stays correctable in the shortened code
        if (!corrects(sh, reindex(set_minus(E, I), I, n))) ++failures;
        // item 4: for I inside E, E \ I stays correctable in the punctured code
        IndexSet inside;
        for (auto x : E) {
            if (rng() & 1U) inside.push_back(x);
        }
        if (!corrects(puncture(c, inside), reindex(set_minus(E, inside), inside, n))) ++failures;
    }
    return {failures == 0, "1000 codes, " + std::to_string(correctable_cases) + " correctable draws, " +
                               std::to_string(failures) + " failures"};
}

// 5 -------------------------------------------------------------------------
struct ExtensionSetup {
    FieldRef base;
    FieldRef ext;
};

ExtensionSetup random_extension(std::mt19937_64& rng, std::size_t min_s) {
    // q in {2, 3, 4}; s in [min_s, 8]; GF(4)^8 = GF(2^16) is the largest case
    const int choice = std::uniform_int_distribution<int>(0, 2)(rng);
    const std::uint64_t p = choice == 1 ? 3 : 2;
    const unsigned t = choice == 2 ? 2 : 1;
    const auto s = static_cast<unsigned>(std::uniform_int_distribution<std::size_t>(min_s, 8)(rng));
    return {make_field(p, t), make_field(p, t * s, std::nullopt, t)};
}

std::vector<Symbol> random_independent(const FieldRef& ext, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        std::vector<Symbol> g(n);
        for (auto& x : g) x = random_nonzero(*ext, rng);
        if (independent_over_subfield(ext, g)) return g;
    }
}

FMatrix embed_matrix(const FMatrix& m, const FieldRef& ext) {
    const Embedding lift(m.field(), ext);
    FMatrix out(ext, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = lift(m(i, j));
    }
    return out;
}

Outcome gabidulin_lemmas() {
    std::mt19937_64 rng(5);
    std::size_t transform_ok = 0, restriction_ok = 0;
    for (int it = 0; it < 200; ++it) {
        // locator transformation: <G A> = Gab(n, k, g A) for invertible A over GF(q)
        const auto [base, ext] = random_extension(rng, 1);
        const std::size_t s = ext->extension_degree();
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, s)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
        const auto g = random_independent(ext, n, rng);
        const FMatrix a = embed_matrix(random_code(base, n, n, rng).generator(), ext);
        FMatrix gm(ext, 1, n);
        for (std::size_t j = 0; j < n; ++j) gm(0, j) = g[j];
        const FMatrix ga = multiply(gm, a);
        const std::vector<Symbol> g2(ga.row(0).begin(), ga.row(0).end());
        const LinearCode lhs(multiply(gabidulin(ext, n, k, g).generator(), a));
        if (independent_over_subfield(ext, g2) && same_code(lhs, gabidulin(ext, n, k, g2))) ++transform_ok;

        // restriction of <G_in G_out> to an information set of C_out is Gabidulin
        const auto [base2, ext2] = random_extension(rng, 2);
        const std::size_t s2 = ext2->extension_degree();
        const std::size_t k_out = std::uniform_int_distribution<std::size_t>(1, s2)(rng);
        const std::size_t n_out = k_out + std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        const std::size_t k_in = std::uniform_int_distribution<std::size_t>(1, k_out)(rng);
        const LinearCode outer = random_code(base2, n_out, k_out, rng);
        const auto g_in = random_independent(ext2, k_out, rng);
        const LinearCode inner = gabidulin(ext2, k_out, k_in, g_in);
        const FMatrix lifted = embed_matrix(outer.generator(), ext2);
        const LinearCode code(multiply(inner.generator(), lifted));
        const IndexSet info = random_information_set(outer, rng);
        const LinearCode restricted = puncture(code, complement(info, n_out));
        FMatrix gv(ext2, 1, k_out);
        for (std::size_t j = 0; j < k_out; ++j) gv(0, j) = g_in[j];
        const FMatrix gprime = multiply(gv, restrict_cols(lifted, info));
        const std::vector<Symbol> g3(gprime.row(0).begin(), gprime.row(0).end());
        if (independent_over_subfield(ext2, g3) && same_code(restricted, gabidulin(ext2, k_out, k_in, g3))) ++restriction_ok;
    }
    return {transform_ok == 200 && restriction_ok == 200,
            "locator transform " + std::to_string(transform_ok) + "/200, information-set restriction " +
                std::to_string(restriction_ok) + "/200"};
}

// 6 -------------------------------------------------------------------------
IndexSet grid_cells(const IndexSet& rows, const IndexSet& cols, std::size_t n) {
    IndexSet out;
    for (auto r : rows) {
        for (auto c : cols) out.push_back(r * n + c);
    }
    return out;
}

Outcome topology_closure() {
    std::mt19937_64 rng(6);
    std::size_t shorten_ok = 0, puncture_ok = 0;
    for (int it = 0; it < 200; ++it) {
        const FieldRef f = random_small_field(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        const std::size_t a = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
        const std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const LinearCode col = random_code(f, m, m - a, rng);
        const LinearCode row = random_code(f, n, n - b, rng);
        const LinearCode product = product_code(col, row);

        // shortening: the removed rows/columns lie inside information sets
        {
            const IndexSet ic = random_information_set(col, rng), ir = random_information_set(row, rng);
            const IndexSet drop_r = random_subset(ic.size(), rng), drop_c = random_subset(ir.size(), rng);
            IndexSet out_r, out_c;
            for (auto i : drop_r) out_r.push_back(ic[i]);
            for (auto i : drop_c) out_c.push_back(ir[i]);
            const IndexSet u = complement(out_r, m), v = complement(out_c, n);
            const LinearCode lhs = shorten(product, complement(grid_cells(u, v, n), m * n));
            const LinearCode sc = shorten(col, out_r), sr = shorten(row, out_c);
            const bool params = sc.n() - sc.k() == a && sr.n() - sr.k() == b;
            if (params && same_code(lhs, product_code(sc, sr))) ++shorten_ok;
        }
        // puncturing: the deleted rows/columns avoid some information set
        {
            const IndexSet ic = random_information_set(col, rng), ir = random_information_set(row, rng);
            const IndexSet extra_r = random_subset(m, rng), extra_c = random_subset(n, rng);
            IndexSet u, v;
            std::set_union(ic.begin(), ic.end(), extra_r.begin(), extra_r.end(), std::back_inserter(u));
            std::set_union(ir.begin(), ir.end(), extra_c.begin(), extra_c.end(), std::back_inserter(v));
            const LinearCode lhs = puncture(product, complement(grid_cells(u, v, n), m * n));
            const LinearCode pc = puncture(col, complement(u, m)), pr = puncture(row, complement(v, n));
            const bool params = pc.n() - pc.k() + (m - u.size()) == a && pr.n() - pr.k() + (n - v.size()) == b;
            if (params && same_code(lhs, product_code(pc, pr))) ++puncture_ok;
        }
    }
    return {shorten_ok == 200 && puncture_ok == 200,
            "shortening " + std::to_string(shorten_ok) + "/200, puncturing " + std::to_string(puncture_ok) + "/200"};
}

// 7 -------------------------------------------------------------------------
Outcome regular_sufficiency() {
    const GridTopology topo{4, 4, 1, 1, 0};
    const auto patterns = enumerate_regular_max(topo);
    const auto census = classify_census(topo, patterns, make_field(2, 8), 20, 0, 1);
    std::size_t ok = 0, max_trials = 0;
    for (const auto& r : census) {
        ok += *r.status == Status::kCorrectable ? 1 : 0;
        max_trials = std::max(max_trials, r.trials);
    }
    return {ok == patterns.size() && !patterns.empty(),
            std::to_string(ok) + "/" + std::to_string(patterns.size()) + " correctable, at most " +
                std::to_string(max_trials) + " trials"};
}

// 8 -------------------------------------------------------------------------
Outcome lifted_uncorrectability() {
    const GridTopology base{5, 5, 2, 2, 0};
    const ErasurePattern e = counterexample_pattern();
    const FieldRef f = make_field(2, 13);
    std::vector<LiftResult> lifts = {lift_extend(base, e, 1, 1, false), lift_extend(base, e, 1, 1, true),
                                     lift_puncture(base, e, 1, 1)};
    std::string detail;
    bool pass = true;
    for (const auto& l : lifts) {
        const bool reg = is_regular(l.target, l.pattern);
        const Verdict v = classify_pattern(l.target, l.pattern, f, 200, 0);
        const bool ok = reg && v.status() == Status::kNoCertificateFound && v.trials_used() == 200 && !l.padding_failed;
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + l.target.to_string() + (l.padded ? " padded" : "") + " |E|=" +
                  std::to_string(l.pattern.size()) + " " + std::string(to_string(v.status()));
    }
    return {pass, detail};
}

// 9 -------------------------------------------------------------------------
Outcome tp_characterization() {
    const GridTopology topo{4, 4, 1, 1, 0};
    const FieldRef f = make_field(2, 8);
    const auto patterns = enumerate_regular_max(topo);
    const auto census = classify_census(topo, patterns, f, 20, 0, 1);
    std::vector<ErasurePattern> emax0;
    for (const auto& r : census) {
        if (*r.status == Status::kCorrectable) emax0.push_back(r.pattern);
    }
    const auto cert = find_mr_code(topo, emax0, f, 50, 0);
    if (!cert) return {false, "no MR certificate"};
    const TpReport mr = tp_correctable_check(dual(cert->code.col_code), dual(cert->code.row_code), emax0);
    bool pass = mr.dual_is_mr && mr.subset_holds && mr.equality && mr.maximal_correctable.size() == emax0.size();
    std::mt19937_64 rng(9);
    std::size_t subset_ok = 0;
    for (int i = 0; i < 5; ++i) {
        const auto pair = cli::random_non_mr_pair(topo, emax0, make_field(2, 1), rng);
        if (!pair) continue;
        const TpReport r = tp_correctable_check(pair->first, pair->second, emax0);
        subset_ok += (r.subset_holds && !r.dual_is_mr && !r.equality) ? 1 : 0;
    }
    pass = pass && subset_ok == 5;
    return {pass, "MR instance (trial " + std::to_string(cert->trial) + "): " + std::to_string(mr.maximal_correctable.size()) +
                      " maximal TP patterns = " + std::to_string(mr.complements.size()) + " complements; subset holds on " +
                      std::to_string(subset_ok) + "/5 non-MR instances"};
}

// 10 ------------------------------------------------------------------------
Outcome regularity_oracle() {
    std::mt19937_64 rng(10);
    std::size_t agree = 0, regular_count = 0;
    for (int it = 0; it < 10000; ++it) {
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const std::size_t a = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
        const std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const double density = std::uniform_real_distribution<double>(0.05, 0.8)(rng);
        const ErasurePattern e(m, n, random_subset(m * n, rng, density));
        const bool fast = is_regular({m, n, a, b, 0}, e);
        regular_count += fast ? 1 : 0;
        agree += fast == oracle::regular(m, n, a, b, oracle::grid_of(e)) ? 1 : 0;
    }
    return {agree == 10000, std::to_string(agree) + "/10000 agree (" + std::to_string(regular_count) + " regular)"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "counterexample reproduction", 10, counterexample_reproduction},
        {2, "450-pattern census", 1800, census_450},
        {3, "global-redundancy construction", 5, global_redundancy},
        {4, "shorten/puncture properties", 600, shorten_puncture},
        {5, "Gabidulin lemmas", 600, gabidulin_lemmas},
        {6, "topology closure", 600, topology_closure},
        {7, "regularity sufficiency for (1,1)", 60, regular_sufficiency},
        {8, "lifted uncorrectability", 300, lifted_uncorrectability},
        {9, "TP characterization", 300, tp_characterization},
        {10, "regularity oracle equivalence", 600, regularity_oracle},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] %2d. %s: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    in_time ? "" : ", over time limit");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

/**************************************************************************
 * mrgrid.cpp
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

// mrgrid: enumeration, classification and construction campaigns for
// grid-like erasure-code topologies.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mrgrid/cli.hpp"

int main(int argc, char** argv) {
    using namespace mrgrid;
    cli::RunConfig cfg;
    std::string out = ".";
    std::string census;

    CLI::App app{"Erasure patterns and maximally recoverable codes for grid topologies"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--out", out, "output directory")->capture_default_str();
    };
    auto add_field = [&](CLI::App* sub, const std::string& fallback) {
        sub->add_option("--field", cfg.field, "field p^d[:modulus-hex] (default " + fallback + ")");
    };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("--trials", cfg.trials, "random code pairs per pattern")->capture_default_str();
        sub->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    };

    auto* enumerate = app.add_subcommand("enumerate", "list all maximal-size regular patterns");
    enumerate->add_option("--topo", cfg.topo, "topology MxN:a,b,h")->required();
    add_common(enumerate);

    auto* classify = app.add_subcommand("classify", "classify maximal-size regular patterns");
    classify->add_option("--topo", cfg.topo, "topology MxN:a,b,0")->required();
    classify->add_option("--census", census, "census CSV to classify instead of enumerating");
    add_field(classify, "2^13");
    add_search(classify);
    add_common(classify);

    auto* counterexample = app.add_subcommand("counterexample", "kernel codewords for random [5,3] MDS pairs");
    counterexample->add_option("--pairs", cfg.pairs, "number of code pairs")->capture_default_str();
    add_field(counterexample, "2^3");
    add_common(counterexample);

    auto* construct = app.add_subcommand("construct", "add global redundancy to an MR code and verify it");
    construct->add_option("--topo", cfg.topo, "topology MxN:a,b,h")->required();
    construct->add_option("--base", cfg.base, "pmds, or a code JSON file")->capture_default_str();
    add_field(construct, "2^3");
    add_common(construct);

    auto* tp = app.add_subcommand("tp", "compare tensor-product correctability with the topology");
    tp->add_option("--topo", cfg.topo, "topology MxN:a,b")->required();
    tp->add_option("--random", cfg.random_instances, "random non-MR instances")->capture_default_str();
    add_field(tp, "2^8");
    add_search(tp);
    add_common(tp);

    auto* lift = app.add_subcommand("lift", "lift a pattern to a larger grid");
    lift->add_option("--topo", cfg.topo, "base topology (default 5x5:2,2,0)");
    lift->add_option("--pattern", cfg.pattern_in, "pattern JSON file or 'counterexample'")->capture_default_str();
    lift->add_option("--mode", cfg.mode, "extend or puncture")
        ->check(CLI::IsMember({"extend", "puncture"}))
        ->capture_default_str();
    lift->add_option("--delta", cfg.delta, "rows to add")->capture_default_str();
    lift->add_option("--gamma", cfg.gamma, "columns to add")->capture_default_str();
    lift->add_flag("--pad", cfg.pad, "pad new rows and columns to maximal size (extend)");
    lift->add_option("--trials", cfg.trials, "classification trials for the lifted pattern")->capture_default_str();
    lift->add_option("--field", cfg.field, "classify the lifted pattern over this field");
    add_common(lift);

    CLI11_PARSE(app, argc, argv);
    cfg.out = out;
    if (!census.empty()) cfg.census_in = census;

    try {
        if (*enumerate) return cli::cmd_enumerate(cfg, std::cout);
        if (*classify) return cli::cmd_classify(cfg, std::cout);
        if (*counterexample) return cli::cmd_counterexample(cfg, std::cout);
        if (*construct) return cli::cmd_construct(cfg, std::cout);
        if (*tp) return cli::cmd_tp(cfg, std::cout);
        if (*lift) return cli::cmd_lift(cfg, std::cout);
    } catch (const Error& e) {
        std::cerr << "mrgrid: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mrgrid: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

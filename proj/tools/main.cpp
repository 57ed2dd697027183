// Copyright 2026 The opmean authors
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

#include <CLI11.hpp>

#include "opmean/cli_runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "opmean: weighted operator geometric means, quantum Renyi/Hoeffding "
        "divergences, and single-copy error-exponent bounds"};
    app.require_subcommand(1);

    opmean::RunConfig cfg;
    double tol_flag = -1.0;
    long long cap_flag = -1;
    std::string first, second;          // single-file slots
    std::vector<std::string> family;    // multi-file slots

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "random seed for all oracles");
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_dir, "directory for report files");
        sub->add_option("--tol", tol_flag, "override support/psd tolerance");
        sub->add_option("--cap", cap_flag, "override tensor-power dimension cap");
    };

    auto* means = app.add_subcommand("means", "operator means of two PSD inputs");
    means->add_option("--A", first, "matrix JSON file")->required();
    means->add_option("--B", second, "matrix JSON file")->required();
    means->add_option("--kind", cfg.kind, "ka | G | Gtilde | Ghat | LogEuclid | persp:<fn>");
    means->add_option("--t", cfg.t, "weight on A");
    means->add_option("--z", cfg.z, "z parameter of the rival means");
    add_common(means);

    auto* div = app.add_subcommand("divergence", "Renyi/Hoeffding divergences");
    div->add_option("--A", first, "matrix JSON file")->required();
    div->add_option("--B", second, "matrix JSON file")->required();
    div->add_option("--kind", cfg.kind,
                    "petz | sandwiched | relative | max | hoeffding | hoeffding-star")
        ->required();
    div->add_option("--alpha", cfg.alpha, "Renyi order");
    div->add_option("--r", cfg.r, "type-II rate for the Hoeffding transforms");
    add_common(div);

    auto* bounds = app.add_subcommand("bounds", "2-vs-2 error-exponent bound report");
    bounds->add_option("--null", family, "rho1 rho2 (matrix JSON files)")
        ->expected(2)
        ->required();
    bounds
        ->add_option("--alt", cfg.inputs, "sigma1 sigma2 (matrix JSON files)")
        ->expected(2)
        ->required();
    bounds->add_option("--r", cfg.r, "type-II rate");
    bounds->add_option("--grid", cfg.grid, "points per s/t axis");
    add_common(bounds);

    auto* member = app.add_subcommand("membership", "certify C in C({A1,A2})");
    member->add_option("--C", first, "candidate matrix JSON file")->required();
    member->add_option("--A", family, "A1 then A2 (matrix JSON files)")
        ->expected(2)
        ->required();
    add_common(member);

    auto* chan = app.add_subcommand("channels", "CP-map operations on Choi matrices");
    chan->add_option("--op", cfg.kind, "ka-mean | cp-leq | discrimination")
        ->required();
    chan->add_option("--E", first, "candidate map (discrimination only)");
    chan->add_option("--N", family, "CpMap JSON files (2)")
        ->expected(2)
        ->required();
    chan->add_option("--t", cfg.t, "weight for ka-mean");
    chan->add_option("--n", cfg.n, "copy count for discrimination");
    chan->add_option("--trials", cfg.trials, "sampled strategies");
    add_common(chan);

    auto* jordan = app.add_subcommand("jordan", "two-projection normal form");
    jordan->add_option("--S", first, "projection JSON file")->required();
    jordan->add_option("--Q", second, "projection JSON file")->required();
    jordan->add_option("--eps", cfg.eps, "epsilon for subtraction/restriction");
    add_common(jordan);

    auto* appa = app.add_subcommand("appendix-a", "commuting strict-inequality chain");
    appa->add_option("--k", cfg.k, "copy count")->required();
    appa->add_option("--r", cfg.r, "type-II rate")->required();
    add_common(appa);

    auto* all = app.add_subcommand("reproduce-all", "run the acceptance battery");
    add_common(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    // Assemble the command-specific input order.
    if (means->parsed() || div->parsed() || jordan->parsed()) {
        cfg.inputs = {first, second};
    } else if (member->parsed()) {
        cfg.inputs = {first};
        cfg.inputs.insert(cfg.inputs.end(), family.begin(), family.end());
    } else if (bounds->parsed()) {
        // rho1 rho2 sigma1 sigma2
        std::vector<std::string> alt = cfg.inputs;
        cfg.inputs = family;
        cfg.inputs.insert(cfg.inputs.end(), alt.begin(), alt.end());
    } else if (chan->parsed()) {
        cfg.inputs.clear();
        if (!first.empty()) cfg.inputs.push_back(first);
        cfg.inputs.insert(cfg.inputs.end(), family.begin(), family.end());
    }

    if (means->parsed()) cfg.command = opmean::RunConfig::Command::Means;
    if (div->parsed()) cfg.command = opmean::RunConfig::Command::Divergence;
    if (bounds->parsed()) cfg.command = opmean::RunConfig::Command::Bounds;
    if (member->parsed()) cfg.command = opmean::RunConfig::Command::Membership;
    if (chan->parsed()) cfg.command = opmean::RunConfig::Command::Channels;
    if (jordan->parsed()) cfg.command = opmean::RunConfig::Command::Jordan;
    if (appa->parsed()) cfg.command = opmean::RunConfig::Command::AppendixA;
    if (all->parsed()) cfg.command = opmean::RunConfig::Command::ReproduceAll;
    if (tol_flag > 0.0) cfg.tol = tol_flag;
    if (cap_flag > 0) cfg.cap = static_cast<std::size_t>(cap_flag);

    return opmean::run(cfg);
}

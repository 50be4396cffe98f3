/**************************************************************************
 * rankcode.cpp
 *
 * Copyright 2026 The rankcode Authors
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

// Command-line front end: field inspection, encoding, decoding, simulation.
//
// Exit status: 0 success, 2 decoding failure, 3 malformed input.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rankcode/rankcode.hpp"

namespace {

using namespace rankcode;

constexpr int kExitDecodeFailure = 2;
constexpr int kExitMalformed = 3;

struct CodeSpec {
    std::optional<FieldCtx> ctx;
    std::optional<std::size_t> k;
    std::optional<std::string> twist;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A spec is either inline text or a file. The text holds "q= n= [mod=] [k=]"
// and optionally a twist "eta=<fe> r=<int>", on one line or two.
CodeSpec parse_code_spec(const std::string& arg) {
    std::string text = arg;
    if (arg.find('=') == std::string::npos)
        text = slurp(arg);
    std::istringstream lines(text);
    std::string field, twist;
    for (const auto& line : read_lines(lines)) {
        const auto eta = line.find("eta=");
        field += ' ' + line.substr(0, eta);
        if (eta != std::string::npos)
            twist = line.substr(eta);
    }

    CodeSpec spec;
    std::istringstream tokens(field);
    std::string tok, rest;
    while (tokens >> tok) {
        if (tok.rfind("k=", 0) == 0) {
            try {
                spec.k = std::stoul(tok.substr(2));
            } catch (const std::exception&) {
                throw ParseError("bad k in spec: '" + tok + "'");
            }
        } else {
            rest += tok + ' ';
        }
    }
    spec.ctx = parse_field_spec(rest);
    if (!twist.empty())
        spec.twist = twist;
    return spec;
}

struct CodeOptions {
    std::string spec;
    std::size_t k = 0;
    std::string twisted;
};

std::size_t resolve_k(const CodeSpec& spec, const CodeOptions& opt) {
    if (opt.k)
        return opt.k;
    if (spec.k)
        return *spec.k;
    throw ParseError("code dimension missing: pass --k or k= in the spec");
}

std::optional<TwistedParams> resolve_twist(const CodeSpec& spec, const CodeOptions& opt, const CodeParams& base) {
    const std::string text = !opt.twisted.empty() ? opt.twisted : spec.twist.value_or("");
    if (text.empty())
        return std::nullopt;
    const auto t = parse_twist(base.ctx(), text);
    return TwistedParams(base, t.eta, t.r);
}

Word read_word_file(const FieldCtx& ctx, const std::string& path, std::size_t expected, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    Word w = read_word(ctx, in);
    if (w.size() != expected)
        throw ParseError(std::string(what) + " needs " + std::to_string(expected) + " elements, got "
                         + std::to_string(w.size()));
    return w;
}

void print_outcome(const DecodeOutcome& out, std::size_t k) {
    std::cout << "# message\n";
    for (std::size_t i = 0; i < k; ++i)
        std::cout << format_fe(out.message[i]) << '\n';
    std::cout << "# error " << format_linpoly(out.error) << '\n';
    std::cout << "# rank " << out.t_est << " branch " << to_string(out.branch) << '\n';
}

int cmd_field_info(const std::string& spec_arg) {
    const auto spec = parse_code_spec(spec_arg);
    const auto& ctx = *spec.ctx;
    std::cout << format_field_spec(ctx) << '\n';
    std::cout << "order " << format_u128(ctx.order()) << '\n';
    std::cout << "generator " << format_fe(ctx.generator()) << '\n';
    if (ctx.order() <= (u128(1) << 40))
        std::cout << "primitive " << format_fe(primitive_element(ctx)) << '\n';
    return 0;
}

int cmd_encode(const CodeOptions& opt, const std::string& msg_path) {
    const auto spec = parse_code_spec(opt.spec);
    const CodeParams base(*spec.ctx, resolve_k(spec, opt));
    const Word msg = read_word_file(base.ctx(), msg_path, base.k(), "message");
    if (const auto tw = resolve_twist(spec, opt, base))
        write_word(std::cout, encode(*tw, msg));
    else
        write_word(std::cout, encode(base, msg));
    return 0;
}

int cmd_decode(const CodeOptions& opt, const std::string& rx_path) {
    const auto spec = parse_code_spec(opt.spec);
    const CodeParams base(*spec.ctx, resolve_k(spec, opt));
    const Word rx = read_word_file(base.ctx(), rx_path, base.n(), "received word");
    const auto tw = resolve_twist(spec, opt, base);
    const DecodeOutcome out = tw ? decode(*tw, rx) : decode(base, rx);
    if (!out.ok) {
        std::cerr << "decoding failed: " << out.failure << '\n';
        return kExitDecodeFailure;
    }
    print_outcome(out, base.k());
    return 0;
}

struct SimOptions {
    std::string t_range = "0..0";
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string out;
    bool timing = false;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const std::size_t t = std::stoul(s);
            return {t, t};
        }
        return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("bad rank range '" + s + "', expected A..B");
    }
}

int cmd_simulate(const CodeOptions& opt, const SimOptions& sim) {
    const auto spec = parse_code_spec(opt.spec);
    const CodeParams base(*spec.ctx, resolve_k(spec, opt));
    const auto [lo, hi] = parse_range(sim.t_range);
    const auto tw = resolve_twist(spec, opt, base);
    const auto records = tw ? simulate(*tw, lo, hi, sim.trials, sim.seed) : simulate(base, lo, hi, sim.trials, sim.seed);
    if (sim.out.empty() || sim.out == "-") {
        write_csv(std::cout, records, sim.timing);
        return 0;
    }
    std::ofstream os(sim.out, std::ios::binary);
    if (!os)
        throw ParseError("cannot write '" + sim.out + "'");
    write_csv(os, records, sim.timing);
    return 0;
}

int cmd_selftest(bool exhaustive, std::uint64_t oracle_limit) {
    int failures = 0;
    const auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
        failures += ok ? 0 : 1;
    };

    for (auto [q, n, k] : {std::tuple{2u, 8u, 4u}, {3u, 5u, 2u}, {5u, 4u, 2u}}) {
        const CodeParams p(FieldCtx::standard(q, n), k);
        bool ok = true;
        for (const auto& r : simulate(p, 0, p.radius(), 50, 1))
            ok = ok && r.successes == r.trials;
        report("gabidulin round trip q=" + std::to_string(q) + " n=" + std::to_string(n) + " k=" + std::to_string(k),
               ok);
    }
    {
        const auto ctx = FieldCtx::standard(3, 6);
        Fe eta = ctx.generator();
        while (ctx.norm(eta) == ctx.one())
            eta = ctx.add(eta, ctx.one());
        const TwistedParams p(CodeParams(ctx, 2), eta, 1);
        bool ok = true;
        for (const auto& r : simulate(p, 0, 2, 50, 1))
            ok = ok && r.successes == r.trials;
        report("twisted round trip q=3 n=6 k=2", ok);
    }
    if (exhaustive) {
        for (std::size_t n : {4u, 5u}) {
            const CodeParams p(FieldCtx::standard(2, n), 2);
            bool ok = min_distance(p, oracle_limit) == n - 1;
            for (std::uint64_t seed = 0; ok && seed < 50; ++seed) {
                SplitMix64 rng(seed);
                const std::vector<Fe> msg{p.ctx().random(rng), p.ctx().random(rng)};
                const Word rx = inject_error(p, encode(p, msg), p.radius(), seed);
                const auto oracle = oracle_decode(p, rx, oracle_limit);
                const auto out = decode(p, rx);
                ok = out.ok && oracle.unique && evaluate_on(p.ctx(), out.message, p.basis()) == oracle.nearest;
            }
            report("oracle agreement and MRD distance q=2 n=" + std::to_string(n) + " k=2", ok);
        }
    }
    return failures == 0 ? 0 : 1;
}

void add_code_options(CLI::App* cmd, CodeOptions& opt) {
    cmd->add_option("spec", opt.spec, "Field spec \"q=<p> n=<deg> [mod=..] [k=..] [eta=.. r=..]\" or a file")
        ->required();
    cmd->add_option("--k", opt.k, "Code dimension");
    cmd->add_option("--twisted", opt.twisted, "Twisted code, \"eta=<fe> r=<int>\"");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-metric codes: Gabidulin and twisted Gabidulin encoding and decoding"};
    app.require_subcommand(1);

    std::string info_spec;
    auto* info = app.add_subcommand("field-info", "Show the field defined by a spec");
    info->add_option("spec", info_spec, "Field spec or file")->required();

    CodeOptions enc_opt;
    std::string msg_path;
    auto* enc = app.add_subcommand("encode", "Encode k field elements");
    add_code_options(enc, enc_opt);
    enc->add_option("--msg", msg_path, "Message file, one element per line")->required();

    CodeOptions dec_opt;
    std::string rx_path;
    auto* dec = app.add_subcommand("decode", "Decode a received word");
    add_code_options(dec, dec_opt);
    dec->add_option("--rx", rx_path, "Received word file, one element per line")->required();

    CodeOptions sim_opt;
    SimOptions sim;
    auto* simc = app.add_subcommand("simulate", "Monte-Carlo decoding over a range of error ranks");
    add_code_options(simc, sim_opt);
    simc->add_option("--t", sim.t_range, "Error rank or range A..B");
    simc->add_option("--trials", sim.trials, "Trials per rank");
    simc->add_option("--seed", sim.seed, "Base seed");
    simc->add_option("--out", sim.out, "CSV output file (stdout if omitted)");
    simc->add_flag("--timing", sim.timing, "Fill avg_decode_micros (output is then not reproducible)");

    bool exhaustive = false;
    std::uint64_t oracle_limit = static_cast<std::uint64_t>(kOracleLimit);
    auto* self = app.add_subcommand("selftest", "Run built-in consistency checks");
    self->add_flag("--exhaustive", exhaustive, "Include brute-force nearest-codeword checks");
    self->add_option("--oracle-limit", oracle_limit, "Largest code size the brute-force oracle will enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitMalformed;
    }

    try {
        if (*info)
            return cmd_field_info(info_spec);
        if (*enc)
            return cmd_encode(enc_opt, msg_path);
        if (*dec)
            return cmd_decode(dec_opt, rx_path);
        if (*simc)
            return cmd_simulate(sim_opt, sim);
        if (*self)
            return cmd_selftest(exhaustive, oracle_limit);
    } catch (const DecodeFailure& e) {
        std::cerr << "decoding failed: " << e.what() << '\n';
        return kExitDecodeFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    }
    return 0;
}

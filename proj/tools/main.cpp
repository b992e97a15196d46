// Command-line front end: every subcommand reads/writes the CSV formats of
// the I/O module, prints a one-line summary on stdout, and exits 0 on
// success, 1 on a domain error, 2 on a usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "qifrow/bench.hpp"
#include "qifrow/io.hpp"
#include "qifrow/metric.hpp"
#include "qifrow/predicate.hpp"
#include "qifrow/qif.hpp"
#include "qifrow/seb.hpp"
#include "qifrow/wf.hpp"

namespace {

using namespace qifrow;

Adversary parse_adversary(const std::string& text, std::size_t s_index,
                          bool have_secret = true) {
    std::string base = text;
    Mode mode = Mode::Gain;
    if (base.size() > 5 && base.substr(base.size() - 5) == "-gain") {
        base = base.substr(0, base.size() - 5);
    } else if (base.size() > 5 && base.substr(base.size() - 5) == "-loss") {
        mode = Mode::Loss;
        base = base.substr(0, base.size() - 5);
    }
    if (base == "exact") return Adversary::exact_guess(mode);
    if (base == "s-dist") {
        if (!have_secret)
            throw ValidationError("a distinguishing adversary needs --secret");
        return Adversary::s_distinguish(s_index, mode);
    }
    throw ValidationError("unknown adversary '" + text +
                          "' (expected exact|s-dist with optional -gain/-loss)");
}

FeasibilitySpec parse_feasible(const std::string& text, const Channel& channel) {
    FeasibilitySpec f;
    if (text == "simplex") {
        f.kind = FeasibilitySpec::Kind::FullSimplex;
    } else if (text == "padding") {
        f.kind = FeasibilitySpec::Kind::NonNegativePadding;
    } else if (text.rfind("constraints:", 0) == 0) {
        f.kind = FeasibilitySpec::Kind::LinearSystem;
        f.constraints = load_constraints(text.substr(12), channel);
    } else {
        throw ValidationError("unknown feasible set '" + text +
                              "' (simplex|padding|constraints:<path>)");
    }
    return f;
}

std::size_t secret_index_of(const Channel& channel, const std::string& id) {
    return channel.secret_index(id);
}

std::vector<MethodSpec> parse_methods(const std::string& list) {
    std::vector<MethodSpec> methods;
    std::string item;
    std::istringstream is(list);
    while (std::getline(is, item, ',')) {
        if (!item.empty()) methods.push_back(MethodSpec::parse(item));
    }
    if (methods.empty()) throw ValidationError("no methods given");
    return methods;
}

struct PriorArgs {
    std::vector<std::string> files;  // name=path entries
    bool visits = false;
};

// Load named priors into the corpus ("uniform" is always available).
void load_named_priors(SiteCorpus& corpus, const PriorArgs& args) {
    corpus.priors.emplace("uniform", Prior::uniform(corpus.channel.num_secrets()));
    for (const std::string& entry : args.files) {
        auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ValidationError("--prior expects name=path, got '" + entry + "'");
        std::string name = entry.substr(0, eq);
        std::string path = entry.substr(eq + 1);
        corpus.priors.insert_or_assign(name,
                                       load_prior(path, corpus.channel, args.visits));
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Designing one channel row to minimize information leakage"};
    app.require_subcommand(1);

    // shared options, bound per subcommand below
    std::string channel_path, prior_path, out_path, row_out, secret_id;
    std::string adversary_text = "exact-gain", feasible_text = "simplex";
    std::string method_text, methods_list, row_path, strategy_path, label;
    bool from_visits = false, capacity_mode = false;
    std::uint64_t seed = 1;
    std::size_t n_samples = 100000;
    double eps = 0.05;
    int jobs = 1;
    PriorArgs prior_args;

    auto add_channel = [&](CLI::App* cmd) {
        cmd->add_option("--channel", channel_path, "channel CSV")->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("-o,--out", out_path, "output CSV path")->required();
    };

    // leakage
    auto* cmd_leak = app.add_subcommand("leakage", "leakage of a channel as given");
    add_channel(cmd_leak);
    cmd_leak->add_option("--prior", prior_path, "prior file")->required();
    cmd_leak->add_flag("--from-visits", from_visits, "treat the prior file as visit counts");
    cmd_leak->add_option("--secret", secret_id, "target secret for s-dist");
    cmd_leak->add_option("--adversary", adversary_text, "exact|s-dist[-gain|-loss]");
    add_out(cmd_leak);

    // capacity
    auto* cmd_cap = app.add_subcommand("capacity", "capacity of a channel as given");
    add_channel(cmd_cap);
    cmd_cap->add_option("--secret", secret_id, "target secret for s-dist");
    cmd_cap->add_option("--adversary", adversary_text, "exact|s-dist[-gain|-loss]");
    add_out(cmd_cap);

    // optimize (fixed prior)
    auto* cmd_opt = app.add_subcommand("optimize", "fixed-prior optimal row");
    add_channel(cmd_opt);
    cmd_opt->add_option("--prior", prior_path, "prior file")->required();
    cmd_opt->add_flag("--from-visits", from_visits, "treat the prior file as visit counts");
    cmd_opt->add_option("--secret", secret_id, "designable secret")->required();
    cmd_opt->add_option("--adversary", adversary_text, "exact|s-dist");
    cmd_opt->add_option("--feasible", feasible_text, "simplex|padding|constraints:<path>");
    cmd_opt->add_option("--row-out", row_out, "write the optimal row CSV here");
    add_out(cmd_opt);

    // optimize-capacity
    auto* cmd_optc = app.add_subcommand("optimize-capacity",
                                        "unknown-prior optimal row for exact guessing");
    add_channel(cmd_optc);
    cmd_optc->add_option("--secret", secret_id, "designable secret")->required();
    cmd_optc->add_option("--feasible", feasible_text, "simplex|padding|constraints:<path>");
    cmd_optc->add_option("--row-out", row_out, "write the optimal row CSV here");
    add_out(cmd_optc);

    // seb
    auto* cmd_seb = app.add_subcommand("seb", "smallest enclosing ball of the other rows");
    add_channel(cmd_seb);
    cmd_seb->add_option("--secret", secret_id, "designable secret")->required();
    cmd_seb->add_option("--method", method_text, "exact|embed|approx")->required();
    cmd_seb->add_option("--feasible", feasible_text, "simplex|padding|constraints:<path>");
    cmd_seb->add_option("--eps", eps, "approximation accuracy");
    cmd_seb->add_option("--row-out", row_out, "write the center row CSV here");
    add_out(cmd_seb);

    // baseline
    auto* cmd_base = app.add_subcommand("baseline", "one baseline row and its evaluation");
    add_channel(cmd_base);
    cmd_base->add_option("--secret", secret_id, "defended secret")->required();
    cmd_base->add_option("--method", method_text,
                         "no-defense|average|weighted-average|copy|pad")->required();
    cmd_base->add_option("--prior", prior_path, "prior file (weighted-average, copy)");
    cmd_base->add_flag("--from-visits", from_visits, "treat the prior file as visit counts");
    cmd_base->add_option("--feasible", feasible_text, "simplex|padding|constraints:<path>");
    cmd_base->add_option("--row-out", row_out, "write the row CSV here");
    add_out(cmd_base);

    // pad-strategy
    auto* cmd_padst = app.add_subcommand("pad-strategy",
                                         "emit the padding transport for a target row");
    add_channel(cmd_padst);
    cmd_padst->add_option("--secret", secret_id, "defended secret")->required();
    cmd_padst->add_option("--row", row_path, "target row CSV")->required();
    add_out(cmd_padst);

    // gen-sites
    std::size_t n_sites = 20;
    ObsId min_kb = 1, max_kb = 300;
    std::string visits_out;
    auto* cmd_gen = app.add_subcommand("gen-sites", "generate a synthetic site corpus");
    cmd_gen->add_option("--sites", n_sites, "number of sites");
    cmd_gen->add_option("--seed", seed, "generator seed");
    cmd_gen->add_option("--min-kb", min_kb, "smallest page size");
    cmd_gen->add_option("--max-kb", max_kb, "largest page size");
    cmd_gen->add_option("--visits-out", visits_out, "write synthetic visit counts here");
    add_out(cmd_gen);

    // evaluate
    auto* cmd_eval = app.add_subcommand("evaluate", "method/prior evaluation table");
    add_channel(cmd_eval);
    cmd_eval->add_option("--secret", secret_id, "defended secret")->required();
    cmd_eval->add_option("--methods", methods_list, "comma-separated method names")->required();
    cmd_eval->add_option("--adversary", adversary_text, "exact|s-dist[-gain|-loss]");
    cmd_eval->add_option("--feasible", feasible_text, "simplex|padding|constraints:<path>");
    cmd_eval->add_flag("--capacity", capacity_mode, "capacity table instead of leakage");
    cmd_eval->add_option("--prior", prior_args.files, "named prior: name=path (repeatable)");
    cmd_eval->add_flag("--from-visits", prior_args.visits,
                       "prior files hold visit counts");
    std::string prior_names_list = "uniform";
    cmd_eval->add_option("--priors", prior_names_list, "comma-separated prior names");
    cmd_eval->add_option("--jobs", jobs, "parallel evaluation cells");
    cmd_eval->add_option("--eps", eps, "seb-approx accuracy");
    add_out(cmd_eval);

    // attack
    ObsId pad_block = 5;
    cmd_base->add_option("--pad-block", pad_block, "pad block size in KB");
    cmd_eval->add_option("--pad-block", pad_block, "pad block size in KB");

    std::string attacker_prior_text = "worst";
    auto* cmd_atk = app.add_subcommand("attack", "simulate the distinguishing attack");
    add_channel(cmd_atk);
    cmd_atk->add_option("--secret", secret_id, "defended secret")->required();
    cmd_atk->add_option("--row", row_path, "defense row CSV (sampled directly)");
    cmd_atk->add_option("--strategy", strategy_path, "padding strategy CSV (sampled via transport)");
    cmd_atk->add_option("--attacker-prior", attacker_prior_text,
                        "worst | two-point:<secret> | one-on-n:<n>:<visits file> | file:<path>");
    cmd_atk->add_option("--samples", n_samples, "number of samples");
    cmd_atk->add_option("--seed", seed, "sampling seed");
    cmd_atk->add_option("--label", label, "method label for the CSV");
    add_out(cmd_atk);

    // bench-seb
    std::string sites_list = "25,50,100,200", obs_list;
    std::size_t sites_fixed = 20;
    ObsId obs_cap = 12;
    bool bench_simplex = false;
    auto* cmd_bench = app.add_subcommand("bench-seb", "runtime/quality sweep CSV");
    cmd_bench->add_option("--sites-list", sites_list, "comma-separated site counts");
    cmd_bench->add_option("--obs-cap", obs_cap, "size range for the site sweep");
    cmd_bench->add_option("--obs-list", obs_list, "comma-separated size ranges");
    cmd_bench->add_option("--sites-fixed", sites_fixed, "corpus size for the size sweep");
    cmd_bench->add_option("--seed", seed, "corpus seed");
    cmd_bench->add_option("--eps", eps, "seb-approx accuracy");
    cmd_bench->add_flag("--simplex", bench_simplex, "full simplex instead of padding");
    add_out(cmd_bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto parse_list = [](const std::string& text) {
        std::vector<std::size_t> out;
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ','))
            if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoull(item)));
        return out;
    };

    if (cmd_leak->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_id.empty() ? 0 : secret_index_of(channel, secret_id);
        Adversary adv = parse_adversary(adversary_text, s, !secret_id.empty());
        Prior prior = load_prior(prior_path, channel, from_visits);
        EvalRow row;
        row.method = "channel";
        row.prior = "file";
        row.posterior_vulnerability = posterior_value(prior, channel, adv);
        try {
            row.leakage = leakage(prior, channel, adv);
        } catch (const InfiniteLeakageError&) {
            row.leakage = std::numeric_limits<double>::infinity();
        }
        save_results({row}, false, out_path);
        std::cout << "leakage " << format_g12(row.leakage) << " posterior "
                  << format_g12(row.posterior_vulnerability) << "\n";
        return 0;
    }

    if (cmd_cap->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_id.empty() ? 0 : secret_index_of(channel, secret_id);
        Adversary adv = parse_adversary(adversary_text, s, !secret_id.empty());
        EvalRow row;
        row.method = "channel";
        try {
            row.capacity = capacity(channel, adv).value;
        } catch (const InfiniteLeakageError&) {
            row.capacity = std::numeric_limits<double>::infinity();
        }
        save_results({row}, true, out_path);
        std::cout << format_g12(row.capacity) << "\n";
        return 0;
    }

    if (cmd_opt->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_index_of(channel, secret_id);
        Adversary adv = parse_adversary(adversary_text, s);
        Prior prior = load_prior(prior_path, channel, from_visits);
        FeasibleSet f = parse_feasible(feasible_text, channel).build(channel, s);
        RowStrategy strategy = optimal_fixed_prior(prior, channel, s, f, adv);
        if (strategy.diag.status != lp::Status::Optimal)
            throw ValidationError(std::string("optimize: ") +
                                  lp::to_string(strategy.diag.status));
        Channel defended = channel.with_row(s, strategy.q);
        EvalRow row;
        row.method = strategy.method.name();
        row.prior = "file";
        row.posterior_vulnerability = posterior_value(prior, defended, adv);
        row.leakage = leakage(prior, defended, adv);
        save_results({row}, false, out_path);
        if (!row_out.empty()) save_row(strategy.q, channel, row_out);
        std::cout << "leakage " << format_g12(row.leakage) << " posterior "
                  << format_g12(row.posterior_vulnerability) << "\n";
        return 0;
    }

    if (cmd_optc->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_index_of(channel, secret_id);
        FeasibleSet f = parse_feasible(feasible_text, channel).build(channel, s);
        RowStrategy strategy = optimal_capacity_exact(channel, s, f);
        if (strategy.diag.status != lp::Status::Optimal)
            throw ValidationError(std::string("optimize-capacity: ") +
                                  lp::to_string(strategy.diag.status));
        EvalRow row;
        row.method = strategy.method.name();
        row.capacity = capacity(channel.with_row(s, strategy.q), Adversary::exact_guess()).value;
        save_results({row}, true, out_path);
        if (!row_out.empty()) save_row(strategy.q, channel, row_out);
        std::cout << "capacity " << format_g12(row.capacity) << "\n";
        return 0;
    }

    if (cmd_seb->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_index_of(channel, secret_id);
        FeasibleSet f = parse_feasible(feasible_text, channel).build(channel, s);
        SebMethod method;
        if (method_text == "exact") method = SebMethod::ExactLp;
        else if (method_text == "embed") method = SebMethod::EmbeddingLp;
        else if (method_text == "approx") method = SebMethod::Approx;
        else throw ValidationError("seb: unknown method '" + method_text + "'");
        SebSolution seb = seb_for_channel(channel, s, f, method, eps);
        if (seb.status != lp::Status::Optimal)
            throw ValidationError(std::string("seb: ") + lp::to_string(seb.status) +
                                  (seb.note.empty() ? "" : " (" + seb.note + ")"));
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot open '" + out_path + "' for writing");
        out << "method,radius,capacity,farthest\n";
        out << method_text << ',' << format_g12(seb.radius) << ','
            << format_g12(1.0 + 0.5 * seb.radius) << ',' << seb.farthest_index << '\n';
        if (!row_out.empty()) save_row(seb.center, channel, row_out);
        std::cout << "radius " << format_g12(seb.radius) << " capacity "
                  << format_g12(1.0 + 0.5 * seb.radius) << "\n";
        return 0;
    }

    if (cmd_base->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_index_of(channel, secret_id);
        MethodSpec spec = MethodSpec::parse(method_text);
        spec.pad_block_kb = pad_block;
        std::optional<Prior> prior;
        if (!prior_path.empty()) prior = load_prior(prior_path, channel, from_visits);
        Channel working = working_channel(channel, s, {spec}, spec.pad_block_kb);
        FeasibleSet f = parse_feasible(feasible_text, working).build(working, s);
        RowStrategy strategy =
            baseline(spec, working, s, prior ? &*prior : nullptr, &f);
        EvalRow row;
        row.method = spec.name();
        row.prior = prior ? "file" : "";
        row.capacity =
            capacity(working.with_row(s, strategy.q), Adversary::s_distinguish(s)).value;
        save_results({row}, true, out_path);
        if (!row_out.empty()) save_row(strategy.q, working, row_out);
        std::cout << "method " << spec.name() << " s-dist capacity "
                  << format_g12(row.capacity) << "\n";
        return 0;
    }

    if (cmd_padst->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_index_of(channel, secret_id);
        Vec q = load_row(row_path, channel);
        PaddingStrategy strategy =
            extract_strategy(channel.row(s), q, channel.observable_ids());
        save_strategy(strategy, out_path);
        std::cout << "transport rows " << strategy.observables.size() << "\n";
        return 0;
    }

    if (cmd_gen->parsed()) {
        SiteModel model;
        model.min_size_kb = min_kb;
        model.max_size_kb = max_kb;
        SiteCorpus corpus = make_synthetic_corpus(n_sites, seed, model);
        save_channel(corpus.channel, out_path);
        if (!visits_out.empty()) {
            std::ofstream out(visits_out);
            if (!out) throw IoError("cannot open '" + visits_out + "' for writing");
            for (std::size_t i = 0; i < corpus.visits.size(); ++i)
                out << corpus.channel.secret_ids()[i] << '='
                    << format_g12(corpus.visits[i]) << '\n';
        }
        std::cout << "sites " << n_sites << " observables "
                  << corpus.channel.num_observables() << "\n";
        return 0;
    }

    if (cmd_eval->parsed()) {
        SiteCorpus corpus{load_channel(channel_path), {}, {}};
        load_named_priors(corpus, prior_args);
        std::size_t s = secret_index_of(corpus.channel, secret_id);
        Adversary adv = parse_adversary(adversary_text, s);
        std::vector<MethodSpec> methods = parse_methods(methods_list);
        for (MethodSpec& m : methods)
            if (m.kind == MethodSpec::Kind::Pad) m.pad_block_kb = pad_block;
        EvalOptions options;
        options.jobs = jobs;
        options.seb_epsilon = eps;
        FeasibilitySpec f = parse_feasible(feasible_text, corpus.channel);
        std::vector<std::string> prior_names;
        {
            std::istringstream is(prior_names_list);
            std::string item;
            while (std::getline(is, item, ','))
                if (!item.empty()) prior_names.push_back(item);
        }
        std::vector<EvalRow> rows =
            capacity_mode
                ? evaluate_capacity(corpus, s, f, adv, methods, options)
                : evaluate_fixed_prior(corpus, s, f, adv, methods, prior_names, options);
        save_results(rows, capacity_mode, out_path);
        std::size_t skipped = 0;
        for (const EvalRow& row : rows)
            if (row.status != lp::Status::Optimal) ++skipped;
        std::cout << "evaluated " << rows.size() << " cells";
        if (skipped) std::cout << " (" << skipped << " not solvable)";
        std::cout << "\n";
        return 0;
    }

    if (cmd_atk->parsed()) {
        Channel channel = load_channel(channel_path);
        std::size_t s = secret_index_of(channel, secret_id);
        if (row_path.empty() == strategy_path.empty())
            throw ValidationError("attack: pass exactly one of --row or --strategy");

        std::optional<Vec> q;
        std::optional<PaddingStrategy> transport;
        Vec effective;
        if (!row_path.empty()) {
            q = load_row(row_path, channel);
            effective = *q;
        } else {
            transport = load_strategy(strategy_path, channel, s);
            effective = transport->target();
        }

        Prior attacker = [&]() -> Prior {
            if (attacker_prior_text == "worst") {
                // evenly split between s and the row farthest from the defense
                auto d = max_dist({effective}, channel.rows_except(s));
                std::size_t t = d.second >= s ? d.second + 1 : d.second;
                return Prior::two_point(channel.num_secrets(), s, t);
            }
            if (attacker_prior_text.rfind("two-point:", 0) == 0) {
                std::size_t t = secret_index_of(channel, attacker_prior_text.substr(10));
                return Prior::two_point(channel.num_secrets(), s, t);
            }
            if (attacker_prior_text.rfind("one-on-n:", 0) == 0) {
                std::string rest = attacker_prior_text.substr(9);
                auto colon = rest.find(':');
                if (colon == std::string::npos)
                    throw ValidationError("attack: one-on-n:<n>:<visits file>");
                std::size_t n = std::stoull(rest.substr(0, colon));
                Prior visits = load_prior(rest.substr(colon + 1), channel, true);
                return one_on_n_prior(visits.probs(), s, n);
            }
            if (attacker_prior_text.rfind("file:", 0) == 0)
                return load_prior(attacker_prior_text.substr(5), channel, false);
            throw ValidationError("attack: unknown attacker prior '" +
                                  attacker_prior_text + "'");
        }();

        AttackReport report = simulate_attack(channel, s, q ? &*q : nullptr,
                                              transport ? &*transport : nullptr,
                                              attacker, n_samples, seed);
        save_attack(label.empty() ? (q ? "row" : "strategy") : label, report, out_path);
        std::cout << "accuracy " << format_g12(report.accuracy) << " recall "
                  << format_g12(report.recall) << " f1 " << format_g12(report.f1) << "\n";
        return 0;
    }

    if (cmd_bench->parsed()) {
        BenchConfig config;
        config.sites_list = parse_list(sites_list);
        config.obs_cap = obs_cap;
        config.sites_fixed = sites_fixed;
        config.seed = seed;
        config.epsilon = eps;
        config.padding = !bench_simplex;
        if (!obs_list.empty()) {
            config.obs_list.clear();
            for (std::size_t v : parse_list(obs_list))
                config.obs_list.push_back(static_cast<ObsId>(v));
        }
        std::vector<BenchRow> rows = bench_seb(config);
        save_bench(rows, out_path);
        std::cout << "bench rows " << rows.size() << "\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qifrow::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qifrow::InfiniteLeakageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qifrow::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// erosim command line: simulations, constants, oracle samples, comparisons.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "erosim/harness.hpp"
#include "erosim/killed.hpp"
#include "erosim/variants.hpp"
#include "suites.hpp"

using namespace erosim;

namespace {

// Writes to --out if given, otherwise stdout.
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw std::runtime_error("cannot open " + path);
            os = &file;
        }
    }
};

const std::map<std::string, Mode> kModes{{"exact", Mode::Exact}, {"fast", Mode::Fast}};

std::vector<std::int64_t> parse_list(const std::string& s)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<std::int64_t>(std::stod(item))); // accepts 1e6
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"erosim: competitive erosion on Z"};
    app.require_subcommand(1);

    std::uint64_t seed = 0, trials = 1;
    std::string out, modeName = "exact";
    std::size_t runs = 2;

    // simulate
    auto* sim = app.add_subcommand("simulate", "run erosion trials and write one CSV row per trial and budget");
    std::string particles, microsteps, ckptPrefix;
    std::int64_t every = 0;
    auto* pOpt = sim->add_option("--particles", particles, "particle budgets, comma separated (e.g. 1e4,1e5)");
    auto* tOpt = sim->add_option("--microsteps", microsteps, "microstep budgets, comma separated");
    pOpt->excludes(tOpt);
    sim->add_option("--trials", trials)->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed);
    sim->add_option("--mode", modeName)->check(CLI::IsMember({"exact", "fast"}));
    sim->add_option("--runs", runs, "number of E/W run columns");
    sim->add_option("--out", out);
    sim->add_option("--checkpoint-every", every, "save a checkpoint every this many particles or microsteps");
    sim->add_option("--checkpoint", ckptPrefix, "checkpoint file prefix (resumes if present)");

    // killed
    auto* kil = app.add_subcommand("killed", "killed process trials on [-L, L]");
    std::int64_t L = 1;
    kil->add_option("--L", L)->check(CLI::PositiveNumber);
    kil->add_option("--trials", trials)->check(CLI::PositiveNumber);
    kil->add_option("--seed", seed);
    kil->add_option("--out", out);

    // constants
    auto* con = app.add_subcommand("constants", "w_k table with alpha and C");
    std::size_t K = 1000;
    double tol = 1e-12;
    con->add_option("--K", K, "largest k");
    con->add_option("--tolerance", tol);
    con->add_option("--out", out);

    // oracle
    auto* ora = app.add_subcommand("oracle", "samples of the limit functionals");
    std::size_t steps = 1'000'000;
    ora->add_option("--steps", steps, "walk length per sample")->check(CLI::PositiveNumber);
    ora->add_option("--trials", trials)->check(CLI::PositiveNumber);
    ora->add_option("--runs", runs, "k: extrema X_1..X_{k+1}");
    ora->add_option("--seed", seed);
    ora->add_option("--out", out);

    // variant
    auto* var = app.add_subcommand("variant", "multi-color rules on Z, or erosion on Z^2 / Z^3");
    int palette = 2, dim = 1;
    std::string schedule = "alternating", antag = "mutual", pattern, slice;
    bool originStops = false;
    std::uint64_t n = 1000;
    var->add_option("--palette", palette);
    var->add_option("--schedule", schedule)->check(CLI::IsMember({"alternating", "iid", "periodic"}));
    var->add_option("--pattern", pattern, "palette indices for --schedule periodic, comma separated");
    var->add_option("--antagonism", antag)->check(CLI::IsMember({"mutual", "cyclic"}));
    var->add_flag("--origin-stops", originStops, "walkers may settle on the origin");
    var->add_option("--particles", n);
    var->add_option("--dim", dim)->check(CLI::IsMember({1, 2, 3}));
    var->add_option("--slice", slice, "Z^d only: write the z=0 plane as x,y,colorIndex CSV");
    var->add_option("--mode", modeName)->check(CLI::IsMember({"exact", "fast"}));
    var->add_option("--seed", seed);
    var->add_option("--out", out);

    // compare
    auto* cmp = app.add_subcommand("compare", "KS comparison of empirical columns against limit columns");
    std::string empPath, limPath;
    std::vector<std::string> pairs;
    double cmpTol = 0.05;
    cmp->add_option("--empirical", empPath)->required();
    cmp->add_option("--limit", limPath)->required();
    cmp->add_option("--pair", pairs, "empirical:limit column pair")->required();
    cmp->add_option("--tolerance", cmpTol);

    // acceptance
    auto* acc = app.add_subcommand("acceptance", "run acceptance suites");
    std::vector<std::string> suites;
    acc->add_option("--suite", suites)->check(CLI::IsMember(acceptance::suite_names()));

    // checkpoint-test
    auto* ckt = app.add_subcommand("checkpoint-test", "checkpoint halfway, resume, and compare with an uninterrupted run");
    std::string ckptFile = "erosim-checkpoint-test.ckpt";
    ckt->add_option("--particles", n);
    ckt->add_option("--seed", seed);
    ckt->add_option("--out", ckptFile, "checkpoint file to write");

    CLI11_PARSE(app, argc, argv);

    try {
        Mode mode = kModes.at(modeName);
        if (*sim) {
            if (particles.empty() && microsteps.empty())
                throw CLI::ValidationError("simulate", "give --particles or --microsteps");
            ExperimentConfig cfg;
            cfg.kind = particles.empty() ? ExperimentKind::Microstep : ExperimentKind::Support;
            cfg.budgets = parse_list(particles.empty() ? microsteps : particles);
            cfg.trials = trials;
            cfg.masterSeed = seed;
            cfg.mode = mode;
            cfg.runs = runs;
            cfg.checkpointEvery = every;
            cfg.checkpointPrefix = ckptPrefix;
            if (every > 0 && ckptPrefix.empty())
                cfg.checkpointPrefix = out.empty() ? "erosim" : out;
            Output o(out);
            run_experiment(cfg).write_csv(*o.os);
        } else if (*kil) {
            ExperimentConfig cfg;
            cfg.kind = ExperimentKind::Killed;
            cfg.L = L;
            cfg.trials = trials;
            cfg.masterSeed = seed;
            auto t = run_experiment(cfg);
            Output o(out);
            t.write_csv(*o.os);
            auto R = t.values("R"), Q = t.values("Q");
            double mr = 0, mq = 0;
            for (std::size_t i = 0; i < R.size(); ++i) {
                mr += R[i] / static_cast<double>(R.size());
                mq += Q[i] / static_cast<double>(Q.size());
            }
            auto w = w_recursion(static_cast<std::size_t>(L));
            std::fprintf(stderr, "mean R=%.5f (w_L=%.5f)  mean Q=%.5f ((L+1)^3=%lld)\n", mr,
                         w.w[static_cast<std::size_t>(L)].get_d(), mq, (long long)((L + 1) * (L + 1) * (L + 1)));
        } else if (*con) {
            auto t = w_recursion(K);
            auto a = alpha(tol);
            auto C = C_constant(tol);
            Output o(out);
            char buf[256];
            std::snprintf(buf, sizeof buf, "# alpha=%.15g in [%.15g, %.15g]; C=%.15g in [%.15g, %.15g]\n", a.value,
                          a.lo, a.hi, C.value, C.lo, C.hi);
            *o.os << buf << "k,w_k,w_k_over_k3\n";
            for (std::size_t k = 0; k <= K; ++k) {
                double r = k == 0 ? 0.0 : t.w[k].get_d() / (static_cast<double>(k) * k * k);
                std::snprintf(buf, sizeof buf, ",%.15g\n", r);
                *o.os << k << ',' << t.w[k].get_str() << buf;
            }
        } else if (*ora) {
            ExperimentConfig cfg;
            cfg.kind = ExperimentKind::Oracle;
            cfg.mSteps = steps;
            cfg.trials = trials;
            cfg.runs = runs;
            cfg.masterSeed = seed;
            Output o(out);
            run_experiment(cfg).write_csv(*o.os);
        } else if (*var) {
            Output o(out);
            std::vector<std::pair<std::uint64_t, std::int64_t>> series;
            std::string desc;
            if (dim == 1) {
                ColorRule rule;
                rule.palette = palette;
                rule.schedule = schedule == "iid"        ? ColorRule::Schedule::IidUniform
                                : schedule == "periodic" ? ColorRule::Schedule::Periodic
                                                         : ColorRule::Schedule::Alternating;
                for (auto k : parse_list(pattern))
                    rule.pattern.push_back(static_cast<int>(k));
                rule.antagonism = antag == "cyclic" ? ColorRule::Antagonism::Cyclic : ColorRule::Antagonism::Mutual;
                rule.originStops = originStops;
                auto r = run_variant_line(rule, n, seed, mode);
                series = r.series;
                desc = "erosim variant line palette=" + std::to_string(palette) + " schedule=" + schedule +
                       " antagonism=" + antag + " origin-stops=" + std::to_string(originStops) +
                       " seed=" + std::to_string(seed) + " coloring=" + r.coloring.to_string();
                if (desc.size() > 4000)
                    desc = desc.substr(0, 4000) + "...";
            } else {
                auto z = run_zd(dim, n, seed);
                series = z.series;
                desc = "erosim variant Z^" + std::to_string(dim) + " seed=" + std::to_string(seed) +
                       " steps=" + std::to_string(z.steps) + " cap-hits=" + std::to_string(z.capHits);
                if (!slice.empty()) {
                    std::ofstream s(slice);
                    write_slice_csv(s, z.coloring);
                }
            }
            *o.os << "# " << desc << "\nn,colored\n";
            for (auto [k, c] : series)
                *o.os << k << ',' << c << '\n';
        } else if (*cmp) {
            std::ifstream a(empPath), b(limPath);
            if (!a || !b)
                throw std::runtime_error("cannot open input CSV");
            auto ta = Table::read_csv(a), tb = Table::read_csv(b);
            std::vector<std::pair<std::string, std::string>> ps;
            for (const auto& p : pairs) {
                auto c = p.find(':');
                if (c == std::string::npos)
                    throw std::runtime_error("--pair wants empirical:limit");
                ps.emplace_back(p.substr(0, c), p.substr(c + 1));
            }
            bool ok = true;
            std::cout << "empirical,limit,ks,n_empirical,n_limit,tolerance,split_half_baseline,pass\n";
            for (const auto& r : compare_to_limit(ta, tb, ps, cmpTol)) {
                std::printf("%s,%s,%.5f,%zu,%zu,%g,%.5f,%s\n", r.empirical.c_str(), r.limit.c_str(), r.D,
                            r.nEmpirical, r.nLimit, r.tolerance, r.baseline, r.pass ? "pass" : "fail");
                ok = ok && r.pass;
            }
            return ok ? 0 : 1;
        } else if (*acc) {
            if (suites.empty())
                suites = acceptance::suite_names();
            bool ok = true;
            for (const auto& s : suites)
                acceptance::run_suite(s, [&](const acceptance::Criterion& c) {
                    std::cout << acceptance::format(c) << std::endl;
                    ok = ok && (c.pass || !c.blocking);
                });
            return ok ? 0 : 1;
        } else if (*ckt) {
            auto full = new_state(seed);
            run_until_particles(full, n);
            auto half = new_state(seed);
            run_until_particles(half, n / 2);
            save_checkpoint(ckptFile, half);
            auto resumed = load_checkpoint(ckptFile);
            run_until_particles(resumed, n);
            bool same = resumed.coloring == full.coloring && resumed.microsteps == full.microsteps &&
                        resumed.rng == full.rng && resumed.layers.layers() == full.layers.layers();
            std::printf("%s checkpoint at n=%llu, resumed to n=%llu: %s\n", same ? "PASS" : "FAIL",
                        (unsigned long long)(n / 2), (unsigned long long)n,
                        same ? "identical to the uninterrupted run" : "differs from the uninterrupted run");
            return same ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "erosim: %s\n", e.what());
        return 2;
    }
    return 0;
}

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pv/errors.hpp"
#include "pv/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pullback-verifier: local identity checks"};
    pv::SuiteConfig cfg;
    std::string report = "text", out;
    bool all = false;
    unsigned jobs = 0;
    long prime = 0, prime2 = 0, disc = 0;
    int weight = 0, trunc = 0, samples = 0;
    std::uint64_t seed = 0;
    double tol = 0;
    app.set_config("--config", "", "key=value file; flags win over the file");
    app.add_option("--suite", cfg.suite, "suite to run")->check(CLI::IsMember(pv::suite_names()));
    auto* o_p = app.add_option("--prime", prime, "prime p (q, r)");
    auto* o_p2 = app.add_option("--prime2", prime2, "second level prime (factors-poles)");
    auto* o_d = app.add_option("--disc", disc, "d for Q(sqrt(-d))");
    auto* o_w = app.add_option("--weight", weight, "even weight l");
    auto* o_t = app.add_option("--trunc", trunc, "series truncation N");
    auto* o_n = app.add_option("--samples", samples, "random samples");
    auto* o_s = app.add_option("--seed", seed, "RNG seed");
    auto* o_tol = app.add_option("--tol", tol, "relative tolerance");
    app.add_option("--report", report, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out, "write the report here instead of stdout");
    app.add_flag("--all", all, "run every suite with defaults");
    app.add_option("--jobs", jobs, "concurrent suites with --all (0: hardware threads)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (!all && cfg.suite.empty()) {
        std::cerr << "config error: give --suite or --all\n";
        return 2;
    }
    if (o_p->count()) cfg.prime = prime;
    if (o_p2->count()) cfg.prime2 = prime2;
    if (o_d->count()) cfg.disc = disc;
    if (o_w->count()) cfg.weight = weight;
    if (o_t->count()) cfg.trunc = trunc;
    if (o_n->count()) cfg.samples = samples;
    if (o_s->count()) cfg.seed = seed;
    if (o_tol->count()) cfg.tol = tol;

    std::vector<pv::VerdictReport> reps;
    try {
        if (all)
            reps = pv::run_all(jobs);
        else
            reps.push_back(pv::run_suite(cfg));
    } catch (const pv::PvError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::string text;
    if (report == "json")
        text = all ? pv::reports_json(reps) : pv::report_json(reps.front());
    else
        for (const auto& r : reps) text += pv::report_text(r);
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!(f << text)) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
    }
    return pv::exit_code(reps);
}

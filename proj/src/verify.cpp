#include "groupdet/verify.hpp"

#include <algorithm>

#include "groupdet/cyclo.hpp"
#include "groupdet/errors.hpp"
#include "groupdet/exactdet.hpp"
#include "groupdet/rng.hpp"
#include "groupdet/search.hpp"

namespace groupdet::verify {

namespace {

using u64 = std::uint64_t;

Assignment random_assignment(Rng& rng, u64 order, long long lo, long long hi) {
    Assignment a(static_cast<std::size_t>(order));
    for (auto& x : a) x = BigInt(rng.uniform(lo, hi));
    return a;
}

std::string show(const Assignment& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + ")";
}

// The abelian shapes of order <= 16 exercised by the property suites.
const std::vector<std::string>& abelian_specs() {
    static const std::vector<std::string> specs = {"C2",     "C4",   "C8",       "C16",
                                                   "C2xC2",  "C4xC2", "C2xC2xC2", "C3",
                                                   "C9",     "C3xC3", "C4xC4",    "C6"};
    return specs;
}

Rng seeded(u64 seed, u64 salt) { return Rng(splitmix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL))); }

SuiteReport suite_dedekind(const VerifyOptions& opts) {
    SuiteReport rep{"dedekind", opts.seed, 0, {}, {}};
    u64 salt = 1;
    for (const auto& spec : abelian_specs()) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        Rng rng = seeded(opts.seed, salt++);
        for (std::size_t i = 0; i < opts.samples; ++i) {
            const Assignment a = random_assignment(rng, g.order(), -5, 5);
            ++rep.checks;
            if (cyclo::dedekind_theta(g, a) != exactdet::theta(g, a))
                rep.violations.push_back("dedekind/theta mismatch on " + spec + " at " + show(a));
        }
    }
    return rep;
}

SuiteReport suite_cor5(const VerifyOptions& opts) {
    SuiteReport rep{"cor5", opts.seed, 0, {}, {}};
    const std::vector<std::pair<std::string, unsigned>> shapes = {
        {"C2xC2", 1}, {"C4xC2", 1}, {"C4xC2", 2}, {"C2xC2xC2", 1}, {"C3xC3", 1}, {"C9xC3", 1}};
    u64 salt = 100;
    for (const auto& [spec, l] : shapes) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        Rng rng = seeded(opts.seed, salt++);
        for (std::size_t i = 0; i < opts.samples; ++i) {
            const Assignment a = random_assignment(rng, g.order(), -5, 5);
            ++rep.checks;
            if (!theorems::check_cor5(g, l, a))
                rep.violations.push_back("collapse congruence fails on " + spec +
                                         " (l=" + std::to_string(l) + ") at " + show(a));
        }
    }
    return rep;
}

SuiteReport suite_alphabeta(const VerifyOptions& opts) {
    SuiteReport rep{"alphabeta", opts.seed, 0, {}, {}};
    u64 salt = 200;
    for (const char* spec : {"C3xC3", "C9xC3"}) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        Rng rng = seeded(opts.seed, salt++);
        for (std::size_t i = 0; i < opts.samples; ++i) {
            const Assignment a = random_assignment(rng, g.order(), -5, 5);
            ++rep.checks;
            const auto ab = cyclo::alpha_beta(g, a);
            if (ab.alpha * ab.beta != exactdet::theta(g, a))
                rep.violations.push_back(std::string("alpha*beta != theta on ") + spec + " at " +
                                         show(a));
            if (ab.beta < 0)
                rep.violations.push_back(std::string("negative beta for odd p on ") + spec + " at " +
                                         show(a));
        }
    }
    {
        const FiniteGroup g = FiniteGroup::parse("C2xC2");
        Rng rng = seeded(opts.seed, salt++);
        bool saw_positive = false, saw_negative = false;
        for (std::size_t i = 0; i < opts.samples; ++i) {
            const Assignment a = random_assignment(rng, g.order(), -5, 5);
            ++rep.checks;
            const auto ab = cyclo::alpha_beta(g, a);
            if (ab.alpha * ab.beta != exactdet::theta(g, a))
                rep.violations.push_back("alpha*beta != theta on C2xC2 at " + show(a));
            if (ab.beta > 0) saw_positive = true;
            if (ab.beta < 0) saw_negative = true;
        }
        if (!saw_positive || !saw_negative)
            rep.violations.push_back("beta did not take both signs on C2xC2 (p = 2)");
    }
    return rep;
}

SuiteReport suite_theorem3(const VerifyOptions& opts) {
    SuiteReport rep{"theorem3", opts.seed, 0, {}, {}};
    for (const char* spec : {"Q8", "D4"}) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        auto scan = theorems::check_theorem3(g, 2, opts.seed, opts.workers);
        rep.checks += scan.scanned;
        for (const auto& v : scan.violations) {
            std::string entries;
            for (std::size_t i = 0; i < v.assignment.size(); ++i) {
                if (i) entries += ",";
                entries += std::to_string(v.assignment[i]);
            }
            rep.violations.push_back(std::string(spec) + " scan: " + v.reason + " at (" + entries +
                                     ")");
        }
        rep.scan_reports.push_back(std::move(scan));
    }
    // Frobenius factorization identity on random points, against the
    // Bareiss determinant.
    u64 salt = 300;
    for (const char* spec : {"Q8", "D4"}) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        Rng rng = seeded(opts.seed, salt++);
        for (std::size_t i = 0; i < 10 * opts.samples; ++i) {
            const Assignment a = random_assignment(rng, g.order(), -3, 3);
            ++rep.checks;
            const auto parts = cyclo::frobenius_factors(g, a);
            if (parts.linear_part * parts.quadratic_det * parts.quadratic_det !=
                exactdet::theta(g, a))
                rep.violations.push_back(std::string("factored form != theta on ") + spec + " at " +
                                         show(a));
        }
    }
    return rep;
}

SuiteReport suite_monoid(const VerifyOptions& opts) {
    SuiteReport rep{"monoid", opts.seed, 0, {}, {}};
    std::vector<std::string> specs = abelian_specs();
    specs.push_back("Q8");
    specs.push_back("D4");
    u64 salt = 400;
    for (const auto& spec : specs) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        Rng rng = seeded(opts.seed, salt++);
        for (std::size_t i = 0; i < opts.samples; ++i) {
            const Assignment a = random_assignment(rng, g.order(), -5, 5);
            const Assignment b = random_assignment(rng, g.order(), -5, 5);
            ++rep.checks;
            if (exactdet::theta(g, exactdet::convolve(g, a, b)) !=
                exactdet::theta(g, a) * exactdet::theta(g, b))
                rep.violations.push_back("convolution is not multiplicative on " + spec + " at " +
                                         show(a) + " * " + show(b));
        }
    }
    // -1 is a value for the odd-order groups, within bound 1.
    for (const char* spec : {"C3", "C9", "C3xC3"}) {
        const FiniteGroup g = FiniteGroup::parse(spec);
        ++rep.checks;
        search::SearchConfig cfg;
        cfg.bound = 1;
        cfg.workers = opts.workers;
        auto w = search::find_witness(g, BigInt(-1), cfg);
        if (!w)
            rep.violations.push_back(std::string("no witness of -1 within bound 1 on ") + spec);
        else if (exactdet::theta(g, *w) != -1)
            rep.violations.push_back(std::string("witness of -1 does not evaluate to -1 on ") + spec);
    }
    return rep;
}

}  // namespace

bool SuiteReport::passed() const {
    if (!violations.empty()) return false;
    for (const auto& s : scan_reports)
        if (!s.violations.empty()) return false;
    return true;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"dedekind", "cor5",   "alphabeta",
                                                   "theorem3", "monoid", "all"};
    return names;
}

std::vector<SuiteReport> run_suites(const std::string& name, const VerifyOptions& opts) {
    std::vector<SuiteReport> out;
    const bool all = name == "all";
    if (all || name == "dedekind") out.push_back(suite_dedekind(opts));
    if (all || name == "cor5") out.push_back(suite_cor5(opts));
    if (all || name == "alphabeta") out.push_back(suite_alphabeta(opts));
    if (all || name == "theorem3") out.push_back(suite_theorem3(opts));
    if (all || name == "monoid") out.push_back(suite_monoid(opts));
    if (out.empty())
        throw DomainError("unknown verify suite '" + name + "' (expected dedekind, cor5, alphabeta, theorem3, monoid or all)");
    return out;
}

}  // namespace groupdet::verify

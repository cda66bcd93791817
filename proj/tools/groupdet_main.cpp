// groupdet: integer group determinants of finite abelian p-groups (plus Q8
// and D4) with exact arithmetic, a prime-membership decider, witness search
// and the property-verification suites.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 verify violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groupdet/cyclo.hpp"
#include "groupdet/errors.hpp"
#include "groupdet/exactdet.hpp"
#include "groupdet/group.hpp"
#include "groupdet/primes.hpp"
#include "groupdet/search.hpp"
#include "groupdet/theorems.hpp"
#include "groupdet/verify.hpp"

namespace {

using groupdet::Assignment;
using groupdet::BigInt;
using groupdet::FiniteGroup;
using nlohmann::json;

constexpr const char* kScanNote =
    "a box scan cannot prove nonmembership; nonmember verdicts rest on the congruence criterion";

struct Invocation {
    std::string command;
    std::string group;
    json inputs = json::object();
    json result = json::object();
    std::string text;  // human-readable rendering of result
    int exit_code = 0;
};

json str(const BigInt& v) { return v.get_str(); }
json str(long long v) { return std::to_string(v); }
json str(std::uint64_t v) { return std::to_string(v); }

json assignment_json(const Assignment& a) {
    json out = json::array();
    for (const auto& v : a) out.push_back(v.get_str());
    return out;
}

std::string assignment_text(const Assignment& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + ")";
}

Assignment coefficients(const FiniteGroup& g, const std::vector<std::string>& inline_coeffs,
                        const std::string& file) {
    if (!inline_coeffs.empty() && !file.empty())
        throw groupdet::DomainError("give coefficients inline or with --file, not both");
    Assignment a;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw groupdet::DomainError("cannot open coefficient file '" + file + "'");
        json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_array())
            throw groupdet::ParseError("coefficient file must hold one JSON array");
        for (const auto& item : doc) {
            if (item.is_string())
                a.push_back(groupdet::parse_bigint(item.get<std::string>()));
            else if (item.is_number_integer())
                a.push_back(BigInt(item.get<long long>()));
            else
                throw groupdet::ParseError("coefficient entries must be integers or decimal strings");
        }
    } else {
        for (const auto& tok : inline_coeffs) a.push_back(groupdet::parse_bigint(tok));
    }
    if (a.size() != g.order())
        throw groupdet::DomainError("expected " + std::to_string(g.order()) + " coefficients for " +
                                    g.spec_string() + ", got " + std::to_string(a.size()));
    return a;
}

json theorem3_report_json(const groupdet::theorems::Theorem3Report& rep) {
    json violations = json::array();
    for (const auto& v : rep.violations) {
        json entry = json::object();
        json coords = json::array();
        for (long long c : v.assignment) coords.push_back(std::to_string(c));
        entry["assignment"] = coords;
        entry["value"] = v.value.get_str();
        entry["reason"] = v.reason;
        violations.push_back(entry);
    }
    json primes = json::array();
    for (const auto& p : rep.primes_found) primes.push_back(p.get_str());
    return json{{"group", rep.group},
                {"bound", std::to_string(rep.bound)},
                {"primes_found", primes},
                {"violations", violations},
                {"scanned", std::to_string(rep.scanned)},
                {"exhaustive", rep.exhaustive},
                {"seed", std::to_string(rep.seed)},
                {"skipped_large", std::to_string(rep.skipped_large)},
                {"note", kScanNote}};
}

json suite_report_json(const groupdet::verify::SuiteReport& rep) {
    json out{{"suite", rep.suite},
             {"seed", std::to_string(rep.seed)},
             {"checks", std::to_string(rep.checks)},
             {"violations", rep.violations},
             {"passed", rep.passed()}};
    if (!rep.scan_reports.empty()) {
        json reports = json::array();
        for (const auto& r : rep.scan_reports) reports.push_back(theorem3_report_json(r));
        out["reports"] = reports;
    }
    return out;
}

void emit(const Invocation& inv, bool json_mode, std::chrono::steady_clock::time_point start) {
    if (json_mode) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        json record{{"command", inv.command},
                    {"group", inv.group},
                    {"inputs", inv.inputs},
                    {"result", inv.result},
                    {"elapsed_ms", elapsed}};
        std::cout << record.dump() << "\n";
    } else {
        std::cout << inv.text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integer group determinants of finite abelian p-groups, Q8 and D4"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit one JSON object instead of text");

    // det
    auto* det = app.add_subcommand("det", "evaluate the group determinant at a point");
    std::string det_group, det_file, det_method = "direct";
    std::vector<std::string> det_coeffs;
    det->add_option("group", det_group)->required();
    det->add_option("coeffs", det_coeffs, "coefficients in canonical element order");
    det->add_option("--file", det_file, "JSON array of coefficients");
    det->add_option("--method", det_method)->check(CLI::IsMember({"direct", "character"}));
    det->fallthrough();

    // factor
    auto* factor = app.add_subcommand("factor", "Dedekind factors (abelian) or Frobenius parts (Q8/D4)");
    std::string factor_group, factor_file;
    std::vector<std::string> factor_coeffs;
    factor->add_option("group", factor_group)->required();
    factor->add_option("coeffs", factor_coeffs);
    factor->add_option("--file", factor_file);
    factor->fallthrough();

    // decide
    auto* decide = app.add_subcommand("decide", "is the prime q an integer group determinant of G?");
    std::string decide_group;
    std::uint64_t decide_q = 0;
    decide->add_option("group", decide_group)->required();
    decide->add_option("q", decide_q)->required();
    decide->fallthrough();

    // search
    auto* search_cmd = app.add_subcommand("search", "find an assignment with a given determinant");
    std::string search_group, search_target;
    long long search_bound = 2, search_deepen = 0;
    int search_workers = 0;
    bool search_prune = false;
    std::uint64_t search_max_evals = 0;
    search_cmd->add_option("group", search_group)->required();
    search_cmd->add_option("target", search_target)->required();
    search_cmd->add_option("--bound", search_bound, "coefficient box radius (default 2)");
    search_cmd->add_option("--deepen", search_deepen, "iterative deepening up to this bound");
    search_cmd->add_option("--workers", search_workers);
    search_cmd->add_flag("--prune", search_prune, "quotient the box by group automorphisms");
    search_cmd->add_option("--max-evals", search_max_evals);
    search_cmd->fallthrough();

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "all determinant values over a coefficient box");
    std::string scan_group;
    long long scan_bound = 0;
    bool scan_primes = false, scan_witnesses = false, scan_prune = false;
    int scan_workers = 0;
    std::uint64_t scan_max_evals = 0;
    scan_cmd->add_option("group", scan_group)->required();
    scan_cmd->add_option("--bound", scan_bound)->required();
    scan_cmd->add_flag("--primes", scan_primes, "keep prime values only");
    scan_cmd->add_flag("--witnesses", scan_witnesses, "include one witness per value");
    scan_cmd->add_flag("--prune", scan_prune);
    scan_cmd->add_option("--workers", scan_workers);
    scan_cmd->add_option("--max-evals", scan_max_evals);
    scan_cmd->fallthrough();

    // wieferich
    auto* wief = app.add_subcommand("wieferich", "Wieferich test for one prime, or a scan");
    std::uint64_t wief_p = 0, wief_limit = 0;
    int wief_workers = 0;
    wief->add_option("p", wief_p, "prime to test");
    wief->add_option("--limit", wief_limit, "scan all primes up to this limit");
    wief->add_option("--workers", wief_workers);
    wief->fallthrough();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named property suite");
    std::string verify_suite;
    std::uint64_t verify_seed = 0;
    int verify_workers = 0;
    std::size_t verify_samples = 100;
    verify_cmd->add_option("suite", verify_suite)
        ->required()
        ->check(CLI::IsMember(groupdet::verify::suite_names()));
    verify_cmd->add_option("--seed", verify_seed);
    verify_cmd->add_option("--workers", verify_workers);
    verify_cmd->add_option("--samples", verify_samples);
    verify_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Invocation inv;
    try {
        if (det->parsed()) {
            const FiniteGroup g = FiniteGroup::parse(det_group);
            const Assignment a = coefficients(g, det_coeffs, det_file);
            const auto method = det_method == "direct"
                                    ? groupdet::exactdet::DetMethod::direct_determinant
                                    : groupdet::exactdet::DetMethod::character_product;
            const auto res = groupdet::exactdet::theta_with(g, a, method);
            inv.command = "det";
            inv.group = g.spec_string();
            inv.inputs = {{"coeffs", assignment_json(a)}, {"method", det_method}};
            inv.result = {{"theta", str(res.value)},
                          {"method", method == groupdet::exactdet::DetMethod::direct_determinant
                                         ? "direct-determinant"
                                         : "character-product"}};
            inv.text = res.value.get_str() + "\n";
        } else if (factor->parsed()) {
            const FiniteGroup g = FiniteGroup::parse(factor_group);
            const Assignment a = coefficients(g, factor_coeffs, factor_file);
            inv.command = "factor";
            inv.group = g.spec_string();
            inv.inputs = {{"coeffs", assignment_json(a)}};
            if (g.is_abelian()) {
                const BigInt value = groupdet::cyclo::dedekind_theta(g, a);
                json factors = json::array();
                std::string text;
                for (const auto& chi : groupdet::cyclo::characters(g)) {
                    auto sum = groupdet::cyclo::character_sum(g, chi, a);
                    sum.canonicalize();
                    json exps = json::array();
                    std::string chi_txt = "chi(";
                    for (std::size_t t = 0; t < chi.exponents.size(); ++t) {
                        exps.push_back(std::to_string(chi.exponents[t]));
                        if (t) chi_txt += ",";
                        chi_txt += std::to_string(chi.exponents[t]);
                    }
                    json coeffs = json::array();
                    std::string poly;
                    const auto& c = sum.coeffs();
                    for (std::size_t i = 0; i < c.size(); ++i) {
                        coeffs.push_back(c[i].get_str());
                        if (c[i] == 0) continue;
                        if (!poly.empty()) poly += " + ";
                        poly += c[i].get_str();
                        if (i == 1) poly += "*z";
                        if (i > 1) poly += "*z^" + std::to_string(i);
                    }
                    if (poly.empty()) poly = "0";
                    factors.push_back(json{{"character", exps}, {"value", coeffs}});
                    text += chi_txt + "): " + poly + "\n";
                }
                inv.result = {{"theta", str(value)},
                              {"zeta_modulus", str(static_cast<std::uint64_t>(g.exponent()))},
                              {"factors", factors}};
                inv.text = text + "theta = " + value.get_str() + "\n";
            } else {
                const auto parts = groupdet::cyclo::frobenius_factors(g, a);
                const BigInt value = parts.linear_part * parts.quadratic_det * parts.quadratic_det;
                inv.result = {{"theta", str(value)},
                              {"linear_part", str(parts.linear_part)},
                              {"quadratic_det", str(parts.quadratic_det)}};
                inv.text = "linear_part = " + parts.linear_part.get_str() +
                           "\nquadratic_det = " + parts.quadratic_det.get_str() +
                           "\ntheta = " + value.get_str() + "\n";
            }
        } else if (decide->parsed()) {
            const FiniteGroup g = FiniteGroup::parse(decide_group);
            const auto d = groupdet::theorems::decide(g, decide_q);
            inv.command = "decide";
            inv.group = g.spec_string();
            inv.inputs = {{"q", str(static_cast<std::uint64_t>(decide_q))}};
            inv.result = {{"verdict", groupdet::theorems::to_string(d.verdict)},
                          {"criterion", groupdet::theorems::to_string(d.criterion)},
                          {"modulus", str(d.modulus)},
                          {"residue", str(d.residue)}};
            inv.text = std::string(groupdet::theorems::to_string(d.verdict)) + " (criterion " +
                       groupdet::theorems::to_string(d.criterion) + ", modulus " +
                       d.modulus.get_str() + ", residue " + d.residue.get_str() + ")\n";
        } else if (search_cmd->parsed()) {
            const FiniteGroup g = FiniteGroup::parse(search_group);
            const BigInt target = groupdet::parse_bigint(search_target);
            groupdet::search::SearchConfig cfg;
            cfg.bound = search_bound;
            cfg.workers = search_workers;
            cfg.prune_symmetry = search_prune;
            cfg.max_evals = search_max_evals;
            if (search_deepen > 0) {
                cfg.strategy = groupdet::search::SearchConfig::Strategy::deepening;
                cfg.max_bound = search_deepen;
            }
            const auto witness = groupdet::search::find_witness(g, target, cfg);
            inv.command = "search";
            inv.group = g.spec_string();
            inv.inputs = {{"target", str(target)},
                          {"bound", str(static_cast<long long>(search_bound))},
                          {"deepen", str(static_cast<long long>(search_deepen))},
                          {"prune", search_prune}};
            if (witness) {
                inv.result = {{"found", true}, {"witness", assignment_json(*witness)}};
                inv.text = "witness " + assignment_text(*witness) + "\n";
            } else {
                inv.result = {{"found", false}, {"witness", nullptr}};
                inv.text = "no witness within bound " +
                           std::to_string(search_deepen > 0 ? search_deepen : search_bound) + "\n";
            }
        } else if (scan_cmd->parsed()) {
            const FiniteGroup g = FiniteGroup::parse(scan_group);
            groupdet::search::SearchConfig cfg;
            cfg.bound = scan_bound;
            cfg.workers = scan_workers;
            cfg.prune_symmetry = scan_prune;
            cfg.max_evals = scan_max_evals;
            cfg.prime_filter = scan_primes;
            const auto res = groupdet::search::scan_values(g, scan_bound, scan_primes, cfg);
            inv.command = "scan";
            inv.group = g.spec_string();
            inv.inputs = {{"bound", str(static_cast<long long>(scan_bound))},
                          {"primes", scan_primes},
                          {"prune", scan_prune}};
            json values = json::array();
            for (const auto& e : res.entries) values.push_back(e.value.get_str());
            inv.result = {{"count", str(static_cast<std::uint64_t>(res.entries.size()))},
                          {"values", values},
                          {"scanned", str(res.scanned)},
                          {"skipped_large", str(res.skipped_large)},
                          {"note", kScanNote}};
            if (scan_witnesses) {
                json with = json::array();
                for (const auto& e : res.entries)
                    with.push_back(json{{"value", e.value.get_str()},
                                        {"witness", assignment_json(e.witness)}});
                inv.result["witnesses"] = with;
            }
            std::string text;
            for (const auto& e : res.entries) {
                text += e.value.get_str();
                if (scan_witnesses) text += " " + assignment_text(e.witness);
                text += "\n";
            }
            text += std::to_string(res.entries.size()) + " values over " +
                    std::to_string(res.scanned) + " points\n";
            inv.text = text;
        } else if (wief->parsed()) {
            inv.command = "wieferich";
            if (wief_limit == 0 && wief_p == 0)
                throw groupdet::DomainError("give a prime p or --limit N");
            if (wief_limit != 0 && wief_p != 0)
                throw groupdet::DomainError("give either a prime p or --limit N, not both");
            if (wief_limit > 0) {
                const auto primes = groupdet::theorems::wieferich_scan(wief_limit, wief_workers);
                inv.inputs = {{"limit", str(static_cast<std::uint64_t>(wief_limit))}};
                json arr = json::array();
                std::string text;
                for (auto p : primes) {
                    arr.push_back(std::to_string(p));
                    text += std::to_string(p) + "\n";
                }
                inv.result = {{"primes", arr}};
                inv.text = text;
            } else {
                const bool w = groupdet::theorems::wieferich(wief_p);
                inv.inputs = {{"p", str(static_cast<std::uint64_t>(wief_p))}};
                inv.result = {{"wieferich", w}};
                inv.text = std::string(w ? "true" : "false") + "\n";
            }
        } else if (verify_cmd->parsed()) {
            groupdet::verify::VerifyOptions opts;
            opts.seed = verify_seed;
            opts.workers = verify_workers;
            opts.samples = verify_samples;
            const auto reports = groupdet::verify::run_suites(verify_suite, opts);
            inv.command = "verify";
            inv.inputs = {{"suite", verify_suite},
                          {"seed", str(static_cast<std::uint64_t>(verify_seed))},
                          {"samples", str(static_cast<std::uint64_t>(verify_samples))}};
            bool all_passed = true;
            json suites = json::array();
            std::string text;
            for (const auto& rep : reports) {
                suites.push_back(suite_report_json(rep));
                all_passed = all_passed && rep.passed();
                text += "suite " + rep.suite + ": seed " + std::to_string(rep.seed) + ", " +
                        std::to_string(rep.checks) + " checks, " +
                        std::to_string(rep.violations.size()) + " violations -> " +
                        (rep.passed() ? "PASS" : "FAIL") + "\n";
                for (const auto& v : rep.violations) text += "  " + v + "\n";
            }
            inv.result = {{"suites", suites}, {"passed", all_passed}};
            inv.text = text;
            if (!all_passed) inv.exit_code = 3;
        }
    } catch (const groupdet::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const groupdet::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const groupdet::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }

    emit(inv, json_mode, start);
    return inv.exit_code;
}

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twotower/report_json.hpp"
#include "twotower/twotower.hpp"

using namespace twotower;

namespace {

constexpr int kExitProven = 0;
constexpr int kExitOpen = 10;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 1;

Int parse_int(std::string s)
{
    if (!s.empty() && s[0] == '+')
        s.erase(0, 1);
    Int v = 0;
    auto const [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
        fail(ErrorKind::InvalidInput, "not an integer: '" + s + "'");
    return v;
}

std::vector<std::string> split_list(std::string const & s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        out.push_back(item);
    return out;
}

QuadFieldSpec parse_discs(std::string const & list)
{
    std::vector<Int> v;
    for (auto const & s : split_list(list))
        v.push_back(parse_int(s));
    return QuadFieldSpec::from_values(v);
}

PartialTuple parse_partial(std::string const & list)
{
    PartialTuple out;
    for (auto const & s : split_list(list)) {
        if (s == "_" || s == "*")
            out.emplace_back();
        else
            out.emplace_back(PrimeDiscriminant::from_value(parse_int(s)));
    }
    return out;
}

void print_human(std::ostream & o, TowerReport const & r)
{
    o << "D = " << r.discriminant << "  discs:";
    for (Int d : r.discs)
        o << ' ' << (d > 0 ? "+" : "") << d;
    o << "\nd2 = " << r.d2 << ", d4 = " << r.d4 << "\ncase: " << r.case_id.tag;
    if (!r.case_id.reason.empty())
        o << " (" << r.case_id.reason << ")";
    o << "\nverdict: " << to_string(r.verdict) << '\n';
    if (r.certificate) {
        auto const & c = *r.certificate;
        o << "certificate: " << to_string(c.criterion);
        if (!c.base_field_discs.empty()) {
            o << " over F =";
            for (Int d : c.base_field_discs)
                o << ' ' << (d > 0 ? "+" : "") << d;
            o << ", |Cl_2(F)| = " << c.cl2_order;
        }
        o << "\n  " << c.threshold_check << '\n';
        for (auto const & w : c.witnesses)
            o << "  p = " << w.p << ": " << to_string(w.split) << ", 2-part " << w.order_2part << ", "
              << w.count << " primes in L\n";
    }
    for (auto const & d : r.diagnostics) {
        o << "note: " << (d.criterion.empty() ? "-" : d.criterion) << ' ' << d.quantity;
        if (d.achieved)
            o << ' ' << *d.achieved;
        if (d.required)
            o << " vs " << *d.required;
        if (!d.note.empty())
            o << " (" << d.note << ")";
        o << '\n';
    }
}

void report_error(std::exception const & e) { std::cerr << "error: " << e.what() << '\n'; }

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Decide infinitude of Hilbert 2-class field towers of imaginary quadratic fields"};
    app.require_subcommand(1);
    Int max_disc = 0;
    app.add_option("--max-disc", max_disc, "Largest |D| for class group computations (overrides TWO_TOWER_MAX_DISC)");

    // analyze
    auto * an = app.add_subcommand("analyze", "Analyze imaginary quadratic fields; exit 0 proven, 10 open, 2 input error");
    std::vector<std::string> an_values;
    std::string an_discs;
    bool an_human = false;
    unsigned an_jobs = 1;
    an->add_option("discriminants", an_values, "Fundamental discriminants (negative values after --)");
    an->add_option("--discs", an_discs, "Comma-separated prime discriminants of one field");
    an->add_flag("--human", an_human, "Human-readable report instead of JSON");
    an->add_option("-j,--jobs", an_jobs, "Worker threads for batch input")->check(CLI::Range(1u, 256u));

    // classgroup
    auto * cg = app.add_subcommand("classgroup", "Class group structure of a fundamental discriminant");
    std::string cg_value;
    bool cg_narrow = false, cg_wide = false, cg_json = false;
    cg->add_option("discriminant", cg_value)->required();
    auto * narrow_flag = cg->add_flag("--narrow", cg_narrow, "Narrow class group (default)");
    cg->add_flag("--wide", cg_wide, "Wide class group")->excludes(narrow_flag);
    cg->add_flag("--json", cg_json);

    // search
    auto * se = app.add_subcommand("search", "Search for example fields");
    se->require_subcommand(1);
    auto * sc = se->add_subcommand("complete", "Complete a partial tuple to a field of a catalog case");
    std::string sc_case, sc_partial;
    Int sc_bound = 1000;
    std::size_t sc_count = 1;
    sc->add_option("--case", sc_case)->required();
    sc->add_option("--partial", sc_partial, "Five comma-separated slots, _ for free")->required();
    sc->add_option("--bound", sc_bound, "Largest prime tried");
    sc->add_option("--count", sc_count, "Number of completions");

    auto * sb = se->add_subcommand("base-fields", "Fundamental discriminants fitting a lemma template");
    std::string sb_template;
    Int sb_min = 4, sb_bound = 3000;
    int sb_rank = 2;
    sb->add_option("--template", sb_template,
                   "imaginary-3-neg | imaginary-with-minus4 | real-pos-pair | imaginary-mixed-pair")
        ->required();
    sb->add_option("--min-cl2", sb_min, "Least wide |Cl_2|");
    sb->add_option("--rank-max", sb_rank, "Largest F2 rank of the Redei matrix");
    sb->add_option("--bound", sb_bound, "Largest |D|");

    auto * sf = se->add_subcommand("families", "Members of the cyclic and C2 x C2^n families");
    std::string sf_family;
    int sf_n = 3;
    Int sf_max_m = 99;
    std::size_t sf_limit = 10;
    sf->add_option("--family", sf_family)->required()->check(CLI::IsMember({"dmw", "lopez"}));
    sf->add_option("--n", sf_n)->check(CLI::Range(1, 8));
    sf->add_option("--max-m", sf_max_m);
    sf->add_option("--limit", sf_limit);

    // verify
    auto * ve = app.add_subcommand("verify", "Check the principal-genus splitting theorems on primes up to a bound");
    ve->require_subcommand(1);
    bool ve_json = false;
    Int ve_bound = 10000;
    auto * vr = ve->add_subcommand("real-pair", "F = Q(sqrt(l1 l2)), l1, l2 = 1 mod 4");
    std::vector<Int> vr_l;
    vr->add_option("l", vr_l)->required()->expected(2);
    auto * vi = ve->add_subcommand("imag-triple", "F = Q(sqrt(-l1 l2 l3)), l_i = 3 mod 4");
    std::vector<Int> vi_l;
    vi->add_option("l", vi_l)->required()->expected(3);
    for (auto * s : {vr, vi}) {
        s->add_option("--bound", ve_bound);
        s->add_flag("--json", ve_json);
    }

    // explore
    auto * ex = app.add_subcommand("explore", "Tabulate symbol vectors against class orders of split primes");
    std::string ex_discs, ex_summary;
    Int ex_bound = 10000;
    bool ex_narrow = false;
    ex->add_option("--discs", ex_discs)->required();
    ex->add_option("--bound", ex_bound);
    ex->add_option("--summary", ex_summary, "Write the summary JSON to this file");
    ex->add_flag("--narrow", ex_narrow, "Use narrow class orders");

    // catalog
    auto * ca = app.add_subcommand("catalog", "Dump the embedded open-case matrix table");
    bool ca_json = false;
    ca->add_flag("--json", ca_json);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }
    if (max_disc > 0)
        set_max_discriminant(max_disc);

    try {
        if (*an) {
            std::vector<std::string> inputs = an_values;
            if (!an_discs.empty())
                inputs.push_back("discs:" + an_discs);
            if (inputs.empty())
                fail(ErrorKind::InvalidInput, "give a discriminant or --discs");
            auto run = [&](std::string const & in) {
                QuadFieldSpec const k = in.rfind("discs:", 0) == 0 ? parse_discs(in.substr(6))
                                                                   : prime_disc_factorization(parse_int(in));
                return analyze(k);
            };
            // results are gathered in input order whatever the thread count
            std::vector<std::future<TowerReport>> pending;
            int code = kExitProven;
            auto drain = [&] {
                for (auto & f : pending) {
                    try {
                        auto const r = f.get();
                        if (an_human)
                            print_human(std::cout, r);
                        else
                            std::cout << to_json(r).dump() << '\n';
                        if (r.verdict == Verdict::Open && code == kExitProven)
                            code = kExitOpen;
                    } catch (std::exception const & e) {
                        report_error(e);
                        code = kExitInput;
                    }
                }
                pending.clear();
            };
            for (auto const & in : inputs) {
                pending.push_back(std::async(an_jobs > 1 ? std::launch::async : std::launch::deferred, run, in));
                if (pending.size() >= an_jobs)
                    drain();
            }
            drain();
            return code;
        }
        if (*cg) {
            Int const d = parse_int(cg_value);
            auto const kind = cg_wide ? ClassKind::Wide : ClassKind::Narrow;
            auto const g = class_group(d)->structure(kind);
            if (cg_json) {
                std::cout << Json({{"discriminant", d}, {"kind", to_string(kind)}, {"group", to_json(g)}}).dump()
                          << '\n';
            } else {
                std::cout << to_string(g) << " (order " << g.order() << ")\n";
                for (int k = 1; k == 1 || g.rank(2, k - 1) > 0; ++k)
                    std::cout << "d" << (Int(1) << k) << " = " << g.rank(2, k) << '\n';
            }
            return 0;
        }
        if (*sc) {
            for (auto const & s : complete_tuple(sc_case, parse_partial(sc_partial), sc_bound, sc_count))
                std::cout << search_line(s, classify_open_case(s).tag, cl2_order(s)).dump() << '\n';
            return 0;
        }
        if (*sb) {
            auto const t = parse_base_template(sb_template);
            for (auto const & s : find_base_fields(t, sb_min, sb_rank, sb_bound))
                std::cout << search_line(s, to_string(t), cl2_order(s)).dump() << '\n';
            return 0;
        }
        if (*sf) {
            auto const members =
                sf_family == "dmw" ? dmw_family(sf_n, sf_max_m, sf_limit) : lopez_family(sf_n, sf_max_m, sf_limit);
            bool all = true;
            for (auto const & m : members) {
                all = all && m.verified();
                std::cout << Json{{"discriminant", m.field.discriminant()},
                                  {"discs", disc_array(m.field)},
                                  {"family", sf_family},
                                  {"expected_two_part", m.expected_two_part},
                                  {"computed_two_part", m.computed_two_part},
                                  {"verified", m.verified()}}
                                 .dump()
                          << '\n';
            }
            return all ? 0 : kExitViolation;
        }
        if (*ve) {
            auto const rep = *vr ? verify_real_pair(vr_l[0], vr_l[1], ve_bound)
                                 : verify_imag_triple(vi_l[0], vi_l[1], vi_l[2], ve_bound);
            if (ve_json)
                std::cout << to_json(rep).dump() << '\n';
            else {
                std::cout << to_string(rep) << '\n';
                for (auto const & v : rep.violations)
                    std::cout << "  p = " << v.p << ": " << v.detail << '\n';
            }
            return rep.violations.empty() ? 0 : kExitViolation;
        }
        if (*ex) {
            auto const f = parse_discs(ex_discs);
            std::cout << "# p\tsymbols\tsplit\torder_2part\tprimes_in_L\n";
            auto const res = explore_symbol_dependence(
                f, ex_bound, [](SplittingRow const & r) { std::cout << to_tsv(r) << '\n'; },
                ex_narrow ? ClassKind::Narrow : ClassKind::Wide);
            auto const summary = summary_json(res);
            if (ex_summary.empty())
                std::cout << "# summary " << summary.dump() << '\n';
            else {
                std::ofstream out(ex_summary);
                if (!out)
                    fail(ErrorKind::InvalidInput, "cannot write " + ex_summary);
                out << summary.dump(2) << '\n';
            }
            return 0;
        }
        if (*ca) {
            if (!ca_json) {
                std::cout << kCatalogText;
                return 0;
            }
            Json all = Json::array();
            for (auto const & e : catalog()) {
                Json rows = Json::array();
                for (auto const & r : e.pattern)
                    rows.push_back(std::string(r.begin(), r.end()));
                all.push_back({{"tag", e.tag},
                               {"resolved", e.resolved},
                               {"signs", std::string(e.signs.begin(), e.signs.end())},
                               {"minus4", e.minus4},
                               {"rank", e.rank},
                               {"rows", rows},
                               {"note", e.note}});
            }
            std::cout << all.dump(2) << '\n';
            return 0;
        }
    } catch (std::exception const & e) {
        report_error(e);
        return kExitInput;
    }
    return kExitInput;
}

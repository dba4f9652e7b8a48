#pragma once

#include <json.hpp>

#include "twotower/abelian.hpp"
#include "twotower/search.hpp"
#include "twotower/splitting_lab.hpp"
#include "twotower/tower.hpp"

namespace twotower {

using Json = nlohmann::ordered_json;

inline Json disc_array(QuadFieldSpec const & s)
{
    Json a = Json::array();
    for (auto d : s.discs())
        a.push_back(d.value());
    return a;
}

inline Json to_json(AbelianGroupStructure const & g)
{
    Json gens = Json::array();
    for (auto const & f : g.generators)
        gens.push_back({f.a, f.b, f.c});
    Json ranks = Json::object();
    for (int k = 1; g.rank(2, k) > 0; ++k)
        ranks["d" + std::to_string(Int(1) << k)] = g.rank(2, k);
    return {{"structure", to_string(g)}, {"elementary_divisors", g.elementary_divisors}, {"order", g.order()},
            {"two_part_order", g.two_part_order()}, {"two_ranks", ranks}, {"generators", gens}};
}

inline Json to_json(PrimeWitness const & w)
{
    return {{"p", w.p}, {"split", to_string(w.split)}, {"order_2part", w.order_2part}, {"primes_in_L", w.count}};
}

inline Json to_json(Certificate const & c)
{
    Json wit = Json::array();
    for (auto const & w : c.witnesses)
        wit.push_back(to_json(w));
    return {{"criterion", to_string(c.criterion)}, {"base_field_discs", c.base_field_discs},
            {"cl2_order", c.cl2_order},          {"witnesses", wit},
            {"achieved", c.achieved},            {"unit_2rank", c.unit_2rank},
            {"required", c.required},            {"threshold_check", c.threshold_check}};
}

inline Json to_json(NearMiss const & n)
{
    Json j = {{"criterion", n.criterion}, {"base_field_discs", n.base_field_discs}, {"quantity", n.quantity}};
    j["achieved"] = n.achieved ? Json(*n.achieved) : Json(nullptr);
    j["required"] = n.required ? Json(*n.required) : Json(nullptr);
    j["note"] = n.note;
    return j;
}

inline Json to_json(CaseId const & c)
{
    return {{"tag", c.tag}, {"permutation", c.permutation}, {"reason", c.reason}};
}

inline Json to_json(TowerReport const & r)
{
    Json j = {{"discriminant", r.discriminant},
              {"discs", r.discs},
              {"d2", r.d2},
              {"d4", r.d4},
              {"case", to_json(r.case_id)},
              {"verdict", to_string(r.verdict)}};
    if (r.certificate)
        j["certificate"] = to_json(*r.certificate);
    Json diag = Json::array();
    for (auto const & c : r.other_certificates)
        diag.push_back({{"criterion", to_string(c.criterion)}, {"base_field_discs", c.base_field_discs},
                        {"quantity", "additional_certificate"}, {"achieved", c.achieved},
                        {"required", c.required}, {"note", "further certificate, not used"}});
    for (auto const & d : r.diagnostics)
        diag.push_back(to_json(d));
    j["diagnostics"] = diag;
    return j;
}

/// One search result line, with a certificate when the caller has one.
inline Json search_line(QuadFieldSpec const & s, std::string const & case_tag, Int cl2,
                        std::optional<Certificate> const & cert = std::nullopt)
{
    Json j = {{"discriminant", s.discriminant()}, {"discs", disc_array(s)}, {"case", case_tag}, {"cl2_order", cl2}};
    if (cert)
        j["certificate"] = to_json(*cert);
    return j;
}

inline Json to_json(VerificationReport const & r)
{
    Json v = Json::array();
    for (auto const & x : r.violations)
        v.push_back({{"p", x.p}, {"detail", x.detail}});
    return {{"base_field", disc_array(r.base_field)}, {"bound", r.bound}, {"checked", r.checked},
            {"violations", v}};
}

inline Json summary_json(SplittingExperiment const & ex)
{
    Json groups = Json::array();
    for (auto const & [vec, parts] : ex.summary)
        groups.push_back({{"symbols", symbol_vector_string(vec)}, {"order_2parts", std::vector<Int>(parts.begin(), parts.end())}});
    return {{"base_field", disc_array(ex.base_field)},
            {"bound", ex.prime_bound},
            {"class_group", to_string(ex.kind)},
            {"rows", ex.row_count},
            {"summary", groups}};
}

} // namespace twotower

#include "dappell/report.hpp"

#include <sstream>

#include "json.hpp"

namespace dappell {

std::string report_to_json(const Report& r)
{
    nlohmann::json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["regime"] = to_string(r.regime);
    j["wall_ms"] = r.wall_ms;
    j["families"] = nlohmann::json::array();
    for (const FamilyReport& f : r.families) {
        nlohmann::json fj;
        fj["id"] = to_string(f.id);
        fj["pass"] = f.pass;
        fj["fail"] = f.fail;
        fj["skip"] = f.skip;
        fj["worst_residual"] = f.worst_residual;
        j["families"].push_back(fj);
    }
    return j.dump(2);
}

Report report_from_json(const std::string& text)
{
    const nlohmann::json j = nlohmann::json::parse(text);
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const std::string regime = j.at("regime").get<std::string>();
    if (regime == "classical")
        r.regime = Regime::Classical;
    else if (regime == "terminating")
        r.regime = Regime::Terminating;
    else
        throw DomainError("report_from_json: unknown regime '" + regime + "'");
    r.wall_ms = j.at("wall_ms").get<long>();
    for (const auto& fj : j.at("families")) {
        FamilyReport f;
        const std::string id = fj.at("id").get<std::string>();
        const auto fam = family_from_string(id);
        if (!fam)
            throw DomainError("report_from_json: unknown family '" + id + "'");
        f.id = *fam;
        f.pass = fj.at("pass").get<long>();
        f.fail = fj.at("fail").get<long>();
        f.skip = fj.at("skip").get<long>();
        f.worst_residual = fj.at("worst_residual").get<double>();
        r.families.push_back(f);
    }
    return r;
}

std::string report_to_csv(const Report& r)
{
    std::ostringstream out;
    out << "id,pass,fail,skip,worst_residual\n";
    out.precision(17);
    for (const FamilyReport& f : r.families)
        out << to_string(f.id) << ',' << f.pass << ',' << f.fail << ',' << f.skip << ','
            << f.worst_residual << '\n';
    return out.str();
}

std::string report_to_plain(const Report& r)
{
    std::ostringstream out;
    out << "suite: " << r.suite << "  seed: " << r.seed
        << "  regime: " << to_string(r.regime) << "  wall_ms: " << r.wall_ms << '\n';
    out.precision(3);
    out << std::scientific;
    for (const FamilyReport& f : r.families)
        out << "  " << to_string(f.id) << ": pass " << f.pass << ", fail " << f.fail
            << ", skip " << f.skip << ", worst " << f.worst_residual << '\n';
    out << (r.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    return out.str();
}

} // namespace dappell

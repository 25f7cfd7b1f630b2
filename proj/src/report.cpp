#include "keller/cli.hpp"

#include "json.hpp"

namespace keller {

namespace {

using Json = nlohmann::ordered_json;

Json factors_json(const Factorization& f) {
    Json out = Json::array();
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        Json e{{"factor", to_string(f.factors[i].poly)}, {"multiplicity", f.factors[i].multiplicity}};
        if (i < f.absolute.size())
            e["absolutely_irreducible"] = f.absolute[i] == AbsoluteStatus::AbsolutelyIrreducible;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::string report_json(const ClassificationReport& R, bool timing) {
    Json j;
    j["schema_version"] = 1;
    j["input"] = {{"p", to_string(R.map.p)}, {"q", to_string(R.map.q)}};

    Json jac{{"poly", to_string(R.jacobian.det)},
             {"is_constant", R.jacobian.det.is_constant()}};
    if (R.jacobian.det.is_constant()) jac["value"] = R.jacobian.det.constant_term().get_str();
    j["jacobian"] = std::move(jac);

    if (R.kernel) {
        Json coeffs = Json::array();
        for (const auto& c : R.kernel->coeffs) coeffs.push_back(to_string(c));
        j["kernel"] = {{"H", to_string(R.kernel->H)}, {"r", R.kernel->r}, {"coeffs", std::move(coeffs)}};
    } else {
        j["kernel"] = nullptr;
    }

    if (R.uv) {
        j["uv"] = {{"u", to_string(R.uv->u)},
                   {"v", to_string(R.uv->v)},
                   {"g", to_string(R.uv->g)},
                   {"h", to_string(R.uv->h)}};
    } else {
        j["uv"] = nullptr;
    }

    Json vf = Json::array();
    for (const auto& e : R.v_factors)
        vf.push_back({{"factor", to_string(e.factor)},
                      {"multiplicity", e.multiplicity},
                      {"preserved", e.preserved},
                      {"image_factors", factors_json(e.image)}});
    j["v_factors"] = std::move(vf);

    if (R.units) {
        Json w = Json::array();
        for (const auto& u : R.units->witnesses) {
            Json e{{"factor", to_string(u.factor)}, {"multiplicity", u.multiplicity}, {"in_subring", u.G.has_value()}};
            e["G"] = u.G ? Json(to_string(*u.G)) : Json(nullptr);
            w.push_back(std::move(e));
        }
        j["units"] = {{"all_in_subring", R.units->all_units_in_Cpq}, {"witnesses", std::move(w)}};
    } else {
        j["units"] = nullptr;
    }

    j["verdict"] = to_string(R.verdict);
    if (!R.reason.empty()) j["reason"] = R.reason;
    j["forced"] = R.forced;
    if (R.inverse) j["inverse"] = {{"s", to_string(R.inverse->first)}, {"t", to_string(R.inverse->second)}};

    if (R.tfae) {
        j["tfae"] = {{"i", R.tfae->i}, {"ii", R.tfae->ii}, {"iii", R.tfae->iii}, {"consistent", R.tfae->consistent()}};
    } else {
        j["tfae"] = nullptr;
    }

    j["stats"] = {{"spairs", R.stats.spairs},
                  {"max_degree", R.stats.max_degree},
                  {"millis", timing ? Json(R.millis) : Json(nullptr)}};
    j["notes"] = R.notes;
    return j.dump(2) + "\n";
}

}  // namespace keller

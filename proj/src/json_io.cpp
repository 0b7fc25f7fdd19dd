#include "bellsteer/json_io.hpp"

#include "bellsteer/errors.hpp"

namespace bellsteer {

namespace {

nlohmann::json vec3(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

Eigen::Vector3d vec3_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw validation_error("expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void to_json(nlohmann::json& j, const FourVector& v) {
    j = {{"x0", v.x0}, {"x", vec3(v.x)}};
}

void from_json(const nlohmann::json& j, FourVector& v) {
    v.x0 = j.at("x0").get<double>();
    v.x = vec3_from(j.at("x"));
}

void to_json(nlohmann::json& j, const CorrelationMatrix& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        rows.push_back({t.matrix()(i, 0), t.matrix()(i, 1), t.matrix()(i, 2)});
    }
    j = {{"t", rows}};
}

CorrelationMatrix correlation_from_json(const nlohmann::json& j) {
    const auto& rows = j.at("t");
    if (!rows.is_array() || rows.size() != 3) throw validation_error("field \"t\" must be a 3x3 matrix");
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d row = vec3_from(rows[i]);
        m.row(i) = row.transpose();
    }
    return CorrelationMatrix(m);
}

void to_json(nlohmann::json& j, const Effect& e) {
    j = {{"alpha", e.alpha}, {"e", vec3(e.e)}};
}

void from_json(const nlohmann::json& j, Effect& e) {
    e.alpha = j.at("alpha").get<double>();
    e.e = vec3_from(j.at("e"));
}

void to_json(nlohmann::json& j, const Povm& p) {
    j = {{"effects", p.effects}};
}

void from_json(const nlohmann::json& j, Povm& p) {
    p.effects = j.at("effects").get<std::vector<Effect>>();
}

void to_json(nlohmann::json& j, const RadiusResult& r) {
    j = {{"N_T", r.n_t},
         {"R_T", r.r_t},
         {"method", to_string(r.method)},
         {"est_error", r.est_error}};
}

void to_json(nlohmann::json& j, const SimulationReport& r) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
        outcomes.push_back({{"outcome", i},
                            {"simulated", r.outcomes[i].simulated},
                            {"target", r.outcomes[i].target},
                            {"residual", r.outcomes[i].residual}});
    }
    j = {{"R_T", r.r_t},
         {"target_factor", r.target_factor},
         {"outcomes", outcomes},
         {"max_residual", r.max_residual}};
    if (r.physical_match_residual) j["physical_match_residual"] = *r.physical_match_residual;
}

void to_json(nlohmann::json& j, const Classification& c) {
    j = {{"separable", c.separable},
         {"pvm_unsteerable", c.pvm_unsteerable},
         {"povm_unsteerable_new", c.povm_unsteerable_new},
         {"povm_unsteerable_prior", c.povm_unsteerable_prior},
         {"R_T", c.r_t},
         {"margin", c.margin},
         {"method", to_string(c.method)}};
}

void to_json(nlohmann::json& j, const SurfacePoint& p) {
    j = {{"dir_theta", p.dir_theta}, {"dir_phi", p.dir_phi}, {"level", p.level},
         {"absent", p.absent}};
    if (!p.absent) {
        j["s1"] = p.s[0];
        j["s2"] = p.s[1];
        j["s3"] = p.s[2];
    }
}

void to_json(nlohmann::json& j, const SurfaceResult& r) {
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : r.prior_hull_faces) {
        faces.push_back({vec3(f[0]), vec3(f[1]), vec3(f[2])});
    }
    j = {{"points", r.points},
         {"prior_hull_faces", faces},
         {"separability_triangle",
          {vec3(r.separability_triangle[0]), vec3(r.separability_triangle[1]),
           vec3(r.separability_triangle[2])}}};
}

}  // namespace bellsteer

#pragma once

#include <json.hpp>

#include "zres/bounds.hpp"
#include "zres/moments.hpp"
#include "zres/ratio_bounds.hpp"
#include "zres/search.hpp"

namespace zres {

using njson = nlohmann::ordered_json;

inline njson to_json(const TheoremBound& b) {
    njson j;
    j["which"] = to_string(b.which);
    j["T"] = b.T;
    j["ell"] = b.ell;
    if (b.which != TheoremBound::Which::Thm1) {
        j["sigma"] = b.sigma;
        j["beta"] = b.beta;
        j["kappa"] = b.kappa;
    }
    j["main_term"] = b.main_term;
    j["secondary_term"] = b.secondary_term;
    j["exponent"] = b.exponent;
    j["value"] = b.value;
    j["asymptotic_only"] = b.asymptotic_only;
    return j;
}

inline njson to_json(const MomentEstimate& m) {
    njson j;
    j["re"] = m.value.real();
    j["im"] = m.value.imag();
    j["abs"] = std::abs(m.value);
    j["method"] = to_string(m.method);
    if (m.window.has_value()) {
        j["window"] = njson{{"lo", m.window->lo}, {"hi", m.window->hi}};
    } else {
        j["window"] = nullptr;
    }
    j["grid_points"] = m.grid_points;
    j["truncation_n_max"] = m.truncation_n_max;
    j["step"] = m.step;
    j["tail_bound"] = m.tail_bound;
    return j;
}

inline njson to_json(const RatioBreakdown& r) {
    njson j;
    j["p1"] = r.p1;
    j["p2"] = r.p2;
    j["product"] = r.product;
    j["per_j_factors"] = r.per_j_factors;
    return j;
}

inline njson to_json(const SearchConfig& c) {
    njson j;
    j["T"] = c.T;
    j["beta"] = c.beta;
    j["sigma"] = c.sigma;
    j["ell"] = c.ell;
    j["X"] = c.X;
    j["grid_step"] = c.effective_step();
    j["top_k"] = c.top_k;
    j["refine_tol"] = c.refine_tol;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["eval"] = njson{{"target_abs_error", c.eval.target_abs_error},
                      {"em_terms", c.eval.em_terms},
                      {"em_bernoulli_order", c.eval.em_bernoulli_order}};
    return j;
}

inline njson to_json(const ExtremeValueReport& r) {
    njson j;
    j["config"] = to_json(r.config);
    j["t_star"] = r.t_star;
    j["value"] = r.value;
    j["guidance_score"] = r.guidance_score;
    j["prediction"] = to_json(r.prediction);
    j["ratio"] = r.ratio;
    j["grid_points_evaluated"] = r.grid_points_evaluated;
    j["refinement_iterations"] = r.refinement_iterations;
    njson cands = njson::array();
    for (const CandidateEval& c : r.candidates) {
        cands.push_back(njson{{"t", c.t},
                              {"guidance_score", c.guidance_score},
                              {"joint_product", c.joint_product}});
    }
    j["candidates"] = cands;
    return j;
}

}  // namespace zres

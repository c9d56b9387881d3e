#ifndef PARACR_REPORT_HPP
#define PARACR_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paracr/coframe.hpp"
#include "paracr/jets.hpp"
#include "paracr/parser.hpp"
#include "paracr/pde.hpp"
#include "paracr/submanifold.hpp"

#include <json.hpp>

namespace paracr {

struct AnalyzeOptions {
    int degree = 8;       // truncation override (0 = take the model file's)
    bool normalize = false;
    bool scale = false;   // rescale beta, beta_underline to 1 when possible
    int k_max = 6;        // nondegeneracy search bound
    PointAssignments point;  // rank probe coordinates; default origin
};

// Parses "x=1/2,y=0,a=-2/3" into named assignments.
PointAssignments parse_point_spec(const std::string& spec);

// Aggregated output of the analysis pipeline; serializes to a schema-stable
// JSON object.
struct InvariantReport {
    std::string model_echo;
    int n = 0, m = 0;
    int truncation = 0;
    int reliable_degree = 0;
    bool normalized_applied = false;

    int levi_rank_at_origin = 0;
    int levi_generic_rank = 0;
    std::optional<Rational> delta0, box0;
    std::optional<Rational> beta, beta_underline;
    std::optional<int> k_par, l_var;
    int k_max_searched = 0;
    std::optional<CaseLabel> case_label;

    std::optional<PdeSystem> pde;
    std::vector<std::pair<std::string, Verdict>> identity_verdicts;
    std::optional<Verdict> integrability;
    std::optional<CoframeData> coframe;

    std::vector<std::string> notes;  // skipped stages and why

    bool any_failure() const;
    int exit_code() const { return any_failure() ? 1 : 0; }
};

InvariantReport analyze(const ModelFile& mf, const AnalyzeOptions& opts);

Submanifold build_model(const ModelFile& mf, int degree_override);

// --- JSON serialization ---
nlohmann::json series_to_json(const Series& s);
nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json levi_to_json(const LeviData& L);
nlohmann::json pde_to_json(const PdeSystem& S);
nlohmann::json coframe_to_json(const CoframeData& cd);
nlohmann::json nondeg_to_json(const NondegReport& r);
nlohmann::json report_to_json(const InvariantReport& r);

std::string report_to_text(const InvariantReport& r);

}  // namespace paracr

#endif

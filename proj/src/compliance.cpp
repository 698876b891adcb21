#include "genlaw/compliance.hpp"

namespace genlaw {

ComplianceReport make_report(ReportKind kind, std::string label, const LawParams& params,
                             std::vector<double> observed) {
    ComplianceReport r;
    r.kind = kind;
    r.label = std::move(label);
    r.params = params;
    r.law = law_vector(params);
    r.ssd = ssd(params, observed);
    r.deviations.resize(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) r.deviations[i] = observed[i] - r.law[i];
    r.observed = std::move(observed);
    return r;
}

const char* to_string(ReportKind kind) noexcept {
    switch (kind) {
        case ReportKind::law: return "law";
        case ReportKind::data: return "data";
        case ReportKind::model: return "model";
    }
    return "law";
}

}  // namespace genlaw

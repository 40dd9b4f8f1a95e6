#include "repolabel/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "repolabel/errors.hpp"

namespace repolabel {

namespace {

std::string member_list(const std::vector<LabelDistribution>& members) {
    std::string joined;
    for (const auto& m : members) {
        if (!joined.empty()) joined += ',';
        joined += m.provenance.lf.empty() ? "?" : m.provenance.lf;
    }
    return joined;
}

void check_members(const std::vector<LabelDistribution>& members) {
    if (members.empty()) throw ValidationError("ensemble needs at least one member");
    for (const auto& m : members)
        if (m.scores.size() != members.front().scores.size())
            throw ValidationError("ensemble members disagree on vocabulary size");
}

// Label indices ranked by score descending, ties to the lowest index,
// positive scores only.
std::vector<std::size_t> ranked_positive(const std::vector<double>& scores) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (scores[i] > 0.0) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    return idx;
}

}  // namespace

LabelDistribution cascade(const std::vector<LabelDistribution>& members) {
    check_members(members);
    const std::string lf = "csc:(" + member_list(members) + ")";
    for (const auto& m : members) {
        if (!m.annotated) continue;
        LabelDistribution out = m;
        out.provenance.winner = m.provenance.lf;
        out.provenance.lf = lf;
        out.provenance.modality = "mixed";
        return out;
    }
    LabelDistribution out;
    out.scores.assign(members.front().scores.size(), 0.0);
    out.provenance.lf = lf;
    out.provenance.modality = "mixed";
    return out;
}

LabelDistribution vote(const std::vector<LabelDistribution>& voters, int pool) {
    check_members(voters);
    if (pool < 1) throw ValidationError("vote pool must be >= 1");
    LabelDistribution out;
    out.scores.assign(voters.front().scores.size(), 0.0);
    out.provenance.lf = "vt:(" + member_list(voters) + ")";
    out.provenance.modality = "mixed";

    bool any = false;
    for (const auto& v : voters) {
        if (!v.annotated) continue;
        any = true;
        auto ranked = ranked_positive(v.scores);
        for (std::size_t r = 0; r < ranked.size() && r < static_cast<std::size_t>(pool); ++r)
            out.scores[ranked[r]] += static_cast<double>(pool - r);
    }
    if (!any) return out;

    double sq = 0.0;
    for (double s : out.scores) sq += s * s;
    if (sq <= 0.0) return out;  // annotated voters with no positive score
    double norm = std::sqrt(sq);
    for (double& s : out.scores) s /= norm;
    out.norm_kind = NormKind::L2;
    out.annotated = true;
    return out;
}

}  // namespace repolabel

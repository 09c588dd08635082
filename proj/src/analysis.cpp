#include "textnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "textnet/errors.hpp"
#include "textnet/mathfn.hpp"

namespace textnet {

double step_curve::at(double x) const {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    if (it == t.begin()) return 0.0;
    return v[size_t(it - t.begin()) - 1];
}

double step_curve::left_limit(double x) const {
    auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it == t.begin()) return 0.0;
    return v[size_t(it - t.begin()) - 1];
}

bool step_curve::non_decreasing() const {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

step_curve introduction_curve(const std::vector<uint32_t>& births, uint32_t n_steps,
                              std::string group) {
    if (n_steps == 0) throw validation_error("introduction_curve: zero-length filtration");
    if (births.empty()) throw validation_error("introduction_curve: empty group");
    std::map<uint32_t, size_t> per_step;
    for (uint32_t b : births) {
        if (b < 1 || b > n_steps)
            throw validation_error("introduction_curve: birth outside filtration");
        per_step[b] += 1;
    }
    step_curve c;
    c.group = std::move(group);
    double total = double(births.size());
    size_t cum = 0;
    for (const auto& [step, count] : per_step) {
        cum += count;
        c.t.push_back(double(step) / double(n_steps));
        c.v.push_back(double(cum) / total);
    }
    return c;
}

std::vector<step_curve> introduction_curves(const expositional_filtration& filt,
                                            const core_partition& part,
                                            std::vector<std::string>* warnings) {
    if (part.is_core.size() != filt.total.node_count)
        throw validation_error("introduction_curves: partition size mismatch");
    std::vector<uint32_t> core_births, periph_births;
    for (node_id i = 0; i < filt.total.node_count; ++i) {
        if (filt.node_birth[i] == 0) continue;
        (part.is_core[i] ? core_births : periph_births).push_back(filt.node_birth[i]);
    }
    std::vector<step_curve> out;
    if (!core_births.empty())
        out.push_back(introduction_curve(core_births, filt.n_sentences, "core"));
    else if (warnings)
        warnings->push_back("no core nodes; core curve omitted");
    if (!periph_births.empty())
        out.push_back(introduction_curve(periph_births, filt.n_sentences, "periphery"));
    else if (warnings)
        warnings->push_back("no periphery nodes; periphery curve omitted");
    return out;
}

double curve_area_diff(const step_curve& a, const step_curve& b) {
    std::vector<double> cuts;
    cuts.reserve(a.t.size() + b.t.size() + 2);
    cuts.push_back(0.0);
    for (double x : a.t) cuts.push_back(x);
    for (double x : b.t) cuts.push_back(x);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double area = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] >= 1.0) break;
        double hi = std::min(cuts[i + 1], 1.0);
        area += (hi - cuts[i]) * (a.at(cuts[i]) - b.at(cuts[i]));
    }
    return area;
}

std::vector<step_curve> edge_group_curves(const expositional_filtration& filt,
                                          const core_partition& part,
                                          const community_partition& communities,
                                          const std::vector<node_id>& periphery_nodes) {
    if (part.is_core.size() != filt.total.node_count)
        throw validation_error("edge_group_curves: partition size mismatch");
    std::vector<int64_t> comm_of(filt.total.node_count, -1);
    for (size_t i = 0; i < periphery_nodes.size(); ++i) {
        if (i < communities.assignment.size())
            comm_of[periphery_nodes[i]] = communities.assignment[i];
    }

    std::vector<uint32_t> intra_core, core_periph, inter_periph;
    std::map<uint32_t, std::vector<uint32_t>> intra_comm;
    for (size_t e = 0; e < filt.total.edges.size(); ++e) {
        const auto& edge = filt.total.edges[e];
        uint32_t birth = filt.edge_birth[e];
        bool uc = part.is_core[edge.u], vc = part.is_core[edge.v];
        if (uc && vc) {
            intra_core.push_back(birth);
        } else if (!uc && !vc) {
            inter_periph.push_back(birth);
            if (comm_of[edge.u] >= 0 && comm_of[edge.u] == comm_of[edge.v])
                intra_comm[uint32_t(comm_of[edge.u])].push_back(birth);
        } else {
            core_periph.push_back(birth);
        }
    }

    std::vector<step_curve> out;
    if (!intra_core.empty())
        out.push_back(introduction_curve(intra_core, filt.n_sentences, "intra-core"));
    if (!core_periph.empty())
        out.push_back(introduction_curve(core_periph, filt.n_sentences, "core-periphery"));
    if (!inter_periph.empty())
        out.push_back(introduction_curve(inter_periph, filt.n_sentences, "inter-periphery"));
    for (const auto& [cid, births] : intra_comm)
        out.push_back(introduction_curve(births, filt.n_sentences,
                                         "intra-community:" + std::to_string(cid)));
    return out;
}

double ks_to_diagonal(const step_curve& c) {
    double best = 0.0;
    auto consider = [&](double value, double x) {
        if (x < 0.0 || x > 1.0) return;
        best = std::max(best, std::fabs(value - x));
    };
    if (c.t.empty()) return 0.0;
    consider(0.0, 0.0);
    for (size_t i = 0; i < c.t.size(); ++i) {
        consider(c.left_limit(c.t[i]), c.t[i]);  // just before the jump
        consider(c.v[i], c.t[i]);                // just after
        double seg_end = (i + 1 < c.t.size()) ? c.t[i + 1] : 1.0;
        consider(c.v[i], seg_end);  // left limit at the segment end
    }
    consider(c.at(1.0), 1.0);
    return best;
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    size_t n = x.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t(0));
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        double avg = 0.5 * (double(i) + double(j)) + 1.0;  // ranks are 1-based
        for (size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

double correlation_p(double r, size_t n) {
    double nu = double(n) - 2.0;
    if (std::fabs(r) >= 1.0) return 0.0;
    double t = r * std::sqrt(nu / (1.0 - r * r));
    return student_t_two_sided_p(t, nu);
}

}  // namespace

stat_result pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw validation_error("pearson: length mismatch");
    size_t n = x.size();
    if (n < 3) throw validation_error("pearson: need at least 3 samples");
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw validation_error("pearson: zero variance in a sample");
    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);
    return {r, correlation_p(r, n), n};
}

stat_result spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw validation_error("spearman: length mismatch");
    if (x.size() < 3) throw validation_error("spearman: need at least 3 samples");
    stat_result r = pearson(average_ranks(x), average_ranks(y));
    return {r.statistic, correlation_p(r.statistic, x.size()), x.size()};
}

stat_result t_test_one_sample(const std::vector<double>& x, double mu0) {
    size_t n = x.size();
    if (n < 2) throw validation_error("t_test_one_sample: need at least 2 samples");
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    double var = ss / double(n - 1);
    if (var <= 0.0) throw validation_error("t_test_one_sample: zero variance");
    double t = (mean - mu0) / std::sqrt(var / double(n));
    return {t, student_t_two_sided_p(t, double(n) - 1.0), n};
}

}  // namespace textnet

#include "textnet/weight_fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "textnet/errors.hpp"
#include "textnet/mathfn.hpp"

namespace textnet {

const char* family_name(fit_family f) {
    switch (f) {
        case fit_family::pareto: return "pareto";
        case fit_family::log_normal: return "log_normal";
        case fit_family::levy: return "levy";
        case fit_family::burr: return "burr";
        case fit_family::fisk: return "fisk";
        case fit_family::log_gamma: return "log_gamma";
        case fit_family::log_laplace: return "log_laplace";
        case fit_family::power_law: return "power_law";
        case fit_family::point_mass: return "point_mass";
    }
    return "unknown";
}

std::vector<double> normalized_weights(const semantic_network& net) {
    if (net.edges.empty()) throw validation_error("normalized_weights: network has no edges");
    auto deg = net.degrees();
    auto str = net.strengths();
    double d_t = 0.0, s_t = 0.0;
    for (uint32_t d : deg) d_t += d;
    for (double s : str) s_t += s;
    std::vector<double> out;
    out.reserve(net.edges.size());
    for (const auto& e : net.edges) {
        double d_uv = double(deg[e.u]) * double(deg[e.v]) / d_t;
        double s_uv = str[e.u] * str[e.v] / s_t;
        out.push_back(e.w * d_uv / s_uv);
    }
    return out;
}

namespace {

struct sample_stats {
    std::vector<double> sorted;
    std::vector<double> logs;  // of sorted values
    double min = 0.0;
    double log_mean = 0.0;
    double log_var = 0.0;  // MLE (divide by n)
};

sample_stats make_stats(const std::vector<double>& samples) {
    sample_stats st;
    st.sorted = samples;
    std::sort(st.sorted.begin(), st.sorted.end());
    st.min = st.sorted.front();
    st.logs.reserve(st.sorted.size());
    for (double x : st.sorted) st.logs.push_back(std::log(x));
    double n = double(st.logs.size());
    st.log_mean = std::accumulate(st.logs.begin(), st.logs.end(), 0.0) / n;
    double acc = 0.0;
    for (double l : st.logs) acc += (l - st.log_mean) * (l - st.log_mean);
    st.log_var = acc / n;
    return st;
}

// --- generic Nelder-Mead on R^d, deterministic ---
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, size_t max_iter) {
    size_t d = x0.size();
    std::vector<std::vector<double>> pts(d + 1, x0);
    for (size_t i = 0; i < d; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(d + 1);
    for (size_t i = 0; i <= d; ++i) fv[i] = f(pts[i]);

    auto order = [&]() {
        std::vector<size_t> idx(d + 1);
        std::iota(idx.begin(), idx.end(), size_t(0));
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> np(d + 1);
        std::vector<double> nf(d + 1);
        for (size_t i = 0; i <= d; ++i) {
            np[i] = pts[idx[i]];
            nf[i] = fv[idx[i]];
        }
        pts = std::move(np);
        fv = std::move(nf);
    };

    for (size_t iter = 0; iter < max_iter; ++iter) {
        order();
        if (std::fabs(fv[d] - fv[0]) < 1e-12 * (1.0 + std::fabs(fv[0]))) break;
        std::vector<double> centroid(d, 0.0);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) centroid[j] += pts[i][j] / double(d);

        auto blend = [&](double coef) {
            std::vector<double> p(d);
            for (size_t j = 0; j < d; ++j)
                p[j] = centroid[j] + coef * (pts[d][j] - centroid[j]);
            return p;
        };

        std::vector<double> refl = blend(-1.0);
        double f_refl = f(refl);
        if (f_refl < fv[0]) {
            std::vector<double> exp_p = blend(-2.0);
            double f_exp = f(exp_p);
            if (f_exp < f_refl) {
                pts[d] = exp_p;
                fv[d] = f_exp;
            } else {
                pts[d] = refl;
                fv[d] = f_refl;
            }
        } else if (f_refl < fv[d - 1]) {
            pts[d] = refl;
            fv[d] = f_refl;
        } else {
            std::vector<double> con = blend(f_refl < fv[d] ? -0.5 : 0.5);
            double f_con = f(con);
            if (f_con < std::min(f_refl, fv[d])) {
                pts[d] = con;
                fv[d] = f_con;
            } else {
                for (size_t i = 1; i <= d; ++i) {
                    for (size_t j = 0; j < d; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return pts[0];
}

// gamma MLE on positive samples y via bisection on log(a) - digamma(a) = s
std::pair<double, double> gamma_mle(const std::vector<double>& y) {
    double n = double(y.size());
    double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double log_mean = 0.0;
    for (double v : y) log_mean += std::log(v);
    log_mean /= n;
    double s = std::log(mean) - log_mean;
    if (s <= 0.0) return {1e8, mean * 1e-8};  // numerically constant sample
    double lo = 1e-8, hi = 1e8;
    for (int i = 0; i < 200; ++i) {
        double mid = std::sqrt(lo * hi);
        if (std::log(mid) - digamma(mid) > s)
            lo = mid;
        else
            hi = mid;
    }
    double a = std::sqrt(lo * hi);
    return {a, mean / a};
}

family_fit fit_pareto(const sample_stats& st) {
    double n = double(st.sorted.size());
    double xm = st.min;
    double acc = 0.0;
    for (double l : st.logs) acc += l - std::log(xm);
    double alpha = acc > 0.0 ? n / acc : 1e8;
    return {fit_family::pareto, {xm, alpha}, 0.0, true};
}

family_fit fit_log_normal(const sample_stats& st) {
    double sigma = std::sqrt(std::max(st.log_var, 1e-24));
    return {fit_family::log_normal, {st.log_mean, sigma}, 0.0, true};
}

family_fit fit_levy(const sample_stats& st) {
    double acc = 0.0;
    for (double x : st.sorted) acc += 1.0 / x;
    double c = double(st.sorted.size()) / acc;
    return {fit_family::levy, {c}, 0.0, true};
}

double fisk_nll(const sample_stats& st, double log_c, double log_lambda) {
    double c = std::exp(log_c), lambda = std::exp(log_lambda);
    if (!std::isfinite(c) || !std::isfinite(lambda) || c <= 0.0 || lambda <= 0.0)
        return std::numeric_limits<double>::infinity();
    double ll = 0.0;
    double log_l = std::log(lambda);
    for (size_t i = 0; i < st.sorted.size(); ++i) {
        double z = c * (st.logs[i] - log_l);
        // log pdf = log c - log lambda + (c-1) log(x/lambda) - 2 log(1+(x/lambda)^c)
        double log1p_term = z > 30.0 ? z : std::log1p(std::exp(z));
        ll += std::log(c) - st.logs[i] + z - 2.0 * log1p_term;
    }
    return -ll;
}

family_fit fit_fisk(const sample_stats& st) {
    double sd_log = std::sqrt(std::max(st.log_var, 1e-12));
    double c0 = 3.14159265358979323846 / (std::sqrt(3.0) * sd_log);
    double lambda0 = std::exp(st.log_mean);
    auto obj = [&](const std::vector<double>& p) { return fisk_nll(st, p[0], p[1]); };
    auto best = nelder_mead(obj, {std::log(c0), std::log(lambda0)}, 0.25, 600);
    return {fit_family::fisk, {std::exp(best[0]), std::exp(best[1])}, 0.0, true};
}

double burr_nll(const sample_stats& st, double log_c, double log_k, double log_lambda) {
    double c = std::exp(log_c), k = std::exp(log_k), lambda = std::exp(log_lambda);
    if (!std::isfinite(c) || !std::isfinite(k) || !std::isfinite(lambda))
        return std::numeric_limits<double>::infinity();
    double ll = 0.0;
    double log_l = std::log(lambda);
    for (size_t i = 0; i < st.sorted.size(); ++i) {
        double z = c * (st.logs[i] - log_l);
        double log1p_term = z > 30.0 ? z : std::log1p(std::exp(z));
        // log pdf = log c + log k - log x + c log(x/lambda) - (k+1) log(1+(x/lambda)^c)
        ll += std::log(c) + std::log(k) - st.logs[i] + z - (k + 1.0) * log1p_term;
    }
    return -ll;
}

family_fit fit_burr(const sample_stats& st, const family_fit& fisk) {
    auto obj = [&](const std::vector<double>& p) { return burr_nll(st, p[0], p[1], p[2]); };
    std::vector<double> init = {std::log(fisk.params[0]), 0.0, std::log(fisk.params[1])};
    auto best = nelder_mead(obj, init, 0.25, 900);
    return {fit_family::burr, {std::exp(best[0]), std::exp(best[1]), std::exp(best[2])}, 0.0,
            true};
}

family_fit fit_log_gamma(const sample_stats& st) {
    if (st.min <= 1.0) return {fit_family::log_gamma, {}, 0.0, false};
    auto [a, theta] = gamma_mle(st.logs);
    return {fit_family::log_gamma, {a, theta}, 0.0, true};
}

family_fit fit_log_laplace(const sample_stats& st) {
    // logs are sorted because samples are
    size_t n = st.logs.size();
    double mu = (n % 2 == 1) ? st.logs[n / 2]
                             : 0.5 * (st.logs[n / 2 - 1] + st.logs[n / 2]);
    double b = 0.0;
    for (double l : st.logs) b += std::fabs(l - mu);
    b /= double(n);
    if (b <= 0.0) b = 1e-12;
    return {fit_family::log_laplace, {mu, b}, 0.0, true};
}

family_fit fit_power_law(const sample_stats& st) {
    double n = double(st.sorted.size());
    double xmin = st.min;
    double acc = 0.0;
    for (double l : st.logs) acc += l - std::log(xmin);
    double alpha = acc > 0.0 ? 1.0 + n / acc : 1e8;
    return {fit_family::power_law, {xmin, alpha}, 0.0, true};
}

}  // namespace

double fit_cdf(const family_fit& fit, double x) {
    if (!fit.applicable) throw invariant_error("fit_cdf: family marked inapplicable");
    switch (fit.family) {
        case fit_family::pareto: {
            double xm = fit.params[0], alpha = fit.params[1];
            if (x <= xm) return 0.0;
            return 1.0 - std::pow(xm / x, alpha);
        }
        case fit_family::log_normal: {
            double mu = fit.params[0], sigma = fit.params[1];
            if (x <= 0.0) return 0.0;
            return normal_cdf((std::log(x) - mu) / sigma);
        }
        case fit_family::levy: {
            double c = fit.params[0];
            if (x <= 0.0) return 0.0;
            return std::erfc(std::sqrt(c / (2.0 * x)));
        }
        case fit_family::burr: {
            double c = fit.params[0], k = fit.params[1], lambda = fit.params[2];
            if (x <= 0.0) return 0.0;
            return 1.0 - std::pow(1.0 + std::pow(x / lambda, c), -k);
        }
        case fit_family::fisk: {
            double c = fit.params[0], lambda = fit.params[1];
            if (x <= 0.0) return 0.0;
            return 1.0 / (1.0 + std::pow(x / lambda, -c));
        }
        case fit_family::log_gamma: {
            double a = fit.params[0], theta = fit.params[1];
            if (x <= 1.0) return 0.0;
            return reg_gamma_p(a, std::log(x) / theta);
        }
        case fit_family::log_laplace: {
            double mu = fit.params[0], b = fit.params[1];
            if (x <= 0.0) return 0.0;
            double y = std::log(x);
            if (y < mu) return 0.5 * std::exp((y - mu) / b);
            return 1.0 - 0.5 * std::exp(-(y - mu) / b);
        }
        case fit_family::power_law: {
            double xmin = fit.params[0], alpha = fit.params[1];
            if (x <= xmin) return 0.0;
            return 1.0 - std::pow(x / xmin, 1.0 - alpha);
        }
        case fit_family::point_mass: {
            return x >= fit.params[0] ? 1.0 : 0.0;
        }
    }
    throw invariant_error("fit_cdf: unknown family");
}

double ks_statistic(const std::vector<double>& samples, const family_fit& fit) {
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    double n = double(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        double cdf = fit_cdf(fit, sorted[i]);
        d = std::max(d, (double(i) + 1.0) / n - cdf);
        d = std::max(d, cdf - double(i) / n);
    }
    return d;
}

weight_fit fit_samples(const std::vector<double>& samples) {
    if (samples.empty()) throw validation_error("fit_samples: empty sample");
    for (double x : samples)
        if (!(x > 0.0)) throw validation_error("fit_samples: samples must be positive");

    weight_fit out;
    bool all_equal = std::all_of(samples.begin(), samples.end(),
                                 [&](double x) { return x == samples.front(); });
    if (all_equal) {
        out.family = fit_family::point_mass;
        out.params = {samples.front()};
        out.ks_d = 0.0;
        out.ks_p = 1.0;
        out.degenerate = true;
        return out;
    }

    sample_stats st = make_stats(samples);
    family_fit fisk = fit_fisk(st);
    std::vector<family_fit> fits = {fit_pareto(st), fit_log_normal(st),      fit_levy(st),
                                    fit_burr(st, fisk), fisk,                fit_log_gamma(st),
                                    fit_log_laplace(st), fit_power_law(st)};
    size_t best = fits.size();
    for (size_t i = 0; i < fits.size(); ++i) {
        if (!fits[i].applicable) {
            fits[i].ks_d = std::numeric_limits<double>::infinity();
            continue;
        }
        fits[i].ks_d = ks_statistic(st.sorted, fits[i]);
        if (best == fits.size() || fits[i].ks_d < fits[best].ks_d) best = i;
    }
    if (best == fits.size()) throw invariant_error("fit_samples: no applicable family");

    out.family = fits[best].family;
    out.params = fits[best].params;
    out.ks_d = fits[best].ks_d;
    out.ks_p = kolmogorov_sf(std::sqrt(double(samples.size())) * out.ks_d);
    out.degenerate = false;
    out.candidates = std::move(fits);
    return out;
}

weight_fit fit_weights(const semantic_network& net) {
    return fit_samples(normalized_weights(net));
}

double sample_fit(const weight_fit& fit, rng& gen) {
    switch (fit.family) {
        case fit_family::pareto: {
            double xm = fit.params[0], alpha = fit.params[1];
            return xm * std::pow(1.0 - gen.uniform01(), -1.0 / alpha);
        }
        case fit_family::log_normal: {
            return std::exp(fit.params[0] + fit.params[1] * inverse_normal_cdf(gen.uniform01_open()));
        }
        case fit_family::levy: {
            double c = fit.params[0];
            double e = erfc_inv(gen.uniform01_open());
            return c / (2.0 * e * e);
        }
        case fit_family::burr: {
            double c = fit.params[0], k = fit.params[1], lambda = fit.params[2];
            double u = gen.uniform01_open();
            return lambda * std::pow(std::pow(1.0 - u, -1.0 / k) - 1.0, 1.0 / c);
        }
        case fit_family::fisk: {
            double c = fit.params[0], lambda = fit.params[1];
            double u = gen.uniform01_open();
            return lambda * std::pow(u / (1.0 - u), 1.0 / c);
        }
        case fit_family::log_gamma: {
            return std::exp(gen.gamma(fit.params[0], fit.params[1]));
        }
        case fit_family::log_laplace: {
            double mu = fit.params[0], b = fit.params[1];
            double u = gen.uniform01_open() - 0.5;
            double y = mu - b * (u < 0.0 ? -1.0 : 1.0) * std::log1p(-2.0 * std::fabs(u));
            return std::exp(y);
        }
        case fit_family::power_law: {
            double xmin = fit.params[0], alpha = fit.params[1];
            return xmin * std::pow(1.0 - gen.uniform01(), -1.0 / (alpha - 1.0));
        }
        case fit_family::point_mass: {
            return fit.params[0];
        }
    }
    throw invariant_error("sample_fit: unknown family");
}

double pair_probability(const semantic_network& net, node_id u, node_id v) {
    auto deg = net.degrees();
    double d_t = 0.0;
    for (uint32_t d : deg) d_t += d;
    if (d_t <= 0.0) return 0.0;
    return std::min(1.0, double(deg[u]) * double(deg[v]) / d_t);
}

semantic_network cont_config(const semantic_network& net, const weight_fit& fit, uint64_t seed) {
    rng gen(seed);
    auto deg = net.degrees();
    auto str = net.strengths();
    double d_t = 0.0, s_t = 0.0;
    for (uint32_t d : deg) d_t += d;
    for (double s : str) s_t += s;

    semantic_network out;
    out.node_count = net.node_count;
    out.labels = net.labels;
    if (d_t <= 0.0 || s_t <= 0.0) return out;

    for (node_id u = 0; u + 1 < net.node_count; ++u) {
        if (deg[u] == 0) continue;
        for (node_id v = u + 1; v < net.node_count; ++v) {
            if (deg[v] == 0) continue;
            double d_uv = double(deg[u]) * double(deg[v]) / d_t;
            double p = std::min(1.0, d_uv);
            if (gen.uniform01() < p) {
                double s_uv = str[u] * str[v] / s_t;
                double w = (s_uv / d_uv) * sample_fit(fit, gen);
                if (w > 0.0) out.add_edge(u, v, w);
            }
        }
    }
    out.sort_edges();
    return out;
}

}  // namespace textnet

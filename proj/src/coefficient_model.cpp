#include "concave_field/coefficient_model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "concave_field/errors.hpp"
#include "concave_field/quadrature.hpp"
#include "concave_field/rng.hpp"

namespace concave_field {

namespace {

double lgamma_pos(double x) { return std::lgamma(x); }

std::string format_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

CoefficientModel CoefficientModel::iid_uniform(std::size_t n, double scale) {
    if (n < 2) throw DomainError("model: n must be >= 2");
    if (!(scale > 0.0)) throw DomainError("uniform model: scale must be > 0");
    CoefficientModel m;
    m.kind_ = Kind::IidUniform;
    m.n_ = n;
    m.scale_ = scale;
    m.alpha_exp_ = Vec(n, 0.0);
    // Density at the origin: (1/scale)^n.
    m.gamma_coeff_ = std::pow(1.0 / scale, static_cast<double>(n));
    return m;
}

CoefficientModel CoefficientModel::iid_exponential(std::size_t n, double rate) {
    if (n < 2) throw DomainError("model: n must be >= 2");
    if (!(rate > 0.0)) throw DomainError("exponential model: rate must be > 0");
    CoefficientModel m;
    m.kind_ = Kind::IidExponential;
    m.n_ = n;
    m.rate_ = rate;
    m.alpha_exp_ = Vec(n, 0.0);
    m.gamma_coeff_ = std::pow(rate, static_cast<double>(n));
    return m;
}

CoefficientModel CoefficientModel::independent_gamma(Vec shapes, Vec betas) {
    if (shapes.size() < 2 || shapes.size() != betas.size())
        throw DomainError("gamma model: shapes/scales must have equal length >= 2");
    CoefficientModel m;
    m.kind_ = Kind::IndependentGamma;
    m.n_ = shapes.size();
    m.alpha_exp_.resize(m.n_);
    double log_gamma = 0.0;
    for (std::size_t i = 0; i < m.n_; ++i) {
        if (!(shapes[i] > 0.0) || !(betas[i] > 0.0))
            throw DomainError("gamma model: shapes and scales must be > 0");
        m.alpha_exp_[i] = shapes[i] - 1.0;
        log_gamma += shapes[i] * std::log(betas[i]) - lgamma_pos(shapes[i]);
    }
    m.shapes_ = std::move(shapes);
    m.betas_ = std::move(betas);
    m.gamma_coeff_ = std::exp(log_gamma);
    return m;
}

CoefficientModel CoefficientModel::constant_intensity(std::size_t n, double gamma) {
    if (n < 2) throw DomainError("model: n must be >= 2");
    if (!(gamma > 0.0)) throw DomainError("constant-h model: gamma must be > 0");
    CoefficientModel m;
    m.kind_ = Kind::ConstantIntensity;
    m.n_ = n;
    m.alpha_exp_ = Vec(n, 0.0);
    m.gamma_coeff_ = gamma;
    return m;
}

CoefficientModel CoefficientModel::parse(const std::string& spec, std::size_t n) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_scalar = [&](const std::string& key, double fallback,
                            bool* found = nullptr) -> double {
        const std::string tag = key + "=";
        const auto pos = args.find(tag);
        if (pos == std::string::npos) {
            if (found) *found = false;
            return fallback;
        }
        if (found) *found = true;
        return std::stod(args.substr(pos + tag.size()));
    };
    auto parse_list = [&](const std::string& key) -> Vec {
        const std::string tag = key + "=[";
        const auto pos = args.find(tag);
        if (pos == std::string::npos) throw ParseError("model spec: missing " + key);
        const auto end = args.find(']', pos);
        if (end == std::string::npos) throw ParseError("model spec: unterminated list for " + key);
        std::string body = args.substr(pos + tag.size(), end - pos - tag.size());
        Vec out;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        return out;
    };

    try {
        if (name == "uniform") return iid_uniform(n, parse_scalar("scale", 1.0));
        if (name == "exponential") return iid_exponential(n, parse_scalar("rate", 1.0));
        if (name == "constant-h") return constant_intensity(n, parse_scalar("gamma", 1.0));
        if (name == "gamma") {
            Vec shapes = parse_list("shapes");
            Vec betas = parse_list("scales");
            if (n != 0 && shapes.size() != n)
                throw ParseError("model spec: gamma shapes length does not match n");
            return independent_gamma(std::move(shapes), std::move(betas));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("model spec: ") + e.what());
    }
    throw ParseError("model spec: unknown model '" + name + "'");
}

std::string CoefficientModel::spec_string() const {
    switch (kind_) {
        case Kind::IidUniform: return "uniform:scale=" + format_num(scale_);
        case Kind::IidExponential: return "exponential:rate=" + format_num(rate_);
        case Kind::ConstantIntensity: return "constant-h:gamma=" + format_num(gamma_coeff_);
        case Kind::IndependentGamma: {
            std::string s = "gamma:shapes=[";
            for (std::size_t i = 0; i < n_; ++i)
                s += (i ? "," : "") + format_num(shapes_[i]);
            s += "],scales=[";
            for (std::size_t i = 0; i < n_; ++i)
                s += (i ? "," : "") + format_num(betas_[i]);
            return s + "]";
        }
    }
    return "?";
}

double CoefficientModel::alpha() const {
    double a = 0.0;
    for (double e : alpha_exp_) a += e;
    return a;
}

double CoefficientModel::h(const Vec& x) const {
    double v = gamma_coeff_;
    for (std::size_t i = 0; i < n_; ++i) {
        if (alpha_exp_[i] == 0.0) continue;
        v *= std::pow(x[i], alpha_exp_[i]);
    }
    return v;
}

double CoefficientModel::density(const Vec& x) const {
    switch (kind_) {
        case Kind::IidUniform: {
            double v = gamma_coeff_;
            for (double xi : x)
                if (xi < 0.0 || xi > scale_) return 0.0;
            return v;
        }
        case Kind::IidExponential: {
            double s = 0.0;
            for (double xi : x) {
                if (xi < 0.0) return 0.0;
                s += xi;
            }
            return gamma_coeff_ * std::exp(-rate_ * s);
        }
        case Kind::IndependentGamma: {
            double logv = std::log(gamma_coeff_);
            for (std::size_t i = 0; i < n_; ++i) {
                if (x[i] <= 0.0) return 0.0;
                logv += alpha_exp_[i] * std::log(x[i]) - betas_[i] * x[i];
            }
            return std::exp(logv);
        }
        case Kind::ConstantIntensity:
            throw NotSampleableError("constant-h carries no density of C");
    }
    return 0.0;
}

Vec CoefficientModel::sample_C(SplitRng& rng) const {
    Vec c(n_);
    switch (kind_) {
        case Kind::IidUniform:
            for (double& v : c) v = scale_ * rng.next_double_pos();
            return c;
        case Kind::IidExponential:
            for (double& v : c) v = rng.exponential(rate_);
            return c;
        case Kind::IndependentGamma:
            for (std::size_t i = 0; i < n_; ++i) c[i] = rng.gamma(shapes_[i], betas_[i]);
            return c;
        case Kind::ConstantIntensity:
            throw NotSampleableError("constant-h is a pure intensity; it has no law of C");
    }
    return c;
}

double CoefficientModel::cgf(const Vec& t) const {
    if (t.size() != n_) throw DomainError("cgf: dimension mismatch");
    for (double ti : t)
        if (ti > 0.0) throw DomainError("cgf: t must be <= 0 componentwise");
    switch (kind_) {
        case Kind::IidExponential: {
            double s = 0.0;
            for (double ti : t) s += std::log(rate_ / (rate_ - ti));
            return s;
        }
        case Kind::IidUniform: {
            // E e^{tU} = (e^{t s} - 1) / (t s) on [0, s].
            double sum = 0.0;
            for (double ti : t) {
                if (ti == 0.0) continue;
                const double z = ti * scale_;
                sum += std::log(-std::expm1(z) / (-z));
            }
            return sum;
        }
        case Kind::IndependentGamma: {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i)
                s += -shapes_[i] * std::log1p(-t[i] / betas_[i]);
            return s;
        }
        case Kind::ConstantIntensity:
            throw UnsupportedError("constant-h has no cumulant generating function");
    }
    return 0.0;
}

double CoefficientModel::slice_constant_M() const {
    if (cached_M_ >= 0.0) return cached_M_;
    // integral of h over {x > 0 : <barycenter, x> < 1/n} = {sum x_i < 1}.
    cached_M_ = gamma_coeff_ *
                integrate_simplex_weighted([](const Vec&) { return 1.0; }, 1.0, alpha_exp_, 48);
    return cached_M_;
}

double CoefficientModel::intensity_integral_R(const SimplexPoint& p, double a) const {
    if (a < 0.0) throw DomainError("intensity_integral_R: a must be >= 0");
    if (p.dim() != n_) throw DomainError("intensity_integral_R: dimension mismatch");
    if (a == 0.0) return 0.0;
    const double npa = static_cast<double>(n_) + alpha();
    if (kind_ == Kind::ConstantIntensity) {
        // gamma * vol(R(p, a)) = gamma * a^n / (n! prod p_i).
        double log_v = std::log(gamma_coeff_) + npa * std::log(a) -
                       lgamma_pos(static_cast<double>(n_) + 1.0);
        for (double pi : p.coords()) log_v -= std::log(pi);
        return std::exp(log_v);
    }
    double log_v = std::log(slice_constant_M()) + npa * std::log(a);
    for (std::size_t i = 0; i < n_; ++i) log_v -= (1.0 + alpha_exp_[i]) * std::log(p[i]);
    return std::exp(log_v);
}

std::pair<double, double> CoefficientModel::intensity_integral_mc(const SimplexPoint& p, double a,
                                                                  std::size_t points,
                                                                  SplitRng& rng) const {
    if (a < 0.0) throw DomainError("intensity_integral_mc: a must be >= 0");
    if (a == 0.0 || points == 0) return {0.0, 0.0};
    // R(p, a) fits in the box prod [0, a/p_i].
    Vec box(n_);
    double log_vol = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        box[i] = a / p[i];
        log_vol += std::log(box[i]);
    }
    const double vol = std::exp(log_vol);
    double sum = 0.0, sum_sq = 0.0;
    Vec x(n_), xa(n_);
    const std::size_t pairs = (points + 1) / 2;
    for (std::size_t k = 0; k < pairs; ++k) {
        for (std::size_t i = 0; i < n_; ++i) {
            x[i] = box[i] * rng.next_double_pos();
            xa[i] = box[i] - x[i] + 1e-300; // antithetic partner
        }
        double v = 0.0;
        if (dot(p.coords(), x) < a) v += 0.5 * h(x);
        if (dot(p.coords(), xa) < a) v += 0.5 * h(xa);
        sum += v;
        sum_sq += v * v;
    }
    const double m = sum / static_cast<double>(pairs);
    const double var = std::max(0.0, sum_sq / static_cast<double>(pairs) - m * m);
    const double sem = std::sqrt(var / static_cast<double>(pairs));
    return {vol * m, vol * sem};
}

} // namespace concave_field
